//! Batched, perturbed, projected simultaneous gradient descent-ascent on the
//! Lagrangian `L(x,y) = f(x) + sum_i y_i g(x_i)`.
//!
//! Each of the `B` runs is an independent trajectory with its own
//! counter-based random stream, so a batch can execute on any number of
//! threads and still produce the same report (wall-clock fields aside).
//! The dual variables only ever decrease (`g <= 0` on the cube), which is
//! what drives the iterates toward binary points; a punctured projection
//! kicks coordinates off the fractional stationary point at 1/2 when the
//! gradient alone cannot.

use crate::constraints::ConstraintFunction;
use crate::error::{Error, Result};
use crate::poly::MultilinearPolynomial;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Runs abort rather than propagate infinities past this magnitude.
const GRADIENT_GUARD: f64 = 1e12;
/// Entropy iterates are kept this far from the endpoints, where the
/// entropy derivative diverges.
const ENTROPY_MARGIN: f64 = 1e-12;

/// Tuning knobs for [`solve`], one instance per problem run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Primal step size.
    pub alpha: f64,
    /// Dual step size.
    pub beta: f64,
    /// Perturbation tolerance: minimum distance from 1/2 enforced on
    /// stagnating coordinates.
    pub delta: f64,
    /// Binarity-gap target; `None` resolves to `1e-3 * n` at solve time.
    pub epsilon: Option<f64>,
    /// Initial dual value, broadcast to all coordinates.
    pub y0: f64,
    /// Number of independent restarts.
    pub batch: usize,
    /// Iteration cap per run.
    pub t_max: u64,
    /// Wall-clock budget in seconds for the whole batch.
    pub time_limit: f64,
    /// Master seed; run `r` uses stream `r` of this seed.
    pub seed: u64,
    /// Binarity penalty.
    pub g: ConstraintFunction,
    /// Iterations between best-so-far extractions.
    pub checkpoint_stride: u64,
    /// Punctured-projection branch toggle (kept on everywhere except in
    /// stationarity control experiments).
    pub enable_perturbation: bool,
    /// Restore the sign of reported objectives for maximization problems
    /// ingested as negated polynomials.
    pub maximize: bool,
}

impl SolverConfig {
    fn base(seed: u64) -> Self {
        SolverConfig {
            alpha: 0.025,
            beta: 0.025,
            delta: 0.01,
            epsilon: None,
            y0: 6.0,
            batch: 100,
            t_max: 100_000,
            time_limit: 180.0,
            seed,
            g: ConstraintFunction::Quadratic,
            checkpoint_stride: 10,
            enable_perturbation: true,
            maximize: false,
        }
    }

    /// Max-Cut defaults: `B=100`, `y0=6`, `alpha=beta=0.025`.
    pub fn maxcut(seed: u64) -> Self {
        SolverConfig {
            maximize: true,
            ..Self::base(seed)
        }
    }

    /// Independent-set defaults: `B=10`, `y0=5`, `alpha=beta=0.02`.
    pub fn mis(seed: u64) -> Self {
        SolverConfig {
            alpha: 0.02,
            beta: 0.02,
            y0: 5.0,
            batch: 10,
            maximize: true,
            ..Self::base(seed)
        }
    }

    /// Max-k-SAT defaults: `B=10`, `y0=2`, `alpha=0.01`, `beta=0.005`.
    pub fn maxksat(seed: u64) -> Self {
        SolverConfig {
            alpha: 0.01,
            beta: 0.005,
            y0: 2.0,
            batch: 10,
            maximize: false,
            ..Self::base(seed)
        }
    }

    /// Max-k-Cut defaults: `B=100`, `y0=6`, `alpha=beta=0.01`.
    pub fn maxkcut(seed: u64) -> Self {
        SolverConfig {
            alpha: 0.01,
            beta: 0.01,
            maximize: true,
            ..Self::base(seed)
        }
    }

    /// Per-problem defaults keyed by the reduction in use.
    pub fn for_problem(kind: &crate::problems::ProblemKind, seed: u64) -> Self {
        use crate::problems::ProblemKind;
        match kind {
            ProblemKind::MaxCut => Self::maxcut(seed),
            ProblemKind::Mis { .. } => Self::mis(seed),
            ProblemKind::MaxKSat => Self::maxksat(seed),
            ProblemKind::MaxKCut { .. } => Self::maxkcut(seed),
        }
    }

    // negated comparisons also reject NaN inputs
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "beta must be > 0, got {}",
                self.beta
            )));
        }
        if !(self.y0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "y0 must be > 0, got {}",
                self.y0
            )));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in (0, 1/2), got {}",
                self.delta
            )));
        }
        if let Some(eps) = self.epsilon {
            if !(eps >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "epsilon must be >= 0, got {eps}"
                )));
            }
        }
        if self.batch == 0 {
            return Err(Error::InvalidConfig("batch must be >= 1".into()));
        }
        if self.t_max == 0 {
            return Err(Error::InvalidConfig("t_max must be >= 1".into()));
        }
        if !(self.time_limit > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "time_limit must be > 0, got {}",
                self.time_limit
            )));
        }
        if self.checkpoint_stride == 0 {
            return Err(Error::InvalidConfig(
                "checkpoint_stride must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Gap target actually used for an `n`-variable instance.
    pub fn effective_epsilon(&self, n: usize) -> f64 {
        self.epsilon.unwrap_or(1e-3 * n as f64)
    }

    /// Compact canonical parameter string recorded with each result.
    pub fn fingerprint(&self) -> String {
        format!(
            "a={},b={},d={},eps={},y0={},B={},tmax={},tl={},seed={},g={},stride={},perturb={},max={}",
            self.alpha,
            self.beta,
            self.delta,
            self.epsilon.map_or("auto".to_string(), |e| e.to_string()),
            self.y0,
            self.batch,
            self.t_max,
            self.time_limit,
            self.seed,
            self.g.name(),
            self.checkpoint_stride,
            self.enable_perturbation,
            self.maximize,
        )
    }
}

/// Clamp to the unit interval.
pub fn project_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Nearest point of `[0, 1/2-delta] ∪ [1/2+delta, 1]`.
///
/// Exactly at 1/2 both sides are equidistant; a seeded coin picks one so
/// that symmetric instances are not biased toward a fixed side.
pub fn project_punctured(v: f64, delta: f64, rng: &mut ChaCha8Rng) -> f64 {
    let lo = 0.5 - delta;
    let hi = 0.5 + delta;
    if v < 0.5 {
        v.min(lo)
    } else if v > 0.5 {
        v.max(hi)
    } else if rng.gen_bool(0.5) {
        hi
    } else {
        lo
    }
}

/// Threshold at 1/2 (ties round up).
pub fn snap(x: &[f64]) -> Vec<u8> {
    x.iter().map(|&v| u8::from(v >= 0.5)).collect()
}

/// Aggregate distance from integrality, `-sum_i g(x_i) >= 0`.
///
/// Expects `x` inside the unit cube, which the solver maintains by
/// construction.
pub fn binarity_gap(x: &[f64], g: &ConstraintFunction) -> f64 {
    -x.iter().map(|&v| g.value_raw(v)).sum::<f64>()
}

/// Dual lower bound from the step-size and constraint geometry:
/// `b = (1+Theta)/g'(1/2-delta) + (2 + ceil(1/(2 alpha))) * beta * g(1/2)`.
///
/// Only defined for kinds with finite `g'` near the endpoints; the entropy
/// kind returns `None`.
pub fn dual_lower_bound(theta: f64, cfg: &SolverConfig) -> Option<f64> {
    if !cfg.g.has_finite_endpoint_derivative() {
        return None;
    }
    let g_slope = cfg.g.deriv_raw(0.5 - cfg.delta);
    let g_half = cfg.g.value_raw(0.5);
    let ceil_term = (1.0 / (2.0 * cfg.alpha)).ceil();
    Some((1.0 + theta) / g_slope + (2.0 + ceil_term) * cfg.beta * g_half)
}

/// Per-run state of the descent-ascent iteration.
///
/// `x` stays inside the unit cube and `y` is componentwise non-increasing
/// in `t`. The state owns its random stream so the batch stays
/// reproducible under any scheduling.
#[derive(Debug, Clone)]
pub struct RunState {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub t: u64,
    rng: ChaCha8Rng,
    grad: Vec<f64>,
}

/// Quantities read off the pre-step iterate during [`RunState::gda_step`].
#[derive(Debug, Clone, Copy)]
pub struct StepInfo {
    /// Binarity gap of the iterate the step departed from.
    pub gap: f64,
}

fn run_rng(seed: u64, run_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run_index as u64);
    rng
}

impl RunState {
    /// Fresh run: `x ~ Uniform([0,1]^n)` from stream `run_index` of the
    /// master seed, `y = y0 * 1`, `t = 0`.
    pub fn init(n: usize, cfg: &SolverConfig, run_index: usize) -> Self {
        let mut rng = run_rng(cfg.seed, run_index);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        if cfg.g == ConstraintFunction::Entropy {
            for v in &mut x {
                *v = v.clamp(ENTROPY_MARGIN, 1.0 - ENTROPY_MARGIN);
            }
        }
        RunState {
            x,
            y: vec![cfg.y0; n],
            t: 0,
            rng,
            grad: vec![0.0; n],
        }
    }

    /// Explicitly positioned run, used by the stationarity experiments.
    pub fn from_parts(x: Vec<f64>, y: Vec<f64>, seed: u64, run_index: usize) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        let n = x.len();
        Ok(RunState {
            x,
            y,
            t: 0,
            rng: run_rng(seed, run_index),
            grad: vec![0.0; n],
        })
    }

    /// One simultaneous descent-ascent update.
    ///
    /// All partial derivatives of `L` are evaluated at `(x^t, y^t)` before
    /// any coordinate is written, and the dual update uses `g(x_i^t)`, not
    /// the freshly written primal value. A coordinate that sits within
    /// `delta` of 1/2 with a small `L`-gradient and a non-positive dual is
    /// pushed out of the band instead of taking a gradient step.
    pub fn gda_step(&mut self, p: &MultilinearPolynomial, cfg: &SolverConfig) -> Result<StepInfo> {
        let n = self.x.len();
        debug_assert_eq!(n, p.n());
        p.gradient_into(&self.x, &mut self.grad);

        for &gf in &self.grad {
            if !gf.is_finite() || gf.abs() > GRADIENT_GUARD {
                return Err(Error::Domain(format!(
                    "objective gradient overflow at iteration {}: {gf}",
                    self.t
                )));
            }
        }

        let entropy = cfg.g == ConstraintFunction::Entropy;
        let mut gap = 0.0;
        for i in 0..n {
            let xi = self.x[i];
            let yi = self.y[i];
            let g_val = cfg.g.value_raw(xi);
            let g_der = cfg.g.deriv_raw(xi);
            let d_l = self.grad[i] + yi * g_der;
            if !d_l.is_finite() {
                return Err(Error::Domain(format!(
                    "Lagrangian gradient not finite at iteration {} (coordinate {i})",
                    self.t
                )));
            }
            gap -= g_val;

            let next = if cfg.enable_perturbation
                && (xi - 0.5).abs() <= cfg.delta
                && d_l.abs() <= 2.0 * cfg.delta
                && yi <= 0.0
            {
                project_punctured(xi, cfg.delta, &mut self.rng)
            } else {
                let stepped = project_unit(xi - cfg.alpha * d_l);
                if entropy {
                    stepped.clamp(ENTROPY_MARGIN, 1.0 - ENTROPY_MARGIN)
                } else {
                    stepped
                }
            };
            debug_assert!((0.0..=1.0).contains(&next));
            self.x[i] = next;
            // g <= 0, so this never increases y
            self.y[i] = yi + cfg.beta * g_val;
            debug_assert!(self.y[i] <= yi);
        }
        self.t += 1;
        Ok(StepInfo { gap })
    }
}

/// How a single run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    /// Gap under target with a stable rounding for two checkpoints.
    Converged,
    ReachedTMax,
    ReachedTimeLimit,
    NumericFailure,
}

/// Outcome over the whole batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Success,
    /// Every run aborted numerically; the report carries partial data.
    NumericFailure,
}

/// One best-so-far extraction point inside a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: u64,
    pub wall_s: f64,
    /// Run-local best objective so far, sign restored.
    pub best: f64,
    pub gap: f64,
    pub min_dual: f64,
    /// `sum_{t' < t} gap(x^{t'})`, the left side of the running-average
    /// gap identity.
    pub gap_sum: f64,
    /// `||y^0 - y^t||_1`, the right side of the same identity.
    pub dual_shift_l1: f64,
}

/// Per-run summary retained in the report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub run_index: usize,
    pub status: RunStatus,
    pub iterations: u64,
    /// Best objective seen by this run, sign restored.
    pub best_value: f64,
    /// First iteration whose gap was at or below the target.
    pub eps_binary_iteration: Option<u64>,
    pub final_gap: f64,
    pub checkpoints: Vec<Checkpoint>,
}

/// Merged trace row; field names are the wire format of the JSONL trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u64,
    pub wall_s: f64,
    pub best: f64,
    pub gap: f64,
    pub min_dual: f64,
}

/// Result of a batched solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub best_binary: Vec<u8>,
    /// Objective at `best_binary` in the original problem's sense.
    pub best_value: f64,
    /// Seconds from solve start to the first attainment of `best_value`.
    pub time_to_best: f64,
    /// Total iterations across the batch.
    pub iterations_run: u64,
    /// Earliest iteration at which any run became epsilon-binary.
    pub eps_binary_iteration: Option<u64>,
    pub trace: Vec<TraceRow>,
    pub per_run: Vec<RunSummary>,
    pub status: SolveStatus,
    pub wall_time: f64,
}

struct RunOutcome {
    summary: RunSummary,
    best_binary: Vec<u8>,
    /// Min-sense objective of `best_binary`.
    best_min_value: f64,
    /// Wall seconds at the first attainment of `best_min_value`.
    first_best_wall: f64,
}

fn restore_sign(v: f64, maximize: bool) -> f64 {
    if maximize {
        -v
    } else {
        v
    }
}

fn run_single(
    p: &MultilinearPolynomial,
    cfg: &SolverConfig,
    run_index: usize,
    start: Instant,
    eps: f64,
) -> RunOutcome {
    let n = p.n();
    let mut state = RunState::init(n, cfg, run_index);
    let mut checkpoints: Vec<Checkpoint> = Vec::new();

    let mut best_min = f64::INFINITY;
    let mut best_binary: Vec<u8> = Vec::new();
    let mut first_best_wall = 0.0;
    let mut gap_sum = 0.0;
    let mut eps_iter: Option<u64> = None;
    let mut prev_snap: Option<Vec<u8>> = None;
    let mut last_gap = f64::INFINITY;
    let mut xf_scratch: Vec<f64> = vec![0.0; n];

    let status;
    loop {
        if state.t.is_multiple_of(cfg.checkpoint_stride) {
            let gap = binarity_gap(&state.x, &cfg.g);
            last_gap = gap;
            if eps_iter.is_none() && gap <= eps {
                eps_iter = Some(state.t);
            }
            let snapped = snap(&state.x);
            for (dst, &b) in xf_scratch.iter_mut().zip(&snapped) {
                *dst = b as f64;
            }
            let value = p.evaluate_unchecked(&xf_scratch);
            let wall = start.elapsed().as_secs_f64();
            if value < best_min {
                best_min = value;
                best_binary = snapped.clone();
                first_best_wall = wall;
            }
            let dual_shift_l1: f64 = state.y.iter().map(|&yi| cfg.y0 - yi).sum();
            debug_assert!(
                (cfg.beta * gap_sum - dual_shift_l1).abs() <= 1e-6 * (1.0 + dual_shift_l1.abs()),
                "dual-update bookkeeping out of sync"
            );
            checkpoints.push(Checkpoint {
                t: state.t,
                wall_s: wall,
                best: restore_sign(best_min, cfg.maximize),
                gap,
                min_dual: state.y.iter().cloned().fold(f64::INFINITY, f64::min),
                gap_sum,
                dual_shift_l1,
            });

            let stable = prev_snap.as_deref() == Some(snapped.as_slice());
            prev_snap = Some(snapped);
            if gap <= eps && stable {
                status = RunStatus::Converged;
                break;
            }
            if start.elapsed().as_secs_f64() >= cfg.time_limit {
                status = RunStatus::ReachedTimeLimit;
                break;
            }
        }
        if state.t >= cfg.t_max {
            status = RunStatus::ReachedTMax;
            break;
        }

        match state.gda_step(p, cfg) {
            Ok(info) => {
                if eps_iter.is_none() && info.gap <= eps {
                    eps_iter = Some(state.t - 1);
                }
                gap_sum += info.gap;
            }
            Err(_) => {
                status = RunStatus::NumericFailure;
                break;
            }
        }
    }

    RunOutcome {
        summary: RunSummary {
            run_index,
            status,
            iterations: state.t,
            best_value: restore_sign(best_min, cfg.maximize),
            eps_binary_iteration: eps_iter,
            final_gap: last_gap,
            checkpoints,
        },
        best_binary,
        best_min_value: best_min,
        first_best_wall,
    }
}

/// Merge per-run checkpoint rows into one deterministic global trace.
///
/// Rows are aligned on iteration counts; a run that terminated before a
/// given `t` keeps contributing its final row, so the merged `best` is the
/// batch best-so-far and `gap`/`min_dual` are batch minima.
fn merge_trace(outcomes: &[RunOutcome], maximize: bool) -> Vec<TraceRow> {
    let mut ts: Vec<u64> = outcomes
        .iter()
        .flat_map(|o| o.summary.checkpoints.iter().map(|c| c.t))
        .collect();
    ts.sort_unstable();
    ts.dedup();

    let mut cursors = vec![0usize; outcomes.len()];
    let mut rows = Vec::with_capacity(ts.len());
    for &t in &ts {
        let mut best_min = f64::INFINITY;
        let mut gap = f64::INFINITY;
        let mut min_dual = f64::INFINITY;
        let mut wall = 0.0f64;
        for (o, cursor) in outcomes.iter().zip(cursors.iter_mut()) {
            let cps = &o.summary.checkpoints;
            if cps.is_empty() {
                continue;
            }
            while *cursor + 1 < cps.len() && cps[*cursor + 1].t <= t {
                *cursor += 1;
            }
            let cp = &cps[*cursor];
            best_min = best_min.min(restore_sign(cp.best, maximize));
            gap = gap.min(cp.gap);
            min_dual = min_dual.min(cp.min_dual);
            wall = wall.max(cp.wall_s);
        }
        rows.push(TraceRow {
            t,
            wall_s: wall,
            best: restore_sign(best_min, maximize),
            gap,
            min_dual,
        });
    }
    rows
}

/// Runs `B` independent trajectories and reports the best rounded solution
/// seen at any checkpoint of any run.
///
/// The result is deterministic for a fixed `(seed, cfg, p)` regardless of
/// how the batch is scheduled, except for wall-clock fields (and except
/// when the wall-clock limit itself terminates runs).
pub fn solve(p: &MultilinearPolynomial, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let n = p.n();
    if n == 0 {
        return Err(Error::InvalidConfig("polynomial must have n >= 1".into()));
    }

    let start = Instant::now();

    // A polynomial with no variable terms is constant: every binary point
    // is optimal and no iteration is needed.
    if p.terms().is_empty() {
        let best_binary = vec![0u8; n];
        let value = restore_sign(p.constant_term(), cfg.maximize);
        let wall = start.elapsed().as_secs_f64();
        return Ok(SolveReport {
            best_binary,
            best_value: value,
            time_to_best: wall,
            iterations_run: 0,
            eps_binary_iteration: Some(0),
            trace: vec![TraceRow {
                t: 0,
                wall_s: wall,
                best: value,
                gap: 0.0,
                min_dual: cfg.y0,
            }],
            per_run: vec![RunSummary {
                run_index: 0,
                status: RunStatus::Converged,
                iterations: 0,
                best_value: value,
                eps_binary_iteration: Some(0),
                final_gap: 0.0,
                checkpoints: Vec::new(),
            }],
            status: SolveStatus::Success,
            wall_time: wall,
        });
    }

    let eps = cfg.effective_epsilon(n);
    let outcomes: Vec<RunOutcome> = (0..cfg.batch)
        .into_par_iter()
        .map(|run_index| run_single(p, cfg, run_index, start, eps))
        .collect();

    let all_failed = outcomes
        .iter()
        .all(|o| o.summary.status == RunStatus::NumericFailure);

    // Commutative reduction with the run index as tie-break, so the winner
    // does not depend on scheduling.
    let mut best_min = f64::INFINITY;
    let mut best_run = 0usize;
    for (idx, o) in outcomes.iter().enumerate() {
        if o.best_min_value < best_min {
            best_min = o.best_min_value;
            best_run = idx;
        }
    }
    let time_to_best = outcomes
        .iter()
        .filter(|o| o.best_min_value == best_min)
        .map(|o| o.first_best_wall)
        .fold(f64::INFINITY, f64::min);

    let trace = merge_trace(&outcomes, cfg.maximize);
    let eps_binary_iteration = outcomes
        .iter()
        .filter_map(|o| o.summary.eps_binary_iteration)
        .min();
    let iterations_run = outcomes.iter().map(|o| o.summary.iterations).sum();

    let best_binary = outcomes[best_run].best_binary.clone();
    let best_value = restore_sign(best_min, cfg.maximize);
    debug_assert!({
        let xf: Vec<f64> = best_binary.iter().map(|&b| b as f64).collect();
        restore_sign(p.evaluate_unchecked(&xf), cfg.maximize) == best_value
    });

    Ok(SolveReport {
        best_binary,
        best_value,
        time_to_best,
        iterations_run,
        eps_binary_iteration,
        trace,
        per_run: outcomes.into_iter().map(|o| o.summary).collect(),
        status: if all_failed {
            SolveStatus::NumericFailure
        } else {
            SolveStatus::Success
        },
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::problems::maxcut_to_poly;

    fn single_edge_poly() -> MultilinearPolynomial {
        maxcut_to_poly(&WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap())
    }

    fn quick_cfg(seed: u64) -> SolverConfig {
        SolverConfig {
            batch: 4,
            time_limit: 60.0,
            ..SolverConfig::maxcut(seed)
        }
    }

    #[test]
    fn init_run_examples() {
        let cfg = SolverConfig {
            y0: 6.0,
            ..SolverConfig::maxcut(42)
        };
        let s = RunState::init(3, &cfg, 0);
        assert_eq!(s.y, vec![6.0, 6.0, 6.0]);
        assert_eq!(s.t, 0);
        assert!(s.x.iter().all(|&v| (0.0..=1.0).contains(&v)));

        let s2 = RunState::init(3, &cfg, 0);
        assert_eq!(s.x, s2.x, "same (seed, run_index) must replay exactly");
        let s3 = RunState::init(3, &cfg, 1);
        assert_ne!(s.x, s3.x);

        let mis = SolverConfig {
            y0: 5.0,
            ..SolverConfig::mis(1)
        };
        assert_eq!(RunState::init(1, &mis, 0).y, vec![5.0]);
    }

    #[test]
    fn projections() {
        assert_eq!(project_unit(1.3), 1.0);
        assert_eq!(project_unit(-0.2), 0.0);
        assert_eq!(project_unit(0.4), 0.4);

        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(project_punctured(0.47, 0.1, &mut rng), 0.4);
        assert_eq!(project_punctured(0.55, 0.1, &mut rng), 0.6);
        assert_eq!(project_punctured(0.8, 0.1, &mut rng), 0.8);
        assert_eq!(project_punctured(0.4, 0.1, &mut rng), 0.4);

        // the tie at exactly 1/2 comes up on both sides across seeds
        let mut lo = 0;
        let mut hi = 0;
        for seed in 0..64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = project_punctured(0.5, 0.1, &mut rng);
            if v == 0.4 {
                lo += 1;
            } else if v == 0.6 {
                hi += 1;
            } else {
                panic!("unexpected projection {v}");
            }
        }
        assert!(lo > 0 && hi > 0);
    }

    #[test]
    fn snap_examples() {
        assert_eq!(snap(&[0.99, 0.02]), vec![1, 0]);
        assert_eq!(snap(&[0.5]), vec![1]);
        assert_eq!(snap(&[0.0, 1.0]), vec![0, 1]);
    }

    #[test]
    fn binarity_gap_examples() {
        let q = ConstraintFunction::Quadratic;
        assert_eq!(binarity_gap(&[0.0, 1.0, 1.0], &q), 0.0);
        assert_eq!(binarity_gap(&[0.5], &q), 0.25);
        let gap = binarity_gap(&[0.5, 0.5], &ConstraintFunction::Entropy);
        assert!((gap - 2.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn gda_step_perturbs_stalled_fractional_point() {
        let p = single_edge_poly();
        let cfg = SolverConfig {
            delta: 0.1,
            ..SolverConfig::maxcut(9)
        };
        let mut s = RunState::from_parts(vec![0.5, 0.5], vec![-1.0, -1.0], 9, 0).unwrap();
        s.gda_step(&p, &cfg).unwrap();
        for &v in &s.x {
            assert!(
                (v - 0.4).abs() < 1e-15 || (v - 0.6).abs() < 1e-15,
                "coordinate must leave the band, got {v}"
            );
        }
        assert_eq!(s.t, 1);
    }

    #[test]
    fn gda_step_ordinary_branch_when_dual_positive() {
        let p = single_edge_poly();
        let cfg = SolverConfig {
            delta: 0.1,
            ..SolverConfig::maxcut(9)
        };
        let mut s = RunState::from_parts(vec![0.5, 0.5], vec![6.0, 6.0], 9, 0).unwrap();
        s.gda_step(&p, &cfg).unwrap();
        assert_eq!(s.x, vec![0.5, 0.5], "zero L-gradient leaves x in place");
        let expected = 6.0 - 0.25 * cfg.beta;
        for &yi in &s.y {
            assert!((yi - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn gda_step_dual_fixed_at_binary_points() {
        let p = single_edge_poly();
        let cfg = SolverConfig::maxcut(9);
        let mut s = RunState::from_parts(vec![1.0, 0.0], vec![3.0, -2.0], 9, 0).unwrap();
        let y_before = s.y.clone();
        s.gda_step(&p, &cfg).unwrap();
        assert_eq!(s.y, y_before);
    }

    #[test]
    fn dual_lower_bound_examples() {
        let cfg = SolverConfig {
            alpha: 0.025,
            beta: 0.025,
            delta: 0.1,
            ..SolverConfig::maxcut(0)
        };
        let b = dual_lower_bound(6.0, &cfg).unwrap();
        assert!((b - (-35.1375)).abs() < 1e-9, "got {b}");
        let b0 = dual_lower_bound(0.0, &cfg).unwrap();
        assert!((b0 - (-5.1375)).abs() < 1e-9, "got {b0}");

        let entropy_cfg = SolverConfig {
            g: ConstraintFunction::Entropy,
            ..cfg
        };
        assert!(dual_lower_bound(6.0, &entropy_cfg).is_none());
    }

    #[test]
    fn solve_single_edge_finds_the_cut() {
        let p = single_edge_poly();
        let report = solve(&p, &quick_cfg(123)).unwrap();
        assert_eq!(report.status, SolveStatus::Success);
        assert_eq!(report.best_value, 1.0);
        assert!(report.best_binary == vec![1, 0] || report.best_binary == vec![0, 1]);
        assert!(report.eps_binary_iteration.is_some());
    }

    #[test]
    fn solve_constant_polynomial_shortcuts() {
        let p = MultilinearPolynomial::constant(3, 5.0);
        let cfg = SolverConfig {
            maximize: false,
            ..quick_cfg(1)
        };
        let report = solve(&p, &cfg).unwrap();
        assert_eq!(report.best_value, 5.0);
        assert_eq!(report.iterations_run, 0);
    }

    #[test]
    fn solve_config_errors() {
        let p = single_edge_poly();
        let bad_tmax = SolverConfig {
            t_max: 0,
            ..quick_cfg(1)
        };
        assert!(solve(&p, &bad_tmax).is_err());
        let bad_time = SolverConfig {
            time_limit: 0.0,
            ..quick_cfg(1)
        };
        assert!(solve(&p, &bad_time).is_err());
        let bad_delta = SolverConfig {
            delta: 0.5,
            ..quick_cfg(1)
        };
        assert!(solve(&p, &bad_delta).is_err());
    }

    #[test]
    fn solve_is_deterministic_for_fixed_seed() {
        let g = WeightedGraph::new(
            6,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (0, 5, 1.0),
                (0, 3, 1.0),
            ],
        )
        .unwrap();
        let p = maxcut_to_poly(&g);
        let cfg = quick_cfg(77);
        let a = solve(&p, &cfg).unwrap();
        let b = solve(&p, &cfg).unwrap();
        assert_eq!(a.best_binary, b.best_binary);
        assert_eq!(a.best_value, b.best_value);
        assert_eq!(a.iterations_run, b.iterations_run);
        assert_eq!(a.eps_binary_iteration, b.eps_binary_iteration);
        assert_eq!(a.trace.len(), b.trace.len());
        for (ra, rb) in a.trace.iter().zip(&b.trace) {
            assert_eq!(ra.t, rb.t);
            assert_eq!(ra.best, rb.best);
            assert_eq!(ra.gap, rb.gap);
            assert_eq!(ra.min_dual, rb.min_dual);
        }
    }

    #[test]
    fn dual_is_monotone_and_gap_identity_holds() {
        let p = single_edge_poly();
        let cfg = SolverConfig {
            batch: 1,
            ..quick_cfg(5)
        };
        let mut s = RunState::init(2, &cfg, 0);
        let mut prev_y = s.y.clone();
        let mut gap_sum = 0.0;
        for _ in 0..200 {
            let info = s.gda_step(&p, &cfg).unwrap();
            gap_sum += info.gap;
            for (now, before) in s.y.iter().zip(&prev_y) {
                assert!(now <= before);
            }
            prev_y = s.y.clone();
            let dual_shift: f64 = s.y.iter().map(|&yi| cfg.y0 - yi).sum();
            assert!((cfg.beta * gap_sum - dual_shift).abs() <= 1e-10);
        }
    }

    #[test]
    fn entropy_kind_solves_with_clamped_iterates() {
        let p = single_edge_poly();
        let cfg = SolverConfig {
            g: ConstraintFunction::Entropy,
            ..quick_cfg(21)
        };
        let report = solve(&p, &cfg).unwrap();
        assert_eq!(report.best_value, 1.0);
        assert!(dual_lower_bound(p.theta_upper_bound(), &cfg).is_none());
    }

    #[test]
    fn even_poly_kind_respects_its_dual_bound() {
        let p = single_edge_poly();
        let cfg = SolverConfig {
            g: ConstraintFunction::EvenPoly { d: 2 },
            ..quick_cfg(22)
        };
        let bound = dual_lower_bound(p.theta_upper_bound(), &cfg).unwrap();
        assert!(bound < 0.0);
        let mut s = RunState::init(2, &cfg, 0);
        for _ in 0..500 {
            s.gda_step(&p, &cfg).unwrap();
            assert!(s.y.iter().all(|&yi| yi >= bound));
            assert!(s.x.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
        let report = solve(&p, &cfg).unwrap();
        assert_eq!(report.best_value, 1.0);
    }

    #[test]
    fn gradient_overflow_aborts_every_run_with_partial_report() {
        // a coefficient past the guard makes each run fail on its first step
        let p = MultilinearPolynomial::from_terms(2, vec![(vec![0usize], 1e13), (vec![1], 1.0)])
            .unwrap();
        let report = solve(&p, &quick_cfg(8)).unwrap();
        assert_eq!(report.status, SolveStatus::NumericFailure);
        assert!(report
            .per_run
            .iter()
            .all(|r| r.status == RunStatus::NumericFailure));
        // the t=0 checkpoint still yields a (partial) trace and a solution
        assert!(!report.trace.is_empty());
        assert_eq!(report.best_binary.len(), 2);
        assert!(report.best_value.is_finite());
    }

    #[test]
    fn report_value_matches_reevaluation() {
        let p = single_edge_poly();
        let report = solve(&p, &quick_cfg(3)).unwrap();
        let xf: Vec<f64> = report.best_binary.iter().map(|&b| b as f64).collect();
        assert_eq!(report.best_value, -p.evaluate(&xf).unwrap());
    }
}
