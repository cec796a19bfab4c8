//! k-way partitioning through simplex-constrained columns.
//!
//! Each node carries a logit column; softmax maps it onto the probability
//! simplex, the quadratic form over edges plays the role of the objective,
//! and the same primal-dual scheme as the binary solver drives every
//! column toward a one-hot vertex. The logits are unconstrained, so the
//! primal step needs no projection.

use crate::constraints::ConstraintFunction;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::solver::{SolverConfig, TraceRow};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

const GRADIENT_GUARD: f64 = 1e12;
/// Softmax outputs can underflow to exactly zero for extreme logits; the
/// entropy gradient clamps them to the smallest positive double instead of
/// producing `ln 0`.
const POSITIVE_FLOOR: f64 = f64::MIN_POSITIVE;

/// Column-major `k x n` matrix; column `j` is the vector for node `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColMatrix {
    k: usize,
    n: usize,
    data: Vec<f64>,
}

impl ColMatrix {
    pub fn zeros(k: usize, n: usize) -> Self {
        ColMatrix {
            k,
            n,
            data: vec![0.0; k * n],
        }
    }

    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(k, n);
        for j in 0..n {
            for r in 0..k {
                m.data[j * k + r] = f(r, j);
            }
        }
        m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.k..(j + 1) * self.k]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.k..(j + 1) * self.k]
    }
}

/// Column-wise softmax with a max shift for overflow safety; every output
/// column sums to one.
pub fn softmax_cols(z: &ColMatrix) -> ColMatrix {
    let mut out = ColMatrix::zeros(z.k, z.n);
    for j in 0..z.n {
        softmax_col(z.col(j), out.col_mut(j));
    }
    out
}

fn softmax_col(z: &[f64], out: &mut [f64]) {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for (o, &v) in out.iter_mut().zip(z) {
        let e = (v - max).exp();
        *o = e;
        sum += e;
    }
    for o in out.iter_mut() {
        *o /= sum;
    }
}

/// `Tr(X W X^T) + sum_i y_i g(X_col_i)`, with the trace computed
/// edge-sparse as `sum over (u,v,w) of 2 w <X_u, X_v>` (the weight matrix
/// is symmetric with zero diagonal).
pub fn kcut_lagrangian(
    x: &ColMatrix,
    y: &[f64],
    g: &WeightedGraph,
    c: &ConstraintFunction,
) -> Result<f64> {
    if x.n != g.n() || y.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.n.min(y.len()),
        });
    }
    let mut acc = 0.0;
    for &(u, v, w) in g.edges() {
        let dot: f64 = x.col(u).iter().zip(x.col(v)).map(|(a, b)| a * b).sum();
        acc += 2.0 * w * dot;
    }
    for (j, &yj) in y.iter().enumerate() {
        acc += yj * c.simplex_value(x.col(j))?;
    }
    Ok(acc)
}

/// Per-run state: unconstrained logits, one dual per node.
#[derive(Debug, Clone)]
pub struct KCutState {
    pub z: ColMatrix,
    pub y: Vec<f64>,
    pub t: u64,
    rng: ChaCha8Rng,
    x: ColMatrix,
    gx: ColMatrix,
    gz: ColMatrix,
}

/// Pre-step measurements from [`KCutState::kcut_step`].
#[derive(Debug, Clone, Copy)]
pub struct KStepInfo {
    /// Binarity gap under the active constraint kind (drives termination
    /// and matches the dual update).
    pub gap: f64,
    /// Gap under the quadratic kind, reported in traces for comparability.
    pub gap_quadratic: f64,
}

impl KCutState {
    /// Near-uniform start: logits i.i.d. uniform in `[-0.1, 0.1]`,
    /// `y = y0 * 1`.
    pub fn init(k: usize, n: usize, cfg: &SolverConfig, run_index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(run_index as u64);
        let z = ColMatrix::from_fn(k, n, |_, _| rng.gen_range(-0.1..0.1));
        KCutState {
            z,
            y: vec![cfg.y0; n],
            t: 0,
            rng,
            x: ColMatrix::zeros(k, n),
            gx: ColMatrix::zeros(k, n),
            gz: ColMatrix::zeros(k, n),
        }
    }

    pub fn from_parts(z: ColMatrix, y: Vec<f64>, seed: u64, run_index: usize) -> Result<Self> {
        if z.n != y.len() {
            return Err(Error::DimensionMismatch {
                expected: z.n,
                got: y.len(),
            });
        }
        let (k, n) = (z.k, z.n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(run_index as u64);
        Ok(KCutState {
            z,
            y,
            t: 0,
            rng,
            x: ColMatrix::zeros(k, n),
            gx: ColMatrix::zeros(k, n),
            gz: ColMatrix::zeros(k, n),
        })
    }

    /// Current simplex matrix `X = softmax(Z)`.
    pub fn simplex(&self) -> ColMatrix {
        softmax_cols(&self.z)
    }

    /// One simultaneous update: logits move against the chained gradient
    /// (no projection needed), duals accumulate the column penalties of the
    /// pre-step `X`. A column stuck near uniform with a flat gradient and a
    /// non-positive dual receives a seeded `[-1,1]` kick instead of a
    /// gradient step.
    pub fn kcut_step(
        &mut self,
        adjacency: &[Vec<(usize, f64)>],
        cfg: &SolverConfig,
    ) -> Result<KStepInfo> {
        let k = self.z.k;
        let n = self.z.n;
        debug_assert_eq!(adjacency.len(), n);
        let entropy = cfg.g == ConstraintFunction::Entropy;

        for j in 0..n {
            softmax_col(self.z.col(j), self.x.col_mut(j));
        }

        // Gradient with respect to X, edge-sparse.
        let mut gap = 0.0;
        let mut gap_quadratic = 0.0;
        for j in 0..n {
            let yj = self.y[j];
            let col = self.x.col(j);
            gap -= if entropy {
                ConstraintFunction::Entropy.simplex_value_raw(col)
            } else {
                cfg.g.simplex_value_raw(col)
            };
            gap_quadratic -= ConstraintFunction::Quadratic.simplex_value_raw(col);

            // constraint part of the column gradient
            for r in 0..k {
                let xv = self.x.col(j)[r];
                let gc = if entropy {
                    1.0 + xv.max(POSITIVE_FLOOR).ln()
                } else {
                    2.0 * xv
                };
                self.gx.col_mut(j)[r] = yj * gc;
            }
        }
        for (j, neighbors) in adjacency.iter().enumerate() {
            for &(u, w) in neighbors {
                let (gj, xu) = (self.gx.col_mut(j), self.x.col(u));
                for r in 0..k {
                    gj[r] += 2.0 * w * xu[r];
                }
            }
        }

        // Chain rule through the softmax, then the simultaneous update.
        let mut max_gz_abs = vec![0.0f64; n];
        for (j, slot) in max_gz_abs.iter_mut().enumerate() {
            let xj = self.x.col(j);
            let gxj = self.gx.col(j);
            let inner: f64 = gxj.iter().zip(xj).map(|(a, b)| a * b).sum();
            let gzj = self.gz.col_mut(j);
            let mut max_abs = 0.0f64;
            for r in 0..k {
                let v = xj[r] * (gxj[r] - inner);
                if !v.is_finite() || v.abs() > GRADIENT_GUARD {
                    return Err(Error::Domain(format!(
                        "logit gradient overflow at iteration {} (node {j})",
                        self.t
                    )));
                }
                gzj[r] = v;
                max_abs = max_abs.max(v.abs());
            }
            *slot = max_abs;
        }

        let uniform = 1.0 / k as f64;
        for (j, &max_abs) in max_gz_abs.iter().enumerate() {
            let top = self
                .x
                .col(j)
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            let stalled = cfg.enable_perturbation
                && top - uniform <= cfg.delta
                && max_abs <= 2.0 * cfg.delta
                && self.y[j] <= 0.0;
            let zj = self.z.col_mut(j);
            if stalled {
                for zv in zj.iter_mut() {
                    *zv += self.rng.gen_range(-1.0..=1.0);
                }
            } else {
                let gzj = self.gz.col(j);
                for (zv, &gv) in zj.iter_mut().zip(gzj) {
                    *zv -= cfg.alpha * gv;
                }
            }
            let g_val = if entropy {
                ConstraintFunction::Entropy.simplex_value_raw(self.x.col(j))
            } else {
                cfg.g.simplex_value_raw(self.x.col(j))
            };
            let before = self.y[j];
            self.y[j] = before + cfg.beta * g_val;
            debug_assert!(self.y[j] <= before);
        }

        self.t += 1;
        Ok(KStepInfo { gap, gap_quadratic })
    }
}

/// Argmax label per column; ties resolve to the lowest index.
pub fn assignment_of(x: &ColMatrix) -> Vec<u32> {
    (0..x.n)
        .map(|j| {
            let col = x.col(j);
            let mut best = 0usize;
            for r in 1..x.k {
                if col[r] > col[best] {
                    best = r;
                }
            }
            best as u32
        })
        .collect()
}

/// Total weight of edges whose endpoints carry different labels.
pub fn cut_value(assignment: &[u32], g: &WeightedGraph) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v, w)| {
            if assignment[u] != assignment[v] {
                w
            } else {
                0.0
            }
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KRunStatus {
    Converged,
    ReachedTMax,
    ReachedTimeLimit,
    NumericFailure,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KRunSummary {
    pub run_index: usize,
    pub status: KRunStatus,
    pub iterations: u64,
    pub best_cut: f64,
    pub final_gap: f64,
}

/// Result of a batched k-cut solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KCutReport {
    pub k: usize,
    pub assignment: Vec<u32>,
    pub cut_value: f64,
    pub time_to_best: f64,
    pub iterations_run: u64,
    pub trace: Vec<TraceRow>,
    pub per_run: Vec<KRunSummary>,
    pub status: crate::solver::SolveStatus,
    pub wall_time: f64,
}

struct KRunOutcome {
    summary: KRunSummary,
    best_assignment: Vec<u32>,
    best_cut: f64,
    first_best_wall: f64,
    checkpoints: Vec<TraceRow>,
}

fn krun_single(
    g: &WeightedGraph,
    adjacency: &[Vec<(usize, f64)>],
    k: usize,
    cfg: &SolverConfig,
    run_index: usize,
    start: Instant,
    eps: f64,
) -> KRunOutcome {
    let n = g.n();
    let mut state = KCutState::init(k, n, cfg, run_index);
    let mut checkpoints: Vec<TraceRow> = Vec::new();
    let mut best_cut = f64::NEG_INFINITY;
    let mut best_assignment: Vec<u32> = Vec::new();
    let mut first_best_wall = 0.0;
    let mut prev_assignment: Option<Vec<u32>> = None;
    let mut last_gap = f64::INFINITY;

    let status;
    loop {
        if state.t.is_multiple_of(cfg.checkpoint_stride) {
            let x = state.simplex();
            let assignment = assignment_of(&x);
            let cut = cut_value(&assignment, g);
            let wall = start.elapsed().as_secs_f64();
            if cut > best_cut {
                best_cut = cut;
                best_assignment = assignment.clone();
                first_best_wall = wall;
            }
            let gap_active: f64 = -(0..n)
                .map(|j| cfg.g.simplex_value_raw(x.col(j)))
                .sum::<f64>();
            let gap_quadratic: f64 = -(0..n)
                .map(|j| ConstraintFunction::Quadratic.simplex_value_raw(x.col(j)))
                .sum::<f64>();
            last_gap = gap_active;
            checkpoints.push(TraceRow {
                t: state.t,
                wall_s: wall,
                best: best_cut,
                gap: gap_quadratic,
                min_dual: state.y.iter().cloned().fold(f64::INFINITY, f64::min),
            });

            let stable = prev_assignment.as_deref() == Some(assignment.as_slice());
            prev_assignment = Some(assignment);
            if gap_active <= eps && stable {
                status = KRunStatus::Converged;
                break;
            }
            if start.elapsed().as_secs_f64() >= cfg.time_limit {
                status = KRunStatus::ReachedTimeLimit;
                break;
            }
        }
        if state.t >= cfg.t_max {
            status = KRunStatus::ReachedTMax;
            break;
        }
        if state.kcut_step(adjacency, cfg).is_err() {
            status = KRunStatus::NumericFailure;
            break;
        }
    }

    KRunOutcome {
        summary: KRunSummary {
            run_index,
            status,
            iterations: state.t,
            best_cut,
            final_gap: last_gap,
        },
        best_assignment,
        best_cut,
        first_best_wall,
        checkpoints,
    }
}

/// Batched multi-start k-cut solve; mirrors the binary solver's scheme.
pub fn kcut_solve(g: &WeightedGraph, k: usize, cfg: &SolverConfig) -> Result<KCutReport> {
    cfg.validate()?;
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k must be >= 2, got {k}")));
    }
    if g.n() == 0 {
        return Err(Error::InvalidConfig(
            "graph must have at least one node".into(),
        ));
    }
    if cfg.g == ConstraintFunction::Quadratic || cfg.g == ConstraintFunction::Entropy {
        // fine: these are the two simplex constructions
    } else {
        return Err(Error::UnsupportedKind(
            "k-cut supports the quadratic and entropy kinds only".into(),
        ));
    }

    let start = Instant::now();
    let n = g.n();

    if g.edges().is_empty() {
        let assignment = vec![0u32; n];
        let wall = start.elapsed().as_secs_f64();
        return Ok(KCutReport {
            k,
            assignment,
            cut_value: 0.0,
            time_to_best: wall,
            iterations_run: 0,
            trace: Vec::new(),
            per_run: Vec::new(),
            status: crate::solver::SolveStatus::Success,
            wall_time: wall,
        });
    }

    let adjacency = g.adjacency();
    let eps = cfg.effective_epsilon(n);
    let outcomes: Vec<KRunOutcome> = (0..cfg.batch)
        .into_par_iter()
        .map(|run_index| krun_single(g, &adjacency, k, cfg, run_index, start, eps))
        .collect();

    let all_failed = outcomes
        .iter()
        .all(|o| o.summary.status == KRunStatus::NumericFailure);

    let mut best_cut = f64::NEG_INFINITY;
    let mut best_run = 0usize;
    for (idx, o) in outcomes.iter().enumerate() {
        if o.best_cut > best_cut {
            best_cut = o.best_cut;
            best_run = idx;
        }
    }
    let time_to_best = outcomes
        .iter()
        .filter(|o| o.best_cut == best_cut)
        .map(|o| o.first_best_wall)
        .fold(f64::INFINITY, f64::min);

    // Merge per-run rows on the shared iteration grid; terminated runs keep
    // contributing their final row.
    let mut ts: Vec<u64> = outcomes
        .iter()
        .flat_map(|o| o.checkpoints.iter().map(|c| c.t))
        .collect();
    ts.sort_unstable();
    ts.dedup();
    let mut cursors = vec![0usize; outcomes.len()];
    let mut trace = Vec::with_capacity(ts.len());
    for &t in &ts {
        let mut best = f64::NEG_INFINITY;
        let mut gap = f64::INFINITY;
        let mut min_dual = f64::INFINITY;
        let mut wall = 0.0f64;
        for (o, cursor) in outcomes.iter().zip(cursors.iter_mut()) {
            if o.checkpoints.is_empty() {
                continue;
            }
            while *cursor + 1 < o.checkpoints.len() && o.checkpoints[*cursor + 1].t <= t {
                *cursor += 1;
            }
            let cp = &o.checkpoints[*cursor];
            best = best.max(cp.best);
            gap = gap.min(cp.gap);
            min_dual = min_dual.min(cp.min_dual);
            wall = wall.max(cp.wall_s);
        }
        trace.push(TraceRow {
            t,
            wall_s: wall,
            best,
            gap,
            min_dual,
        });
    }

    let report = KCutReport {
        k,
        assignment: outcomes[best_run].best_assignment.clone(),
        cut_value: best_cut,
        time_to_best,
        iterations_run: outcomes.iter().map(|o| o.summary.iterations).sum(),
        trace,
        per_run: outcomes.into_iter().map(|o| o.summary).collect(),
        status: if all_failed {
            crate::solver::SolveStatus::NumericFailure
        } else {
            crate::solver::SolveStatus::Success
        },
        wall_time: start.elapsed().as_secs_f64(),
    };
    debug_assert_eq!(report.cut_value, cut_value(&report.assignment, g));
    Ok(report)
}

/// Summary object appended after the per-node lines of an assignment file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentSummary {
    pub k: usize,
    pub n: usize,
    pub cut: f64,
    pub time_to_best: f64,
    pub iterations: u64,
}

/// Writes `node_index partition_index` per line (0-based), then one JSON
/// summary record.
pub fn write_assignment<W: std::io::Write>(mut w: W, report: &KCutReport) -> std::io::Result<()> {
    for (node, &part) in report.assignment.iter().enumerate() {
        writeln!(w, "{node} {part}")?;
    }
    let summary = AssignmentSummary {
        k: report.k,
        n: report.assignment.len(),
        cut: report.cut_value,
        time_to_best: report.time_to_best,
        iterations: report.iterations_run,
    };
    writeln!(
        w,
        "{}",
        serde_json::to_string(&summary).expect("plain struct")
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn k4() -> WeightedGraph {
        WeightedGraph::new(
            4,
            vec![
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
        )
        .unwrap()
    }

    fn quick_cfg(seed: u64) -> SolverConfig {
        SolverConfig {
            batch: 20,
            time_limit: 60.0,
            ..SolverConfig::maxkcut(seed)
        }
    }

    #[test]
    fn softmax_examples() {
        let z = ColMatrix::from_fn(3, 1, |_, _| 0.0);
        let x = softmax_cols(&z);
        for &v in x.col(0) {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }

        // shift invariance
        for c in [-40.0, 0.0, 3.5] {
            let z = ColMatrix::from_fn(2, 1, |r, _| if r == 0 { c } else { c + (2.0f64).ln() });
            let x = softmax_cols(&z);
            assert!((x.col(0)[0] - 1.0 / 3.0).abs() < 1e-12);
            assert!((x.col(0)[1] - 2.0 / 3.0).abs() < 1e-12);
        }

        // saturation
        let z = ColMatrix::from_fn(3, 1, |r, _| if r == 0 { 100.0 } else { 0.0 });
        let x = softmax_cols(&z);
        assert!((x.col(0)[0] - 1.0).abs() < 1e-40);
        assert!(x.col(0)[1] < 1e-40);

        // columns always on the simplex
        let z = ColMatrix::from_fn(4, 3, |r, j| (r * j) as f64 * 0.37 - 1.0);
        let x = softmax_cols(&z);
        for j in 0..3 {
            let sum: f64 = x.col(j).iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn lagrangian_examples() {
        let g = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let q = ConstraintFunction::Quadratic;

        let x = ColMatrix::from_fn(3, 2, |r, j| f64::from(r == j));
        assert_eq!(kcut_lagrangian(&x, &[0.0, 0.0], &g, &q).unwrap(), 0.0);

        let same = ColMatrix::from_fn(3, 2, |r, _| f64::from(r == 0));
        assert_eq!(kcut_lagrangian(&same, &[0.0, 0.0], &g, &q).unwrap(), 2.0);

        let uniform = ColMatrix::from_fn(3, 2, |_, _| 1.0 / 3.0);
        let v = kcut_lagrangian(&uniform, &[1.0, 1.0], &g, &q).unwrap();
        assert!((v - (-2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn step_leaves_dual_fixed_at_saturated_one_hot() {
        let g = k4();
        let cfg = quick_cfg(0);
        // strongly saturated one-hot columns on a proper-ish labeling
        let labels = [0usize, 1, 2, 0];
        let z = ColMatrix::from_fn(3, 4, |r, j| if r == labels[j] { 40.0 } else { -40.0 });
        let mut s = KCutState::from_parts(z, vec![1.0; 4], 0, 0).unwrap();
        let y_before = s.y.clone();
        s.kcut_step(&g.adjacency(), &cfg).unwrap();
        for (now, before) in s.y.iter().zip(&y_before) {
            assert!((now - before).abs() <= 1e-10);
        }
    }

    #[test]
    fn step_gradient_matches_finite_differences() {
        use rand::prelude::*;
        let g = WeightedGraph::new(4, vec![(0, 1, 1.3), (1, 2, -0.7), (2, 3, 2.0), (0, 3, 0.5)])
            .unwrap();
        let cfg = SolverConfig {
            enable_perturbation: false,
            ..quick_cfg(4)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z = ColMatrix::from_fn(3, 4, |_, _| rng.gen_range(-1.0..1.0));
        let y: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();

        // recover the analytic dz gradient from one explicit step
        let mut s = KCutState::from_parts(z.clone(), y.clone(), 4, 0).unwrap();
        s.kcut_step(&g.adjacency(), &cfg).unwrap();
        let analytic = ColMatrix::from_fn(3, 4, |r, j| (z.col(j)[r] - s.z.col(j)[r]) / cfg.alpha);

        let h = 1e-6;
        let l_of = |zm: &ColMatrix| kcut_lagrangian(&softmax_cols(zm), &y, &g, &cfg.g).unwrap();
        for j in 0..4 {
            for r in 0..3 {
                let mut zp = z.clone();
                let mut zm = z.clone();
                zp.col_mut(j)[r] += h;
                zm.col_mut(j)[r] -= h;
                let fd = (l_of(&zp) - l_of(&zm)) / (2.0 * h);
                let a = analytic.col(j)[r];
                let denom = a.abs().max(1e-8);
                assert!(
                    (a - fd).abs() / denom <= 1e-5,
                    "dZ[{r},{j}]: analytic {a} vs fd {fd}"
                );
            }
        }
    }

    #[test]
    fn dual_strictly_decreases_while_columns_are_interior() {
        let g = k4();
        let cfg = quick_cfg(2);
        let mut s = KCutState::init(3, 4, &cfg, 0);
        let y_before = s.y.clone();
        s.kcut_step(&g.adjacency(), &cfg).unwrap();
        for (now, before) in s.y.iter().zip(&y_before) {
            assert!(now < before, "interior column must bleed dual value");
        }
    }

    #[test]
    fn solves_k4_and_triangle_exactly() {
        let report = kcut_solve(&k4(), 3, &quick_cfg(31)).unwrap();
        assert_eq!(report.cut_value, 5.0);
        assert_eq!(cut_value(&report.assignment, &k4()), 5.0);
        assert!(
            report
                .per_run
                .iter()
                .all(|r| r.status == KRunStatus::Converged),
            "every run should reach the gap target before t_max"
        );

        let k3 = WeightedGraph::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        let report = kcut_solve(&k3, 3, &quick_cfg(32)).unwrap();
        assert_eq!(report.cut_value, 3.0);
    }

    #[test]
    fn entropy_kind_runs_without_numeric_trouble() {
        let cfg = SolverConfig {
            g: ConstraintFunction::Entropy,
            batch: 5,
            ..quick_cfg(6)
        };
        let report = kcut_solve(&k4(), 3, &cfg).unwrap();
        assert!(report.cut_value >= 4.0);
        assert!(report.trace.iter().all(|r| r.gap.is_finite()));

        let even = SolverConfig {
            g: ConstraintFunction::EvenPoly { d: 2 },
            ..quick_cfg(6)
        };
        assert!(kcut_solve(&k4(), 3, &even).is_err());
    }

    #[test]
    fn rejects_k_below_two() {
        assert!(kcut_solve(&k4(), 1, &quick_cfg(0)).is_err());
    }

    #[test]
    fn two_way_matches_binary_maxcut_path() {
        use crate::problems::maxcut_to_poly;
        use rand::prelude::*;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut agreements = 0;
        let trials = 20;
        for trial in 0..trials {
            let n = 12;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v, 1.0));
                    }
                }
            }
            let g = WeightedGraph::new(n, edges).unwrap();
            let binary = crate::solver::solve(
                &maxcut_to_poly(&g),
                &crate::solver::SolverConfig {
                    batch: 40,
                    ..crate::solver::SolverConfig::maxcut(1000 + trial)
                },
            )
            .unwrap();
            let kway = kcut_solve(
                &g,
                2,
                &SolverConfig {
                    batch: 40,
                    ..quick_cfg(2000 + trial)
                },
            )
            .unwrap();
            if (binary.best_value - kway.cut_value).abs() < 1e-9 {
                agreements += 1;
            }
        }
        assert!(
            agreements * 10 >= trials * 9,
            "two formulations agreed on only {agreements}/{trials} instances"
        );
    }

    #[test]
    fn assignment_output_format() {
        let report = kcut_solve(&k4(), 3, &quick_cfg(5)).unwrap();
        let mut buf = Vec::new();
        write_assignment(&mut buf, &report).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        for (idx, line) in lines[..4].iter().enumerate() {
            let mut parts = line.split_whitespace();
            assert_eq!(parts.next().unwrap(), idx.to_string());
            let part: u32 = parts.next().unwrap().parse().unwrap();
            assert!(part < 3);
        }
        let summary: AssignmentSummary = serde_json::from_str(lines[4]).unwrap();
        assert_eq!(summary.cut, 5.0);
        assert_eq!(summary.k, 3);
    }

    #[test]
    fn brute_force_agrees_on_c5() {
        let c5 = WeightedGraph::new(
            5,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (0, 4, 1.0),
            ],
        )
        .unwrap();
        assert_eq!(oracle::kcut_brute_force(&c5, 3).unwrap().1, 5.0);
        let report = kcut_solve(&c5, 3, &quick_cfg(77)).unwrap();
        assert_eq!(report.cut_value, 5.0);
    }
}
