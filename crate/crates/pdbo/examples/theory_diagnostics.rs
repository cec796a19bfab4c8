//! Runtime checks of the solver's convergence theory on a live run:
//! the gradient-norm bound, the dual lower bound, the running-average
//! binarity-gap identity, and the escape from the all-half stationary
//! point.
//!
//! ```bash
//! cargo run --release --example theory_diagnostics
//! ```

use pdbo::oracle::theta_exact;
use pdbo::problems::maxcut_to_poly;
use pdbo::solver::{binarity_gap, dual_lower_bound, solve, RunState, SolverConfig};
use pdbo::WeightedGraph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() -> pdbo::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let n = 16;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.3) {
                edges.push((u, v, 1.0));
            }
        }
    }
    let graph = WeightedGraph::new(n, edges)?;
    let objective = maxcut_to_poly(&graph);

    // gradient-norm bound: cheap upper bound vs exact vertex enumeration
    let theta_hat = objective.theta_upper_bound();
    let theta = theta_exact(&objective)?;
    println!("theta: exact {theta} <= bound {theta_hat}");

    // dual lower bound for the default configuration
    let config = SolverConfig::maxcut(3);
    let bound = dual_lower_bound(theta_hat, &config).expect("finite for quadratic g");
    println!("dual lower bound b = {bound:.2}");

    let report = solve(&objective, &config)?;
    let min_dual = report
        .trace
        .iter()
        .map(|r| r.min_dual)
        .fold(f64::INFINITY, f64::min);
    println!(
        "observed min dual {min_dual:.4} (margin above b: {:.2})",
        min_dual - bound
    );

    // running-average gap identity at the final checkpoint of run 0
    let run = &report.per_run[0];
    if let Some(cp) = run.checkpoints.last() {
        let avg_gap = cp.gap_sum / cp.t as f64;
        let bound_rhs = cp.dual_shift_l1 / (config.beta * cp.t as f64);
        println!(
            "run 0 at t={}: avg gap {avg_gap:.6} vs ||y0-yT||_1/(beta T) = {bound_rhs:.6}",
            cp.t
        );
    }

    // the all-half point is stationary; the punctured projection leaves it
    let mut stuck = RunState::from_parts(vec![0.5; n], vec![-1.0; n], 0, 0)?;
    let frozen = SolverConfig {
        enable_perturbation: false,
        ..config.clone()
    };
    for _ in 0..1000 {
        stuck.gda_step(&objective, &frozen)?;
    }
    println!(
        "without perturbation: x stays at 1/2 ({} coordinates), gap {}",
        stuck.x.iter().filter(|&&v| v == 0.5).count(),
        binarity_gap(&stuck.x, &frozen.g)
    );

    let mut escaping = RunState::from_parts(vec![0.5; n], vec![-1.0; n], 0, 0)?;
    let eps = config.effective_epsilon(n);
    let mut t_eps = None;
    for _ in 0..100_000 {
        let info = escaping.gda_step(&objective, &config)?;
        if info.gap <= eps {
            t_eps = Some(escaping.t);
            break;
        }
    }
    println!("with perturbation: eps-binary after {t_eps:?} iterations");
    Ok(())
}
