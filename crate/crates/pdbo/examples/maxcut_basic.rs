//! Minimal end-to-end Max-Cut solve on a graph built in code.
//!
//! ```bash
//! cargo run --release --example maxcut_basic
//! ```

use pdbo::problems::{decode_cut, maxcut_to_poly};
use pdbo::solver::{solve, SolverConfig};
use pdbo::WeightedGraph;

fn main() -> pdbo::Result<()> {
    // Petersen graph, max cut = 12
    let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
    let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
    let edges: Vec<(usize, usize, f64)> = outer
        .iter()
        .chain(&spokes)
        .chain(&inner)
        .map(|&(u, v)| (u, v, 1.0))
        .collect();
    let graph = WeightedGraph::new(10, edges)?;

    // cuts are maximized by minimizing the negated cut polynomial
    let objective = maxcut_to_poly(&graph);
    let config = SolverConfig::maxcut(42);
    let report = solve(&objective, &config)?;

    println!("best cut     : {}", report.best_value);
    println!("partition    : {:?}", report.best_binary);
    println!(
        "re-decoded   : {}",
        decode_cut(&report.best_binary, &graph)?
    );
    println!("time to best : {:.3}s", report.time_to_best);
    println!("iterations   : {}", report.iterations_run);
    if let Some(t) = report.eps_binary_iteration {
        println!("eps-binary at: t={t}");
    }
    println!("first trace rows:");
    for row in report.trace.iter().take(5) {
        println!(
            "  t={:4} best={:5} gap={:8.4} min_dual={:8.4}",
            row.t, row.best, row.gap, row.min_dual
        );
    }
    Ok(())
}
