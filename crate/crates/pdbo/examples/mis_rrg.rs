//! Maximum independent set on a random regular graph through the penalty
//! reduction, with feasibility decoding.
//!
//! ```bash
//! cargo run --release --example mis_rrg [n] [d] [seed]
//! ```

use pdbo::io::gen_rrg;
use pdbo::problems::{decode_mis, mis_to_poly};
use pdbo::solver::{solve, SolverConfig};

fn main() -> pdbo::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(2000, |a| a.parse().expect("n"));
    let d: usize = args.next().map_or(3, |a| a.parse().expect("d"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    let graph = gen_rrg(n, d, seed)?;
    println!(
        "generated {d}-regular graph: {} nodes, {} edges",
        graph.n(),
        graph.edges().len()
    );

    // independence violations are penalized with weight 4
    let objective = mis_to_poly(&graph, 4.0)?;
    let config = SolverConfig::mis(seed);
    let report = solve(&objective, &config)?;

    let (size, feasible) = decode_mis(&report.best_binary, &graph)?;
    println!("penalized objective : {}", report.best_value);
    println!("independent-set size: {size}");
    println!("feasible            : {feasible}");
    println!("time to best        : {:.3}s", report.time_to_best);
    Ok(())
}
