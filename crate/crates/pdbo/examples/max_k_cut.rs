//! Max-k-Cut through the softmax reparameterization: partition small
//! graphs into three parts and print the assignment file format.
//!
//! ```bash
//! cargo run --release --example max_k_cut
//! ```

use pdbo::kcut::{kcut_solve, write_assignment};
use pdbo::oracle::kcut_brute_force;
use pdbo::solver::SolverConfig;
use pdbo::WeightedGraph;

fn main() -> pdbo::Result<()> {
    let k4 = WeightedGraph::new(
        4,
        vec![
            (0, 1, 1.0),
            (0, 2, 1.0),
            (0, 3, 1.0),
            (1, 2, 1.0),
            (1, 3, 1.0),
            (2, 3, 1.0),
        ],
    )?;
    let c5 = WeightedGraph::new(
        5,
        vec![
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 4, 1.0),
            (0, 4, 1.0),
        ],
    )?;

    for (name, graph) in [("K4", &k4), ("C5", &c5)] {
        let (_, exact) = kcut_brute_force(graph, 3)?;
        let report = kcut_solve(graph, 3, &SolverConfig::maxkcut(11))?;
        println!("{name}: solver cut {} / exact {exact}", report.cut_value);
        println!("assignment output:");
        let mut buf = Vec::new();
        write_assignment(&mut buf, &report).expect("in-memory write");
        print!("{}", String::from_utf8(buf).unwrap());
        println!();
    }
    Ok(())
}
