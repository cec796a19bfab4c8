//! Benchmark-style run on a Gset-format edge list with result files.
//!
//! ```bash
//! cargo run --release --example gset_benchmark <instance> [time_limit_s] [seed]
//! ```
//!
//! Writes `<instance>.results.jsonl`, `<instance>.summary.csv` and
//! `<instance>.trace.jsonl` next to the input. Instances in the published
//! Gset collection (G1, G11, ...) parse as-is; `gen-rrg` output works too.

use pdbo::io::{parse_gset, write_results, write_results_csv, write_trace, ResultRecord};
use pdbo::problems::maxcut_to_poly;
use pdbo::solver::{solve, SolverConfig};

fn main() -> pdbo::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .expect("usage: gset_benchmark <instance> [time_limit_s] [seed]");
    let time_limit: f64 = args
        .next()
        .map_or(180.0, |a| a.parse().expect("time limit"));
    let seed: u64 = args.next().map_or(0, |a| a.parse().expect("seed"));

    let text = std::fs::read_to_string(&path).expect("readable instance file");
    let graph = parse_gset(&text)?;
    println!(
        "instance: {} nodes, {} edges",
        graph.n(),
        graph.edges().len()
    );

    let objective = maxcut_to_poly(&graph);
    let config = SolverConfig {
        time_limit,
        ..SolverConfig::maxcut(seed)
    };
    let report = solve(&objective, &config)?;

    println!(
        "cut {} after {} iterations, time-to-best {:.2}s, wall {:.2}s",
        report.best_value, report.iterations_run, report.time_to_best, report.wall_time
    );

    let record = ResultRecord {
        instance: path.clone(),
        problem: "maxcut".into(),
        best_objective: report.best_value,
        time_to_best: report.time_to_best,
        iterations: report.iterations_run,
        config_fingerprint: config.fingerprint(),
        feasible: None,
    };
    write_results(
        std::slice::from_ref(&record),
        format!("{path}.results.jsonl"),
    )?;
    write_results_csv(std::slice::from_ref(&record), format!("{path}.summary.csv"))?;
    write_trace(&report.trace, format!("{path}.trace.jsonl"))?;
    println!("wrote {path}.results.jsonl, {path}.summary.csv, {path}.trace.jsonl");
    Ok(())
}
