//! Max-k-SAT from a DIMACS CNF file: parse, reduce to the unsat-count
//! polynomial, solve, and cross-check the clause count.
//!
//! ```bash
//! cargo run --release --example maxsat_dimacs [path/to/file.cnf]
//! ```
//!
//! Without an argument a small embedded formula is used.

use pdbo::io::parse_dimacs_cnf;
use pdbo::problems::{cnf_to_poly, decode_sat};
use pdbo::solver::{solve, SolverConfig};

const SAMPLE: &str = "\
c two clauses over three variables
p cnf 3 2
1 2 -3 0
-1 3 0
";

fn main() -> pdbo::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("readable CNF file"),
        None => SAMPLE.to_string(),
    };

    let formula = parse_dimacs_cnf(&text)?;
    println!(
        "formula: {} variables, {} clauses (k_max {}), {} tautologies dropped",
        formula.n_vars(),
        formula.clauses().len(),
        formula.k_max(),
        formula.tautologies_dropped()
    );

    let objective = cnf_to_poly(&formula);
    println!(
        "objective polynomial: {} monomials, degree {}",
        objective.terms().len(),
        objective.degree()
    );

    let report = solve(&objective, &SolverConfig::maxksat(7))?;
    let unsat = decode_sat(&report.best_binary, &formula)?;
    println!(
        "unsatisfied clauses: {unsat} (objective {})",
        report.best_value
    );
    println!("assignment: {:?}", report.best_binary);
    Ok(())
}
