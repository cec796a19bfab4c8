//! Continuous primal-dual solver for unconstrained binary optimization.
//!
//! The toolkit minimizes a multilinear polynomial over `{0,1}^n` by lifting
//! the problem to the unit cube, attaching one binarity constraint per
//! variable, and running simultaneous gradient descent-ascent on the
//! resulting Lagrangian. Built-in reductions cover Max-Cut, maximum
//! independent set, Max-k-SAT and (through a softmax reparameterization)
//! Max-k-Cut.
//!
//! Start from [`problems`] to build an objective, [`solver::solve`] to run
//! a batch, and [`io`] for the Gset / DIMACS instance formats. The
//! `examples/` directory has one runnable walkthrough per capability.

pub mod constraints;
pub mod error;
pub mod graph;
pub mod io;
pub mod kcut;
pub mod oracle;
pub mod poly;
pub mod problems;
pub mod solver;

pub mod cli;

pub use constraints::ConstraintFunction;
pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use poly::MultilinearPolynomial;
pub use problems::{CnfFormula, Literal, ProblemKind};
pub use solver::{solve, SolveReport, SolverConfig};
