//! Command-line front end: `solve`, `gen-rrg` and `oracle` subcommands.
//!
//! Exit codes: 0 on success, 1 when every solver run failed numerically,
//! 2 on parse or configuration errors.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::io::{self, ResultRecord};
use crate::kcut;
use crate::oracle;
use crate::poly::MultilinearPolynomial;
use crate::problems;
use crate::solver::{self, SolveStatus, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "pdbo",
    version,
    about = "Primal-dual minimax solver for binary optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with problem-specific defaults
    Solve(Box<SolveArgs>),
    /// Generate a random d-regular graph in Gset format
    GenRrg(GenRrgArgs),
    /// Exact optimum of a small instance by exhaustive enumeration
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Maxcut,
    Mis,
    Maxksat,
    Maxkcut,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    /// Instance file: Gset edge list for graph problems, DIMACS CNF for maxksat
    #[arg(long)]
    input: PathBuf,
    /// Number of parts for maxkcut
    #[arg(long)]
    k: Option<usize>,
    /// Independence penalty for mis (default 4)
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Binarity-gap target (default 1e-3 * n)
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    y0: Option<f64>,
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long)]
    tmax: Option<u64>,
    #[arg(long = "time-limit")]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Constraint kind: quadratic | entropy | evenpoly:<d>
    #[arg(long)]
    g: Option<String>,
    /// JSONL result record destination
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSONL trace destination
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Partition output for maxkcut (node/partition lines plus a JSON summary)
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Worker threads for the batch (default: machine parallelism)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct GenRrgArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    lambda: Option<f64>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => cmd_solve(*args),
        Command::GenRrg(args) => cmd_gen_rrg(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn problem_kind(args: &SolveArgs) -> Result<problems::ProblemKind> {
    let kind = match args.problem {
        Problem::Maxcut => problems::ProblemKind::MaxCut,
        Problem::Mis => problems::ProblemKind::Mis {
            lambda: args.lambda.unwrap_or(4.0),
        },
        Problem::Maxksat => problems::ProblemKind::MaxKSat,
        Problem::Maxkcut => problems::ProblemKind::MaxKCut {
            k: args
                .k
                .ok_or_else(|| Error::InvalidConfig("--k is required for maxkcut".into()))?,
        },
    };
    kind.validate()?;
    Ok(kind)
}

fn build_config(args: &SolveArgs, kind: &problems::ProblemKind) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::for_problem(kind, args.seed);
    if let Some(v) = args.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = args.beta {
        cfg.beta = v;
    }
    if let Some(v) = args.delta {
        cfg.delta = v;
    }
    if let Some(v) = args.eps {
        cfg.epsilon = Some(v);
    }
    if let Some(v) = args.y0 {
        cfg.y0 = v;
    }
    if let Some(v) = args.batch {
        cfg.batch = v;
    }
    if let Some(v) = args.tmax {
        cfg.t_max = v;
    }
    if let Some(v) = args.time_limit {
        cfg.time_limit = v;
    }
    if let Some(ref s) = args.g {
        cfg.g = s.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let kind = problem_kind(&args)?;
    let cfg = build_config(&args, &kind)?;
    let text = read_input(&args.input)?;
    let instance = instance_name(&args.input);

    if let problems::ProblemKind::MaxKCut { k } = kind {
        let graph = io::parse_gset(&text)?;
        let report = with_pool(args.threads, || kcut::kcut_solve(&graph, k, &cfg))??;
        if report.status == SolveStatus::NumericFailure {
            eprintln!("all runs failed numerically");
            return Ok(1);
        }
        let record = ResultRecord {
            instance,
            problem: "maxkcut".into(),
            best_objective: report.cut_value,
            time_to_best: report.time_to_best,
            iterations: report.iterations_run,
            config_fingerprint: format!("k={k},{}", cfg.fingerprint()),
            feasible: None,
        };
        if let Some(out) = &args.out {
            io::write_results(std::slice::from_ref(&record), out)?;
        }
        if let Some(trace) = &args.trace {
            io::write_trace(&report.trace, trace)?;
        }
        if let Some(path) = &args.assignment {
            let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
            kcut::write_assignment(file, &report).map_err(|e| Error::io(path, e))?;
        }
        println!("obj={} time={:.3}", report.cut_value, report.time_to_best);
        return Ok(0);
    }

    let (poly, graph, formula): (
        MultilinearPolynomial,
        Option<WeightedGraph>,
        Option<problems::CnfFormula>,
    ) = match kind {
        problems::ProblemKind::MaxCut => {
            let g = io::parse_gset(&text)?;
            (problems::maxcut_to_poly(&g), Some(g), None)
        }
        problems::ProblemKind::Mis { lambda } => {
            let g = io::parse_gset(&text)?;
            (problems::mis_to_poly(&g, lambda)?, Some(g), None)
        }
        problems::ProblemKind::MaxKSat => {
            let f = io::parse_dimacs_cnf(&text)?;
            if f.tautologies_dropped() > 0 {
                eprintln!(
                    "warning: dropped {} tautological clause(s)",
                    f.tautologies_dropped()
                );
            }
            (problems::cnf_to_poly(&f), None, Some(f))
        }
        problems::ProblemKind::MaxKCut { .. } => unreachable!(),
    };

    let report = with_pool(args.threads, || solver::solve(&poly, &cfg))??;
    if report.status == SolveStatus::NumericFailure {
        eprintln!("all runs failed numerically");
        return Ok(1);
    }

    let feasible = match (&kind, &graph) {
        (problems::ProblemKind::Mis { .. }, Some(g)) => {
            let (_, ok) = problems::decode_mis(&report.best_binary, g)?;
            Some(ok)
        }
        _ => None,
    };
    if let Some(f) = &formula {
        // sanity: polynomial objective equals the direct clause count
        let direct = problems::decode_sat(&report.best_binary, f)?;
        debug_assert_eq!(direct as f64, report.best_value);
    }

    let record = ResultRecord {
        instance,
        problem: kind.name().to_string(),
        best_objective: report.best_value,
        time_to_best: report.time_to_best,
        iterations: report.iterations_run,
        config_fingerprint: cfg.fingerprint(),
        feasible,
    };
    if let Some(out) = &args.out {
        io::write_results(std::slice::from_ref(&record), out)?;
    }
    if let Some(trace) = &args.trace {
        io::write_trace(&report.trace, trace)?;
    }

    if let Some(ok) = feasible {
        println!("feasible={ok}");
    }
    println!("obj={} time={:.3}", report.best_value, report.time_to_best);
    Ok(0)
}

fn cmd_gen_rrg(args: GenRrgArgs) -> Result<i32> {
    let graph = io::gen_rrg(args.n, args.d, args.seed)?;
    let text = io::write_gset(&graph);
    std::fs::write(&args.out, text).map_err(|e| Error::io(&args.out, e))?;
    println!(
        "wrote {}-regular graph on {} nodes to {}",
        args.d,
        args.n,
        args.out.display()
    );
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<i32> {
    let text = read_input(&args.input)?;
    match args.problem {
        Problem::Maxcut => {
            let g = io::parse_gset(&text)?;
            let (argmin, min) = oracle::brute_force_min(&problems::maxcut_to_poly(&g))?;
            println!("opt={} argmin={}", -min, join_u8(&argmin));
        }
        Problem::Mis => {
            let g = io::parse_gset(&text)?;
            let lambda = args.lambda.unwrap_or(4.0);
            let (argmin, min) = oracle::brute_force_min(&problems::mis_to_poly(&g, lambda)?)?;
            let (size, feasible) = problems::decode_mis(&argmin, &g)?;
            println!(
                "opt={} size={size} feasible={feasible} argmin={}",
                -min,
                join_u8(&argmin)
            );
        }
        Problem::Maxksat => {
            let f = io::parse_dimacs_cnf(&text)?;
            let (argmin, min) = oracle::brute_force_min(&problems::cnf_to_poly(&f))?;
            println!("opt={} argmin={}", min, join_u8(&argmin));
        }
        Problem::Maxkcut => {
            let k = args
                .k
                .ok_or_else(|| Error::InvalidConfig("--k is required for maxkcut".into()))?;
            let g = io::parse_gset(&text)?;
            let (assignment, best) = oracle::kcut_brute_force(&g, k)?;
            let labels: Vec<String> = assignment.iter().map(|v| v.to_string()).collect();
            println!("opt={} argmin={}", best, labels.join(","));
        }
    }
    Ok(0)
}

fn join_u8(bits: &[u8]) -> String {
    bits.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
