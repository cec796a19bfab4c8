//! Instance parsers, the regular-graph generator and result serialization.
//!
//! Two text formats are supported: the Gset edge list (`n m` header, one
//! 1-indexed `u v w` line per edge) and DIMACS CNF. Both parsers report
//! structured errors with line numbers rather than panicking on malformed
//! bytes. Results go out as JSON lines plus a three-column CSV summary.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::problems::{CnfFormula, Literal};
use crate::solver::TraceRow;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

/// Restart budget for the pairing-model generator; practically never
/// exhausted when `d` is far below `n`.
const RRG_MAX_ATTEMPTS: usize = 1000;

/// One solved instance, as written to the JSONL results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub problem: String,
    pub best_objective: f64,
    pub time_to_best: f64,
    pub iterations: u64,
    pub config_fingerprint: String,
    /// Independence check for MIS solutions; absent for other problems.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub feasible: Option<bool>,
}

/// Parses a Gset-format edge list.
///
/// The published files carry no comments, so only blank lines are
/// tolerated. Node indices are 1-based on disk and 0-based in memory;
/// the declared edge count must match exactly.
pub fn parse_gset(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(Error::parse(
                        line_no,
                        format!("expected header \"n m\", got {trimmed:?}"),
                    ));
                }
                let n: usize = fields[0].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad node count {:?}", fields[0]))
                })?;
                let m: usize = fields[1].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad edge count {:?}", fields[1]))
                })?;
                header = Some((n, m));
                // the declared count is untrusted input; cap the hint
                edges.reserve(m.min(1 << 20));
            }
            Some((n, m)) => {
                if fields.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        format!("expected \"u v w\", got {trimmed:?}"),
                    ));
                }
                let u: usize = fields[0].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad node index {:?}", fields[0]))
                })?;
                let v: usize = fields[1].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad node index {:?}", fields[1]))
                })?;
                let w: f64 = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad weight {:?}", fields[2])))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(
                        line_no,
                        format!("node index out of range 1..={n}: {u} {v}"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop at node {u}")));
                }
                let (a, b) = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert((a, b)) {
                    return Err(Error::parse(line_no, format!("duplicate edge ({u},{v})")));
                }
                if edges.len() == m {
                    return Err(Error::parse(
                        line_no,
                        format!("more edges than the declared {m}"),
                    ));
                }
                edges.push((a, b, w));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing \"n m\" header"))?;
    if edges.len() != m {
        return Err(Error::parse(
            text.lines().count(),
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    WeightedGraph::new(n, edges)
}

/// Inverse of [`parse_gset`]; integral weights are written without a
/// decimal point, exactly as the published files do.
pub fn write_gset(g: &WeightedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.edges().len()));
    for &(u, v, w) in g.edges() {
        out.push_str(&format!("{} {} {}\n", u + 1, v + 1, w));
    }
    out
}

/// Parses a DIMACS CNF file.
///
/// Comment lines start with `c`; the `p cnf <vars> <clauses>` header must
/// precede the clauses; clauses are zero-terminated signed integers and may
/// span lines. A trailing `%` marker (common in benchmark archives) ends
/// the clause section. Tautologies are dropped by the formula constructor
/// and counted, not errored.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0usize;
    let mut done = false;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        if done {
            break;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate problem line"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(Error::parse(
                    line_no,
                    format!("expected \"p cnf <vars> <clauses>\", got {trimmed:?}"),
                ));
            }
            let n: usize = fields[2].parse().map_err(|_| {
                Error::parse(line_no, format!("bad variable count {:?}", fields[2]))
            })?;
            let m: usize = fields[3]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad clause count {:?}", fields[3])))?;
            header = Some((n, m));
            continue;
        }

        let (n_vars, _) =
            header.ok_or_else(|| Error::parse(line_no, "clause data before the problem line"))?;
        for token in trimmed.split_whitespace() {
            if token == "%" {
                done = true;
                break;
            }
            let lit: i64 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal {token:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(Error::parse(line_no, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = lit.unsigned_abs() as usize;
                if var > n_vars {
                    return Err(Error::parse(
                        line_no,
                        format!("literal {lit} exceeds the declared {n_vars} variables"),
                    ));
                }
                current.push(Literal {
                    var: var - 1,
                    negated: lit < 0,
                });
            }
        }
    }

    let (n_vars, m) = header.ok_or_else(|| Error::parse(1, "missing \"p cnf\" header"))?;
    if !current.is_empty() {
        return Err(Error::parse(
            last_line,
            "unterminated clause at end of input",
        ));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("declared {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n_vars, clauses)
}

/// Generates a simple `d`-regular graph on `n` nodes (unit weights) by the
/// pairing model: `d` stubs per node are shuffled and paired consecutively;
/// pairs forming self-loops or duplicates go back into the pool and are
/// reshuffled, and the whole pairing restarts whenever the leftover stubs
/// cannot form any legal edge. Deterministic per seed.
pub fn gen_rrg(n: usize, d: usize, seed: u64) -> Result<WeightedGraph> {
    if d >= n {
        return Err(Error::InvalidConfig(format!(
            "degree d={d} must be below n={n}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "n*d must be even, got n={n}, d={d}"
        )));
    }
    if d == 0 {
        return WeightedGraph::new(n, Vec::new());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RRG_MAX_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return WeightedGraph::new(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect());
        }
    }
    Err(Error::InvalidConfig(format!(
        "pairing model failed to produce a simple {d}-regular graph on {n} nodes in {RRG_MAX_ATTEMPTS} attempts"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(stubs.len() / 2);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(stubs.len() / 2);

    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                leftover.push(pair[0]);
                leftover.push(pair[1]);
            } else {
                edges.push((u, v));
            }
        }
        if leftover.len() == stubs.len() {
            // no progress: give up unless some legal pair still exists
            let mut nodes: Vec<usize> = leftover.clone();
            nodes.sort_unstable();
            nodes.dedup();
            let feasible = nodes
                .iter()
                .enumerate()
                .any(|(i, &u)| nodes[i + 1..].iter().any(|&v| !seen.contains(&(u, v))));
            if !feasible {
                return None;
            }
        }
        stubs = leftover;
    }
    Some(edges)
}

/// Writes one JSON record per line.
pub fn write_results(records: &[ResultRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    for record in records {
        let line = serde_json::to_string(record).map_err(|e| Error::Json {
            path: path.display().to_string(),
            source: e,
        })?;
        writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

/// Reads a JSONL results file back.
pub fn read_results(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line).map_err(|e| Error::Json {
                path: path.display().to_string(),
                source: e,
            })
        })
        .collect()
}

/// CSV summary with the benchmark-table column layout.
pub fn write_results_csv(records: &[ResultRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::Csv {
        path: path.display().to_string(),
        source: e,
    })?;
    let as_csv_err = |e: csv::Error| Error::Csv {
        path: path.display().to_string(),
        source: e,
    };
    writer
        .write_record(["instance", "obj", "time"])
        .map_err(as_csv_err)?;
    for r in records {
        writer
            .write_record([
                r.instance.as_str(),
                &r.best_objective.to_string(),
                &r.time_to_best.to_string(),
            ])
            .map_err(as_csv_err)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Emits trace rows as JSON lines with the fixed field names.
pub fn write_trace(rows: &[TraceRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    for row in rows {
        let line = serde_json::to_string(row).map_err(|e| Error::Json {
            path: path.display().to_string(),
            source: e,
        })?;
        writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}
