//! Reductions from the supported applications to canonical minimization
//! polynomials, and decoders from binary solutions back to domain metrics.
//!
//! Minimization is the canonical sense throughout: maximization problems
//! (cuts, independent sets) are ingested as negated polynomials and the
//! decoders restore the original sign.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::poly::MultilinearPolynomial;

/// One signed literal: variable index plus negation flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

/// CNF formula after ingestion cleanup.
///
/// Duplicate literals inside a clause are removed; a clause containing both
/// a variable and its negation is a tautology and is dropped (counted in
/// `tautologies_dropped`). Empty clauses are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
    k_max: usize,
    tautologies_dropped: usize,
}

impl CnfFormula {
    pub fn new(n_vars: usize, raw_clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut clauses = Vec::with_capacity(raw_clauses.len());
        let mut k_max = 0;
        let mut tautologies_dropped = 0;
        for (idx, raw) in raw_clauses.into_iter().enumerate() {
            if raw.is_empty() {
                return Err(Error::InvalidConfig(format!("clause {idx} is empty")));
            }
            let mut clause: Vec<Literal> = Vec::with_capacity(raw.len());
            let mut tautology = false;
            for lit in raw {
                if lit.var >= n_vars {
                    return Err(Error::InvalidConfig(format!(
                        "clause {idx}: variable {} out of range for n={n_vars}",
                        lit.var
                    )));
                }
                if clause
                    .iter()
                    .any(|l| l.var == lit.var && l.negated != lit.negated)
                {
                    tautology = true;
                    break;
                }
                if !clause.contains(&lit) {
                    clause.push(lit);
                }
            }
            if tautology {
                tautologies_dropped += 1;
                continue;
            }
            k_max = k_max.max(clause.len());
            clauses.push(clause);
        }
        Ok(CnfFormula {
            n_vars,
            clauses,
            k_max,
            tautologies_dropped,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Number of tautological clauses dropped at ingestion.
    pub fn tautologies_dropped(&self) -> usize {
        self.tautologies_dropped
    }
}

/// Problem selector with its per-problem parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemKind {
    MaxCut,
    Mis { lambda: f64 },
    MaxKSat,
    MaxKCut { k: usize },
}

impl ProblemKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProblemKind::Mis { lambda } if lambda <= 0.0 => Err(Error::InvalidConfig(format!(
                "MIS penalty lambda must be > 0, got {lambda}"
            ))),
            ProblemKind::MaxKCut { k } if k < 2 => {
                Err(Error::InvalidConfig(format!("k must be >= 2, got {k}")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::MaxCut => "maxcut",
            ProblemKind::Mis { .. } => "mis",
            ProblemKind::MaxKSat => "maxksat",
            ProblemKind::MaxKCut { .. } => "maxkcut",
        }
    }
}

/// Negated cut objective: minimizing it maximizes the cut weight
/// `sum over edges of w * (x_u + x_v - 2 x_u x_v)`.
pub fn maxcut_to_poly(g: &WeightedGraph) -> MultilinearPolynomial {
    let mut raw: Vec<(Vec<usize>, f64)> = Vec::with_capacity(3 * g.edges().len());
    for &(u, v, w) in g.edges() {
        raw.push((vec![u], -w));
        raw.push((vec![v], -w));
        raw.push((vec![u, v], 2.0 * w));
    }
    MultilinearPolynomial::from_terms(g.n(), raw).expect("graph indices validated on construction")
}

/// Penalized independent-set objective in minimization form:
/// `-sum x_i + lambda * sum over edges of x_u x_v`. Edge weights are
/// ignored (the problem is unweighted).
pub fn mis_to_poly(g: &WeightedGraph, lambda: f64) -> Result<MultilinearPolynomial> {
    if lambda <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "MIS penalty lambda must be > 0, got {lambda}"
        )));
    }
    let mut raw: Vec<(Vec<usize>, f64)> = Vec::with_capacity(g.n() + g.edges().len());
    for i in 0..g.n() {
        raw.push((vec![i], -1.0));
    }
    for &(u, v, _) in g.edges() {
        raw.push((vec![u, v], lambda));
    }
    MultilinearPolynomial::from_terms(g.n(), raw)
}

/// Unsatisfied-clause count as a polynomial: clause `C` contributes
/// `prod p(x_i)` with `p(x_i) = x_i` for negated literals and `1 - x_i`
/// otherwise, expanded into multilinear monomials and merged.
pub fn cnf_to_poly(f: &CnfFormula) -> MultilinearPolynomial {
    let mut raw: Vec<(Vec<usize>, f64)> = Vec::new();
    for clause in f.clauses() {
        // Factors: negated literal -> x_v; positive literal -> (1 - x_v).
        // Expanding over subsets S of the positive literals gives
        // (-1)^{|S|} * prod_{v in S or negated} x_v.
        let negated: Vec<usize> = clause.iter().filter(|l| l.negated).map(|l| l.var).collect();
        let positives: Vec<usize> = clause
            .iter()
            .filter(|l| !l.negated)
            .map(|l| l.var)
            .collect();
        for subset in 0u32..(1 << positives.len()) {
            let mut vars = negated.clone();
            let mut sign = 1.0;
            for (j, &v) in positives.iter().enumerate() {
                if (subset >> j) & 1 == 1 {
                    vars.push(v);
                    sign = -sign;
                }
            }
            raw.push((vars, sign));
        }
    }
    MultilinearPolynomial::from_terms(f.n_vars(), raw)
        .expect("clause variables validated on construction")
}

/// Total weight of edges crossing the partition encoded by `x`.
pub fn decode_cut(x: &[u8], g: &WeightedGraph) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v, w)| if x[u] != x[v] { w } else { 0.0 })
        .sum())
}

/// Independent-set size and feasibility of a binary solution.
///
/// No repair is attempted: an infeasible selection is reported as such.
pub fn decode_mis(x: &[u8], g: &WeightedGraph) -> Result<(usize, bool)> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let size = x.iter().filter(|&&b| b == 1).count();
    let feasible = g.edges().iter().all(|&(u, v, _)| !(x[u] == 1 && x[v] == 1));
    Ok((size, feasible))
}

/// Number of clauses not satisfied by the assignment.
pub fn decode_sat(x: &[u8], f: &CnfFormula) -> Result<usize> {
    if x.len() != f.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: f.n_vars(),
            got: x.len(),
        });
    }
    Ok(f.clauses()
        .iter()
        .filter(|clause| !clause.iter().any(|lit| (x[lit.var] == 1) != lit.negated))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lit(var: usize, negated: bool) -> Literal {
        Literal { var, negated }
    }

    fn single_edge() -> WeightedGraph {
        WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap()
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn maxcut_single_edge_terms() {
        let p = maxcut_to_poly(&single_edge());
        assert_eq!(p.evaluate(&[1.0, 0.0]).unwrap(), -1.0);
        assert_eq!(p.evaluate(&[1.0, 1.0]).unwrap(), 0.0);
        let terms = p.terms();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].vars, vec![0]);
        assert_eq!(terms[0].coeff, -1.0);
        assert_eq!(terms[1].vars, vec![0, 1]);
        assert_eq!(terms[1].coeff, 2.0);
        assert_eq!(terms[2].vars, vec![1]);
        assert_eq!(terms[2].coeff, -1.0);
    }

    #[test]
    fn maxcut_empty_graph_is_zero_polynomial() {
        let g = WeightedGraph::new(3, vec![]).unwrap();
        let p = maxcut_to_poly(&g);
        assert!(p.terms().is_empty());
        assert_eq!(p.constant_term(), 0.0);
    }

    #[test]
    fn maxcut_triangle_value() {
        let p = maxcut_to_poly(&triangle());
        assert_eq!(p.evaluate(&[1.0, 0.0, 0.0]).unwrap(), -2.0);
    }

    #[test]
    fn mis_examples() {
        let p = mis_to_poly(&single_edge(), 4.0).unwrap();
        let (argmin, val) = oracle::brute_force_min(&p).unwrap();
        assert_eq!(val, -1.0);
        assert!(argmin == vec![0, 1] || argmin == vec![1, 0]);

        let empty = WeightedGraph::new(3, vec![]).unwrap();
        let p = mis_to_poly(&empty, 4.0).unwrap();
        let (argmin, val) = oracle::brute_force_min(&p).unwrap();
        assert_eq!(val, -3.0);
        assert_eq!(argmin, vec![1, 1, 1]);

        let p = mis_to_poly(&triangle(), 4.0).unwrap();
        assert_eq!(p.evaluate(&[1.0, 1.0, 1.0]).unwrap(), 9.0);
        assert!(mis_to_poly(&triangle(), 0.0).is_err());
    }

    #[test]
    fn cnf_paper_example_expansion() {
        // (l1 v l2 v -l3) and (-l1 v l3), 0-indexed variables
        let f = CnfFormula::new(
            3,
            vec![
                vec![lit(0, false), lit(1, false), lit(2, true)],
                vec![lit(0, true), lit(2, false)],
            ],
        )
        .unwrap();
        let p = cnf_to_poly(&f);
        // x0 + x2 - 2 x0 x2 - x1 x2 + x0 x1 x2 after merging
        let expected: Vec<(Vec<u32>, f64)> = vec![
            (vec![0], 1.0),
            (vec![2], 1.0),
            (vec![0, 1, 2], 1.0),
            (vec![0, 2], -2.0),
            (vec![1, 2], -1.0),
        ];
        assert_eq!(p.terms().len(), 5);
        for (vars, coeff) in expected {
            let found = p
                .terms()
                .iter()
                .find(|t| t.vars == vars)
                .unwrap_or_else(|| panic!("missing monomial {vars:?}"));
            assert_eq!(found.coeff, coeff, "coefficient of {vars:?}");
        }
        assert_eq!(p.constant_term(), 0.0);
        // (1,0,1) satisfies both clauses, (1,0,0) violates the second
        assert_eq!(p.evaluate(&[1.0, 0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(p.evaluate(&[1.0, 0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn cnf_unit_clause() {
        let f = CnfFormula::new(1, vec![vec![lit(0, false)]]).unwrap();
        let p = cnf_to_poly(&f);
        assert_eq!(p.evaluate(&[1.0]).unwrap(), 0.0);
        assert_eq!(p.evaluate(&[0.0]).unwrap(), 1.0);
    }

    #[test]
    fn cnf_matches_direct_unsat_count_on_random_formulas() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 10;
        let clauses: Vec<Vec<Literal>> = (0..30)
            .map(|_| {
                let mut vars: Vec<usize> = (0..n).collect();
                vars.shuffle(&mut rng);
                vars.truncate(3);
                vars.into_iter()
                    .map(|v| lit(v, rng.gen_bool(0.5)))
                    .collect()
            })
            .collect();
        let f = CnfFormula::new(n, clauses).unwrap();
        let p = cnf_to_poly(&f);
        assert!(p.degree() <= f.k_max());
        for _ in 0..50 {
            let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2) as u8).collect();
            let xf: Vec<f64> = x.iter().map(|&b| b as f64).collect();
            let direct = decode_sat(&x, &f).unwrap();
            let via_poly = p.evaluate(&xf).unwrap();
            assert!((via_poly - direct as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn cnf_tautology_and_duplicates() {
        let f = CnfFormula::new(
            2,
            vec![
                vec![lit(0, false), lit(0, true)],                 // tautology
                vec![lit(1, false), lit(1, false), lit(0, false)], // duplicate literal
            ],
        )
        .unwrap();
        assert_eq!(f.tautologies_dropped(), 1);
        assert_eq!(f.clauses().len(), 1);
        assert_eq!(f.clauses()[0].len(), 2);
        assert!(CnfFormula::new(1, vec![vec![]]).is_err());
    }

    #[test]
    fn decoders_match_sign_adjusted_polynomials() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let g = triangle();
        let cut_poly = maxcut_to_poly(&g);
        let mis_poly = mis_to_poly(&g, 4.0).unwrap();
        for _ in 0..100 {
            let x: Vec<u8> = (0..3).map(|_| rng.gen_range(0..2) as u8).collect();
            let xf: Vec<f64> = x.iter().map(|&b| b as f64).collect();
            let cut = decode_cut(&x, &g).unwrap();
            assert_eq!(cut, -cut_poly.evaluate(&xf).unwrap());
            let (size, feasible) = decode_mis(&x, &g).unwrap();
            let penalized = -mis_poly.evaluate(&xf).unwrap();
            if feasible {
                assert_eq!(penalized, size as f64);
            } else {
                assert!(penalized < size as f64);
            }
        }
    }

    #[test]
    fn decode_examples() {
        let g = single_edge();
        assert_eq!(decode_cut(&[1, 0], &g).unwrap(), 1.0);
        assert_eq!(decode_cut(&[1, 1], &g).unwrap(), 0.0);
        assert_eq!(decode_cut(&[1, 0, 0], &triangle()).unwrap(), 2.0);
        assert_eq!(decode_mis(&[1, 0], &g).unwrap(), (1, true));
        assert_eq!(decode_mis(&[1, 1], &g).unwrap(), (2, false));
        let empty = WeightedGraph::new(3, vec![]).unwrap();
        assert_eq!(decode_mis(&[1, 1, 1], &empty).unwrap(), (3, true));

        let f = CnfFormula::new(1, vec![vec![lit(0, false)], vec![lit(0, true)]]).unwrap();
        assert_eq!(decode_sat(&[1], &f).unwrap(), 1);

        let paper = CnfFormula::new(
            3,
            vec![
                vec![lit(0, false), lit(1, false), lit(2, true)],
                vec![lit(0, true), lit(2, false)],
            ],
        )
        .unwrap();
        assert_eq!(decode_sat(&[1, 0, 1], &paper).unwrap(), 0);
        assert_eq!(decode_sat(&[1, 0, 0], &paper).unwrap(), 1);
    }

    #[test]
    fn mis_minimizers_are_feasible_for_lambda_4() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for trial in 0..50 {
            let n = rng.gen_range(4..=10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v, 1.0));
                    }
                }
            }
            let g = WeightedGraph::new(n, edges).unwrap();
            let p = mis_to_poly(&g, 4.0).unwrap();
            let (_, min) = oracle::brute_force_min(&p).unwrap();
            // every minimizer must be an independent set
            for bits in 0..(1u64 << n) {
                let x = oracle::bits_to_vec(n, bits);
                let xf: Vec<f64> = x.iter().map(|&b| b as f64).collect();
                if p.evaluate(&xf).unwrap() == min {
                    let (_, feasible) = decode_mis(&x, &g).unwrap();
                    assert!(feasible, "trial {trial}: infeasible minimizer {x:?}");
                }
            }
        }
    }

    #[test]
    fn problem_kind_validation() {
        assert!(ProblemKind::Mis { lambda: 4.0 }.validate().is_ok());
        assert!(ProblemKind::Mis { lambda: 0.0 }.validate().is_err());
        assert!(ProblemKind::MaxKCut { k: 2 }.validate().is_ok());
        assert!(ProblemKind::MaxKCut { k: 1 }.validate().is_err());
        assert_eq!(ProblemKind::MaxKSat.name(), "maxksat");
    }

    #[test]
    fn cnf_term_count_bound() {
        let f = CnfFormula::new(
            4,
            vec![
                vec![lit(0, false), lit(1, false), lit(2, false), lit(3, false)],
                vec![lit(0, true), lit(1, true)],
            ],
        )
        .unwrap();
        let p = cnf_to_poly(&f);
        let bound: usize = f.clauses().iter().map(|c| 1usize << c.len()).sum();
        assert!(p.terms().len() <= bound);
        assert!(p.degree() <= f.k_max());
    }
}
