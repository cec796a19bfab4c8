//! Sparse multilinear polynomials over `[0,1]^n`.
//!
//! A polynomial is stored as a constant plus a sum of monomials, each a
//! coefficient times a product of distinct variables. Ingestion collapses
//! repeated variables (`x_i^d -> x_i` for `d >= 1`), which makes the stored
//! form the unique multilinear extension of the binary-domain function the
//! raw terms describe. All downstream code may therefore assume the
//! polynomial is affine in every coordinate.

use crate::error::{Error, Result};

/// One monomial: `coeff * prod_{i in vars} x_i` with `vars` sorted and
/// duplicate-free.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub vars: Vec<u32>,
    pub coeff: f64,
}

/// Sparse multilinear polynomial with `n` variables.
///
/// Immutable after construction; evaluation and differentiation are
/// read-only, so a single instance can be shared freely across concurrent
/// solver runs.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPolynomial {
    n: usize,
    terms: Vec<Term>,
    constant: f64,
}

impl MultilinearPolynomial {
    /// Builds a polynomial from raw `(variable multiset, coefficient)` terms.
    ///
    /// Exponents are collapsed (a variable listed several times in one term
    /// contributes a single factor), identical monomials are summed, and
    /// terms whose merged coefficient is exactly zero are dropped. The
    /// empty-set monomial accumulates into the constant.
    pub fn from_terms<I, V>(n: usize, raw_terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, f64)>,
        V: AsRef<[usize]>,
    {
        use std::collections::BTreeMap;

        let mut constant = 0.0f64;
        let mut merged: BTreeMap<Vec<u32>, f64> = BTreeMap::new();

        for (term_index, (vars, coeff)) in raw_terms.into_iter().enumerate() {
            let mut key: Vec<u32> = Vec::with_capacity(vars.as_ref().len());
            for &v in vars.as_ref() {
                if v >= n {
                    return Err(Error::VariableOutOfRange {
                        term_index,
                        var: v,
                        n,
                    });
                }
                key.push(v as u32);
            }
            key.sort_unstable();
            key.dedup(); // x_i^d collapses to x_i

            if key.is_empty() {
                constant += coeff;
            } else {
                *merged.entry(key).or_insert(0.0) += coeff;
            }
        }

        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|&(_, coeff)| coeff != 0.0)
            .map(|(vars, coeff)| Term { vars, coeff })
            .collect();

        Ok(MultilinearPolynomial { n, terms, constant })
    }

    /// Constant polynomial on `n` variables.
    pub fn constant(n: usize, value: f64) -> Self {
        MultilinearPolynomial {
            n,
            terms: Vec::new(),
            constant: value,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Monomials in lexicographic variable order (deterministic iteration).
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    /// Largest number of variables in any monomial.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.vars.len()).max().unwrap_or(0)
    }

    /// Returns the polynomial with every coefficient (and the constant) negated.
    pub fn negated(&self) -> Self {
        MultilinearPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    vars: t.vars.clone(),
                    coeff: -t.coeff,
                })
                .collect(),
            constant: -self.constant,
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Evaluates the polynomial at an arbitrary real point.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        let mut acc = self.constant;
        for term in &self.terms {
            let mut prod = term.coeff;
            for &v in &term.vars {
                prod *= x[v as usize];
            }
            acc += prod;
        }
        acc
    }

    /// Analytic gradient; component `i` sums `coeff * prod_{j != i} x_j`
    /// over the monomials containing `i`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut out = vec![0.0; self.n];
        self.gradient_into(x, &mut out);
        Ok(out)
    }

    /// Accumulates the gradient into a caller-provided buffer (hot path for
    /// the solver; avoids a fresh allocation per iteration).
    pub(crate) fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        out.iter_mut().for_each(|o| *o = 0.0);

        // Per-term prefix/suffix products give all leave-one-out products
        // in O(degree) without divisions.
        let mut suffix: Vec<f64> = Vec::new();
        for term in &self.terms {
            let d = term.vars.len();
            match d {
                1 => {
                    out[term.vars[0] as usize] += term.coeff;
                }
                2 => {
                    let a = term.vars[0] as usize;
                    let b = term.vars[1] as usize;
                    out[a] += term.coeff * x[b];
                    out[b] += term.coeff * x[a];
                }
                _ => {
                    suffix.clear();
                    suffix.resize(d, 1.0);
                    for k in (0..d - 1).rev() {
                        suffix[k] = suffix[k + 1] * x[term.vars[k + 1] as usize];
                    }
                    let mut prefix = 1.0;
                    for k in 0..d {
                        out[term.vars[k] as usize] += term.coeff * prefix * suffix[k];
                        prefix *= x[term.vars[k] as usize];
                    }
                }
            }
        }
    }

    /// Safe upper bound on `Theta = max_{x in [0,1]^n} ||grad f(x)||_1`.
    ///
    /// Each partial derivative is bounded on the unit cube by the sum of the
    /// absolute coefficients of the monomials containing that variable, so
    /// summing `|coeff| * degree` over terms dominates the exact maximum.
    pub fn theta_upper_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.abs() * t.vars.len() as f64)
            .sum()
    }
}
