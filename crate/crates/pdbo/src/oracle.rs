//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates the binary hypercube (or `k^n` assignments)
//! and is deliberately independent of the gradient-based solvers, so it can
//! serve as the reference side of every optimality and extension check.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::poly::MultilinearPolynomial;

/// Enumeration cap for [`brute_force_min`].
pub const BRUTE_FORCE_CAP: usize = 24;
/// Enumeration cap for [`expectation_extension`] and [`theta_exact`].
pub const EXPECTATION_CAP: usize = 20;

/// Variable `i` maps to bit `n-1-i`, so ascending counters enumerate
/// assignment vectors in lexicographic order.
fn vector_of(n: usize, bits: u64) -> Vec<f64> {
    (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as f64).collect()
}

fn bits_of(n: usize, x: &[u8]) -> u64 {
    x.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << (n - 1 - i)))
}

/// Exact minimum of a polynomial over `{0,1}^n` by full enumeration.
///
/// Ties are broken toward the lexicographically smallest assignment vector.
pub fn brute_force_min(p: &MultilinearPolynomial) -> Result<(Vec<u8>, f64)> {
    let n = p.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capacity {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if n == 0 {
        return Ok((Vec::new(), p.constant_term()));
    }

    // Bitmask per term: the monomial is 1 exactly when all its bits are set.
    let masks: Vec<(u64, f64)> = p
        .terms()
        .iter()
        .map(|t| {
            let mask = t
                .vars
                .iter()
                .fold(0u64, |acc, &v| acc | (1u64 << (n - 1 - v as usize)));
            (mask, t.coeff)
        })
        .collect();
    let constant = p.constant_term();

    let mut best_bits = 0u64;
    let mut best_val = f64::INFINITY;
    for bits in 0..(1u64 << n) {
        let mut val = constant;
        for &(mask, coeff) in &masks {
            if bits & mask == mask {
                val += coeff;
            }
        }
        if val < best_val {
            best_val = val;
            best_bits = bits;
        }
    }

    let argmin = (0..n)
        .map(|i| ((best_bits >> (n - 1 - i)) & 1) as u8)
        .collect();
    Ok((argmin, best_val))
}

/// Multilinear extension as an explicit Bernoulli expectation:
/// `sum over xi in {0,1}^n of P_x(xi) * F(xi)`.
///
/// `f` is any real function on binary points, supplied as a closure over
/// `&[f64]` slices whose entries are 0.0 or 1.0.
pub fn expectation_extension<F>(n: usize, f: F, x: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    if n > EXPECTATION_CAP {
        return Err(Error::Capacity {
            n,
            cap: EXPECTATION_CAP,
        });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if n == 0 {
        return Ok(f(&[]));
    }

    // Tensor product of per-coordinate Bernoulli weights, built level by
    // level in the same bit order as vector_of.
    let mut probs = vec![1.0f64];
    for &p1 in x {
        let p0 = 1.0 - p1;
        let mut next = Vec::with_capacity(probs.len() * 2);
        for &p in &probs {
            next.push(p * p0); // bit 0
            next.push(p * p1); // bit 1
        }
        probs = next;
    }

    let mut acc = 0.0;
    for bits in 0..(1u64 << n) {
        let point = vector_of(n, bits);
        acc += probs[bits as usize] * f(&point);
    }
    Ok(acc)
}

/// Convenience wrapper evaluating a polynomial's own binary values.
pub fn expectation_extension_poly(p: &MultilinearPolynomial, x: &[f64]) -> Result<f64> {
    expectation_extension(p.n(), |point| p.evaluate_unchecked(point), x)
}

/// Exact `Theta = max_{x in [0,1]^n} ||grad f(x)||_1`.
///
/// Each `|df/dx_i|` is the absolute value of a function affine in every
/// coordinate, hence convex, so the maximum of the sum is attained at a
/// vertex of the cube; enumerating vertices is exact.
pub fn theta_exact(p: &MultilinearPolynomial) -> Result<f64> {
    let n = p.n();
    if n > EXPECTATION_CAP {
        return Err(Error::Capacity {
            n,
            cap: EXPECTATION_CAP,
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let mut grad = vec![0.0; n];
    let mut best = 0.0f64;
    for bits in 0..(1u64 << n) {
        let x = vector_of(n, bits);
        p.gradient_into(&x, &mut grad);
        let norm: f64 = grad.iter().map(|g| g.abs()).sum();
        if norm > best {
            best = norm;
        }
    }
    Ok(best)
}

/// Exact maximum k-cut value by enumerating all `k^n` assignments.
///
/// Returns the best assignment (ties toward the lexicographically smallest
/// label vector) and its cut weight.
pub fn kcut_brute_force(g: &WeightedGraph, k: usize) -> Result<(Vec<u32>, f64)> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("k must be >= 2, got {k}")));
    }
    let n = g.n();
    let total = (k as f64).powi(n as i32);
    if total > 4e7 {
        return Err(Error::Capacity { n, cap: 16 });
    }

    let mut assign = vec![0u32; n];
    let mut best_assign = assign.clone();
    let mut best = f64::NEG_INFINITY;
    loop {
        let cut: f64 = g
            .edges()
            .iter()
            .map(|&(u, v, w)| if assign[u] != assign[v] { w } else { 0.0 })
            .sum();
        if cut > best {
            best = cut;
            best_assign = assign.clone();
        }
        // odometer increment, most significant at index 0 for lex order
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok((best_assign, best));
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < k as u32 {
                break;
            }
            assign[pos] = 0;
        }
    }
}

/// Re-encode a binary solution as the solver's `u8` vector.
pub fn bits_to_vec(n: usize, bits: u64) -> Vec<u8> {
    (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect()
}

#[allow(dead_code)]
fn vec_to_bits(x: &[u8]) -> u64 {
    bits_of(x.len(), x)
}
