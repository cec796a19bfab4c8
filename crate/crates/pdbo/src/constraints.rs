//! Binarity constraint functions.
//!
//! Every kind is convex and continuous on `[0,1]`, vanishes at both
//! endpoints, is symmetric about 1/2 and has its unique interior critical
//! point there, so `g(x) = 0` on `[0,1]` forces `x` binary. The quadratic
//! kind `x^2 - x` is the default used by the solvers; the entropy and
//! even-degree polynomial kinds are selectable for experimentation.

use crate::error::{Error, Result};

/// A binarity penalty `g` in scalar form, plus the simplex-column variants
/// used by the k-way partition solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ConstraintFunction {
    /// `g(x) = x^2 - x`
    #[default]
    Quadratic,
    /// `g(x) = x ln x + (1-x) ln(1-x)`, extended with `0 ln 0 = 0`
    Entropy,
    /// `g(x) = (2x-1)^{2d} - 1`, `d >= 1`
    EvenPoly { d: u32 },
}

impl ConstraintFunction {
    /// Constructor for the even-degree polynomial kind; `d = 0` is rejected.
    pub fn even_poly(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig(
                "evenpoly degree d must be >= 1".into(),
            ));
        }
        Ok(ConstraintFunction::EvenPoly { d })
    }

    /// `g(x)` on `[0,1]`; always `<= 0` there.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("g expects x in [0,1], got {x}")));
        }
        Ok(self.value_raw(x))
    }

    pub(crate) fn value_raw(&self, x: f64) -> f64 {
        match *self {
            ConstraintFunction::Quadratic => x * x - x,
            ConstraintFunction::Entropy => {
                let mut acc = 0.0;
                if x > 0.0 {
                    acc += x * x.ln();
                }
                if x < 1.0 {
                    acc += (1.0 - x) * (1.0 - x).ln();
                }
                acc
            }
            ConstraintFunction::EvenPoly { d } => (2.0 * x - 1.0).powi(2 * d as i32) - 1.0,
        }
    }

    /// `g'(x)`; zero exactly at `x = 1/2`, negative below it.
    ///
    /// The entropy derivative diverges at the endpoints, so that kind only
    /// accepts the open interval; the solver clamps entropy iterates away
    /// from 0 and 1 before calling this.
    pub fn deriv(&self, x: f64) -> Result<f64> {
        match *self {
            ConstraintFunction::Entropy => {
                if !(x > 0.0 && x < 1.0) {
                    return Err(Error::Domain(format!(
                        "entropy g' expects x in (0,1), got {x}"
                    )));
                }
            }
            _ => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::Domain(format!("g' expects x in [0,1], got {x}")));
                }
            }
        }
        Ok(self.deriv_raw(x))
    }

    pub(crate) fn deriv_raw(&self, x: f64) -> f64 {
        match *self {
            ConstraintFunction::Quadratic => 2.0 * x - 1.0,
            ConstraintFunction::Entropy => (x / (1.0 - x)).ln(),
            ConstraintFunction::EvenPoly { d } => {
                4.0 * d as f64 * (2.0 * x - 1.0).powi(2 * d as i32 - 1)
            }
        }
    }

    /// Simplex-column penalty: zero exactly at the one-hot vertices,
    /// strictly negative elsewhere on the simplex.
    ///
    /// Only the quadratic (`sum X^2 - 1`) and entropy (`sum X ln X`)
    /// constructions exist for columns; the even-polynomial kind has no
    /// simplex form and is rejected.
    pub fn simplex_value(&self, col: &[f64]) -> Result<f64> {
        check_simplex(col)?;
        match *self {
            ConstraintFunction::Quadratic | ConstraintFunction::Entropy => {
                Ok(self.simplex_value_raw(col))
            }
            ConstraintFunction::EvenPoly { .. } => Err(Error::UnsupportedKind(
                "evenpoly has no simplex-column form".into(),
            )),
        }
    }

    pub(crate) fn simplex_value_raw(&self, col: &[f64]) -> f64 {
        match *self {
            ConstraintFunction::Quadratic => col.iter().map(|&v| v * v).sum::<f64>() - 1.0,
            ConstraintFunction::Entropy => col
                .iter()
                .map(|&v| if v > 0.0 { v * v.ln() } else { 0.0 })
                .sum(),
            ConstraintFunction::EvenPoly { .. } => {
                unreachable!("evenpoly has no simplex form")
            }
        }
    }

    /// Componentwise gradient of the simplex penalty.
    pub fn simplex_grad(&self, col: &[f64]) -> Result<Vec<f64>> {
        check_simplex(col)?;
        match *self {
            ConstraintFunction::Quadratic => Ok(col.iter().map(|&v| 2.0 * v).collect()),
            ConstraintFunction::Entropy => {
                if col.contains(&0.0) {
                    return Err(Error::Domain(
                        "entropy simplex gradient needs strictly positive entries".into(),
                    ));
                }
                Ok(col.iter().map(|&v| 1.0 + v.ln()).collect())
            }
            ConstraintFunction::EvenPoly { .. } => Err(Error::UnsupportedKind(
                "evenpoly has no simplex-column form".into(),
            )),
        }
    }

    /// Config-string name, the inverse of [`std::str::FromStr`].
    pub fn name(&self) -> String {
        match *self {
            ConstraintFunction::Quadratic => "quadratic".into(),
            ConstraintFunction::Entropy => "entropy".into(),
            ConstraintFunction::EvenPoly { d } => format!("evenpoly:{d}"),
        }
    }

    /// True when `g'(1/2 - delta)` and `g(1/2)` are finite, i.e. the dual
    /// lower bound of the theory diagnostics is computable.
    pub fn has_finite_endpoint_derivative(&self) -> bool {
        !matches!(self, ConstraintFunction::Entropy)
    }
}

fn check_simplex(col: &[f64]) -> Result<()> {
    if col.is_empty() {
        return Err(Error::NotOnSimplex("empty column".into()));
    }
    if col.iter().any(|&v| v < 0.0) {
        return Err(Error::NotOnSimplex("negative entry".into()));
    }
    let sum: f64 = col.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NotOnSimplex(format!("entries sum to {sum}")));
    }
    Ok(())
}

impl std::str::FromStr for ConstraintFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(ConstraintFunction::Quadratic),
            "entropy" => Ok(ConstraintFunction::Entropy),
            other => {
                if let Some(d) = other.strip_prefix("evenpoly:") {
                    let d: u32 = d.parse().map_err(|_| {
                        Error::InvalidConfig(format!("bad evenpoly degree in {other:?}"))
                    })?;
                    ConstraintFunction::even_poly(d)
                } else {
                    Err(Error::InvalidConfig(format!(
                        "unknown constraint kind {other:?} (expected quadratic, entropy or evenpoly:<d>)"
                    )))
                }
            }
        }
    }
}
