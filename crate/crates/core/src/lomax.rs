//! The Lomax (Pareto type II) lifetime distribution.
//!
//! ```text
//! f(x) = (α/λ) (1 + x/λ)^-(α+1)        x ≥ 0
//! F(x) = 1 − (1 + x/λ)^-α
//! R(t) = (1 + t/λ)^-α
//! h(t) = (α/λ) / (1 + t/λ)
//! ```
//!
//! All powers are evaluated through `ln_1p` so that small `x/λ` does not lose
//! digits to cancellation.

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::sum::NeumaierSum;

/// Shape `alpha` and scale `lambda` of a Lomax distribution.
///
/// Both are validated once at construction; the density and sampling methods
/// do not re-check them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LomaxParams {
    alpha: f64,
    lambda: f64,
}

impl LomaxParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
            lambda: positive("lambda", lambda)?,
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    fn log_base(&self, x: f64) -> f64 {
        (x / self.lambda).ln_1p()
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_nonnegative("x", x)?;
        let scale = self.alpha / self.lambda;
        Ok(scale * (-(self.alpha + 1.0) * self.log_base(x)).exp())
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_nonnegative("x", x)?;
        Ok(-(-self.alpha * self.log_base(x)).exp_m1())
    }

    /// Survival function `R(t) = P(X > t)`.
    pub fn reliability(&self, t: f64) -> Result<f64> {
        check_nonnegative("t", t)?;
        Ok((-self.alpha * self.log_base(t)).exp())
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        check_nonnegative("t", t)?;
        Ok((self.alpha / self.lambda) / (1.0 + t / self.lambda))
    }

    /// `λ/(α−1)`; undefined unless `α > 1`.
    pub fn mean(&self) -> Result<f64> {
        if self.alpha > 1.0 {
            Ok(self.lambda / (self.alpha - 1.0))
        } else {
            Err(Error::MomentUndefined {
                moment: "mean",
                alpha: self.alpha,
                min: 1.0,
            })
        }
    }

    /// `αλ²/((α−1)²(α−2))`; undefined unless `α > 2`.
    pub fn variance(&self) -> Result<f64> {
        if self.alpha > 2.0 {
            let am1 = self.alpha - 1.0;
            Ok(self.alpha * self.lambda * self.lambda / (am1 * am1 * (self.alpha - 2.0)))
        } else {
            Err(Error::MomentUndefined {
                moment: "variance",
                alpha: self.alpha,
                min: 2.0,
            })
        }
    }

    /// Inverse CDF, `λ[(1−u)^(−1/α) − 1]` for `u ∈ [0, 1)`.
    pub fn sample_inverse(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain {
                name: "u",
                value: u,
                domain: "[0, 1)",
            });
        }
        Ok(self.quantile_unchecked(u))
    }

    /// [`sample_inverse`](Self::sample_inverse) without the range check, for
    /// hot loops whose uniforms are already known to lie in `[0, 1)`.
    #[inline]
    pub fn quantile_unchecked(&self, u: f64) -> f64 {
        self.lambda * (-(-u).ln_1p() / self.alpha).exp_m1()
    }
}

fn check_nonnegative(name: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            domain: "[0, ∞)",
        })
    }
}

/// `T = Σ ln(1 + x_i/λ)`, the sufficient statistic for `α` when `λ` is known.
///
/// Terms are added in input order with compensated summation.
pub fn sufficient_t(values: &[f64], lambda: f64) -> Result<f64> {
    let lambda = positive("lambda", lambda)?;
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut acc = NeumaierSum::new();
    for (index, &value) in values.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveObservation { index, value });
        }
        acc.add((value / lambda).ln_1p());
    }
    let t = acc.total();
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(Error::Domain {
            name: "T",
            value: t,
            domain: "(0, ∞); the data overflow or underflow at this λ",
        })
    }
}

/// A validated set of positive observations together with its sufficient
/// statistic for a fixed scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
    lambda: f64,
    t_stat: f64,
}

impl Sample {
    pub fn new(values: Vec<f64>, lambda: f64) -> Result<Self> {
        let t_stat = sufficient_t(&values, lambda)?;
        Ok(Self {
            values,
            lambda,
            t_stat,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn t_stat(&self) -> f64 {
        self.t_stat
    }

    /// The same observations with `T` recomputed for another scale.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.values.clone(), lambda)
    }
}
