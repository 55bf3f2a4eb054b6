//! Posterior mean squared error of the Bayes estimators and its expectation
//! over the hyperprior (E-MSE).
//!
//! For posterior `Gamma(s, rate r)` with `s = n + a`, `r = T + b`:
//!
//! ```text
//! MSE_SEL = s / r²
//! MSE_KL  = 2s[s − √(s(s−1))] / r²
//! MSE_EL  = (s + 1) / r²
//! ```
//!
//! Averaging `1/r²` over `b ~ U(0, c)` gives `1/(T(T+c))`.

use crate::error::{Error, Result};
use crate::estimators::{GammaHyper, HyperBound, LossKind, SufficientStat};
use crate::quadrature::integrate_unit_sqrt_substituted;

/// `s − √(s(s−1))` rewritten without cancellation.
#[inline]
fn kl_gap(s: f64) -> f64 {
    s / (s + (s * (s - 1.0)).sqrt())
}

/// `E[(α − α̂_B)² | x]` for fixed hyperparameters.
pub fn bayes_mse(loss: LossKind, hyper: GammaHyper, stat: SufficientStat) -> f64 {
    let s = hyper.a() + stat.n() as f64;
    let r = hyper.b() + stat.t();
    let r2 = r * r;
    match loss {
        LossKind::Sel => s / r2,
        LossKind::Kl => 2.0 * s * kl_gap(s) / r2,
        LossKind::El => (s + 1.0) / r2,
    }
}

/// Expected MSE of the E-Bayes estimator over the hyperprior `(0,1) × (0,c)`.
pub fn emse(loss: LossKind, c: HyperBound, stat: SufficientStat) -> f64 {
    let n = stat.n() as f64;
    let t = stat.t();
    let inv = 1.0 / (t * (t + c.get()));
    match loss {
        LossKind::Sel => (n + 0.5) * inv,
        LossKind::Kl => 2.0 * kl_mse_integral_f64(n) * inv,
        LossKind::El => (n + 1.5) * inv,
    }
}

/// `∫_0^1 (n+a)[(n+a) − √((a+n)(a+n−1))] da`.
pub fn kl_mse_integral(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    Ok(kl_mse_integral_f64(n as f64))
}

pub(crate) fn kl_mse_integral_f64(n: f64) -> f64 {
    integrate_unit_sqrt_substituted(|a| {
        let s = a + n;
        s * kl_gap(s)
    })
}
