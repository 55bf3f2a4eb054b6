//! Point estimators of the Lomax shape `α` with the scale known.
//!
//! With a `Gamma(a, b)` prior the posterior is `Gamma(n + a, rate T + b)`,
//! giving closed-form Bayes estimators under three losses:
//!
//! | loss | Bayes estimator                 |
//! |------|---------------------------------|
//! | SEL  | `(a+n) / (b+T)`                 |
//! | KL   | `√((a+n)(a+n−1)) / (b+T)`       |
//! | EL   | `(a+n−1) / (b+T)`               |
//!
//! The E-Bayes estimate averages the Bayes estimate over the hyperprior
//! `(a, b) ~ Uniform((0,1) × (0,c))`, which factorises into
//! `(1/c)·ln((T+c)/T)` times an integral over `a` alone.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::quadrature::integrate_unit_sqrt_substituted;

/// The three loss functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    /// Squared error, `(α − δ)²`.
    Sel,
    /// K-loss, `(√(α/δ) − √(δ/α))²`.
    Kl,
    /// Entropy, `δ/α − ln(δ/α) − 1`.
    El,
}

impl LossKind {
    pub const ALL: [LossKind; 3] = [LossKind::Sel, LossKind::Kl, LossKind::El];

    pub fn as_str(self) -> &'static str {
        match self {
            LossKind::Sel => "sel",
            LossKind::Kl => "kl",
            LossKind::El => "el",
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LossKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sel" => Ok(LossKind::Sel),
            "kl" => Ok(LossKind::Kl),
            "el" => Ok(LossKind::El),
            other => Err(format!("unknown loss `{other}` (expected sel, kl or el)")),
        }
    }
}

/// One value per loss function.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossMap<T> {
    pub sel: T,
    pub kl: T,
    pub el: T,
}

impl<T> LossMap<T> {
    pub fn from_fn(mut f: impl FnMut(LossKind) -> T) -> Self {
        Self {
            sel: f(LossKind::Sel),
            kl: f(LossKind::Kl),
            el: f(LossKind::El),
        }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> LossMap<U> {
        LossMap {
            sel: f(&self.sel),
            kl: f(&self.kl),
            el: f(&self.el),
        }
    }
}

impl<T> Index<LossKind> for LossMap<T> {
    type Output = T;

    fn index(&self, loss: LossKind) -> &T {
        match loss {
            LossKind::Sel => &self.sel,
            LossKind::Kl => &self.kl,
            LossKind::El => &self.el,
        }
    }
}

impl<T> IndexMut<LossKind> for LossMap<T> {
    fn index_mut(&mut self, loss: LossKind) -> &mut T {
        match loss {
            LossKind::Sel => &mut self.sel,
            LossKind::Kl => &mut self.kl,
            LossKind::El => &mut self.el,
        }
    }
}

/// Gamma prior hyperparameters with `0 < a < 1` and `b > 0`, the region in
/// which the prior density is decreasing in `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaHyper {
    a: f64,
    b: f64,
}

impl GammaHyper {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(Self {
            a,
            b: positive("b", b)?,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Upper bound `c` of the uniform hyperprior on `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperBound(f64);

impl HyperBound {
    pub fn new(c: f64) -> Result<Self> {
        positive("c", c).map(Self)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The data summary `(n, T)` on which every estimator depends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SufficientStat {
    n: usize,
    t: f64,
}

impl SufficientStat {
    pub fn new(n: usize, t: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroCount);
        }
        Ok(Self {
            n,
            t: positive("t_stat", t)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

impl From<&crate::lomax::Sample> for SufficientStat {
    fn from(sample: &crate::lomax::Sample) -> Self {
        // Sample guarantees n ≥ 1 and T > 0.
        Self {
            n: sample.n(),
            t: sample.t_stat(),
        }
    }
}

/// Maximum likelihood estimate `n / T`.
pub fn mle(stat: SufficientStat) -> f64 {
    stat.n as f64 / stat.t
}

/// Bayes estimate of `α` for fixed hyperparameters.
pub fn bayes(loss: LossKind, hyper: GammaHyper, stat: SufficientStat) -> f64 {
    let shape = hyper.a + stat.n as f64;
    let rate = hyper.b + stat.t;
    match loss {
        LossKind::Sel => shape / rate,
        LossKind::Kl => (shape * (shape - 1.0)).sqrt() / rate,
        LossKind::El => (shape - 1.0) / rate,
    }
}

/// `(1/c)·ln((T+c)/T)`, the hyperprior average of `1/(b+T)`.
#[inline]
pub(crate) fn mean_inverse_rate(c: HyperBound, t: f64) -> f64 {
    (c.0 / t).ln_1p() / c.0
}

/// E-Bayes estimate of `α`: the Bayes estimate averaged over the uniform
/// hyperprior on `(0,1) × (0,c)`.
pub fn ebayes(loss: LossKind, c: HyperBound, stat: SufficientStat) -> f64 {
    let n = stat.n as f64;
    let shape_avg = match loss {
        LossKind::Sel => n + 0.5,
        LossKind::Kl => kl_integral_f64(n),
        LossKind::El => n - 0.5,
    };
    shape_avg * mean_inverse_rate(c, stat.t)
}

/// `∫_0^1 √((a+n)(a+n−1)) da`.
pub fn kl_integral(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    Ok(kl_integral_f64(n as f64))
}

pub(crate) fn kl_integral_f64(n: f64) -> f64 {
    integrate_unit_sqrt_substituted(|a| ((a + n) * (a + n - 1.0)).sqrt())
}

/// Estimates for one dataset and one hyperprior bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub n: usize,
    pub t_stat: f64,
    pub c: f64,
    pub mle: f64,
    pub eb: LossMap<f64>,
    pub emse: LossMap<f64>,
}

impl EstimateReport {
    pub fn compute(stat: SufficientStat, c: HyperBound) -> Self {
        Self {
            n: stat.n,
            t_stat: stat.t,
            c: c.get(),
            mle: mle(stat),
            eb: LossMap::from_fn(|loss| ebayes(loss, c, stat)),
            emse: LossMap::from_fn(|loss| crate::emse::emse(loss, c, stat)),
        }
    }
}
