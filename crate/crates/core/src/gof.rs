//! One-sample Kolmogorov–Smirnov goodness of fit against a Lomax model.
//!
//! The p-value uses the exact finite-`n` null distribution of `D_n`
//! (Marsaglia, Tsang & Wang, "Evaluating Kolmogorov's distribution", JSS
//! 2003). For `n > 10⁴` it switches to the asymptotic Kolmogorov series.
//!
//! Parameters fitted from the same data make the test conservative; no
//! Lilliefors-type correction is applied.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{positive, Error, Result};
use crate::estimators::{mle, SufficientStat};
use crate::lomax::{LomaxParams, Sample};
use crate::sum::NeumaierSum;

/// Above this sample size the asymptotic series replaces the exact method.
pub const EXACT_P_VALUE_MAX_N: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub d_stat: f64,
    pub p_value: f64,
    pub n: usize,
    pub fitted: LomaxParams,
}

impl KsResult {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// How `α` is chosen when the K-S test is run against a fitted model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMethod {
    /// `α̂ = n / T`.
    Mle,
    /// The `α` that minimises the K-S distance for the given `λ`.
    MinDistance,
}

impl fmt::Display for FitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMethod::Mle => "mle",
            FitMethod::MinDistance => "min-distance",
        })
    }
}

impl FromStr for FitMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mle" => Ok(FitMethod::Mle),
            "min-distance" => Ok(FitMethod::MinDistance),
            other => Err(format!(
                "unknown fit method `{other}` (expected mle or min-distance)"
            )),
        }
    }
}

/// `D = sup |F_n − F|` for an arbitrary continuous CDF.
///
/// Observations are stably sorted; ties are handled by the sorted-index
/// formula without special casing.
pub fn ks_statistic_by<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

pub fn ks_statistic(values: &[f64], params: &LomaxParams) -> Result<f64> {
    check_observations(values)?;
    ks_statistic_by(values, |x| params.cdf(x).expect("x > 0 checked above"))
}

fn check_observations(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    for (index, &value) in values.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveObservation { index, value });
        }
    }
    Ok(())
}

/// Two-sided p-value `P(D_n ≥ d)` under the null.
pub fn ks_p_value(d: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::Domain {
            name: "d",
            value: d,
            domain: "[0, 1]",
        });
    }
    let p = if n > EXACT_P_VALUE_MAX_N {
        kolmogorov_sf(d * (n as f64).sqrt())
    } else if in_upper_tail(n, d) {
        2.0 * smirnov_sf(n, d)
    } else {
        1.0 - kolmogorov_cdf(n, d)
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Region where `P(D_n ≥ d)` is taken as `2·P(D⁺_n ≥ d)`.
///
/// For `d ≥ 1/2` the two one-sided events are disjoint and the doubling is
/// exact. Beyond `n·d² > 7.24` (or `> 3.76` once `n > 99`) the overlap is
/// below double precision relative to the result, and the matrix method
/// would need an impractically large matrix.
fn in_upper_tail(n: usize, d: f64) -> bool {
    let s = d * d * n as f64;
    d >= 0.5 || s > 7.24 || (s > 3.76 && n > 99)
}

/// Exact one-sided tail `P(D⁺_n ≥ d)` (Smirnov–Birnbaum–Tingey).
///
/// `d · Σ_{j=0}^{⌊n(1−d)⌋} C(n,j) (1 − d − j/n)^{n−j} (d + j/n)^{j−1}`,
/// summed in log space.
pub fn smirnov_sf(n: usize, d: f64) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    if d > 1.0 {
        return 0.0;
    }
    let nf = n as f64;
    let last = (nf * (1.0 - d)).floor() as usize;
    let mut ln_choose = 0.0;
    let mut total = NeumaierSum::new();
    for j in 0..=last.min(n) {
        if j > 0 {
            ln_choose += ((n - j + 1) as f64).ln() - (j as f64).ln();
        }
        let jf = j as f64;
        let lower = 1.0 - d - jf / nf;
        if lower <= 0.0 {
            continue;
        }
        let upper = d + jf / nf;
        let ln_term = ln_choose + (nf - jf) * lower.ln() + (jf - 1.0) * upper.ln();
        total.add(ln_term.exp());
    }
    (d * total.total()).clamp(0.0, 1.0)
}

/// Limiting survival function `P(K > t) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²t²}`.
///
/// Summation stops once a term drops below `1e-12`. For small `t` the
/// alternating series converges slowly, so the equivalent theta-function
/// form `1 − (√(2π)/t) Σ e^{−(2k−1)²π²/(8t²)}` is used instead.
pub fn kolmogorov_sf(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t < 1.0 {
        let x = -std::f64::consts::PI.powi(2) / (8.0 * t * t);
        let mut acc = 0.0;
        for k in 1..=100 {
            let j = (2 * k - 1) as f64;
            let term = (j * j * x).exp();
            acc += term;
            if term < 1e-12 {
                break;
            }
        }
        return (1.0 - (2.0 * std::f64::consts::PI).sqrt() / t * acc).clamp(0.0, 1.0);
    }
    let mut acc = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * t * t).exp();
        acc += sign * term;
        if term < 1e-12 {
            break;
        }
        sign = -sign;
    }
    (2.0 * acc).clamp(0.0, 1.0)
}

/// Exact `P(D_n < d)` by the Marsaglia–Tsang–Wang matrix method.
pub fn kolmogorov_cdf(n: usize, d: f64) -> f64 {
    let nf = n as f64;
    if d <= 0.5 / nf {
        return 0.0;
    }
    if d >= 1.0 {
        return 1.0;
    }
    if in_upper_tail(n, d) {
        return 1.0 - (2.0 * smirnov_sf(n, d)).min(1.0);
    }

    let k = (nf * d) as usize + 1;
    let m = 2 * k - 1;
    let h = k as f64 - nf * d;

    let mut hmat = Matrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            if i + 1 >= j {
                hmat[(i, j)] = 1.0;
            }
        }
    }
    for i in 0..m {
        hmat[(i, 0)] -= h.powi(i as i32 + 1);
        hmat[(m - 1, i)] -= h.powi((m - i) as i32);
    }
    if 2.0 * h - 1.0 > 0.0 {
        hmat[(m - 1, 0)] += (2.0 * h - 1.0).powi(m as i32);
    }
    for i in 0..m {
        for j in 0..m {
            if i + 1 > j {
                for g in 1..=(i + 1 - j) {
                    hmat[(i, j)] /= g as f64;
                }
            }
        }
    }

    let (q, mut exponent) = matrix_power(&hmat, 0, n);
    let mut s = q[(k - 1, k - 1)];
    for i in 1..=n {
        s = s * i as f64 / nf;
        if s < 1e-140 {
            s *= 1e140;
            exponent -= 140;
        }
    }
    s * 10f64.powi(exponent)
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone)]
struct Matrix {
    m: usize,
    data: Vec<f64>,
}

impl Matrix {
    fn zeros(m: usize) -> Self {
        Self {
            m,
            data: vec![0.0; m * m],
        }
    }

    fn mul(&self, other: &Matrix) -> Matrix {
        let m = self.m;
        let mut out = Matrix::zeros(m);
        for i in 0..m {
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * m..(k + 1) * m];
                let dst = &mut out.data[i * m..(i + 1) * m];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.m + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.m + j]
    }
}

/// `A^n` with a decimal exponent carried alongside to avoid overflow.
fn matrix_power(a: &Matrix, a_exp: i32, n: usize) -> (Matrix, i32) {
    if n == 1 {
        return (a.clone(), a_exp);
    }
    let (half, half_exp) = matrix_power(a, a_exp, n / 2);
    let mut b = half.mul(&half);
    let mut b_exp = 2 * half_exp;
    if n % 2 == 1 {
        b = a.mul(&b);
        b_exp += a_exp;
    }
    let centre = b.m / 2;
    if b[(centre, centre)] > 1e140 {
        for v in &mut b.data {
            *v *= 1e-140;
        }
        b_exp += 140;
    }
    (b, b_exp)
}

/// Chooses `α` for the fitted model under `method`.
pub fn fit_alpha(values: &[f64], lambda: f64, method: FitMethod) -> Result<f64> {
    let sample = Sample::new(values.to_vec(), lambda)?;
    match method {
        FitMethod::Mle => Ok(mle(SufficientStat::from(&sample))),
        FitMethod::MinDistance => min_distance_alpha(&sample),
    }
}

/// Minimum-Kolmogorov-distance estimate of `α` with `λ` held fixed.
///
/// A log-spaced scan over `[α̂_ML/100, 100·α̂_ML]` brackets the minimum,
/// which golden-section search then refines.
pub fn min_distance_alpha(sample: &Sample) -> Result<f64> {
    let lambda = sample.lambda();
    let values = sample.values();
    let distance = |log_alpha: f64| -> f64 {
        let params = LomaxParams::new(log_alpha.exp(), lambda).expect("exp is positive");
        ks_statistic(values, &params).expect("validated sample")
    };
    let centre = mle(SufficientStat::from(sample)).ln();
    let span = 100f64.ln();
    const STEPS: usize = 4000;
    let grid = |i: usize| centre - span + 2.0 * span * i as f64 / STEPS as f64;
    let (best, _) =
        (0..=STEPS)
            .map(|i| (i, distance(grid(i))))
            .fold(
                (0, f64::INFINITY),
                |acc, (i, d)| if d < acc.1 { (i, d) } else { acc },
            );
    let mut lo = grid(best.saturating_sub(1));
    let mut hi = grid((best + 1).min(STEPS));

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = distance(x1);
    let mut f2 = distance(x2);
    while hi - lo > 1e-12 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = distance(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = distance(x2);
        }
    }
    let candidate = 0.5 * (lo + hi);
    let best_grid = grid(best);
    let chosen = if distance(candidate) <= distance(best_grid) {
        candidate
    } else {
        best_grid
    };
    positive("alpha", chosen.exp())
}

/// K-S test of `values` against `Lomax(α, λ)`.
pub fn ks_test(values: &[f64], params: LomaxParams) -> Result<KsResult> {
    let d_stat = ks_statistic(values, &params)?;
    Ok(KsResult {
        d_stat,
        p_value: ks_p_value(d_stat, values.len())?,
        n: values.len(),
        fitted: params,
    })
}

/// Fits `α` by `method` at the given `λ`, then runs the K-S test.
pub fn ks_test_fitted(values: &[f64], lambda: f64, method: FitMethod) -> Result<KsResult> {
    let alpha = fit_alpha(values, lambda, method)?;
    ks_test(values, LomaxParams::new(alpha, lambda)?)
}
