//! C ABI over `lomax_ebayes`.
//!
//! Every fallible function returns a [`LomaxStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`lomax_last_error`] on the calling thread. Panics never cross the
//! boundary; they are reported as [`LomaxStatus::Panic`].
//!
//! Loss functions are passed as `int32_t` using the [`LomaxLoss`] values, and
//! fit methods using [`LomaxFit`], so that out-of-range integers from C are
//! reported rather than being undefined behaviour.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lomax_ebayes::gof::{ks_test_fitted, FitMethod};
use lomax_ebayes::simulation::SimCellResult;
use lomax_ebayes::{
    bayes, bayes_mse, ebayes, emse, kl_integral, kl_mse_integral, ks_p_value, ks_test, mle,
    run_table, sufficient_t, Error, EstimateReport, GammaHyper, HyperBound, KsResult, LomaxParams,
    LossKind, LossMap, Sample, SufficientStat,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LomaxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Domain = 3,
    MomentUndefined = 4,
    EmptySample = 5,
    InvalidEnum = 6,
    OutOfRange = 7,
    Panic = 99,
}

/// Loss function selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LomaxLoss {
    Sel = 0,
    Kl = 1,
    El = 2,
}

/// How `α` is fitted before a K-S test.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LomaxFit {
    Mle = 0,
    MinDistance = 1,
}

/// Estimates for one `c`; arrays are indexed by [`LomaxLoss`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LomaxEstimate {
    pub n: usize,
    pub t_stat: f64,
    pub c: f64,
    pub mle: f64,
    pub eb: [f64; 3],
    pub emse: [f64; 3],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LomaxKsResult {
    pub d_stat: f64,
    pub p_value: f64,
    pub n: usize,
    pub alpha: f64,
    pub lambda: f64,
}

/// One simulated `(c, n)` cell; arrays are indexed by [`LomaxLoss`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LomaxSimCell {
    pub n: usize,
    pub c: f64,
    pub seed: u64,
    pub eb_mean: [f64; 3],
    pub emse_mean: [f64; 3],
    pub eb_stderr: [f64; 3],
    pub emse_stderr: [f64; 3],
}

/// Opaque validated sample.
pub struct LomaxSample(Sample);

/// Opaque simulation table.
pub struct LomaxSimTable(Vec<SimCellResult>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

struct Failure(LomaxStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let status = match err {
            Error::InvalidParameter { .. }
            | Error::ZeroCount
            | Error::ZeroRepetitions(_)
            | Error::EmptyGrid(_) => LomaxStatus::InvalidParameter,
            Error::Domain { .. } | Error::NonPositiveObservation { .. } => LomaxStatus::Domain,
            Error::MomentUndefined { .. } => LomaxStatus::MomentUndefined,
            Error::EmptySample => LomaxStatus::EmptySample,
        };
        Failure(status, err.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(LomaxStatus::NullPointer, format!("`{name}` is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LomaxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LomaxStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {message}"));
            LomaxStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a, T>(data: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn loss(value: i32) -> Result<LossKind, Failure> {
    match value {
        0 => Ok(LossKind::Sel),
        1 => Ok(LossKind::Kl),
        2 => Ok(LossKind::El),
        _ => Err(Failure(
            LomaxStatus::InvalidEnum,
            format!("loss {value} is not 0 (SEL), 1 (KL) or 2 (EL)"),
        )),
    }
}

fn fit(value: i32) -> Result<FitMethod, Failure> {
    match value {
        0 => Ok(FitMethod::Mle),
        1 => Ok(FitMethod::MinDistance),
        _ => Err(Failure(
            LomaxStatus::InvalidEnum,
            format!("fit {value} is not 0 (MLE) or 1 (min-distance)"),
        )),
    }
}

fn triple(map: &LossMap<f64>) -> [f64; 3] {
    [map.sel, map.kl, map.el]
}

fn stat(n: usize, t: f64) -> Result<SufficientStat, Failure> {
    Ok(SufficientStat::new(n, t)?)
}

/// Message for the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lomax_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lomax_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn distribution(
    alpha: f64,
    lambda: f64,
    x: f64,
    out: *mut f64,
    f: fn(&LomaxParams, f64) -> lomax_ebayes::Result<f64>,
) -> LomaxStatus {
    guard(|| {
        let value = f(&LomaxParams::new(alpha, lambda)?, x)?;
        write(out, "out", value)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_pdf(alpha: f64, lambda: f64, x: f64, out: *mut f64) -> LomaxStatus {
    distribution(alpha, lambda, x, out, LomaxParams::pdf)
}

#[no_mangle]
pub unsafe extern "C" fn lomax_cdf(alpha: f64, lambda: f64, x: f64, out: *mut f64) -> LomaxStatus {
    distribution(alpha, lambda, x, out, LomaxParams::cdf)
}

#[no_mangle]
pub unsafe extern "C" fn lomax_reliability(
    alpha: f64,
    lambda: f64,
    t: f64,
    out: *mut f64,
) -> LomaxStatus {
    distribution(alpha, lambda, t, out, LomaxParams::reliability)
}

#[no_mangle]
pub unsafe extern "C" fn lomax_hazard(
    alpha: f64,
    lambda: f64,
    t: f64,
    out: *mut f64,
) -> LomaxStatus {
    distribution(alpha, lambda, t, out, LomaxParams::hazard)
}

/// Quantile at `u ∈ [0, 1)`.
#[no_mangle]
pub unsafe extern "C" fn lomax_sample_inverse(
    alpha: f64,
    lambda: f64,
    u: f64,
    out: *mut f64,
) -> LomaxStatus {
    distribution(alpha, lambda, u, out, LomaxParams::sample_inverse)
}

#[no_mangle]
pub unsafe extern "C" fn lomax_mean(alpha: f64, lambda: f64, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", LomaxParams::new(alpha, lambda)?.mean()?))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_variance(alpha: f64, lambda: f64, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", LomaxParams::new(alpha, lambda)?.variance()?))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sufficient_t(
    values: *const f64,
    len: usize,
    lambda: f64,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| {
        let values = slice(values, len, "values")?;
        write(out, "out", sufficient_t(values, lambda)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_mle(n: usize, t_stat: f64, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", mle(stat(n, t_stat)?)))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_bayes(
    loss_kind: i32,
    a: f64,
    b: f64,
    n: usize,
    t_stat: f64,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| {
        let value = bayes(loss(loss_kind)?, GammaHyper::new(a, b)?, stat(n, t_stat)?);
        write(out, "out", value)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_bayes_mse(
    loss_kind: i32,
    a: f64,
    b: f64,
    n: usize,
    t_stat: f64,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| {
        let value = bayes_mse(loss(loss_kind)?, GammaHyper::new(a, b)?, stat(n, t_stat)?);
        write(out, "out", value)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_ebayes(
    loss_kind: i32,
    c: f64,
    n: usize,
    t_stat: f64,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| {
        let value = ebayes(loss(loss_kind)?, HyperBound::new(c)?, stat(n, t_stat)?);
        write(out, "out", value)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_emse(
    loss_kind: i32,
    c: f64,
    n: usize,
    t_stat: f64,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| {
        let value = emse(loss(loss_kind)?, HyperBound::new(c)?, stat(n, t_stat)?);
        write(out, "out", value)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_kl_integral(n: usize, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", kl_integral(n)?))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_kl_mse_integral(n: usize, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", kl_mse_integral(n)?))
}

/// Copies `values` into a new sample handle. Free with
/// [`lomax_sample_free`].
#[no_mangle]
pub unsafe extern "C" fn lomax_sample_new(
    values: *const f64,
    len: usize,
    lambda: f64,
    out: *mut *mut LomaxSample,
) -> LomaxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let values = slice(values, len, "values")?.to_vec();
        let sample = Sample::new(values, lambda)?;
        out.write(Box::into_raw(Box::new(LomaxSample(sample))));
        Ok(())
    })
}

/// Releases a sample handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lomax_sample_free(sample: *mut LomaxSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

unsafe fn sample_ref<'a>(sample: *const LomaxSample) -> Result<&'a Sample, Failure> {
    sample.as_ref().map(|s| &s.0).ok_or_else(|| null("sample"))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sample_len(
    sample: *const LomaxSample,
    out: *mut usize,
) -> LomaxStatus {
    guard(|| write(out, "out", sample_ref(sample)?.n()))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sample_t_stat(
    sample: *const LomaxSample,
    out: *mut f64,
) -> LomaxStatus {
    guard(|| write(out, "out", sample_ref(sample)?.t_stat()))
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sample_estimate(
    sample: *const LomaxSample,
    c: f64,
    out: *mut LomaxEstimate,
) -> LomaxStatus {
    guard(|| {
        let sample = sample_ref(sample)?;
        let report = EstimateReport::compute(SufficientStat::from(sample), HyperBound::new(c)?);
        write(
            out,
            "out",
            LomaxEstimate {
                n: report.n,
                t_stat: report.t_stat,
                c: report.c,
                mle: report.mle,
                eb: triple(&report.eb),
                emse: triple(&report.emse),
            },
        )
    })
}

fn ks_out(result: KsResult) -> LomaxKsResult {
    LomaxKsResult {
        d_stat: result.d_stat,
        p_value: result.p_value,
        n: result.n,
        alpha: result.fitted.alpha(),
        lambda: result.fitted.lambda(),
    }
}

/// K-S test against a fully specified `Lomax(α, λ)`.
#[no_mangle]
pub unsafe extern "C" fn lomax_ks_test(
    values: *const f64,
    len: usize,
    alpha: f64,
    lambda: f64,
    out: *mut LomaxKsResult,
) -> LomaxStatus {
    guard(|| {
        let values = slice(values, len, "values")?;
        let result = ks_test(values, LomaxParams::new(alpha, lambda)?)?;
        write(out, "out", ks_out(result))
    })
}

/// K-S test after fitting `α` by `fit_method` ([`LomaxFit`]) at `λ`.
#[no_mangle]
pub unsafe extern "C" fn lomax_ks_test_fitted(
    values: *const f64,
    len: usize,
    lambda: f64,
    fit_method: i32,
    out: *mut LomaxKsResult,
) -> LomaxStatus {
    guard(|| {
        let values = slice(values, len, "values")?;
        let result = ks_test_fitted(values, lambda, fit(fit_method)?)?;
        write(out, "out", ks_out(result))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_ks_p_value(d: f64, n: usize, out: *mut f64) -> LomaxStatus {
    guard(|| write(out, "out", ks_p_value(d, n)?))
}

/// Runs every `(c, n)` cell, `c` outer and `n` inner. Free the table with
/// [`lomax_sim_table_free`].
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn lomax_sim_table_run(
    alpha: f64,
    lambda: f64,
    c_values: *const f64,
    c_len: usize,
    n_values: *const usize,
    n_len: usize,
    reps: usize,
    seed: u64,
    out: *mut *mut LomaxSimTable,
) -> LomaxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c_values = slice(c_values, c_len, "c_values")?;
        let n_values = slice(n_values, n_len, "n_values")?;
        let cells = run_table(alpha, lambda, c_values, n_values, reps, seed)?;
        out.write(Box::into_raw(Box::new(LomaxSimTable(cells))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sim_table_len(
    table: *const LomaxSimTable,
    out: *mut usize,
) -> LomaxStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| null("table"))?;
        write(out, "out", table.0.len())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lomax_sim_table_get(
    table: *const LomaxSimTable,
    index: usize,
    out: *mut LomaxSimCell,
) -> LomaxStatus {
    guard(|| {
        let table = table.as_ref().ok_or_else(|| null("table"))?;
        let cell = table.0.get(index).ok_or_else(|| {
            Failure(
                LomaxStatus::OutOfRange,
                format!("index {index} out of range for {} cells", table.0.len()),
            )
        })?;
        write(
            out,
            "out",
            LomaxSimCell {
                n: cell.config.n,
                c: cell.config.c,
                seed: cell.config.seed,
                eb_mean: triple(&cell.eb_mean),
                emse_mean: triple(&cell.emse_mean),
                eb_stderr: triple(&cell.eb_stderr),
                emse_stderr: triple(&cell.emse_stderr),
            },
        )
    })
}

/// Releases a table handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lomax_sim_table_free(table: *mut LomaxSimTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
