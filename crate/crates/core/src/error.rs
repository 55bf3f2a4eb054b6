use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("`{name}` = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{moment} is undefined for alpha = {alpha} (requires alpha > {min})")]
    MomentUndefined {
        moment: &'static str,
        alpha: f64,
        min: f64,
    },

    #[error("sample is empty")]
    EmptySample,

    #[error("observation {index} is {value}; observations must be finite and > 0")]
    NonPositiveObservation { index: usize, value: f64 },

    #[error("sample size must be at least 1")]
    ZeroCount,

    #[error("`{0}` must be at least 1")]
    ZeroRepetitions(&'static str),

    #[error("grid `{0}` is empty")]
    EmptyGrid(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}
