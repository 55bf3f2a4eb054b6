//! Maximum-likelihood, Bayes and E-Bayes estimation of the Lomax shape
//! parameter under squared-error, K- and entropy loss, with closed-form
//! E-MSE, a seeded Monte Carlo harness and a Kolmogorov–Smirnov
//! goodness-of-fit test.
//!
//! ```
//! use lomax_ebayes::{ebayes, emse, HyperBound, LossKind, Sample, SufficientStat};
//!
//! let sample = Sample::new(vec![0.8, 1.5, 2.2, 0.4], 3.0).unwrap();
//! let stat = SufficientStat::from(&sample);
//! let c = HyperBound::new(0.5).unwrap();
//! let sel = ebayes(LossKind::Sel, c, stat);
//! let el = ebayes(LossKind::El, c, stat);
//! assert!(el < sel);
//! assert!(emse(LossKind::Sel, c, stat) < emse(LossKind::El, c, stat));
//! ```

pub mod cli;
pub mod dataset;
pub mod emse;
pub mod error;
pub mod estimators;
pub mod gof;
pub mod lomax;
pub mod manifest;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod simulation;
pub mod sum;

pub use dataset::{DataSource, Dataset, DatasetError};
pub use emse::{bayes_mse, emse, kl_mse_integral};
pub use error::{Error, Result};
pub use estimators::{
    bayes, ebayes, kl_integral, mle, EstimateReport, GammaHyper, HyperBound, LossKind, LossMap,
    SufficientStat,
};
pub use gof::{ks_p_value, ks_statistic, ks_test, FitMethod, KsResult};
pub use lomax::{sufficient_t, LomaxParams, Sample};
pub use manifest::RunManifest;
pub use simulation::{run_cell, run_table, SimCellResult, SimConfig};
