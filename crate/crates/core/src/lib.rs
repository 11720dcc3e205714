//! The Extended Generalized Lindley lifetime distribution: evaluation,
//! quantiles, sampling, moments, entropies and order statistics, plus
//! maximum-likelihood fitting and model comparison against classical
//! lifetime families.
//!
//! ```
//! use egl::{Egl, SampleMethod};
//!
//! let d = Egl::new(1.0, 1.0, 2.0)?;
//! let x = d.quantile(0.9)?;
//! assert!((d.cdf(x)? - 0.9).abs() < 1e-12);
//! let draws = d.sample(1000, 42, SampleMethod::InverseTransform)?;
//! assert_eq!(draws.len(), 1000);
//! # Ok::<(), egl::Error>(())
//! ```

pub mod competitors;
pub mod datasets;
mod egl;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod quadrature;
pub mod specfun;

pub use crate::egl::{Egl, EglParams, ExtremeNorming, HazardShape, Mode, SampleMethod};
pub use competitors::{Family, ModelSpec};
pub use datasets::Dataset;
pub use error::{Error, Result};
pub use estimation::{fit, FitOptions, FitResult};
pub use gof::GofReport;
