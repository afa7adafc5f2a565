//! Information-theoretic inaccuracy measures between the distributions of
//! n-th upper and lower k-record values and their parent distribution.
//!
//! The crate is `no_std` (it needs `alloc`). Every measure can be evaluated
//! along several independent routes: closed forms for the parametric catalog,
//! adaptive quadrature in x-space, gamma expectations over the record
//! representation `U_{n,k} = F^{-1}(1 - e^{-T})` with `T ~ Gamma(n, rate k)`,
//! and Monte Carlo over a seeded, splittable generator. The routes are meant
//! to be checked against each other; [`verify`] bundles those checks.
//!
//! ```
//! use record_inaccuracy::{Distribution, EvalMethod, QuadratureConfig, RecordSpec, Side};
//! use record_inaccuracy::record_measures::kerridge_record;
//!
//! let parent = Distribution::exponential(2.0).unwrap();
//! let spec = RecordSpec::new(Side::Upper, 3, 2).unwrap();
//! let h = kerridge_record(&parent, spec, EvalMethod::Auto, &QuadratureConfig::default()).unwrap();
//! assert!((h.value - (1.5 - 2f64.ln())).abs() < 1e-12);
//! ```
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose to reject NaN; coefficient tables keep their published digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distributions;
mod error;
pub mod measures;
pub mod numerics;
pub mod oracle;
pub mod record_measures;
pub mod records;
pub mod verify;

pub use distributions::{CustomLaw, Distribution, Family, Law, Support};
pub use error::{Error, Result};
pub use measures::{MeasureResult, Method};
pub use numerics::{IntegrationError, IntegrationResult, Interval, QuadratureConfig};
pub use oracle::McConfig;
pub use record_measures::{EvalMethod, RecordMeasure, RecordMeasureRequest};
pub use records::{RecordDistribution, RecordSpec, Side};
