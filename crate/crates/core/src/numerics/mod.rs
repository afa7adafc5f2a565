//! Quadrature, gamma expectations and special functions.

mod laguerre;
mod quadrature;
mod special;

pub use laguerre::{gamma_expectation, gamma_log_density, GaussLaguerre};
pub use quadrature::{integrate, IntegrationError, IntegrationResult, Interval, QuadratureConfig};
pub use special::{digamma, factorial, gamma_pq_int, ln_factorial, log_gamma};
