use alloc::string::String;

use crate::numerics::IntegrationError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },

    #[error(transparent)]
    Integration(#[from] IntegrationError),

    #[error("divergent measure: {0}")]
    Divergent(String),

    #[error("consistency probe `{probe}` failed at x = {x}")]
    Probe { probe: &'static str, x: f64 },

    #[error("no closed form of {measure} is known for {dist}")]
    NoClosedForm { measure: &'static str, dist: String },

    #[error("invalid request: {0}")]
    InvalidRequest(&'static str),

    #[error("stream extraction gave up after {draws} draws with {found} of {requested} records")]
    IncompleteExtraction {
        found: usize,
        requested: usize,
        draws: u64,
    },

    #[error("{bad} of {total} Monte Carlo evaluations were not finite")]
    Contamination { bad: u64, total: u64 },
}
