use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("argument {value} outside the domain of {function}: {reason}")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{function}({order}, {x}) is not representable in f64")]
    Range {
        function: &'static str,
        order: u32,
        x: f64,
    },

    #[error("parity violation: overlap needs even n and odd l, got n={n}, l={l}")]
    Parity { n: u32, l: u32 },

    #[error("energy {e_over_w} W is not above the exterior P threshold")]
    BelowThreshold { e_over_w: f64 },

    #[error("channel l={l} is closed at E = {e_over_w} W")]
    ClosedChannel { l: u32, e_over_w: f64 },

    #[error("invalid truncation N={n_max}, L={l_max}: {reason}")]
    Truncation {
        n_max: u32,
        l_max: u32,
        reason: &'static str,
    },

    #[error("matching system is singular (condition number {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("no resonance peak found: {0}")]
    NoPeak(&'static str),

    #[error("norm matrix is not positive definite at N={n_max}, L={l_max}, e={e}")]
    NotPositiveDefinite { n_max: u32, l_max: u32, e: f64 },

    #[error("poor {what} fit: coefficient of determination {r2:.4} < {min}")]
    PoorFit {
        what: &'static str,
        r2: f64,
        min: f64,
    },

    #[error("insufficient data for extrapolation: {0}")]
    InsufficientData(&'static str),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
