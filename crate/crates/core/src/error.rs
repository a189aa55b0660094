use alloc::string::String;

/// Errors raised by the analytic, numeric and sampling routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("circles do not intersect (center distance {distance} >= 2r)")]
    NoIntersection { distance: f64 },

    #[error("coincident circle centers")]
    Degenerate,

    #[error("{routine} did not converge within {iterations} iterations")]
    NonConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("imaginary residue {im:e} too large for real part {re:e}")]
    Residue { re: f64, im: f64 },

    #[error("quadrature error estimate {error:e} above tolerance {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },

    #[error("negative measure {0:e}")]
    NegativeMeasure(f64),

    #[error("standard error {achieved:e} above target {target:e} after {samples} samples")]
    BudgetExceeded {
        achieved: f64,
        target: f64,
        samples: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
