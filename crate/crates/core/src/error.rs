//! Error type shared across the crate.
//!
//! Every fallible operation returns [`enum@Error`]. Variants are grouped in two
//! families, distinguished by [`Error::is_numeric`]:
//!
//! * *input errors* — the caller handed us something malformed (bad interval,
//!   non-finite weight, grid too short, point outside a kernel's domain);
//! * *numeric errors* — the inputs were well-formed but a computation could
//!   not be completed honestly (quadrature subdivision cap reached, a sweep
//!   hypothesis violated by the data).
//!
//! The distinction matters to the CLI, which maps the families onto distinct
//! process exit codes.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Adaptive quadrature hit its subdivision cap before reaching the
    /// requested accuracy. The partial estimate is never returned silently.
    #[error(
        "quadrature did not converge: error estimate {achieved:.3e} above tolerance {requested:.3e} after {segments} segments"
    )]
    QuadratureCap {
        /// Error estimate at the moment the cap was hit.
        achieved: f64,
        /// Tolerance that was requested.
        requested: f64,
        /// Number of segments produced before giving up.
        segments: usize,
    },

    /// A kernel was evaluated at a point outside its domain
    /// (e.g. `Re z < 0`, or `z = 0` for the genus-1 kernel).
    #[error("kernel domain error: {0}")]
    KernelDomain(String),

    /// Genus-1 sweeping requires the source to stay clear of the origin.
    #[error("genus-1 sweep ineligible: mass at modulus {modulus:.3e} is too close to the origin")]
    Genus1Ineligible {
        /// Modulus of the offending atom.
        modulus: f64,
    },

    /// An estimator needs more samples than the supplied grid provides.
    #[error("insufficient samples: needed {needed}, got {got}")]
    InsufficientSamples {
        /// Minimum number of samples required.
        needed: usize,
        /// Number actually available.
        got: usize,
    },

    /// A generated or supplied instance fails a theorem hypothesis that the
    /// harness is required to enforce before checking any conclusion.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Malformed caller input: non-finite number, empty grid, zero weight,
    /// inverted interval, unknown enum tag, and similar.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable code for serialized error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::QuadratureCap { .. } => "quadrature_cap",
            Error::KernelDomain(_) => "kernel_domain",
            Error::Genus1Ineligible { .. } => "genus1_ineligible",
            Error::InsufficientSamples { .. } => "insufficient_samples",
            Error::Hypothesis(_) => "hypothesis_violation",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// `true` for failures of the computation itself (as opposed to failures
    /// of the caller's input). Drives the CLI exit-code split.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureCap { .. } | Error::Genus1Ineligible { .. } | Error::Hypothesis(_)
        )
    }
}
