//! Error type shared by all modules.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical kernels and the geometric constructions
/// built on top of them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    Domain { op: &'static str, msg: &'static str },
    /// A root bracket did not actually bracket a sign change.
    Bracket { lo: f64, hi: f64 },
    /// Quadrature error estimate stalled above the requested tolerance.
    NonConvergence { achieved: f64, requested: f64 },
    /// Discrete curvature of a boundary changed sign beyond tolerance.
    Indeterminate(&'static str),
    /// An orbit set has nonzero total homology class.
    Homology,
    /// The ECH grading summed to a non-integer.
    Integrality { quarters: i64 },
    /// A formula is undefined at a resonance (integer rotation number).
    Degenerate(&'static str),
    /// The geodesic flow came too close to a pole of the surface.
    PoleApproach { z: f64 },
    /// A shooting orbit failed to close up after refinement.
    NonClosure { gap: f64 },
    /// An internal consistency gate (packing verifier, monotonicity) failed.
    Inconsistency(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, msg } => write!(f, "{op}: domain error: {msg}"),
            Error::Bracket { lo, hi } => {
                write!(f, "no sign change on bracket [{lo}, {hi}]")
            }
            Error::NonConvergence {
                achieved,
                requested,
            } => write!(
                f,
                "quadrature stalled at error {achieved:.3e} (requested {requested:.3e})"
            ),
            Error::Indeterminate(what) => write!(f, "indeterminate classification: {what}"),
            Error::Homology => write!(f, "orbit set is not nullhomologous"),
            Error::Integrality { quarters } => write!(
                f,
                "ECH grading is not an integer ({quarters}/4)"
            ),
            Error::Degenerate(what) => write!(f, "degenerate input: {what}"),
            Error::PoleApproach { z } => {
                write!(f, "trajectory approached a pole at z = {z}")
            }
            Error::NonClosure { gap } => {
                write!(f, "orbit failed to close (gap {gap:.3e})")
            }
            Error::Inconsistency(what) => write!(f, "consistency gate failed: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
