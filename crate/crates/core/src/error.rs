use alloc::string::String;
use core::fmt;

use crate::C64;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes of the library.
///
/// [`Error::is_numerical`] separates numerical breakdown from malformed input; the CLI maps
/// the two classes to distinct exit codes.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    ZeroPolynomial,
    NoConvergence { iterations: usize },
    NotAnEigenvalue { value: C64 },
    PoleOnSpectrum { at: C64 },
    PoleHit { at: C64 },
    InsufficientDerivatives { at: C64, needed: usize, available: usize },
    NotTabulated { at: C64 },
    OutOfDisc { value: C64 },
    SpectrumNotInDisc { eigenvalue: C64 },
    CoincidentPoints,
    EmptyPreimage { value: C64 },
    DimensionMismatch { expected: usize, found: usize },
    PointCount { expected: usize, found: usize },
    NodesNotDistinct { first: usize, second: usize },
    NotUnitary { deviation: f64 },
    DomainViolation { value: C64 },
    DimensionTooLarge { n: usize, max: usize },
    EmptyInput(&'static str),
    InvalidConfig { field: &'static str },
    Precondition(String),
    Assertion { check: &'static str, violations: usize, worst: f64 },
}

impl Error {
    /// True for failures of the numerical kernels rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::NotUnitary { .. }
                | Error::EmptyPreimage { .. }
                | Error::Assertion { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "polynomial is identically zero"),
            Error::NoConvergence { iterations } => {
                write!(f, "QR iteration did not converge after {iterations} sweeps")
            }
            Error::NotAnEigenvalue { value } => write!(f, "{value} is not an eigenvalue"),
            Error::PoleOnSpectrum { at } => write!(f, "function has a pole at spectral point {at}"),
            Error::PoleHit { at } => write!(f, "evaluation point {at} is a pole"),
            Error::InsufficientDerivatives { at, needed, available } => write!(
                f,
                "table point {at} provides {available} derivative values, {needed} needed"
            ),
            Error::NotTabulated { at } => write!(f, "no table point at {at}"),
            Error::OutOfDisc { value } => write!(f, "{value} is not in the open unit disc"),
            Error::SpectrumNotInDisc { eigenvalue } => {
                write!(f, "eigenvalue {eigenvalue} is not in the open unit disc")
            }
            Error::CoincidentPoints => write!(f, "points coincide"),
            Error::EmptyPreimage { value } => {
                write!(f, "no spectral point maps to {value}; tolerances are inconsistent")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::PointCount { expected, found } => {
                write!(f, "expected {expected} interpolation points, found {found}")
            }
            Error::NodesNotDistinct { first, second } => {
                write!(f, "nodes {first} and {second} are not distinct")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (‖Q*Q - I‖ = {deviation:e})")
            }
            Error::DomainViolation { value } => write!(f, "{value} is outside the map's domain"),
            Error::DimensionTooLarge { n, max } => write!(f, "dimension {n} exceeds limit {max}"),
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::InvalidConfig { field } => write!(f, "config field `{field}` out of range"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Assertion { check, violations, worst } => {
                write!(f, "{check}: {violations} violation(s), worst {worst:e}")
            }
        }
    }
}

impl core::error::Error for Error {}
