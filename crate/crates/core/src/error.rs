use thiserror::Error;

/// Errors shared across the crate. Every fallible operation reports the
/// precondition it found violated; none of these are recoverable states
/// of a value, a returned `Err` always leaves inputs untouched.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slam-dunk undefined for zero coefficient")]
    SlamDunkZeroCoefficient,

    #[error("chain collapse hits zero coefficient")]
    ChainCollapseZeroCoefficient,

    #[error("expected an integer value, found {0}")]
    NotAnInteger(String),

    #[error("expected a finite rational, found infinity")]
    NotFinite,

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("matrix shape mismatch: {0}")]
    MatrixShape(String),

    #[error("fiber multiplicity must be nonzero")]
    ZeroFiberMultiplicity,

    #[error("two-fiber recognition only")]
    TwoFiberRecognitionOnly,

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("move precondition violated: {0}")]
    MovePrecondition(String),

    #[error("diagram component is not a star with integer arm framings: {0}")]
    NotStarShaped(String),

    #[error("family index must be at least 1")]
    FamilyIndex,

    #[error("cone order {order} does not divide covering degree {degree}")]
    ConeOrderDoesNotDivide { order: u64, degree: u64 },

    #[error("unit {unit} is not coprime to cone order {order}")]
    UnitNotCoprime { unit: u64, order: u64 },

    #[error("monodromy images do not sum to zero over a closed base")]
    UnbalancedClosedCover,

    #[error("torus knot parameters must be coprime and at least 2")]
    InvalidTorusKnotParameters,

    #[error("edge identification does not close the surface: {0}")]
    SurfaceNotClosed(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
