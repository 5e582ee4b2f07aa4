use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point of modulus {0} is not in the open unit disk")]
    OutsideDisk(f64),

    #[error("point of modulus {0} is outside the closed unit disk")]
    OutsideClosedDisk(f64),

    #[error("expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{samples} samples are too few to certify a degree-{degree} polynomial")]
    TooFewSamples { samples: usize, degree: usize },

    #[error("measure must have at least one atom with nonzero total variation")]
    EmptyMeasure,

    #[error("map does not send the disk into itself: certified boundary sup {0}")]
    NotSelfMap(f64),

    #[error("degenerate self-map: |φ(0)| = {0} is not below 1")]
    Degenerate(f64),

    #[error("precondition {0}")]
    Precondition(String),

    #[error("radial limit or quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
