use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("strand count must be at least 1, got {0}")]
    InvalidStrands(usize),

    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("k must be at least 3, got {0}")]
    InvalidK(usize),

    #[error("sector {0} is empty")]
    EmptySector(usize),

    #[error("missing operator for sector {0}")]
    MissingSector(usize),

    #[error("exponent {0} of A is not divisible by 4; no Laurent polynomial in t")]
    NotLaurentInT(i64),

    #[error("trace denominator d^{0} did not cancel")]
    UncancelledDenominator(u32),

    #[error("probability {0} outside [0, 1]: operator is not unitary")]
    InvalidProbability(f64),

    #[error("invalid sampler parameter: {0}")]
    InvalidSampler(String),

    #[error("dimension {0} too large for statevector check")]
    DimensionTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
