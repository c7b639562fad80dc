use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("unsupported field size p={p}, e={e}")]
    UnsupportedSize { p: u64, e: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("cannot invert a series that is zero to its truncation")]
    InvertZeroToTruncation,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("empty input")]
    EmptyInput,
    #[error("fixed-point iteration does not contract (valuation {0})")]
    NotContracting(String),
    #[error("coefficient domains differ")]
    DomainMismatch,
    #[error("evaluation does not converge: {0}")]
    DivergentEvaluation(String),
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("factor {0} is not congruent to 1 mod tau")]
    NotUnipotentFactor(usize),
    #[error("coefficient of tau^{index} did not stabilise: {detail}")]
    StabilizationFailure { index: usize, detail: String },
    #[error("fixed-point iteration failed to converge at level {0}")]
    ContractionDiverged(usize),
    #[error("input polynomial is not monic")]
    NonMonicInput,
    #[error("weight must be positive")]
    NonpositiveWeight,
    #[error("cross-check failed at k={k}, u-degree {u_degree}")]
    CrossCheckFailed { k: usize, u_degree: usize },
    #[error("identity failed at {0}")]
    IdentityFailed(String),
    #[error("point is indistinguishable from K_inf at the given precision")]
    IndistinguishableFromKInfinity,
    #[error("denominator vanishes")]
    PoleHit,
    #[error("step limit {0} exceeded")]
    StepLimitExceeded(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error comes from malformed or unsupported input rather
    /// than from the arithmetic.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NonPrimeCharacteristic(_)
                | Error::UnsupportedSize { .. }
                | Error::EmptyInput
                | Error::NonMonicInput
                | Error::NonpositiveWeight
                | Error::Invalid(_)
                | Error::Json(_)
                | Error::FieldMismatch
                | Error::DomainMismatch
                | Error::VariableMismatch(..)
                | Error::IndistinguishableFromKInfinity
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "NonPrimeCharacteristic",
            Error::UnsupportedSize { .. } => "UnsupportedSize",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::FieldMismatch => "FieldMismatch",
            Error::VariableMismatch(..) => "VariableMismatch",
            Error::InvertZeroToTruncation => "InvertZeroToTruncation",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::EmptyInput => "EmptyInput",
            Error::NotContracting(_) => "NotContracting",
            Error::DomainMismatch => "DomainMismatch",
            Error::DivergentEvaluation(_) => "DivergentEvaluation",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::NotUnipotentFactor(_) => "NotUnipotentFactor",
            Error::StabilizationFailure { .. } => "StabilizationFailure",
            Error::ContractionDiverged(_) => "ContractionDiverged",
            Error::NonMonicInput => "NonMonicInput",
            Error::NonpositiveWeight => "NonpositiveWeight",
            Error::CrossCheckFailed { .. } => "CrossCheckFailed",
            Error::IdentityFailed(_) => "IdentityFailed",
            Error::IndistinguishableFromKInfinity => "IndistinguishableFromKInfinity",
            Error::PoleHit => "PoleHit",
            Error::StepLimitExceeded(_) => "StepLimitExceeded",
            Error::Invalid(_) => "Invalid",
            Error::Json(_) => "Json",
        }
    }
}
