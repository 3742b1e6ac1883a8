use thiserror::Error;

/// Errors raised by the arithmetic, measure and group-scheme layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("value is not p-integral: {0}")]
    NotPIntegral(String),

    #[error("element is not a unit modulo p: {0}")]
    NotUnit(String),

    #[error("element is not a p-power root of unity at level {level}")]
    NotRootOfUnity { level: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("value does not lie in the coefficient ring: {0}")]
    ValueOutsideRing(String),

    #[error("unsupported function shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("Euler-type factor {0} is congruent to 1 mod p")]
    EulerFactorNotInvertible(String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("incompatible root system: {0}")]
    IncompatibleRoots(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag, used in the CLI's error JSON.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "InvalidContext",
            Error::NotPIntegral(_) => "NotPIntegral",
            Error::NotUnit(_) => "NotUnit",
            Error::NotRootOfUnity { .. } => "NotRootOfUnity",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::ValueOutsideRing(_) => "ValueOutsideRing",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::InvalidCharacter(_) => "InvalidCharacter",
            Error::EulerFactorNotInvertible(_) => "EulerFactorNotInvertible",
            Error::BaseMismatch(_) => "BaseMismatch",
            Error::IncompatibleRoots(_) => "IncompatibleRoots",
            Error::InvalidDescriptor(_) => "InvalidDescriptor",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
