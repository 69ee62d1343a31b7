use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient index {index} is below the minimum {min} for the {part} part")]
    IndexTooSmall {
        part: &'static str,
        index: usize,
        min: usize,
    },
    #[error("coefficient indices of the {part} part must be strictly increasing (saw {prev} then {next})")]
    IndicesNotIncreasing {
        part: &'static str,
        prev: usize,
        next: usize,
    },
    #[error("non-finite coefficient in the {0} part")]
    NonFinite(&'static str),
    #[error("leading coefficients violate |beta| < |alpha| (|beta| = {beta}, |alpha| = {alpha})")]
    NotSensePreserving { alpha: f64, beta: f64 },
    #[error("exterior map evaluated at the origin")]
    Origin,
    #[error("f_z vanishes at z = {re} + {im}i; dilatation undefined")]
    VanishingDerivative { re: f64, im: f64 },
    #[error("f vanishes at z = {re} + {im}i")]
    VanishingValue { re: f64, im: f64 },
    #[error("order must lie in (0, 1), got {0}")]
    InvalidOrder(f64),
    #[error("weight index {index} out of range (minimum {min})")]
    InvalidWeightIndex { index: usize, min: usize },
    #[error("weight of profile `{profile}` at index {index} is not strictly positive")]
    NonPositiveWeight { profile: String, index: usize },
    #[error("{name} must lie in (0, 1), got {value}")]
    ConstantOutOfRange { name: &'static str, value: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("class hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
