use thiserror::Error;

/// Errors raised by the polynomial, geometry and asymptotics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("pole of {0}")]
    Pole(&'static str),
    #[error("point lies on the interval [-1, 1]")]
    OnArc,
    #[error("point lies on the level curve through lambda; region is ambiguous")]
    AmbiguousRegion,
    #[error("value vanishes at the evaluation point")]
    ZeroValue,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
