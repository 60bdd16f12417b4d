use thiserror::Error;

use crate::element::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),

    #[error("unknown element id `{0}`")]
    UnknownElement(String),

    #[error("element {0} is outside the ground set")]
    OutsideGround(Element),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("direct sum summands overlap on element {0}")]
    OverlappingSummands(Element),

    #[error("matroids have different ground sets")]
    GroundMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance has {size} elements, above the brute-force bound {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("invalid instance file: {0}")]
    Format(String),
}
