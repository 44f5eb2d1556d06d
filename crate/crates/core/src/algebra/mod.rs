//! Sparse bigraded polynomial arithmetic over F2.

mod map;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use map::{apply_ring_map, RingMap};
pub use monomial::{Monomial, Weights, MAX_VARS};
pub use parse::{format_monomial, format_poly, parse_poly};
pub use poly::{poly_arith, ArithOp, Homogeneity, Polynomial};
pub use ring::{make_ring, Bidegree, Family, GradingMode, Ring, RingContext, RingSpec, Variable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unsupported ring family: {0:?}")]
    UnsupportedRing(String),
    #[error("{spec}: n must be at least {min}")]
    DimensionTooSmall { spec: String, min: u32 },
    #[error("ring {ring} has {count} variables, more than the supported maximum")]
    TooManyVariables { ring: String, count: usize },
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("invalid ring: {0}")]
    InvalidContext(String),
    #[error("polynomials from different rings: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable {name} for {ring}{}", position.map(|p| format!(" at byte {p}")).unwrap_or_default())]
    UnknownVariable { name: String, ring: String, position: Option<usize> },
    #[error("ring map {map} has no image for {variable}")]
    MissingImage { map: String, variable: String },
    #[error("image {image} of {variable} does not preserve degree")]
    DegreeMismatch { variable: String, image: String },
}
