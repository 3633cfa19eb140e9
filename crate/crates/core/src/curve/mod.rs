//! The plane quartic, its points, and local power-series geometry.

pub mod form;
mod local;
mod point;
pub mod series;

pub use form::{monomials, Form, Monomial};
pub use local::{INITIAL_PRECISION, MAX_PRECISION};
pub use point::{normalize, PlaneCurve, Point, StandardPoints};
pub use series::Branch;

use thiserror::Error;

use crate::field::{FieldError, MissingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("all coordinates are zero")]
    AllZeroCoordinates,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("the curve is singular at {0}")]
    SingularPoint(String),
    #[error("chosen chart coordinate vanishes at the point")]
    ChartFailure,
    #[error("vanishing order at {point} exceeds the precision cap {cap}")]
    PrecisionExhausted { point: String, cap: usize },
    #[error("function has order {order} at {point}, expected 0")]
    OrderMismatch { point: String, order: i64 },
    #[error("numerator and denominator have different degrees")]
    DegreeMismatch,
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("field is infinite")]
    InfiniteField,
    #[error("defining form must be a nonzero quartic")]
    BadForm,
    #[error("missing distinguished element `{0}`")]
    MissingElement(String),
    #[error("cannot decode point: {0}")]
    Decode(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<MissingElement> for CurveError {
    fn from(e: MissingElement) -> Self {
        CurveError::MissingElement(e.0)
    }
}
