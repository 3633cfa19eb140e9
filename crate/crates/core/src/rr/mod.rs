//! Divisors, the registry of forms with known divisors, and Riemann-Roch
//! spaces.

mod divisor;
mod registry;
mod space;

pub use divisor::Divisor;
pub use registry::{verify_form_divisor, Registry, RegistryEntry};
pub use space::{curve_multiples, RRSpace, RiemannRoch};

use thiserror::Error;

use crate::curve::CurveError;
use crate::field::MissingElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("no registry form vanishes at {0}")]
    RegistryGap(String),
    #[error("denominator covering does not dominate the positive part")]
    CoverTooSmall,
    #[error("inconsistent Riemann-Roch computation: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl From<MissingElement> for RrError {
    fn from(e: MissingElement) -> Self {
        RrError::Curve(e.into())
    }
}
