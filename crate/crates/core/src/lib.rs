//! Exact divisor-class arithmetic on the Fermat quartic `X^4 + Y^4 = Z^4`.

pub mod field;
pub mod linalg;
pub mod curve;
pub mod explicit;
pub mod rr;
pub mod z4;
pub mod pairing;
pub mod torsion;
pub mod galois;
pub mod report;
pub mod golden;
pub mod cache;
pub mod census;
pub mod verify;

pub use curve::{Form, PlaneCurve, Point};
pub use field::{Field, NfElem, NumberField, PrimeField};
pub use galois::{GaloisActor, Mode, Workbench};
pub use golden::Golden;
pub use report::{Check, Provenance, Report};
pub use rr::{Divisor, Registry, RiemannRoch};
pub use torsion::{CuspCoordinates, TorsionModel, TorsionVector};
pub use verify::{Command, Context, FieldTag, VerifyError};
pub use z4::Z4Matrix;
