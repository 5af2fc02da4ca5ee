//! q-objects, term and sum specifications, and the target catalog.

pub mod catalog;
pub mod expo;
pub mod monomial;
pub mod objects;
pub mod prefactors;
pub mod spec;

pub use catalog::{catalog_sum, catalog_term, ModFactor, Side, Target, TargetId, TargetKind};
pub use expo::ExpPoly;
pub use monomial::{Monomial, Param, Params};
pub use objects::{qbinom, qint, qpoch};
pub use prefactors::{omega, proof_prefactor, theta, ProofStep};
pub use spec::{Bound, MMode, Named, Poch, SumSpec, TermSpec};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("parameter {0} has no value")]
    UnassignedParameter(char),
    #[error("n = {n} is not admissible: {reason}")]
    InadmissibleN { n: i64, reason: String },
    #[error("index k = {k} outside 0..={max}")]
    IndexOutOfRange { k: i64, max: i64 },
    #[error("degenerate specialization: {0}")]
    Degenerate(String),
    #[error("exponent is not an integer: {0}")]
    NonIntegralExponent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
