//! Number fields with exact element arithmetic, embedded subfields of a
//! common ambient field, CM structure verification, and compositum towers.
//!
//! A field is presented as Q[x]/(f) for a monic polynomial f whose
//! irreducibility the caller asserts; squarefreeness is verified here and
//! the rank checks performed by every nontrivial operation catch reducible
//! impostors where they would matter.  Subfields are always carried together
//! with an embedding into an ambient field, so membership, intersection and
//! relative traces reduce to exact linear algebra over Q.

pub mod algebra;
pub mod cm;
pub mod field;
pub mod subfield;

pub use algebra::{adjoin_sqrt, compose, Compositum, SqrtExtension};
pub use cm::{minus_part_basis, verify_cm, CMStructure, CMVerification};
pub use field::{FieldElement, NumberField};
pub use subfield::{
    subfield_contains, subfield_intersection, EmbeddedSubfield, IntersectionResult,
};

use crate::linalg::LinalgError;
use thiserror::Error;

/// Errors raised by number-field operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NfError {
    /// Defining polynomial must be monic.
    #[error("defining polynomial must be monic")]
    NotMonic,
    /// Operands belong to different fields.
    #[error("elements belong to different fields")]
    FieldMismatch,
    /// Inversion of zero (or of a zero divisor under a reducible modulus).
    #[error("division by a non-invertible element")]
    DivisionByZero,
    /// Element coordinate vector has the wrong length.
    #[error("coordinate vector has length {got}, field degree is {expected}")]
    CoordLength { expected: usize, got: usize },
    /// A claimed CM structure failed verification.
    #[error("not a CM structure: {0}")]
    NotCM(String),
    /// No F-basis could be selected; signals an invalid embedding.
    #[error("no basis over the subfield exists; embedding is invalid")]
    BasisNotFound,
    /// An intersection failed to be multiplicatively closed; signals an
    /// invalid embedding, never valid input.
    #[error("intersection is not multiplicatively closed: {0}")]
    ClosureFailure(String),
    /// A structural invariant of an embedding failed.
    #[error("invalid embedding: {0}")]
    Embedding(String),
    /// Underlying exact-arithmetic failure.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
