//! Brute-force oracles in the exterior algebra, at desk scale.
//!
//! The exact layer realizes the Weil-class space as alternating r-forms
//! and checks its rank and scaling law with rational arithmetic.  The
//! numeric layer builds a complex structure for prescribed multiplicities
//! and reads bidegrees back off it, reporting exact residual norms.  The
//! divisor layer wedges twisted polarization forms and decides membership
//! of the Weil classes in their span.  Everything is deterministic:
//! identical inputs produce bit-identical results.

pub mod complex;
pub mod divisor;
pub mod forms;
pub mod hodge_oracle;
pub mod rep;
pub mod subspace;

pub use complex::{
    build_complex_structure, default_tolerance, ComplexStructureNum, CRat,
};
pub use divisor::{
    decomposability_witness, decomposability_witness_with_cap, divisor_forms, DivisorWitness,
};
pub use forms::AltForm;
pub use hodge_oracle::{hodge_type_oracle, OracleBidegrees};
pub use rep::FRepresentation;
pub use subspace::{fstar_scaling_check, weil_subspace, WeilSubspace};

use crate::linalg::LinalgError;
use crate::nf::NfError;
use thiserror::Error;

/// Hard cap on the ambient wedge dimension C(N, r); desk-scale data stays
/// far below it.
pub const DEFAULT_WEDGE_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum WedgeError {
    /// A certified rank came out different from the structural count.
    #[error("rank defect: expected {expected}, got {got}")]
    RankDefect { expected: usize, got: usize },
    /// Numeric separation fell below the precision floor; increase the
    /// precision.
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    /// A numeric reading was ambiguous at the requested tolerance.
    #[error("tolerance exceeded: {0}")]
    ToleranceExceeded(String),
    /// A twisted polarization form came out non-alternating, so the
    /// element is not symmetric for the polarization.
    #[error("element {index} is not symmetric for the polarization")]
    NotAlternating { index: usize },
    /// The ambient wedge dimension exceeds the configured cap.
    #[error("wedge dimension {dim} exceeds the cap {cap}")]
    CombinatorialBlowup { dim: usize, cap: usize },
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("linear algebra: {0}")]
    Linalg(#[from] LinalgError),
    #[error("number field: {0}")]
    Field(#[from] NfError),
}
