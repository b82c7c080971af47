//! Decision procedures for spaces of Weil classes.
//!
//! Given a validated isogeny datum, the pipeline is: the Hodge test on
//! CM-type multiplicities, then a per-factor dichotomy between decomposable
//! and exceptional classes, dispatched on the Albert invariants.  The
//! supporting structure tables, the trace map on the imaginary part of a
//! CM center, and checkers for the monotonicity and trace-vanishing
//! implications live in their own submodules.

mod classify;
mod hodge;
mod remarks;
mod tables;
mod theta;

pub use classify::{
    classify, classify_factor, CaseTag, ClassificationReport, FactorTables, FactorVerdict,
    Outcome, Overall, TATE_NOTE,
};
pub use hodge::{hodge_test, HodgeVerdict};
pub use remarks::{
    check_monotonicity, check_remark_ii, check_remark_iii, intersection_e_f, GlobalIntersection,
    ImplicationReport, MonotonicityReport,
};
pub use tables::{b_structure, gdiv_structure, BStructure, CenterKind, GdivStructure};
pub use theta::{theta_map, ThetaMap};

use crate::linalg::LinalgError;
use crate::model::ValidationReport;
use crate::nf::NfError;
use thiserror::Error;

/// Errors raised by the decision procedures.
#[derive(Debug, Error)]
pub enum CriteriaError {
    /// A factor with odd wedge degree has no non-zero Hodge classes, so the
    /// decomposable/exceptional dichotomy does not apply to it.
    #[error("factor {factor}: wedge degree r = {r} is odd, the space has no non-zero Hodge classes")]
    NotHodge { factor: String, r: usize },
    /// The parity criterion needs 2m[E:Q]/[F:Q] to be an integer.
    #[error("parity value 2m[E:Q]/[F:Q] = {num}/{den} is not an integer")]
    NonIntegralParity { num: usize, den: usize },
    /// A Table 2 size formula failed to divide exactly.
    #[error("group size k = {num}/{den} is not an integer")]
    NonIntegralK { num: usize, den: usize },
    /// The datum failed structural validation.
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    /// The operation does not apply to this Albert type.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A proved implication failed on concrete data.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    /// A caller-supplied precondition could not be verified.
    #[error("unwitnessed precondition: {0}")]
    Unwitnessed(String),
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
