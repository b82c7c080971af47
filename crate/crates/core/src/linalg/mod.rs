//! Exact rational linear algebra and certified root location.
//!
//! Everything here is exact: matrices and polynomials carry arbitrary
//! precision rational entries, real root counting goes through Sturm chains
//! over the integers, and complex roots are certified by winding numbers
//! computed from those chains.  No floating point enters this module.

pub mod bivar;
pub mod interval;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod sturm;

pub use bivar::{integer_poly_sqrt, real_imag_parts, resultant_elim_y, BiPoly};
pub use interval::{eval_poly_on_box, CInterval, RInterval};
pub use matrix::{span_membership, solve_square, Echelon, QMatrix};
pub use poly::Poly;
pub use rational::{isqrt_floor, rat, ratio, Rational};
pub use roots::{isolate_roots, IsolatedRoots, RootBox};
pub use sturm::{isolate_real_roots, refine_interval, sturm_count, Endpoint, SturmChain};

use thiserror::Error;

/// Errors raised by the exact kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// A computation required a squarefree polynomial.
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    /// A computation required a nonzero polynomial of positive degree.
    #[error("polynomial must have degree at least one")]
    DegreeTooSmall,
    /// Requested interval width or tolerance was not positive.
    #[error("width or tolerance must be positive")]
    InvalidWidth,
    /// Matrix dimensions do not match the operation.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// The operation requires a square matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    /// A spanning-set argument was linearly dependent where independence
    /// is required.
    #[error("basis vectors are linearly dependent")]
    BasisDependent,
    /// Division by zero in exact arithmetic.
    #[error("exact division by zero")]
    DivisionByZero,
    /// An internal certificate failed; indicates a bug, never user input.
    #[error("internal certificate failure: {0}")]
    Internal(String),
}
