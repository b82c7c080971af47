//! Exact classification of spaces of Weil classes attached to an abelian
//! variety presented up to isogeny.
//!
//! The crate is organized in layers.  [`linalg`] provides exact rational
//! linear algebra, Sturm counting and certified complex root isolation.
//! [`nf`] builds number fields, embedded subfields, relative traces and CM
//! verification on top of it.  [`model`] holds the isogeny-datum types and
//! their validation, [`criteria`] the Hodge and decomposability criteria,
//! [`wedge`] the independent brute-force oracles in the exterior algebra,
//! and [`forge`] the worked example data.  [`schema`] fixes the JSON input
//! and report documents used by the command line interface.

pub mod criteria;
pub mod forge;
pub mod linalg;
pub mod model;
pub mod nf;
pub mod wedge;

pub use criteria::{
    classify, hodge_test, CaseTag, ClassificationReport, CriteriaError, FactorVerdict,
    HodgeVerdict, Outcome, Overall,
};
pub use forge::{Fixture, ForgeError, Payload};
pub use linalg::{
    isolate_roots, sturm_count, Endpoint, IsolatedRoots, LinalgError, Poly, QMatrix, Rational,
    RootBox,
};
pub use model::{
    validate, AbelianVarietyDatum, AlbertType, CompositumComponent, SimpleFactorDatum,
    ValidationReport, Violation,
};
pub use nf::{
    CMStructure, CMVerification, EmbeddedSubfield, FieldElement, NfError, NumberField,
};
pub use wedge::{
    build_complex_structure, decomposability_witness, divisor_forms, fstar_scaling_check,
    hodge_type_oracle, weil_subspace, AltForm, ComplexStructureNum, DivisorWitness,
    FRepresentation, OracleBidegrees, WedgeError, WeilSubspace,
};
