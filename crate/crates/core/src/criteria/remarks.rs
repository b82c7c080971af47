//! Checkers for the proved implications relating the trace map, the
//! intersection E ∩ F, and enlargement of the acting field.
//!
//! These never report a counterexample as a valid outcome: each implication
//! is a theorem, so a violation on concrete data is an internal
//! inconsistency and surfaces as an error.

use super::classify::{classify, ClassificationReport, Overall};
use super::theta::theta_map;
use super::CriteriaError;
use crate::linalg::{span_membership, QMatrix, Rational};
use crate::model::{AbelianVarietyDatum, AlbertType, CompositumComponent, SimpleFactorDatum};
use crate::nf::{subfield_contains, verify_cm, FieldElement, NumberField};

/// The intersection E ∩ F inside the endomorphism algebra, computed across
/// all components simultaneously: an element of E and an element of F lie
/// in the intersection when their images agree in every component.
#[derive(Clone, Debug)]
pub struct GlobalIntersection {
    pub dim: usize,
    /// Basis of the intersection as elements of the abstract center E.
    pub basis_in_e: Vec<FieldElement>,
    /// Whether conjugation fixes the intersection pointwise (totally real);
    /// None when the center is not CM and no involution was supplied.
    pub conj_fixed: Option<bool>,
    /// The basis was certified multiplicatively closed.
    pub closure_verified: bool,
}

/// Computes E ∩ F from the embedded power bases, with an optional complex
/// conjugation matrix on E to decide total realness.
pub fn intersection_e_f(
    center: &NumberField,
    conj: Option<&QMatrix>,
    field_f: &NumberField,
    components: &[CompositumComponent],
) -> Result<GlobalIntersection, CriteriaError> {
    if components.is_empty() {
        return Err(CriteriaError::Unwitnessed(
            "the intersection needs at least one compositum component".into(),
        ));
    }
    let e_deg = center.degree();
    let f_deg = field_f.degree();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for comp in components {
        let k_deg = comp.field.degree();
        for r in 0..k_deg {
            let mut row = Vec::with_capacity(e_deg + f_deg);
            for b in comp.embed_e.power_basis() {
                row.push(b.coords()[r].clone());
            }
            for b in comp.embed_f.power_basis() {
                row.push(-b.coords()[r].clone());
            }
            rows.push(row);
        }
    }
    let kernel = QMatrix::from_rows(rows)?.kernel_basis();
    let mut basis_in_e = Vec::with_capacity(kernel.len());
    let mut e_coords: Vec<Vec<Rational>> = Vec::with_capacity(kernel.len());
    for vec in &kernel {
        let coords = vec[..e_deg].to_vec();
        basis_in_e.push(center.element(coords.clone())?);
        e_coords.push(coords);
    }
    // The intersection of two fields is a field, so the kernel must be
    // multiplicatively closed; verify rather than trust the linear algebra.
    for (i, a) in basis_in_e.iter().enumerate() {
        for b in basis_in_e.iter().skip(i) {
            let product = a.mul(b)?;
            if span_membership(&e_coords, product.coords())?.is_none() {
                return Err(CriteriaError::Inconsistency(
                    "intersection basis is not multiplicatively closed".into(),
                ));
            }
        }
    }
    let conj_fixed = match conj {
        Some(c) => {
            let mut fixed = true;
            for coords in &e_coords {
                if &c.mul_vec(coords)? != coords {
                    fixed = false;
                    break;
                }
            }
            Some(fixed)
        }
        None if center.is_totally_real() => Some(true),
        None => None,
    };
    Ok(GlobalIntersection {
        dim: kernel.len(),
        basis_in_e,
        conj_fixed,
        closure_verified: true,
    })
}

/// Outcome of checking one implication on concrete data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationReport {
    pub antecedent: bool,
    pub consequent: Option<bool>,
    pub holds: bool,
    pub detail: String,
}

fn require_big_type_iv(factor: &SimpleFactorDatum) -> Result<(), CriteriaError> {
    let big = matches!(factor.albert_type, AlbertType::IV)
        && (factor.d >= 2 || factor.power >= 2);
    if !big {
        return Err(CriteriaError::Unsupported(
            "the trace-map implications apply to type IV with d >= 2 or m >= 2".into(),
        ));
    }
    Ok(())
}

/// Checks on concrete data that a vanishing trace map forces E ∩ F to be
/// totally real.  The converse may fail; that is not a violation.
pub fn check_remark_ii(
    factor: &SimpleFactorDatum,
    field_f: &NumberField,
    components: &[CompositumComponent],
) -> Result<ImplicationReport, CriteriaError> {
    require_big_type_iv(factor)?;
    let cm = factor
        .cm
        .as_ref()
        .ok_or_else(|| CriteriaError::Unwitnessed("type IV factor lacks CM data".into()))?;
    let verification = verify_cm(cm)?;
    let th = theta_map(factor, field_f, components)?;
    let inter = intersection_e_f(&factor.center, Some(&verification.conj), field_f, components)?;
    let antecedent = th.is_zero;
    let consequent = inter.conj_fixed;
    if antecedent && consequent != Some(true) {
        return Err(CriteriaError::Inconsistency(
            "the trace map vanishes but E ∩ F is not totally real".into(),
        ));
    }
    Ok(ImplicationReport {
        antecedent,
        consequent,
        holds: true,
        detail: format!(
            "theta rank {}, intersection dimension {}",
            th.matrix.rank(),
            inter.dim
        ),
    })
}

/// Checks the partial converse: when the caller asserts that E or F is
/// Galois over E ∩ F and the intersection is totally real, the trace map
/// must vanish.  The Galois hypothesis itself is not computed.
pub fn check_remark_iii(
    factor: &SimpleFactorDatum,
    field_f: &NumberField,
    components: &[CompositumComponent],
    galois_assertion: bool,
) -> Result<ImplicationReport, CriteriaError> {
    let cm = match (factor.albert_type, &factor.cm) {
        (AlbertType::IV, Some(cm)) => cm,
        _ => {
            return Err(CriteriaError::Unsupported(
                "the converse trace implication needs a type IV factor with CM data".into(),
            ))
        }
    };
    if !galois_assertion {
        return Ok(ImplicationReport {
            antecedent: false,
            consequent: None,
            holds: true,
            detail: "no Galois hypothesis asserted; nothing to check".into(),
        });
    }
    let verification = verify_cm(cm)?;
    let inter = intersection_e_f(&factor.center, Some(&verification.conj), field_f, components)?;
    let antecedent = inter.conj_fixed == Some(true);
    if !antecedent {
        return Ok(ImplicationReport {
            antecedent,
            consequent: None,
            holds: true,
            detail: "E ∩ F is not totally real; the hypothesis fails".into(),
        });
    }
    let th = theta_map(factor, field_f, components)?;
    if !th.is_zero {
        return Err(CriteriaError::Inconsistency(
            "Galois hypothesis with totally real E ∩ F, yet the trace map does not vanish".into(),
        ));
    }
    Ok(ImplicationReport {
        antecedent,
        consequent: Some(true),
        holds: true,
        detail: "trace map vanishes as required".into(),
    })
}

/// Verdicts for two nested acting fields, checked for monotonicity.
#[derive(Clone, Debug)]
pub struct MonotonicityReport {
    pub witnessed: bool,
    pub hodge_implication: bool,
    pub decomposable_implication: bool,
    pub report_f: ClassificationReport,
    pub report_fprime: ClassificationReport,
}

/// Classifies the same variety under F and a larger field F', witnesses
/// F ⊆ F' inside every component, and checks that being made of Hodge
/// classes, or of decomposable ones, descends from F' to F.
pub fn check_monotonicity(
    datum_f: &AbelianVarietyDatum,
    datum_fprime: &AbelianVarietyDatum,
) -> Result<MonotonicityReport, CriteriaError> {
    if datum_f.factors.len() != datum_fprime.factors.len() {
        return Err(CriteriaError::Unwitnessed(
            "the two data do not share their factors".into(),
        ));
    }
    for (i, (a, b)) in datum_f
        .factors
        .iter()
        .zip(&datum_fprime.factors)
        .enumerate()
    {
        let same = a.albert_type == b.albert_type
            && a.dim_y == b.dim_y
            && a.power == b.power
            && a.d == b.d
            && a.center == b.center;
        if !same {
            return Err(CriteriaError::Unwitnessed(format!(
                "factor {i} differs between the two data"
            )));
        }
        let ca = &datum_f.compositum[i];
        let cb = &datum_fprime.compositum[i];
        if ca.len() != cb.len() {
            return Err(CriteriaError::Unwitnessed(format!(
                "factor {i} has different component counts"
            )));
        }
        for (j, (u, v)) in ca.iter().zip(cb).enumerate() {
            if u.field != v.field {
                return Err(CriteriaError::Unwitnessed(format!(
                    "component {j} of factor {i} differs between the two data"
                )));
            }
            if !subfield_contains(&v.embed_f, &u.embed_f)? {
                return Err(CriteriaError::Unwitnessed(format!(
                    "F is not contained in F' inside component {j} of factor {i}"
                )));
            }
        }
    }
    let report_f = classify(datum_f)?;
    let report_fprime = classify(datum_fprime)?;
    if report_fprime.hodge.is_all_hodge() && !report_f.hodge.is_all_hodge() {
        return Err(CriteriaError::Inconsistency(
            "W over F' is made of Hodge classes but W over F is not".into(),
        ));
    }
    if report_fprime.overall == Overall::Decomposable
        && report_f.overall != Overall::Decomposable
    {
        return Err(CriteriaError::Inconsistency(
            "W over F' is decomposable but W over F is not".into(),
        ));
    }
    Ok(MonotonicityReport {
        witnessed: true,
        hodge_implication: true,
        decomposable_implication: true,
        report_f,
        report_fprime,
    })
}
