//! The trace map on the imaginary part of a CM center.
//!
//! For a type IV factor, E_- = { a in E : conj(a) = -a } maps to F by
//! theta(a) = sum_i rank_i Tr_{K_i/F}(a), the sum running over the
//! components K_i of the compositum EF acting on H^1.  Whether this map
//! vanishes decides the d >= 2 or m >= 2 cases of the classification.

use super::CriteriaError;
use crate::linalg::{rat, QMatrix};
use crate::model::{AlbertType, CompositumComponent, SimpleFactorDatum};
use crate::nf::{minus_part_basis, FieldElement, NumberField};
use num_traits::Zero;

/// The map E_- -> F in explicit bases: column j holds the F-coordinates
/// of theta at the j-th element of the minus-part basis of E.
#[derive(Clone, Debug)]
pub struct ThetaMap {
    pub matrix: QMatrix,
    /// The evaluated basis of E_-, as elements of the abstract center.
    pub minus_basis: Vec<FieldElement>,
    pub is_zero: bool,
}

/// Evaluates theta on the minus-part basis of the factor's CM center.
pub fn theta_map(
    factor: &SimpleFactorDatum,
    field_f: &NumberField,
    components: &[CompositumComponent],
) -> Result<ThetaMap, CriteriaError> {
    let cm = match (factor.albert_type, &factor.cm) {
        (AlbertType::IV, Some(cm)) => cm,
        _ => {
            return Err(CriteriaError::Unsupported(
                "the trace map on E_- needs a type IV factor with CM data".into(),
            ))
        }
    };
    let minus = minus_part_basis(cm)?;
    let mut cols = Vec::with_capacity(minus.len());
    for alpha in &minus {
        let mut acc = field_f.zero();
        for comp in components {
            let up = comp.embed_e.from_abstract(alpha)?;
            let tr = comp.embed_f.relative_trace(&up)?;
            acc = acc.add(&tr.scale(&rat(comp.module_rank as i64)))?;
        }
        cols.push(acc.coords().to_vec());
    }
    let matrix = QMatrix::from_cols(cols)?;
    let is_zero = (0..matrix.nrows()).all(|i| matrix.row(i).iter().all(|c| c.is_zero()));
    Ok(ThetaMap {
        matrix,
        minus_basis: minus,
        is_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Poly;
    use crate::nf::{CMStructure, EmbeddedSubfield};

    fn gaussian_factor(dim_y: usize) -> (SimpleFactorDatum, NumberField) {
        let e = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let factor = SimpleFactorDatum {
            name: "y".into(),
            albert_type: AlbertType::IV,
            dim_y,
            power: 1,
            center: e.clone(),
            cm: Some(CMStructure {
                real_gen: e.zero(),
                eta: e.gen(),
                field: e.clone(),
            }),
            d: 1,
        };
        (factor, e)
    }

    #[test]
    fn identity_component_scales_by_rank() {
        let (factor, e) = gaussian_factor(4);
        let comp = CompositumComponent {
            field: e.clone(),
            embed_e: EmbeddedSubfield::full(&e).unwrap(),
            embed_f: EmbeddedSubfield::full(&e).unwrap(),
            module_rank: 4,
        };
        let th = theta_map(&factor, &e, &[comp]).unwrap();
        assert!(!th.is_zero);
        // theta(i) = 4i has F-coordinates (0, 4).
        assert_eq!(th.matrix.col(0), vec![rat(0), rat(4)]);
    }

    #[test]
    fn conjugate_components_cancel_exactly_at_equal_ranks() {
        let (factor, e) = gaussian_factor(4);
        let minus_i = e.element_i64(&[0, -1]).unwrap();
        let comp = |f_gen: &FieldElement, rank: usize| CompositumComponent {
            field: e.clone(),
            embed_e: EmbeddedSubfield::full(&e).unwrap(),
            embed_f: EmbeddedSubfield::new(&e, f_gen.clone()).unwrap(),
            module_rank: rank,
        };
        let balanced = [comp(&e.gen(), 2), comp(&minus_i, 2)];
        let th = theta_map(&factor, &e, &balanced).unwrap();
        assert!(th.is_zero);

        let skew = [comp(&e.gen(), 3), comp(&minus_i, 1)];
        let th = theta_map(&factor, &e, &skew).unwrap();
        assert!(!th.is_zero);
        // theta(i) = (3 - 1) i.
        assert_eq!(th.matrix.col(0), vec![rat(0), rat(2)]);
    }

    #[test]
    fn trace_to_real_quadratic_vanishes() {
        // K = Q(i, sqrt2) as Q[g]/(g^4 - 2g^2 + 9), i = (g^3 + g)/6,
        // sqrt2 = (5g - g^3)/6; F = Q(sqrt2) kills every trace from E_-.
        let k = NumberField::new(Poly::from_i64(&[9, 0, -2, 0, 1])).unwrap();
        let sixth = crate::linalg::ratio(1, 6);
        let i_img = k
            .element(vec![rat(0), sixth.clone(), rat(0), sixth.clone()])
            .unwrap();
        let s_img = k
            .element(vec![
                rat(0),
                &rat(5) * &sixth,
                rat(0),
                -sixth.clone(),
            ])
            .unwrap();
        let (factor, _) = gaussian_factor(2);
        let f = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let comp = CompositumComponent {
            field: k.clone(),
            embed_e: EmbeddedSubfield::new(&k, i_img).unwrap(),
            embed_f: EmbeddedSubfield::new(&k, s_img).unwrap(),
            module_rank: 1,
        };
        let th = theta_map(&factor, &f, &[comp]).unwrap();
        assert!(th.is_zero);
        assert_eq!(th.matrix.nrows(), 2);
        assert_eq!(th.matrix.ncols(), 1);
    }

    #[test]
    fn non_cm_factor_is_rejected() {
        let e = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let factor = SimpleFactorDatum {
            name: "y".into(),
            albert_type: AlbertType::I,
            dim_y: 2,
            power: 1,
            center: e.clone(),
            cm: None,
            d: 1,
        };
        let err = theta_map(&factor, &e, &[]).unwrap_err();
        assert!(matches!(err, CriteriaError::Unsupported(_)));
    }
}
