//! Exact decomposability witness against the divisor ring.
//!
//! The twisted polarization forms phi_s(v, w) = phi(s v, w), for s running
//! over the supplied symmetric elements, span the 2-form layer of the
//! divisor ring in the generic case.  The degree-r layer of the exterior
//! subalgebra they generate is spanned by their (r/2)-fold wedge products;
//! membership of the Weil-class basis in that span is decided exactly, and
//! a failed search returns the certifying rank separation.

use super::forms::{binomial, AltForm};
use super::rep::FRepresentation;
use super::subspace::WeilSubspace;
use super::{WedgeError, DEFAULT_WEDGE_CAP};
use crate::linalg::{span_membership, QMatrix, Rational};
use num_traits::Zero;

/// Outcome of the membership search: exact coefficients over the
/// independent products when found, the rank separation otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorWitness {
    pub found: bool,
    pub coefficients: Option<Vec<Vec<Rational>>>,
    pub product_count: usize,
    pub span_rank: usize,
    pub joint_rank: usize,
    pub caveat: String,
}

/// The twisted 2-forms phi_s for each supplied symmetric element; every
/// twist must come out alternating, which is exactly Rosati symmetry of s
/// for the polarization.
pub fn divisor_forms(
    rep: &FRepresentation,
    polarization: &QMatrix,
    symmetric_elements: &[QMatrix],
) -> Result<Vec<AltForm<Rational>>, WedgeError> {
    let n = rep.dim_v();
    check_alternating(polarization, n).map_err(|_| {
        WedgeError::InvalidInput("polarization form must be alternating".into())
    })?;
    if polarization.rank() != n {
        return Err(WedgeError::InvalidInput(
            "polarization form must be nondegenerate".into(),
        ));
    }
    let mut out = Vec::with_capacity(symmetric_elements.len());
    for (index, s) in symmetric_elements.iter().enumerate() {
        if s.nrows() != n || s.ncols() != n {
            return Err(WedgeError::InvalidInput(format!(
                "symmetric element {} has shape {}x{}, expected {}x{}",
                index,
                s.nrows(),
                s.ncols(),
                n,
                n
            )));
        }
        let twisted = s.transpose().mul(polarization)?;
        if check_alternating(&twisted, n).is_err() {
            return Err(WedgeError::NotAlternating { index });
        }
        let mut form = AltForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                let v = twisted.get(i, j).clone();
                if !v.is_zero() {
                    form.set(&[i, j], v);
                }
            }
        }
        out.push(form);
    }
    Ok(out)
}

fn check_alternating(m: &QMatrix, n: usize) -> Result<(), ()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(());
    }
    for i in 0..n {
        for j in 0..n {
            if *m.get(i, j) != -m.get(j, i).clone() {
                return Err(());
            }
        }
    }
    Ok(())
}

/// Searches the degree-r layer of the exterior algebra generated by the
/// divisor forms for the Weil-class basis, with the default size cap.
pub fn decomposability_witness(
    ws: &WeilSubspace,
    forms: &[AltForm<Rational>],
) -> Result<DivisorWitness, WedgeError> {
    decomposability_witness_with_cap(ws, forms, DEFAULT_WEDGE_CAP)
}

/// Same as [`decomposability_witness`] with a configurable cap on the
/// ambient wedge dimension.
pub fn decomposability_witness_with_cap(
    ws: &WeilSubspace,
    forms: &[AltForm<Rational>],
    cap: usize,
) -> Result<DivisorWitness, WedgeError> {
    let r = ws.r;
    if r % 2 != 0 {
        return Err(WedgeError::InvalidInput(format!(
            "decomposability witness needs an even degree, got {}",
            r
        )));
    }
    let n = ws.n();
    let wedge_dim = binomial(n, r);
    if wedge_dim > cap {
        return Err(WedgeError::CombinatorialBlowup {
            dim: wedge_dim,
            cap,
        });
    }
    for f in forms {
        if f.n() != n || f.degree() != 2 {
            return Err(WedgeError::InvalidInput(
                "divisor forms must be 2-forms on the same space".into(),
            ));
        }
    }
    let half = r / 2;

    // All (r/2)-fold products with repetition, in lexicographic order of
    // the index multiset.
    let mut products: Vec<Vec<Rational>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    build_products(forms, half, 0, &mut stack, None, &mut products)?;
    let product_count = products.len();

    // Greedy independent subset in deterministic order.
    let mut indep: Vec<Vec<Rational>> = Vec::new();
    for p in &products {
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut with = indep.clone();
        with.push(p.clone());
        if QMatrix::from_rows(with)?.rank() == indep.len() + 1 {
            indep.push(p.clone());
        }
    }
    let span_rank = indep.len();
    let mut joint = indep.clone();
    for b in &ws.basis {
        joint.push(b.vals().to_vec());
    }
    let joint_rank = QMatrix::from_rows(joint)?.rank();

    let caveat = "membership is decided against the exterior algebra generated by the \
                  supplied twisted polarization forms; a special member of the isogeny \
                  class may have a larger divisor ring"
        .to_string();
    if joint_rank == span_rank {
        let mut coefficients = Vec::with_capacity(ws.basis.len());
        for b in &ws.basis {
            let coords = span_membership(&indep, b.vals())?.ok_or_else(|| {
                WedgeError::InvalidInput(
                    "rank arithmetic promised membership that coordinates deny".into(),
                )
            })?;
            coefficients.push(coords);
        }
        Ok(DivisorWitness {
            found: true,
            coefficients: Some(coefficients),
            product_count,
            span_rank,
            joint_rank,
            caveat,
        })
    } else {
        Ok(DivisorWitness {
            found: false,
            coefficients: None,
            product_count,
            span_rank,
            joint_rank,
            caveat,
        })
    }
}

fn build_products(
    forms: &[AltForm<Rational>],
    remaining: usize,
    from: usize,
    stack: &mut Vec<usize>,
    acc: Option<AltForm<Rational>>,
    out: &mut Vec<Vec<Rational>>,
) -> Result<(), WedgeError> {
    if remaining == 0 {
        if let Some(form) = acc {
            out.push(form.vals().to_vec());
        }
        return Ok(());
    }
    for i in from..forms.len() {
        stack.push(i);
        let next = match &acc {
            None => forms[i].clone(),
            Some(a) => a.wedge(&forms[i])?,
        };
        build_products(forms, remaining - 1, i, stack, Some(next), out)?;
        stack.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::subspace::weil_subspace;
    use super::*;
    use crate::linalg::{rat, Poly};

    /// Regular action of Q(i) on Q^{2c} with the polarization given by
    /// multiplication by i itself; the Rosati involution is then complex
    /// conjugation, so only the rationals are symmetric.
    fn gaussian_setup(copies: usize) -> (FRepresentation, QMatrix) {
        let rep = FRepresentation::regular(&Poly::from_i64(&[1, 0, 1]), copies).unwrap();
        let phi = rep.f_action().clone();
        (rep, phi)
    }

    #[test]
    fn identity_twist_returns_the_polarization_itself() {
        let (rep, phi) = gaussian_setup(2);
        let forms = divisor_forms(&rep, &phi, &[QMatrix::identity(4)]).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].get(&[0, 1]), phi.get(0, 1));
        assert_eq!(forms[0].get(&[2, 3]), phi.get(2, 3));
    }

    #[test]
    fn non_symmetric_twist_is_rejected() {
        let (rep, phi) = gaussian_setup(2);
        // Multiplication by i anticommutes with the Rosati involution
        // here, so its twist is symmetric rather than alternating.
        let err = divisor_forms(&rep, &phi, &[QMatrix::identity(4), rep.f_action().clone()])
            .unwrap_err();
        assert!(matches!(err, WedgeError::NotAlternating { index: 1 }));
    }

    #[test]
    fn top_power_of_a_polarization_spans_the_rational_weil_line() {
        // F = Q on Q^4: the Weil space is the determinant line and
        // phi^{wedge 2} generates it.
        let rep =
            FRepresentation::new(QMatrix::identity(4), Poly::from_i64(&[-1, 1])).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let mut phi = QMatrix::zero(4, 4);
        phi.set(0, 1, rat(1));
        phi.set(1, 0, rat(-1));
        phi.set(2, 3, rat(1));
        phi.set(3, 2, rat(-1));
        let forms = divisor_forms(&rep, &phi, &[QMatrix::identity(4)]).unwrap();
        let witness = decomposability_witness(&ws, &forms).unwrap();
        assert!(witness.found);
        assert_eq!(witness.span_rank, 1);
        assert_eq!(witness.joint_rank, 1);
        let c = &witness.coefficients.as_ref().unwrap()[0];
        // det = (1/2) phi wedge phi.
        assert_eq!(c, &vec![crate::linalg::ratio(1, 2)]);
    }

    #[test]
    fn real_quadratic_surface_weil_space_is_spanned_by_twists() {
        // E = F = Q(sqrt 2) on a surface: phi(u, v) = Tr(u_1 v_2 - u_2 v_1)
        // and its sqrt-2 twist span exactly the Weil space.
        let f = Poly::from_i64(&[-2, 0, 1]);
        let rep = FRepresentation::regular(&f, 2).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let field = rep.field();
        let trace_form = |a: usize, b: usize| -> QMatrix {
            // Matrix of Tr(x_a y_b - x_b y_a) in the power basis blocks.
            let mut m = QMatrix::zero(4, 4);
            for i in 0..2 {
                for j in 0..2 {
                    let gi = field.gen().pow(i as u32).unwrap();
                    let gj = field.gen().pow(j as u32).unwrap();
                    let t = field.trace_abs(&gi.mul(&gj).unwrap()).unwrap();
                    m.set(a * 2 + i, b * 2 + j, t.clone());
                    m.set(b * 2 + j, a * 2 + i, -t);
                }
            }
            m
        };
        let phi = trace_form(0, 1);
        let s1 = QMatrix::identity(4);
        let s2 = rep.f_action().clone();
        let forms = divisor_forms(&rep, &phi, &[s1, s2]).unwrap();
        let witness = decomposability_witness(&ws, &forms).unwrap();
        assert!(witness.found, "rank separation {:?}", witness);
        assert_eq!(witness.span_rank, 2);
        assert_eq!(witness.joint_rank, 2);
    }

    #[test]
    fn weil_fourfold_classes_are_outside_the_generic_divisor_ring() {
        let (rep, phi) = gaussian_setup(4);
        let ws = weil_subspace(&rep).unwrap();
        let forms = divisor_forms(&rep, &phi, &[QMatrix::identity(8)]).unwrap();
        let witness = decomposability_witness(&ws, &forms).unwrap();
        assert!(!witness.found);
        assert_eq!(witness.product_count, 1);
        assert_eq!(witness.span_rank, 1);
        assert_eq!(witness.joint_rank, 3);
        assert!(witness.coefficients.is_none());
    }

    #[test]
    fn the_cap_refuses_oversized_wedge_spaces() {
        let (rep, phi) = gaussian_setup(4);
        let ws = weil_subspace(&rep).unwrap();
        let forms = divisor_forms(&rep, &phi, &[QMatrix::identity(8)]).unwrap();
        let err = decomposability_witness_with_cap(&ws, &forms, 3).unwrap_err();
        assert!(matches!(
            err,
            WedgeError::CombinatorialBlowup { dim: 70, cap: 3 }
        ));
    }

    #[test]
    fn odd_degree_is_rejected() {
        let rep = FRepresentation::regular(&Poly::from_i64(&[1, 0, 1]), 1).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let err = decomposability_witness(&ws, &[]).unwrap_err();
        assert!(matches!(err, WedgeError::InvalidInput(_)));
    }
}
