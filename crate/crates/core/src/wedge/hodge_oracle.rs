//! Numeric bidegree reading for the Weil-class space.
//!
//! The complexified space splits into one line per embedding of F; the
//! line at sigma is cut out by the eigenvector of the F-structure, and
//! its bidegree is read off by pulling the form back along
//! Q_t = P^{1,0} + t P^{0,1}, where the projectors come exactly from the
//! complex structure.  A pure (a, b)-form scales by t^b, so sampling at
//! t = 0..r and solving the Vandermonde system splits the components;
//! exactly one must dominate, all others must stay below tolerance.

use super::complex::{pow10_inv, CRat, ComplexStructureNum};
use super::forms::AltForm;
use super::rep::FRepresentation;
use super::subspace::WeilSubspace;
use super::WedgeError;
use crate::linalg::{solve_square, QMatrix, Rational};
use num_traits::{One, Signed, Zero};

/// Per-embedding bidegrees of the Weil-class space, with the largest
/// sub-dominant residual observed.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleBidegrees {
    pub bidegrees: Vec<(u64, u64)>,
    pub is_all_hodge: bool,
    pub max_residual: Rational,
    pub tolerance: Rational,
}

fn form_norm(w: &AltForm<CRat>) -> Rational {
    let mut best = Rational::zero();
    for v in w.vals() {
        let a = v.abs1();
        if a > best {
            best = a;
        }
    }
    best
}

/// Reads the bidegree (n_sigma, n_sigma') of every embedding component of
/// the Weil-class space against the given complex structure.
pub fn hodge_type_oracle(
    rep: &FRepresentation,
    ws: &WeilSubspace,
    j: &ComplexStructureNum,
    tolerance: &Rational,
) -> Result<OracleBidegrees, WedgeError> {
    if !tolerance.is_positive() {
        return Err(WedgeError::InvalidInput(
            "tolerance must be positive".into(),
        ));
    }
    let n = rep.dim_v();
    let d = rep.degree();
    let r = ws.r;
    if ws.basis.len() != d || ws.basis[0].n() != n {
        return Err(WedgeError::InvalidInput(
            "subspace shape does not match the representation".into(),
        ));
    }
    if j.j_matrix.nrows() != n {
        return Err(WedgeError::InvalidInput(
            "complex structure dimension does not match the representation".into(),
        ));
    }

    let width = pow10_inv(j.precision + 10);
    let roots = rep.field().embeddings_at(&width)?;
    let sigma: Vec<CRat> = roots
        .boxes
        .iter()
        .map(|b| CRat::new(b.re_mid(), b.im_mid()))
        .collect();

    // Argument-side projector columns: Q_t = (I - iJ)/2 + t (I + iJ)/2.
    let half = Rational::new(1.into(), 2.into());
    let samples: Vec<Rational> = (0..=r as i64)
        .map(|t| Rational::from_integer(t.into()))
        .collect();
    let mut q_cols: Vec<Vec<Vec<CRat>>> = Vec::with_capacity(samples.len());
    for t in &samples {
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let mut col = Vec::with_capacity(n);
            for row in 0..n {
                let jv = j.j_matrix.get(row, c);
                let id = if row == c {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                // (id - i jv)/2 + t (id + i jv)/2
                let re = (&id + t * &id) * &half;
                let im = (t - Rational::one()) * jv * &half;
                col.push(CRat::new(re, im));
            }
            cols.push(col);
        }
        q_cols.push(cols);
    }

    // Exact inverse of the Vandermonde matrix on the sample points.
    let vrows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|t| {
            let mut row = Vec::with_capacity(r + 1);
            let mut p = Rational::one();
            for _ in 0..=r {
                row.push(p.clone());
                p = &p * t;
            }
            row
        })
        .collect();
    let vmat = QMatrix::from_rows(vrows)?;
    let mut vinv_cols = Vec::with_capacity(r + 1);
    for b in 0..=r {
        let mut e = vec![Rational::zero(); r + 1];
        e[b] = Rational::one();
        vinv_cols.push(solve_square(&vmat, &e)?);
    }

    let mut bidegrees = Vec::with_capacity(d);
    let mut max_residual = Rational::zero();
    for s in 0..d {
        // Eigenvector of the F-structure companion action by Horner
        // tails: v_{d-1} = 1, v_{k-1} = sigma v_k + a_k.
        let mut v = vec![CRat::zero(); d];
        v[d - 1] = CRat::one();
        for k in (1..d).rev() {
            v[k - 1] =
                sigma[s].clone() * v[k].clone() + CRat::from_re(rep.f_minpoly().coeff(k));
        }
        let mut w: AltForm<CRat> = AltForm::zero(n, r);
        for (k, c) in v.iter().enumerate() {
            w = w.add(&ws.basis[k].map(|x| CRat::from_re(x.clone())).scale(c))?;
        }
        let norm = form_norm(&w);
        if norm.is_zero() {
            return Err(WedgeError::ToleranceExceeded(format!(
                "embedding component {} of the subspace vanished",
                s
            )));
        }
        let lead = w
            .vals()
            .iter()
            .find(|x| x.abs1() == norm)
            .expect("norm is attained")
            .clone();
        let w = w.scale(&lead.inv()?);

        let mut pulled = Vec::with_capacity(samples.len());
        for cols in &q_cols {
            pulled.push(w.precompose(cols)?);
        }
        let mut norms = Vec::with_capacity(r + 1);
        for b in 0..=r {
            let mut comp: AltForm<CRat> = AltForm::zero(n, r);
            for (t, u) in pulled.iter().enumerate() {
                // Row b of the inverse Vandermonde matrix, entry t.
                let c = CRat::from_re(vinv_cols[t][b].clone());
                comp = comp.add(&u.scale(&c))?;
            }
            norms.push(form_norm(&comp));
        }
        let mut dominant = 0;
        for b in 1..=r {
            if norms[b] > norms[dominant] {
                dominant = b;
            }
        }
        if norms[dominant] <= *tolerance {
            return Err(WedgeError::ToleranceExceeded(format!(
                "no bidegree component of embedding {} rises above tolerance {}",
                s, tolerance
            )));
        }
        let mut residual = Rational::zero();
        for (b, nb) in norms.iter().enumerate() {
            if b != dominant && *nb > residual {
                residual = nb.clone();
            }
        }
        if residual > *tolerance {
            return Err(WedgeError::ToleranceExceeded(format!(
                "two bidegree components of embedding {} exceed tolerance {} (residual {})",
                s, tolerance, residual
            )));
        }
        if residual > max_residual {
            max_residual = residual;
        }
        bidegrees.push(((r - dominant) as u64, dominant as u64));
    }

    // Conjugate embeddings must carry mirrored bidegrees.
    for s in 0..d {
        let (a, b) = bidegrees[s];
        if bidegrees[roots.conj[s]] != (b, a) {
            return Err(WedgeError::ToleranceExceeded(format!(
                "bidegrees of conjugate embeddings {} and {} do not mirror",
                s, roots.conj[s]
            )));
        }
    }
    let is_all_hodge = bidegrees.iter().all(|&(a, b)| a == b);
    Ok(OracleBidegrees {
        bidegrees,
        is_all_hodge,
        max_residual,
        tolerance: tolerance.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::complex::{build_complex_structure, default_tolerance};
    use super::super::subspace::weil_subspace;
    use super::*;
    use crate::criteria::hodge_test;
    use crate::linalg::Poly;

    fn run(
        f: &Poly,
        copies: usize,
        mults: &[u64],
        precision: u32,
    ) -> (FRepresentation, OracleBidegrees) {
        let rep = FRepresentation::regular(f, copies).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let j = build_complex_structure(&rep, mults, precision).unwrap();
        let report = hodge_type_oracle(&rep, &ws, &j, &default_tolerance()).unwrap();
        (rep, report)
    }

    #[test]
    fn cm_elliptic_curve_has_odd_bidegrees_and_is_not_hodge() {
        let (_, report) = run(&Poly::from_i64(&[1, 0, 1]), 1, &[0, 1], 50);
        assert_eq!(report.bidegrees, vec![(0, 1), (1, 0)]);
        assert!(!report.is_all_hodge);
    }

    #[test]
    fn balanced_fourfold_is_all_hodge_with_tiny_residuals() {
        let (_, report) = run(&Poly::from_i64(&[1, 0, 1]), 4, &[2, 2], 40);
        assert_eq!(report.bidegrees, vec![(2, 2), (2, 2)]);
        assert!(report.is_all_hodge);
        assert!(report.max_residual <= report.tolerance);
    }

    #[test]
    fn unbalanced_pair_shows_a_two_zero_component() {
        let (_, report) = run(&Poly::from_i64(&[1, 0, 1]), 2, &[2, 0], 40);
        assert!(!report.is_all_hodge);
        assert!(report.bidegrees.contains(&(2, 0)));
        assert!(report.bidegrees.contains(&(0, 2)));
    }

    #[test]
    fn oracle_agrees_with_the_multiplicity_criterion_on_the_test_matrix() {
        let gauss = Poly::from_i64(&[1, 0, 1]);
        let cyc5 = Poly::from_i64(&[1, 1, 1, 1, 1]);
        let combos: Vec<(&Poly, usize)> =
            vec![(&gauss, 2), (&gauss, 4), (&cyc5, 1), (&cyc5, 2)];
        for (f, copies) in combos {
            let rep = FRepresentation::regular(f, copies).unwrap();
            let ws = weil_subspace(&rep).unwrap();
            let d = rep.degree();
            let r = rep.rank();
            let conj = rep.field().embeddings().conj.clone();
            let free: Vec<usize> = (0..d).filter(|&s| s <= conj[s]).collect();
            let mut assignment = vec![0u64; free.len()];
            loop {
                let mut mults = vec![0u64; d];
                for (i, &s) in free.iter().enumerate() {
                    mults[s] = assignment[i];
                    mults[conj[s]] = r as u64 - assignment[i];
                }
                let j = build_complex_structure(&rep, &mults, 30).unwrap();
                let report =
                    hodge_type_oracle(&rep, &ws, &j, &default_tolerance()).unwrap();
                assert_eq!(
                    report.is_all_hodge,
                    hodge_test(&mults, &conj).is_all_hodge(),
                    "disagreement for {:?} x{} mults {:?}",
                    f,
                    copies,
                    mults
                );
                for s in 0..d {
                    assert_eq!(report.bidegrees[s], (mults[s], mults[conj[s]]));
                }
                assert!(report.max_residual <= report.tolerance);
                // Next assignment in mixed-radix order.
                let mut k = 0;
                loop {
                    if k == assignment.len() {
                        break;
                    }
                    if assignment[k] < r as u64 {
                        assignment[k] += 1;
                        break;
                    }
                    assignment[k] = 0;
                    k += 1;
                }
                if k == assignment.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn absurdly_small_tolerance_is_reported_not_absorbed() {
        let f = Poly::from_i64(&[1, 1, 1, 1, 1]);
        let rep = FRepresentation::regular(&f, 2).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let j = build_complex_structure(&rep, &[1, 1, 1, 1], 30).unwrap();
        let err = hodge_type_oracle(&rep, &ws, &j, &pow10_inv(200)).unwrap_err();
        assert!(matches!(err, WedgeError::ToleranceExceeded(_)));
    }

    #[test]
    fn oracle_reports_are_deterministic() {
        let f = Poly::from_i64(&[1, 0, 1]);
        let rep = FRepresentation::regular(&f, 2).unwrap();
        let ws = weil_subspace(&rep).unwrap();
        let j = build_complex_structure(&rep, &[1, 1], 35).unwrap();
        let a = hodge_type_oracle(&rep, &ws, &j, &default_tolerance()).unwrap();
        let b = hodge_type_oracle(&rep, &ws, &j, &default_tolerance()).unwrap();
        assert_eq!(a, b);
    }
}
