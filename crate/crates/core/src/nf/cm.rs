//! CM fields: totally imaginary quadratic extensions of totally real
//! fields, presented explicitly and verified, never discovered.
//!
//! The caller supplies a generator of the claimed maximal totally real
//! subfield E_0 and an element eta with eta^2 in E_0; verification checks
//! the index, total reality, total negativity of eta^2 by exact sign
//! evaluation on isolated root intervals, and that eta splits the field.
//! Complex conjugation is then the involution fixing E_0 and negating eta;
//! it is certified against the analytic embeddings by interval arithmetic:
//! the image of the generator under the involution must land in the
//! conjugate root box of every embedding.

use num_traits::{One, Zero};

use super::field::{sign_at_root, FieldElement, NumberField};
use super::subfield::EmbeddedSubfield;
use super::NfError;
use crate::linalg::{
    isolate_real_roots, ratio, solve_square, QMatrix, Rational, SturmChain,
};

/// A claimed CM presentation of a field E: a generator of the totally real
/// subfield of index two, and a purely imaginary element splitting E.
#[derive(Clone, Debug)]
pub struct CMStructure {
    pub field: NumberField,
    pub real_gen: FieldElement,
    pub eta: FieldElement,
}

/// Successful verification of a [`CMStructure`].
#[derive(Clone, Debug)]
pub struct CMVerification {
    /// Complex conjugation as a matrix on the power basis of E.
    pub conj: QMatrix,
    /// The totally real subfield E_0, embedded in E.
    pub real_subfield: EmbeddedSubfield,
    /// eta^2 as an element of the abstract E_0.
    pub delta: FieldElement,
    /// Box width at which the analytic certification succeeded.
    pub certified_width: Rational,
}

/// Checks every CM invariant and returns the conjugation involution.
pub fn verify_cm(cm: &CMStructure) -> Result<CMVerification, NfError> {
    let e = &cm.field;
    let n = e.degree();
    if n % 2 != 0 {
        return Err(NfError::NotCM("field degree is odd".into()));
    }
    let m = n / 2;
    if cm.real_gen.field() != e || cm.eta.field() != e {
        return Err(NfError::FieldMismatch);
    }
    let e0 = EmbeddedSubfield::new(e, cm.real_gen.clone())?;
    if e0.degree() != m {
        return Err(NfError::NotCM(format!(
            "real generator cuts out degree {}, expected index two (degree {})",
            e0.degree(),
            m
        )));
    }
    let e0_abs = e0.abstract_field()?;
    if !e0_abs.is_totally_real() {
        return Err(NfError::NotCM("claimed real subfield is not totally real".into()));
    }
    let delta_amb = cm.eta.mul(&cm.eta)?;
    let delta = match e0.to_abstract(&delta_amb)? {
        None => {
            return Err(NfError::NotCM(
                "eta squared lies outside the real subfield".into(),
            ))
        }
        Some(d) => d,
    };
    // Totally negative: strictly below zero in every real embedding of E_0.
    let chain = SturmChain::new(e0_abs.min_poly())?;
    for iv in isolate_real_roots(e0_abs.min_poly())? {
        if sign_at_root(&chain, &delta.as_poly(), iv)? >= 0 {
            return Err(NfError::NotCM("eta squared is not totally negative".into()));
        }
    }
    // E = E_0 ⊕ eta E_0 as Q-vector spaces.
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for p in e0.power_basis() {
        cols.push(p.coords().to_vec());
    }
    for p in e0.power_basis() {
        cols.push(cm.eta.mul(p)?.coords().to_vec());
    }
    let t = QMatrix::from_cols(cols)?;
    if t.rank() != n {
        return Err(NfError::NotCM(
            "eta does not split the field over the real subfield".into(),
        ));
    }
    // Conjugation: identity on the E_0 block, minus one on the eta block,
    // transported to the power basis column by column.
    let mut conj_cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut ek = vec![Rational::zero(); n];
        ek[k] = Rational::one();
        let mut x = solve_square(&t, &ek).map_err(|err| NfError::Linalg(err))?;
        for c in x.iter_mut().skip(m) {
            *c = -c.clone();
        }
        conj_cols.push(t.mul_vec(&x)?);
    }
    let mut conj = QMatrix::zero(n, n);
    for (j, col) in conj_cols.iter().enumerate() {
        for i in 0..n {
            conj.set(i, j, col[i].clone());
        }
    }
    if conj.mul(&conj)? != QMatrix::identity(n) {
        return Err(NfError::NotCM("conjugation is not an involution".into()));
    }
    let certified_width = certify_conjugation(e, &conj)?;
    Ok(CMVerification {
        conj,
        real_subfield: e0,
        delta,
        certified_width,
    })
}

/// Certifies that the algebraic involution agrees with complex conjugation
/// in every embedding: the interval image of conj(gen) over a root box must
/// meet only the conjugate box.  Returns the width at which this separates.
fn certify_conjugation(e: &NumberField, conj: &QMatrix) -> Result<Rational, NfError> {
    let n = e.degree();
    let cgen = e.element(conj.col(1 % n))?;
    let mut width = ratio(1, 16);
    for _ in 0..64 {
        let em = e.embeddings_at(&width)?;
        let mut ok = true;
        'outer: for (s, b) in em.boxes.iter().enumerate() {
            let image = cgen.eval_on_box(&b.to_cinterval());
            for (t, other) in em.boxes.iter().enumerate() {
                let overlaps = image.re.hi >= other.re_lo
                    && other.re_hi >= image.re.lo
                    && image.im.hi >= other.im_lo
                    && other.im_hi >= image.im.lo;
                if t == em.conj[s] {
                    if !overlaps {
                        return Err(NfError::NotCM(
                            "involution misses the conjugate embedding".into(),
                        ));
                    }
                } else if overlaps {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return Ok(width);
        }
        width /= ratio(2, 1);
    }
    Err(NfError::Linalg(crate::linalg::LinalgError::Internal(
        "conjugation certification did not separate".into(),
    )))
}

/// Q-basis of the purely imaginary part E_- = { a : conj(a) = -a }, namely
/// eta times the power basis of E_0; length is half the degree of E.
pub fn minus_part_basis(cm: &CMStructure) -> Result<Vec<FieldElement>, NfError> {
    let e0 = EmbeddedSubfield::new(&cm.field, cm.real_gen.clone())?;
    let mut out = Vec::with_capacity(e0.degree());
    for p in e0.power_basis() {
        out.push(cm.eta.mul(p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Poly};

    fn gaussian_cm() -> CMStructure {
        let e = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        CMStructure {
            real_gen: e.zero(),
            eta: e.gen(),
            field: e,
        }
    }

    fn cyclotomic5_cm() -> CMStructure {
        let e = NumberField::new(Poly::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        let z = e.gen();
        let z4 = z.pow(4).unwrap();
        CMStructure {
            real_gen: z.add(&z4).unwrap(),
            eta: z.sub(&z4).unwrap(),
            field: e,
        }
    }

    #[test]
    fn gaussian_field_verifies() {
        let v = verify_cm(&gaussian_cm()).unwrap();
        // Conjugation negates i.
        assert_eq!(
            v.conj,
            QMatrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]).unwrap()
        );
        assert_eq!(v.delta.coords(), &[rat(-1)]);
        assert_eq!(v.real_subfield.degree(), 1);
    }

    #[test]
    fn totally_real_field_is_rejected() {
        let e = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let cm = CMStructure {
            real_gen: e.zero(),
            eta: e.gen(),
            field: e,
        };
        assert!(matches!(verify_cm(&cm), Err(NfError::NotCM(_))));
    }

    #[test]
    fn cyclotomic_field_verifies() {
        let cm = cyclotomic5_cm();
        let v = verify_cm(&cm).unwrap();
        assert_eq!(v.real_subfield.sub_min_poly(), &Poly::from_i64(&[-1, 1, 1]));
        // delta = t^2 - 4 = -3 - t modulo t^2 + t - 1.
        assert_eq!(v.delta.coords(), &[rat(-3), rat(-1)]);
    }

    #[test]
    fn conjugation_is_a_field_automorphism() {
        let cm = cyclotomic5_cm();
        let v = verify_cm(&cm).unwrap();
        let e = &cm.field;
        // c(ab) = c(a) c(b) across a basis of pairs.
        let basis: Vec<_> = (0..4).map(|k| e.gen().pow(k).unwrap()).collect();
        let apply = |a: &FieldElement| {
            e.element(v.conj.mul_vec(a.coords()).unwrap()).unwrap()
        };
        for a in &basis {
            for b in &basis {
                let lhs = apply(&a.mul(b).unwrap());
                let rhs = apply(a).mul(&apply(b)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(v.conj.mul(&v.conj).unwrap(), QMatrix::identity(4));
    }

    #[test]
    fn minus_part_is_antifixed() {
        let cm = cyclotomic5_cm();
        let v = verify_cm(&cm).unwrap();
        let basis = minus_part_basis(&cm).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            let img = cm.field.element(v.conj.mul_vec(b.coords()).unwrap()).unwrap();
            assert_eq!(img, b.neg());
        }
        let gaussian = gaussian_cm();
        let gb = minus_part_basis(&gaussian).unwrap();
        assert_eq!(gb, vec![gaussian.field.gen()]);
    }

    #[test]
    fn wrong_eta_is_rejected() {
        // eta inside E_0 fails to split the field.
        let e = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let cm = CMStructure {
            real_gen: e.zero(),
            eta: e.one(),
            field: e,
        };
        assert!(matches!(verify_cm(&cm), Err(NfError::NotCM(_))));
    }
}
