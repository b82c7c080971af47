//! Compositum of two number fields by a primitive element.
//!
//! The tensor algebra A ⊗ B has basis y^i z^j with y, z the generators of
//! the factors; powers of a candidate gamma = y + c z are computed by cheap
//! shift-and-reduce steps, and the first linear dependence gives its
//! minimal polynomial.  When the powers span the whole algebra, gamma is
//! primitive: Q[gamma] carries both factors, and their generator images are
//! read off by solving in the power basis.  Linear disjointness of the
//! factors is the caller's responsibility, in line with the assert-but-
//! verify-squarefree discipline for defining polynomials.

use num_traits::{One, Zero};

use super::field::{FieldElement, NumberField};
use super::subfield::EmbeddedSubfield;
use super::NfError;
use crate::linalg::{rat, span_membership, Poly, Rational};

/// A compositum K of two fields with both factors embedded.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: NumberField,
    pub embed_a: EmbeddedSubfield,
    pub embed_b: EmbeddedSubfield,
}

/// Builds the compositum of two fields presented by a primitive element
/// gamma = gen_a + c gen_b for the smallest working c >= 1.
pub fn compose(a: &NumberField, b: &NumberField) -> Result<Compositum, NfError> {
    let da = a.degree();
    let db = b.degree();
    let dim = da * db;
    let tensor = Tensor {
        fa: a.min_poly().clone(),
        fb: b.min_poly().clone(),
        da,
        db,
    };
    let y_vec = tensor.gen_a();
    let z_vec = tensor.gen_b();
    for c in 1..=25i64 {
        let cq = rat(c);
        let mut powers: Vec<Vec<Rational>> = vec![tensor.one()];
        let mut cur = tensor.one();
        let h = loop {
            let by = tensor.mul_by_y(&cur);
            let bz = tensor.mul_by_z(&cur);
            cur = by
                .iter()
                .zip(&bz)
                .map(|(u, v)| u + &(v * &cq))
                .collect();
            if let Some(cs) = span_membership(&powers, &cur)? {
                let k = powers.len();
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (i, ci) in cs.into_iter().enumerate() {
                    coeffs[i] = -ci;
                }
                coeffs[k] = Rational::one();
                break Poly::new(coeffs);
            }
            powers.push(cur.clone());
        };
        if h.deg_or_0() < dim {
            continue;
        }
        let field = NumberField::new(h)?;
        let ga = span_membership(&powers, &y_vec)?.ok_or_else(|| {
            NfError::Embedding("primitive powers failed to span the first factor".into())
        })?;
        let gb = span_membership(&powers, &z_vec)?.ok_or_else(|| {
            NfError::Embedding("primitive powers failed to span the second factor".into())
        })?;
        let embed_a =
            EmbeddedSubfield::with_min_poly(&field, field.element(ga)?, a.min_poly().clone())?;
        let embed_b =
            EmbeddedSubfield::with_min_poly(&field, field.element(gb)?, b.min_poly().clone())?;
        return Ok(Compositum {
            field,
            embed_a,
            embed_b,
        });
    }
    Err(NfError::Embedding(
        "no primitive element found; the factors are not linearly disjoint".into(),
    ))
}

/// A quadratic extension L(sqrt(gamma)) presented as an absolute field,
/// with the base L embedded and the image of the adjoined root recorded.
#[derive(Clone, Debug)]
pub struct SqrtExtension {
    pub field: NumberField,
    pub embed_base: EmbeddedSubfield,
    pub sqrt_image: FieldElement,
}

/// Adjoins a square root of gamma to its field L.  Works in the algebra
/// L[y]/(y^2 - gamma) with coordinate halves for the 1 and y components,
/// presenting it by a primitive element delta = y + c gen_L.  The caller
/// must certify gamma is not a square in L (by a sign or norm obstruction):
/// when it is, the algebra splits as L x L, which the full-degree and
/// defining-relation checks here cannot always detect.
pub fn adjoin_sqrt(gamma: &FieldElement) -> Result<SqrtExtension, NfError> {
    let l = gamma.field().clone();
    let n = l.degree();
    let dim = 2 * n;
    let halves = |u: &[Rational]| -> Result<(FieldElement, FieldElement), NfError> {
        Ok((l.element(u[..n].to_vec())?, l.element(u[n..].to_vec())?))
    };
    let glue = |lo: &FieldElement, hi: &FieldElement| {
        [lo.coords().to_vec(), hi.coords().to_vec()].concat()
    };
    let one = glue(&l.one(), &l.zero());
    let y_vec = glue(&l.zero(), &l.one());
    let x_vec = glue(&l.gen(), &l.zero());
    for c in 0..=25i64 {
        let shift = l.from_rational(rat(c));
        let mut powers: Vec<Vec<Rational>> = vec![one.clone()];
        let mut cur = one.clone();
        let h = loop {
            let (lo, hi) = halves(&cur)?;
            // Multiply by delta = y + c gen_L: y swaps the halves through gamma.
            let next_lo = hi.mul(gamma)?.add(&lo.mul(&l.gen())?.mul(&shift)?)?;
            let next_hi = lo.add(&hi.mul(&l.gen())?.mul(&shift)?)?;
            cur = glue(&next_lo, &next_hi);
            // The degree of delta divides the algebra dimension whenever the
            // algebra is a field, so the first dependence can only appear at
            // a divisor of dim; skip the rank checks in between.
            if dim % powers.len() == 0 {
                if let Some(cs) = span_membership(&powers, &cur)? {
                    let k = powers.len();
                    let mut coeffs = vec![Rational::zero(); k + 1];
                    for (i, ci) in cs.into_iter().enumerate() {
                        coeffs[i] = -ci;
                    }
                    coeffs[k] = Rational::one();
                    break Poly::new(coeffs);
                }
            }
            powers.push(cur.clone());
        };
        if h.deg_or_0() < dim {
            continue;
        }
        let field = NumberField::new(h)?;
        let gx = span_membership(&powers, &x_vec)?.ok_or_else(|| {
            NfError::Embedding("primitive powers failed to span the base field".into())
        })?;
        let gy = span_membership(&powers, &y_vec)?.ok_or_else(|| {
            NfError::Embedding("primitive powers failed to span the adjoined root".into())
        })?;
        let embed_base =
            EmbeddedSubfield::with_min_poly(&field, field.element(gx)?, l.min_poly().clone())?;
        let sqrt_image = field.element(gy)?;
        let gamma_up = embed_base.from_abstract(gamma)?;
        if sqrt_image.mul(&sqrt_image)? != gamma_up {
            return Err(NfError::Embedding(
                "adjoined root violates its defining relation".into(),
            ));
        }
        return Ok(SqrtExtension {
            field,
            embed_base,
            sqrt_image,
        });
    }
    Err(NfError::Embedding(
        "no primitive element of full degree; the radicand is a square in the base".into(),
    ))
}

/// A ⊗ B with basis y^i z^j, i < da, j < db, flattened as i + da * j.
struct Tensor {
    fa: Poly,
    fb: Poly,
    da: usize,
    db: usize,
}

impl Tensor {
    fn one(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.da * self.db];
        v[0] = Rational::one();
        v
    }

    /// Coordinates of y (reduced if da = 1).
    fn gen_a(&self) -> Vec<Rational> {
        self.mul_by_y(&self.one())
    }

    /// Coordinates of z (reduced if db = 1).
    fn gen_b(&self) -> Vec<Rational> {
        self.mul_by_z(&self.one())
    }

    /// Multiplication by y: shift in the y index, reducing y^da by the
    /// monic relation y^da = -sum fa_i y^i.
    fn mul_by_y(&self, u: &[Rational]) -> Vec<Rational> {
        let (da, db) = (self.da, self.db);
        let mut out = vec![Rational::zero(); da * db];
        for j in 0..db {
            let carry = &u[(da - 1) + da * j];
            for i in 0..da {
                let mut v = if i >= 1 {
                    u[(i - 1) + da * j].clone()
                } else {
                    Rational::zero()
                };
                if !carry.is_zero() {
                    v -= carry * &self.fa.coeff(i);
                }
                out[i + da * j] = v;
            }
        }
        out
    }

    /// Multiplication by z, symmetric to `mul_by_y`.
    fn mul_by_z(&self, u: &[Rational]) -> Vec<Rational> {
        let (da, db) = (self.da, self.db);
        let mut out = vec![Rational::zero(); da * db];
        for i in 0..da {
            let carry = &u[i + da * (db - 1)];
            for j in 0..db {
                let mut v = if j >= 1 {
                    u[i + da * (j - 1)].clone()
                } else {
                    Rational::zero()
                };
                if !carry.is_zero() {
                    v -= carry * &self.fb.coeff(j);
                }
                out[i + da * j] = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn gaussian_times_sqrt2() {
        let a = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let b = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let comp = compose(&a, &b).unwrap();
        assert_eq!(comp.field.degree(), 4);
        // gamma = i + sqrt2 has minimal polynomial x^4 - 2x^2 + 9.
        assert_eq!(comp.field.min_poly(), &Poly::from_i64(&[9, 0, -2, 0, 1]));
        let i = comp.embed_a.gen_image();
        let s = comp.embed_b.gen_image();
        assert_eq!(i.mul(i).unwrap(), comp.field.from_rational(rat(-1)));
        assert_eq!(s.mul(s).unwrap(), comp.field.from_rational(rat(2)));
    }

    #[test]
    fn compositum_with_rationals_is_identity() {
        let a = NumberField::new(Poly::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        let q = NumberField::rationals();
        let comp = compose(&a, &q).unwrap();
        assert_eq!(comp.field.min_poly(), a.min_poly());
        assert_eq!(comp.embed_b.degree(), 1);
    }

    #[test]
    fn three_step_tower() {
        let a = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let b = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let c = NumberField::new(Poly::from_i64(&[-3, 0, 1])).unwrap();
        let k1 = compose(&a, &b).unwrap();
        let k2 = compose(&k1.field, &c).unwrap();
        assert_eq!(k2.field.degree(), 8);
        // Transport Q(i) from the first stage to the top.
        let i_top = k2
            .embed_a
            .from_abstract(&k1.embed_a.gen_image().clone())
            .unwrap();
        assert_eq!(
            i_top.mul(&i_top).unwrap(),
            k2.field.from_rational(rat(-1))
        );
        let r3 = k2.embed_b.gen_image();
        assert_eq!(r3.mul(r3).unwrap(), k2.field.from_rational(rat(3)));
    }

    #[test]
    fn sqrt_of_rational_base() {
        let q = NumberField::rationals();
        let s = adjoin_sqrt(&q.from_rational(rat(2))).unwrap();
        assert_eq!(s.field.min_poly(), &Poly::from_i64(&[-2, 0, 1]));
        assert_eq!(s.embed_base.degree(), 1);
        assert_eq!(
            s.sqrt_image.mul(&s.sqrt_image).unwrap(),
            s.field.from_rational(rat(2))
        );
    }

    #[test]
    fn sqrt_tower_over_real_quadratic() {
        // gamma = -3 - sqrt2 is totally negative in the real field Q(sqrt2),
        // hence certainly not a square there.
        let l = NumberField::new(Poly::from_i64(&[-2, 0, 1])).unwrap();
        let e = adjoin_sqrt(&l.element_i64(&[-3, -1]).unwrap()).unwrap();
        assert_eq!(e.field.min_poly(), &Poly::from_i64(&[7, 0, 6, 0, 1]));
        assert_eq!(e.embed_base.degree(), 2);
        assert_eq!(e.sqrt_image, e.field.gen());

        // gamma' = -3 + sqrt2 = -6 - alpha^2; not a square in E since
        // neither 7 = Nm(gamma') nor 14 = 2 * 7 is a rational square.
        let gamma2 = e.field.element_i64(&[-6, 0, -1, 0]).unwrap();
        let k = adjoin_sqrt(&gamma2).unwrap();
        assert_eq!(k.field.degree(), 8);
        assert_eq!(k.embed_base.index(), 2);

        // beta = alpha + alpha' satisfies x^4 + 12x^2 + 8.
        let alpha_up = k.embed_base.from_abstract(&e.sqrt_image).unwrap();
        let beta = alpha_up.add(&k.sqrt_image).unwrap();
        let f = EmbeddedSubfield::new(&k.field, beta).unwrap();
        assert_eq!(f.sub_min_poly(), &Poly::from_i64(&[8, 0, 12, 0, 1]));
    }
}
