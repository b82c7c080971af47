//! Q[x]/(f) with exact arithmetic in the power basis.
//!
//! Elements are coordinate vectors over the power basis 1, x, .., x^{d-1};
//! multiplication reduces modulo f, inversion solves a linear system against
//! the multiplication matrix.  Complex embeddings are certified root boxes
//! of f in canonical order, computed lazily and cached; their order is
//! stable under width refinement, so indices are meaningful across calls.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use super::NfError;
use crate::linalg::{
    eval_poly_on_box, isolate_roots, ratio, span_membership, solve_square, CInterval, Endpoint,
    IsolatedRoots, Poly, QMatrix, RInterval, Rational, SturmChain,
};

struct FieldData {
    min_poly: Poly,
    degree: usize,
    embeddings: OnceLock<IsolatedRoots>,
    power_traces: OnceLock<Vec<Rational>>,
}

/// A number field Q[x]/(f), f monic and squarefree; irreducibility is
/// asserted by the supplier.  Cheap to clone and share.
#[derive(Clone)]
pub struct NumberField {
    data: Arc<FieldData>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(deg {}, {:?})", self.degree(), self.min_poly())
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.min_poly == other.data.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Builds the field, verifying f is monic, squarefree, of degree >= 1.
    pub fn new(min_poly: Poly) -> Result<Self, NfError> {
        let degree = min_poly
            .degree()
            .ok_or(crate::linalg::LinalgError::DegreeTooSmall)?;
        if degree < 1 {
            return Err(crate::linalg::LinalgError::DegreeTooSmall.into());
        }
        if min_poly.leading().map_or(true, |l| !l.is_one()) {
            return Err(NfError::NotMonic);
        }
        if !min_poly.is_squarefree() {
            return Err(crate::linalg::LinalgError::NotSquarefree.into());
        }
        Ok(NumberField {
            data: Arc::new(FieldData {
                min_poly,
                degree,
                embeddings: OnceLock::new(),
                power_traces: OnceLock::new(),
            }),
        })
    }

    /// The rational field presented as Q[x]/(x).
    pub fn rationals() -> Self {
        NumberField::new(Poly::x()).expect("x is a valid modulus")
    }

    pub fn min_poly(&self) -> &Poly {
        &self.data.min_poly
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    /// Complex embeddings as isolated root boxes of the defining polynomial,
    /// canonical order, conjugation pairing included.  Cached at width 1/16;
    /// use `embeddings_at` for finer boxes (same order by the nesting law).
    pub fn embeddings(&self) -> &IsolatedRoots {
        self.data.embeddings.get_or_init(|| {
            isolate_roots(&self.data.min_poly, &ratio(1, 16))
                .expect("squarefree modulus always isolates")
        })
    }

    pub fn embeddings_at(&self, width: &Rational) -> Result<IsolatedRoots, NfError> {
        Ok(isolate_roots(&self.data.min_poly, width)?)
    }

    /// True iff every embedding is real.
    pub fn is_totally_real(&self) -> bool {
        let chain = SturmChain::new(&self.data.min_poly).expect("modulus is squarefree");
        chain.count(&Endpoint::NegInf, &Endpoint::PosInf) == self.data.degree
    }

    /// Element from power-basis coordinates (length must equal the degree).
    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement, NfError> {
        if coords.len() != self.data.degree {
            return Err(NfError::CoordLength {
                expected: self.data.degree,
                got: coords.len(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    /// Element from integer power-basis coordinates.
    pub fn element_i64(&self, coords: &[i64]) -> Result<FieldElement, NfError> {
        self.element(coords.iter().map(|&c| ratio(c, 1)).collect())
    }

    /// Reduces an arbitrary polynomial modulo the defining polynomial.
    pub fn reduce(&self, p: &Poly) -> FieldElement {
        let (_, r) = p.divrem(&self.data.min_poly).expect("modulus is nonzero");
        let mut coords = vec![Rational::zero(); self.data.degree];
        for (i, c) in r.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rational::zero(); self.data.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    /// The class of x, a root of the defining polynomial.
    pub fn gen(&self) -> FieldElement {
        self.reduce(&Poly::x())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.data.degree];
        coords[0] = q;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    /// Matrix of multiplication by a on the power basis (columns are the
    /// images of the basis).
    pub fn mul_matrix(&self, a: &FieldElement) -> Result<QMatrix, NfError> {
        self.check(a)?;
        let mut cols = Vec::with_capacity(self.data.degree);
        let mut cur = a.clone();
        cols.push(cur.coords.clone());
        for _ in 1..self.data.degree {
            cur = cur.mul_by_gen();
            cols.push(cur.coords.clone());
        }
        Ok(QMatrix::from_cols(cols)?)
    }

    /// Trace of multiplication by a, i.e. Tr_{K/Q}(a).
    /// Traces of the generator powers x^0 .. x^{2d-2}, by Newton's
    /// identities on the defining polynomial; cached.  The range beyond the
    /// degree serves Gram matrices of the trace pairing.
    pub fn power_traces(&self) -> &[Rational] {
        self.data.power_traces.get_or_init(|| {
            let f = &self.data.min_poly;
            let n = self.data.degree;
            let mut p = Vec::with_capacity(2 * n - 1);
            p.push(Rational::from_integer(n.into()));
            for k in 1..(2 * n - 1) {
                let mut acc = if k <= n {
                    -(&f.coeff(n - k) * &Rational::from_integer(k.into()))
                } else {
                    Rational::zero()
                };
                for i in 1..=k.min(n) {
                    if i == k {
                        break;
                    }
                    acc -= &f.coeff(n - i) * &p[k - i];
                }
                p.push(acc);
            }
            p
        })
    }

    pub fn trace_abs(&self, a: &FieldElement) -> Result<Rational, NfError> {
        self.check(a)?;
        let traces = self.power_traces();
        let mut acc = Rational::zero();
        for (c, t) in a.coords.iter().zip(traces) {
            acc += c * t;
        }
        Ok(acc)
    }

    /// Minimal polynomial of a over Q, by the first linear dependence among
    /// the powers of a; always monic, degree divides the field degree for
    /// genuine (irreducible) moduli.
    pub fn min_poly_of(&self, a: &FieldElement) -> Result<Poly, NfError> {
        self.check(a)?;
        let mut powers: Vec<Vec<Rational>> = vec![self.one().coords];
        let mut cur = self.one();
        loop {
            cur = cur.mul(a)?;
            if let Some(cs) = span_membership(&powers, &cur.coords)? {
                let k = powers.len();
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (i, c) in cs.into_iter().enumerate() {
                    coeffs[i] = -c;
                }
                coeffs[k] = Rational::one();
                return Ok(Poly::new(coeffs));
            }
            powers.push(cur.coords.clone());
        }
    }

    fn check(&self, a: &FieldElement) -> Result<(), NfError> {
        if a.field != *self {
            return Err(NfError::FieldMismatch);
        }
        Ok(())
    }
}

/// An element of a number field, stored as power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement{:?}", self.coords)
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn add(&self, b: &FieldElement) -> Result<FieldElement, NfError> {
        self.same_field(b)?;
        let coords = self
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x + y)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn sub(&self, b: &FieldElement) -> Result<FieldElement, NfError> {
        self.same_field(b)?;
        let coords = self
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x - y)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * q).collect(),
        }
    }

    pub fn mul(&self, b: &FieldElement) -> Result<FieldElement, NfError> {
        self.same_field(b)?;
        Ok(self.field.reduce(&(&self.as_poly() * &b.as_poly())))
    }

    /// Multiplication by the field generator, one reduction step.
    fn mul_by_gen(&self) -> FieldElement {
        let d = self.field.degree();
        let f = self.field.min_poly();
        let top = self.coords[d - 1].clone();
        let mut coords = vec![Rational::zero(); d];
        for i in 1..d {
            coords[i] = self.coords[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..d {
                coords[i] -= &top * &f.coeff(i);
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    /// Multiplicative inverse, solving (mul by a) x = 1.
    pub fn inv(&self) -> Result<FieldElement, NfError> {
        if self.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        let m = self.field.mul_matrix(self)?;
        let mut e0 = vec![Rational::zero(); self.field.degree()];
        e0[0] = Rational::one();
        let sol = solve_square(&m, &e0).map_err(|_| NfError::DivisionByZero)?;
        self.field.element(sol)
    }

    pub fn div(&self, b: &FieldElement) -> Result<FieldElement, NfError> {
        self.mul(&b.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Result<FieldElement, NfError> {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Image of the element inside a complex root box of the modulus, by
    /// interval evaluation; shrinks as the box does.
    pub fn eval_on_box(&self, b: &CInterval) -> CInterval {
        eval_poly_on_box(&self.as_poly(), b)
    }

    fn same_field(&self, b: &FieldElement) -> Result<(), NfError> {
        if self.field != b.field {
            return Err(NfError::FieldMismatch);
        }
        Ok(())
    }
}

/// Sign of g at the real algebraic number isolated by (lo, hi) among the
/// roots of the squarefree polynomial behind `chain`; exact: returns 0 iff
/// g vanishes at the root, otherwise refines the interval until interval
/// evaluation of g has a definite sign.
pub fn sign_at_root(
    chain: &SturmChain,
    g: &Poly,
    iv: (Rational, Rational),
) -> Result<i32, NfError> {
    if g.is_zero() {
        return Ok(0);
    }
    // Exact zero test: g vanishes at the isolated root iff gcd(f, g) has a
    // root in the isolating interval.
    let f = chain.poly();
    let h = f.gcd(g);
    if h.degree().map_or(false, |d| d >= 1) {
        let hc = SturmChain::new(&h.squarefree_part()?)?;
        if hc.count(
            &Endpoint::Finite(iv.0.clone()),
            &Endpoint::Finite(iv.1.clone()),
        ) > 0
        {
            return Ok(0);
        }
    }
    let (mut lo, mut hi) = iv;
    loop {
        let boxed = CInterval::new(
            RInterval::new(lo.clone(), hi.clone()),
            RInterval::point(Rational::zero()),
        );
        let image = eval_poly_on_box(g, &boxed).re;
        if !image.contains_zero() {
            return Ok(if image.lo.is_positive() { 1 } else { -1 });
        }
        let w = (&hi - &lo) / ratio(2, 1);
        let refined = crate::linalg::refine_interval(chain, lo, hi, &w);
        lo = refined.0;
        hi = refined.1;
    }
}
