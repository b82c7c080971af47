//! Subfields carried with an explicit embedding into an ambient field.
//!
//! A subfield F of K is the pair (minimal polynomial of a generator, image
//! of that generator in K).  Powers of the image span F inside K, so
//! membership and intersection are exact linear algebra; a basis of K over
//! F makes the relative trace a matrix trace.  The rational field uses the
//! degenerate presentation sub_min_poly = x, gen_image = 0, which keeps
//! every code path uniform.

use num_traits::One;

use super::field::{FieldElement, NumberField};
use super::NfError;
use crate::linalg::{span_membership, solve_square, Poly, QMatrix, Rational};

/// A subfield of an ambient number field, presented by a generator image.
#[derive(Clone, Debug)]
pub struct EmbeddedSubfield {
    over: NumberField,
    gen_image: FieldElement,
    sub_min_poly: Poly,
    /// gen_image^0 .. gen_image^{d-1}, the Q-basis of the subfield in K.
    powers: Vec<FieldElement>,
}

impl EmbeddedSubfield {
    /// Embeds the field generated by `gen_image`, computing its minimal
    /// polynomial from the first linear dependence among powers.
    pub fn new(over: &NumberField, gen_image: FieldElement) -> Result<Self, NfError> {
        let sub_min_poly = over.min_poly_of(&gen_image)?;
        Self::assemble(over, gen_image, sub_min_poly)
    }

    /// Embeds with a caller-supplied minimal polynomial, verified to be
    /// monic, to annihilate the generator image, and to match the exact
    /// dimension of the power span.
    pub fn with_min_poly(
        over: &NumberField,
        gen_image: FieldElement,
        sub_min_poly: Poly,
    ) -> Result<Self, NfError> {
        let computed = over.min_poly_of(&gen_image)?;
        if computed != sub_min_poly {
            return Err(NfError::Embedding(format!(
                "claimed minimal polynomial {:?} disagrees with the power span, which gives {:?}",
                sub_min_poly, computed
            )));
        }
        Self::assemble(over, gen_image, sub_min_poly)
    }

    /// Q embedded by the convention sub_min_poly = x, gen_image = 0.
    pub fn rationals(over: &NumberField) -> Result<Self, NfError> {
        Self::assemble(over, over.zero(), Poly::x())
    }

    /// K embedded in itself.
    pub fn full(over: &NumberField) -> Result<Self, NfError> {
        Self::assemble(over, over.gen(), over.min_poly().clone())
    }

    fn assemble(
        over: &NumberField,
        gen_image: FieldElement,
        sub_min_poly: Poly,
    ) -> Result<Self, NfError> {
        if gen_image.field() != over {
            return Err(NfError::FieldMismatch);
        }
        let d = sub_min_poly
            .degree()
            .ok_or(crate::linalg::LinalgError::DegreeTooSmall)?;
        if d < 1 || sub_min_poly.leading().map_or(true, |l| !l.is_one()) {
            return Err(NfError::Embedding(
                "subfield minimal polynomial must be monic of degree at least one".into(),
            ));
        }
        if over.degree() % d != 0 {
            return Err(NfError::Embedding(format!(
                "subfield degree {} does not divide ambient degree {}",
                d,
                over.degree()
            )));
        }
        let mut powers = Vec::with_capacity(d);
        let mut cur = over.one();
        for _ in 0..d {
            powers.push(cur.clone());
            cur = cur.mul(&gen_image)?;
        }
        // cur is now gen_image^d; the minimal polynomial must annihilate it.
        let mut acc = cur;
        for (i, p) in powers.iter().enumerate() {
            acc = acc.add(&p.scale(&sub_min_poly.coeff(i)))?;
        }
        if !acc.is_zero() {
            return Err(NfError::Embedding(
                "minimal polynomial does not annihilate the generator image".into(),
            ));
        }
        Ok(EmbeddedSubfield {
            over: over.clone(),
            gen_image,
            sub_min_poly,
            powers,
        })
    }

    pub fn over(&self) -> &NumberField {
        &self.over
    }

    pub fn gen_image(&self) -> &FieldElement {
        &self.gen_image
    }

    pub fn sub_min_poly(&self) -> &Poly {
        &self.sub_min_poly
    }

    /// Degree of the subfield over Q.
    pub fn degree(&self) -> usize {
        self.sub_min_poly.deg_or_0()
    }

    /// Degree of the ambient field over the subfield.
    pub fn index(&self) -> usize {
        self.over.degree() / self.degree()
    }

    /// The subfield as a standalone Q[x]/(sub_min_poly).
    pub fn abstract_field(&self) -> Result<NumberField, NfError> {
        NumberField::new(self.sub_min_poly.clone())
    }

    /// Power basis images gen^0 .. gen^{d-1} inside the ambient field.
    pub fn power_basis(&self) -> &[FieldElement] {
        &self.powers
    }

    fn power_coords(&self) -> Vec<Vec<Rational>> {
        self.powers.iter().map(|p| p.coords().to_vec()).collect()
    }

    /// Coordinates of an ambient element over the power basis of the
    /// subfield, i.e. its abstract power-basis coordinates, if it lies in
    /// the subfield.
    pub fn coordinates_of(&self, a: &FieldElement) -> Result<Option<Vec<Rational>>, NfError> {
        if a.field() != &self.over {
            return Err(NfError::FieldMismatch);
        }
        Ok(span_membership(&self.power_coords(), a.coords())?)
    }

    /// Maps an ambient element into the abstract subfield when it belongs.
    pub fn to_abstract(&self, a: &FieldElement) -> Result<Option<FieldElement>, NfError> {
        match self.coordinates_of(a)? {
            None => Ok(None),
            Some(cs) => Ok(Some(self.abstract_field()?.element(cs)?)),
        }
    }

    /// Maps an abstract subfield element into the ambient field.
    pub fn from_abstract(&self, a: &FieldElement) -> Result<FieldElement, NfError> {
        if a.field().min_poly() != &self.sub_min_poly {
            return Err(NfError::FieldMismatch);
        }
        let mut acc = self.over.zero();
        for (i, c) in a.coords().iter().enumerate() {
            acc = acc.add(&self.powers[i].scale(c))?;
        }
        Ok(acc)
    }

    /// Basis of the ambient field over this subfield, selected greedily
    /// from the ambient power basis in index order: elements b_1..b_t such
    /// that the products {gen^i b_j} form a Q-basis of the ambient field.
    pub fn f_basis(&self) -> Result<Vec<FieldElement>, NfError> {
        let n = self.over.degree();
        let d = self.degree();
        let t = n / d;
        let mut chosen: Vec<FieldElement> = Vec::with_capacity(t);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut basis_elt = self.over.one();
        let x = self.over.gen();
        for _ in 0..n {
            if chosen.len() == t {
                break;
            }
            let mut trial_rows = rows.clone();
            let mut prod = basis_elt.clone();
            for i in 0..d {
                if i > 0 {
                    prod = prod.mul(&self.gen_image)?;
                }
                trial_rows.push(prod.coords().to_vec());
            }
            let want = trial_rows.len();
            if QMatrix::from_rows(trial_rows.clone())?.rank() == want {
                rows = trial_rows;
                chosen.push(basis_elt.clone());
            }
            basis_elt = basis_elt.mul(&x)?;
        }
        if chosen.len() != t {
            return Err(NfError::BasisNotFound);
        }
        Ok(chosen)
    }

    /// Trace of multiplication by `a` as a map of vector spaces over this
    /// subfield; returns an element of the abstract subfield.  Independent
    /// of the basis of the ambient field over the subfield.
    ///
    /// Computed through the trace pairing: the absolute trace tower gives
    /// Tr_amb(a g^j) = Tr_sub(z g^j) for z the relative trace and g the
    /// subfield generator, and the Gram matrix Tr_sub(g^i g^j) of power
    /// sums is invertible, so z solves a small exact linear system.
    pub fn relative_trace(&self, a: &FieldElement) -> Result<FieldElement, NfError> {
        if a.field() != &self.over {
            return Err(NfError::FieldMismatch);
        }
        let sub = self.abstract_field()?;
        let d = self.degree();
        let sums = sub.power_traces();
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            rows.push(sums[i..i + d].to_vec());
        }
        let gram = QMatrix::from_rows(rows)?;
        let mut rhs = Vec::with_capacity(d);
        let mut w = a.clone();
        for j in 0..d {
            rhs.push(self.over.trace_abs(&w)?);
            if j + 1 < d {
                w = w.mul(&self.gen_image)?;
            }
        }
        let z = solve_square(&gram, &rhs).map_err(|_| NfError::BasisNotFound)?;
        sub.element(z)
    }

    /// Same, in a caller-supplied basis over the subfield (used to check
    /// basis independence).
    pub fn relative_trace_in(
        &self,
        a: &FieldElement,
        fb: &[FieldElement],
    ) -> Result<FieldElement, NfError> {
        if a.field() != &self.over {
            return Err(NfError::FieldMismatch);
        }
        let n = self.over.degree();
        let d = self.degree();
        let t = self.index();
        if fb.len() != t {
            return Err(NfError::BasisNotFound);
        }
        // Columns j*d + l hold coordinates of gen^l b_j; solving against
        // this matrix rewrites an ambient element in the subfield basis.
        let mut cols = Vec::with_capacity(n);
        for b in fb {
            let mut prod = b.clone();
            for l in 0..d {
                if l > 0 {
                    prod = prod.mul(&self.gen_image)?;
                }
                cols.push(prod.coords().to_vec());
            }
        }
        let m = QMatrix::from_cols(cols)?;
        let sub = self.abstract_field()?;
        let mut trace = sub.zero();
        for (j, b) in fb.iter().enumerate() {
            let rhs = a.mul(b)?;
            let sol = solve_square(&m, rhs.coords()).map_err(|_| NfError::BasisNotFound)?;
            let diag = sub.element(sol[j * d..(j + 1) * d].to_vec())?;
            trace = trace.add(&diag)?;
        }
        Ok(trace)
    }
}

/// True iff B is contained in A as subfields of the common ambient field,
/// decided by membership of B's generator image in the span of A's powers.
pub fn subfield_contains(a: &EmbeddedSubfield, b: &EmbeddedSubfield) -> Result<bool, NfError> {
    if a.over != b.over {
        return Err(NfError::FieldMismatch);
    }
    Ok(a.coordinates_of(&b.gen_image)?.is_some())
}

/// Intersection of two embedded subfields.
#[derive(Clone, Debug)]
pub struct IntersectionResult {
    /// Q-basis of the intersection inside the ambient field.
    pub basis: Vec<FieldElement>,
    /// The same basis written in abstract coordinates of the first field.
    pub in_a_coords: Vec<Vec<Rational>>,
    /// Restriction of a supplied involution of the first field to the
    /// intersection, in the returned basis; None when not stable under it.
    pub conj_restriction: Option<QMatrix>,
}

/// Exact basis of A ∩ B, certified multiplicatively closed.  When `conj_a`
/// carries an involution of A (a matrix on A's abstract power basis), its
/// restriction to the intersection is returned as a matrix in the computed
/// basis, or None if the intersection is not stable under it.
pub fn subfield_intersection(
    a: &EmbeddedSubfield,
    b: &EmbeddedSubfield,
    conj_a: Option<&QMatrix>,
) -> Result<IntersectionResult, NfError> {
    if a.over != b.over {
        return Err(NfError::FieldMismatch);
    }
    let n = a.over.degree();
    let da = a.degree();
    let db = b.degree();
    // Kernel of [P_A | -P_B]: matching coordinates in both power spans.
    let mut m = QMatrix::zero(n, da + db);
    for (j, p) in a.powers.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, p.coords()[i].clone());
        }
    }
    for (j, p) in b.powers.iter().enumerate() {
        for i in 0..n {
            m.set(i, da + j, -p.coords()[i].clone());
        }
    }
    let kernel = m.kernel_basis();
    let mut basis = Vec::with_capacity(kernel.len());
    let mut in_a_coords = Vec::with_capacity(kernel.len());
    for v in &kernel {
        let u = &v[..da];
        let mut elt = a.over.zero();
        for (j, c) in u.iter().enumerate() {
            elt = elt.add(&a.powers[j].scale(c))?;
        }
        basis.push(elt);
        in_a_coords.push(u.to_vec());
    }
    // An intersection of subfields contains 1 and is multiplicatively
    // closed; both checks certify the embeddings were honest.
    let coord_basis: Vec<Vec<Rational>> = basis.iter().map(|e| e.coords().to_vec()).collect();
    if span_membership(&coord_basis, a.over.one().coords())?.is_none() {
        return Err(NfError::ClosureFailure("1 is not in the intersection".into()));
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i..] {
            let prod = x.mul(y)?;
            if span_membership(&coord_basis, prod.coords())?.is_none() {
                return Err(NfError::ClosureFailure(
                    "a product of basis elements leaves the span".into(),
                ));
            }
        }
    }
    let conj_restriction = match conj_a {
        None => None,
        Some(c) => restrict_involution(c, &in_a_coords)?,
    };
    Ok(IntersectionResult {
        basis,
        in_a_coords,
        conj_restriction,
    })
}

/// Matrix of `c` restricted to the span of `vecs` (written in that basis),
/// or None when the span is not c-stable.
fn restrict_involution(
    c: &QMatrix,
    vecs: &[Vec<Rational>],
) -> Result<Option<QMatrix>, NfError> {
    let k = vecs.len();
    let mut cols = Vec::with_capacity(k);
    for v in vecs {
        let image = c.mul_vec(v)?;
        match span_membership(vecs, &image)? {
            None => return Ok(None),
            Some(cs) => cols.push(cs),
        }
    }
    let mut m = QMatrix::zero(k, k);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..k {
            m.set(i, j, col[i].clone());
        }
    }
    Ok(Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// Q(i, sqrt2) = Q[x]/(x^4 - 2x^2 + 9) with generator gen = i + sqrt2:
    /// gen^2 = 1 + 2 i sqrt2 and gen^3 = 5i - sqrt2, so i = (gen^3 + gen)/6
    /// and sqrt2 = (5 gen - gen^3)/6.
    fn biquadratic() -> (NumberField, FieldElement, FieldElement) {
        let k = NumberField::new(Poly::from_i64(&[9, 0, -2, 0, 1])).unwrap();
        let g = k.gen();
        let g3 = g.pow(3).unwrap();
        let i = g3.add(&g).unwrap().scale(&crate::linalg::ratio(1, 6));
        let sqrt2 = g.scale(&rat(5)).sub(&g3).unwrap().scale(&crate::linalg::ratio(1, 6));
        (k, i, sqrt2)
    }

    #[test]
    fn biquadratic_generators_check_out() {
        let (k, i, sqrt2) = biquadratic();
        assert_eq!(i.mul(&i).unwrap(), k.from_rational(rat(-1)));
        assert_eq!(sqrt2.mul(&sqrt2).unwrap(), k.from_rational(rat(2)));
    }

    #[test]
    fn embedding_and_membership() {
        let (k, i, sqrt2) = biquadratic();
        let qi = EmbeddedSubfield::new(&k, i.clone()).unwrap();
        let qs2 = EmbeddedSubfield::new(&k, sqrt2.clone()).unwrap();
        assert_eq!(qi.sub_min_poly(), &Poly::from_i64(&[1, 0, 1]));
        assert_eq!(qs2.sub_min_poly(), &Poly::from_i64(&[-2, 0, 1]));
        assert!(!subfield_contains(&qs2, &qi).unwrap());
        assert!(!subfield_contains(&qi, &qs2).unwrap());
        assert!(subfield_contains(&qi, &qi).unwrap());
        let full = EmbeddedSubfield::full(&k).unwrap();
        assert!(subfield_contains(&full, &qi).unwrap());
        assert!(subfield_contains(&full, &qs2).unwrap());
        let q = EmbeddedSubfield::rationals(&k).unwrap();
        assert!(subfield_contains(&qi, &q).unwrap());
        assert_eq!(q.degree(), 1);
        assert_eq!(q.index(), 4);
    }

    #[test]
    fn f_basis_sizes() {
        let (k, _, sqrt2) = biquadratic();
        let qs2 = EmbeddedSubfield::new(&k, sqrt2).unwrap();
        assert_eq!(qs2.f_basis().unwrap().len(), 2);
        let full = EmbeddedSubfield::full(&k).unwrap();
        assert_eq!(full.f_basis().unwrap(), vec![k.one()]);
        let q = EmbeddedSubfield::rationals(&k).unwrap();
        // Power basis of K itself.
        let fb = q.f_basis().unwrap();
        assert_eq!(fb.len(), 4);
        assert_eq!(fb[0], k.one());
        assert_eq!(fb[1], k.gen());
    }

    #[test]
    fn relative_traces() {
        let (k, i, sqrt2) = biquadratic();
        let qs2 = EmbeddedSubfield::new(&k, sqrt2.clone()).unwrap();
        // Tr_{K/Q(sqrt2)}(i) = i + (-i) = 0.
        let tr = qs2.relative_trace(&i).unwrap();
        assert!(tr.is_zero());
        // Tr_{K/Q(sqrt2)}(sqrt2) = 2 sqrt2, i.e. coordinates [0, 2].
        let tr2 = qs2.relative_trace(&sqrt2).unwrap();
        assert_eq!(tr2.coords(), &[rat(0), rat(2)]);
        // Tower transitivity: Tr_{K/Q} = Tr_{E0/Q} ∘ Tr_{K/E0}.
        let a = k.element_i64(&[1, 2, 3, 4]).unwrap();
        let down = qs2.relative_trace(&a).unwrap();
        let sub = qs2.abstract_field().unwrap();
        assert_eq!(
            sub.trace_abs(&down).unwrap(),
            k.trace_abs(&a).unwrap()
        );
        // Tr_{K/K}(a) = a.
        let full = EmbeddedSubfield::full(&k).unwrap();
        assert_eq!(full.relative_trace(&a).unwrap().coords(), a.coords());
        // Tr over Q matches the absolute trace.
        let q = EmbeddedSubfield::rationals(&k).unwrap();
        let tq = q.relative_trace(&a).unwrap();
        assert_eq!(tq.coords()[0], k.trace_abs(&a).unwrap());
    }

    #[test]
    fn trace_independent_of_basis_choice() {
        let (k, i, sqrt2) = biquadratic();
        let qs2 = EmbeddedSubfield::new(&k, sqrt2).unwrap();
        let fb = qs2.f_basis().unwrap();
        // A different valid basis: scale and mix.
        let alt = vec![
            fb[1].clone(),
            fb[0].add(&fb[1].scale(&rat(3))).unwrap(),
        ];
        let a = i.add(&k.element_i64(&[0, 1, 0, 2]).unwrap()).unwrap();
        assert_eq!(
            qs2.relative_trace(&a).unwrap(),
            qs2.relative_trace_in(&a, &alt).unwrap()
        );
    }

    #[test]
    fn intersections() {
        let (k, i, sqrt2) = biquadratic();
        let qi = EmbeddedSubfield::new(&k, i.clone()).unwrap();
        let qs2 = EmbeddedSubfield::new(&k, sqrt2.clone()).unwrap();
        let meet = subfield_intersection(&qi, &qs2, None).unwrap();
        assert_eq!(meet.basis.len(), 1);
        // Spanned by a nonzero rational.
        assert!(meet.basis[0].is_rational());
        assert!(!meet.basis[0].is_zero());
        // A ∩ A = A.
        let self_meet = subfield_intersection(&qi, &qi, None).unwrap();
        assert_eq!(self_meet.basis.len(), 2);
        // Q(i sqrt2) meets Q(i) rationally too.
        let qis2 = EmbeddedSubfield::new(&k, i.mul(&sqrt2).unwrap()).unwrap();
        assert_eq!(qis2.degree(), 2);
        let m2 = subfield_intersection(&qis2, &qi, None).unwrap();
        assert_eq!(m2.basis.len(), 1);
    }

    #[test]
    fn involution_restriction() {
        let (k, i, _) = biquadratic();
        let qi = EmbeddedSubfield::new(&k, i).unwrap();
        // Conjugation on Q(i): fixes 1, negates i (power basis 1, i).
        let c = QMatrix::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(-1)],
        ])
        .unwrap();
        let meet = subfield_intersection(&qi, &qi, Some(&c)).unwrap();
        let r = meet.conj_restriction.unwrap();
        // In whatever basis, the restriction is an involution.
        assert_eq!(r.mul(&r).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn rejects_dishonest_min_poly() {
        let (k, i, _) = biquadratic();
        assert!(EmbeddedSubfield::with_min_poly(&k, i.clone(), Poly::from_i64(&[2, 0, 1])).is_err());
        assert!(EmbeddedSubfield::with_min_poly(&k, i, Poly::from_i64(&[1, 0, 1])).is_ok());
    }
}
