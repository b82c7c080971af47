//! Sturm chains over the integers, exact real root counting, and the
//! generalized chains used for Cauchy indices along box edges.
//!
//! Chains are stored with integer coefficients, stripping content at every
//! step (sign preserved) to keep growth polynomial.  `count(a, b)` returns
//! the number of roots in the half-open interval (a, b]; with endpoints that
//! are never roots this is the usual open-interval count.

use super::poly::Poly;
use super::rational::Rational;
use super::LinalgError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// An interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// Sturm chain of a squarefree polynomial, integer normalized.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

fn strip_zeros(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn divide_content(v: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for c in v.iter() {
        content = num_integer::gcd(content, c.clone());
        if content == BigInt::from(1) {
            return;
        }
    }
    if content.is_zero() {
        return;
    }
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
}

/// Negated remainder up to a positive factor: returns w with
/// w = (positive rational) * -rem(a, b), computed over the integers.
fn neg_prem_positive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut scale_count = 0u32;
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        scale_count += 1;
        for j in 0..=db {
            let t = &lr * &b[j];
            r[dr - db + j] = &r[dr - db + j] - &t;
        }
        strip_zeros(&mut r);
    }
    // r = lb^scale_count * rem(a, b); negate, fixing the sign when the
    // accumulated power of lb is negative.
    let flip = lb.is_negative() && scale_count % 2 == 1;
    for c in r.iter_mut() {
        let neg = -&*c;
        *c = if flip { -neg } else { neg };
    }
    r
}

/// Generalized Sturm chain starting from arbitrary p0 (nonzero) and p1:
/// successive negated remainders, content-stripped, stopping at the last
/// nonzero element.  V(a) - V(b) over it equals the Cauchy index of p1/p0
/// on (a, b) whenever p0(a), p0(b) are nonzero.
pub(crate) fn general_chain(p0: &Poly, p1: &Poly) -> Vec<Vec<BigInt>> {
    let mut chain = vec![p0.to_primitive_int()];
    let b = p1.to_primitive_int();
    if b.is_empty() {
        return chain;
    }
    chain.push(b);
    loop {
        let n = chain.len();
        if chain[n - 1].len() <= 1 {
            break;
        }
        let mut r = neg_prem_positive(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        divide_content(&mut r);
        chain.push(r);
    }
    chain
}

/// Sign variations in the chain at a point, zeros skipped.
pub(crate) fn variations_of(chain: &[Vec<BigInt>], x: &Endpoint) -> usize {
    let mut v = 0;
    let mut last = 0;
    for p in chain {
        let s = match x {
            Endpoint::Finite(q) => sign_int_poly_at(p, q),
            Endpoint::PosInf => p.last().map_or(0, int_sign),
            Endpoint::NegInf => {
                if p.is_empty() {
                    0
                } else {
                    let s = p.last().map_or(0, int_sign);
                    if (p.len() - 1) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
            }
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Cauchy index of p1/p0 over (lo, hi), as V(lo) - V(hi) of the generalized
/// chain.  Requires p0 nonzero at both endpoints (caller's responsibility).
pub(crate) fn cauchy_index(
    p0: &Poly,
    p1: &Poly,
    lo: &Rational,
    hi: &Rational,
) -> Result<i64, LinalgError> {
    if p0.is_zero() {
        return Err(LinalgError::Internal(
            "cauchy index of a fraction with zero denominator".into(),
        ));
    }
    let chain = general_chain(p0, p1);
    let va = variations_of(&chain, &Endpoint::Finite(lo.clone())) as i64;
    let vb = variations_of(&chain, &Endpoint::Finite(hi.clone())) as i64;
    Ok(va - vb)
}

impl SturmChain {
    /// Builds the chain p0 = f, p1 = f', continuing with negated remainders.
    /// Requires f squarefree of degree >= 1.
    pub fn new(f: &Poly) -> Result<Self, LinalgError> {
        if f.degree().map_or(true, |d| d < 1) {
            return Err(LinalgError::DegreeTooSmall);
        }
        if !f.is_squarefree() {
            return Err(LinalgError::NotSquarefree);
        }
        let chain = general_chain(f, &f.derivative());
        if chain.last().map_or(true, |p| p.len() != 1) {
            return Err(LinalgError::Internal(
                "squarefree chain did not terminate at a constant".into(),
            ));
        }
        Ok(SturmChain { chain })
    }

    /// Number of real roots in the half-open interval (a, b].
    pub fn count(&self, a: &Endpoint, b: &Endpoint) -> usize {
        let va = variations_of(&self.chain, a);
        let vb = variations_of(&self.chain, b);
        va.saturating_sub(vb)
    }

    /// Sign of the underlying polynomial at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign_int_poly_at(&self.chain[0], x)
    }

    /// The underlying polynomial as stored: the primitive integer scaling
    /// of the input, with the same roots and signs up to a positive factor.
    pub fn poly(&self) -> Poly {
        Poly::from_bigint(&self.chain[0])
    }
}

fn int_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of an integer polynomial at p/q via the homogeneous evaluation
/// sum c_i p^i q^{n-i}, avoiding rationals.
fn sign_int_poly_at(poly: &[BigInt], x: &Rational) -> i32 {
    if poly.is_empty() {
        return 0;
    }
    let p = x.numer();
    let q = x.denom();
    // Homogeneous Horner: acc = sum c_i p^i q^{n-i}, same sign as f(p/q).
    let n = poly.len() - 1;
    let mut acc = poly[n].clone();
    let mut qp = BigInt::from(1);
    for i in (0..n).rev() {
        qp = qp * q;
        acc = acc * p + &poly[i] * &qp;
    }
    int_sign(&acc)
}

/// Counts real roots of a squarefree polynomial in (a, b].
pub fn sturm_count(f: &Poly, a: &Endpoint, b: &Endpoint) -> Result<usize, LinalgError> {
    Ok(SturmChain::new(f)?.count(a, b))
}

/// Isolating intervals for all real roots of a squarefree polynomial:
/// pairwise disjoint open intervals (lo, hi) with endpoints that are not
/// roots, each containing exactly one real root, sorted increasingly.
pub fn isolate_real_roots(f: &Poly) -> Result<Vec<(Rational, Rational)>, LinalgError> {
    let chain = SturmChain::new(f)?;
    let bound = f.root_bound()?;
    let lo = -&bound;
    let hi = bound.clone();
    let total = chain.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone()));
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo, hi, total)];
    while let Some((a, b, k)) = stack.pop() {
        match k {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let c = split_point(&chain, &a, &b);
                let left = chain.count(&Endpoint::Finite(a.clone()), &Endpoint::Finite(c.clone()));
                let right = k - left;
                stack.push((c.clone(), b, right));
                stack.push((a, c, left));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Midpoint of (a, b), nudged off any root of the chain polynomial.
pub(crate) fn split_point(chain: &SturmChain, a: &Rational, b: &Rational) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let mid = (a + b) / &two;
    if chain.sign_at(&mid) != 0 {
        return mid;
    }
    // mid is a rational root: offset by successively smaller steps.
    let mut step = (b - a) / Rational::from_integer(BigInt::from(16));
    loop {
        let c = &mid + &step;
        if &c < b && chain.sign_at(&c) != 0 {
            return c;
        }
        step /= &two;
    }
}

/// Bisects an isolating interval of `chain`'s polynomial until its width is
/// at most `width`, keeping exactly one root inside and nonzero endpoints.
/// Deterministic: runs at finer widths extend the same bisection path, so
/// the results nest.
pub fn refine_interval(
    chain: &SturmChain,
    mut lo: Rational,
    mut hi: Rational,
    width: &Rational,
) -> (Rational, Rational) {
    while &(&hi - &lo) > width {
        let c = split_point(chain, &lo, &hi);
        if chain.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(c.clone())) == 1 {
            hi = c;
        } else {
            lo = c;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ratio};
    use super::*;

    #[test]
    fn count_cubic_with_rational_endpoint_conventions() {
        // x^3 - x has roots -1, 0, 1.
        let f = Poly::from_i64(&[0, -1, 0, 1]);
        let c = |a: i64, b: i64| {
            sturm_count(&f, &Endpoint::Finite(rat(a)), &Endpoint::Finite(rat(b))).unwrap()
        };
        assert_eq!(c(-2, 2), 3);
        // Half-open (0, 1]: root 1 only (0 excluded at the left endpoint).
        assert_eq!(c(0, 1), 1);
        // (-1, 0]: contains 0, excludes -1.
        assert_eq!(c(-1, 0), 1);
        assert_eq!(
            sturm_count(&f, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            3
        );
    }

    #[test]
    fn count_no_real_roots() {
        let f = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(
            sturm_count(&f, &Endpoint::NegInf, &Endpoint::PosInf).unwrap(),
            0
        );
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = Poly::from_i64(&[1, 2, 1]);
        assert_eq!(
            sturm_count(&f, &Endpoint::NegInf, &Endpoint::PosInf),
            Err(LinalgError::NotSquarefree)
        );
    }

    #[test]
    fn isolates_known_roots() {
        // (x^2 - 2)(x - 3)(x + 5) has roots -5, -sqrt2, sqrt2, 3.
        let f = Poly::from_i64(&[30, -6, -17, 2, 1]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 4);
        // Pairwise disjoint and ordered.
        for w in ivs.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
        // Each interval holds exactly one root; endpoints are not roots.
        let chain = SturmChain::new(&f).unwrap();
        for (lo, hi) in &ivs {
            assert!(lo < hi);
            assert_eq!(
                chain.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone())),
                1
            );
            assert_ne!(chain.sign_at(lo), 0);
            assert_ne!(chain.sign_at(hi), 0);
        }
        // The sqrt(2) interval really brackets sqrt(2).
        let (lo, hi) = &ivs[2];
        assert!(lo < &ratio(142, 100) && hi > &ratio(141, 100));
    }

    #[test]
    fn isolates_rational_roots_with_root_inside() {
        // Roots exactly at 0, 1/2, 1: cut points avoid landing on them.
        // f = x(2x-1)(x-1) = 2x^3 - 3x^2 + x.
        let f = Poly::from_i64(&[0, 1, -3, 2]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 3);
        let chain = SturmChain::new(&f).unwrap();
        for (lo, hi) in &ivs {
            assert_ne!(chain.sign_at(lo), 0);
            assert_ne!(chain.sign_at(hi), 0);
        }
    }

    #[test]
    fn refinement_keeps_root_and_shrinks() {
        let f = Poly::from_i64(&[-2, 0, 1]);
        let chain = SturmChain::new(&f).unwrap();
        let ivs = isolate_real_roots(&f).unwrap();
        let (lo, hi) = ivs[1].clone();
        let w = ratio(1, 1_000_000);
        let (rlo, rhi) = refine_interval(&chain, lo.clone(), hi.clone(), &w);
        assert!(&rhi - &rlo <= w);
        assert!(rlo >= lo && rhi <= hi);
        // sqrt(2) inside: rlo^2 < 2 < rhi^2.
        assert!(&rlo * &rlo < rat(2));
        assert!(&rhi * &rhi > rat(2));
    }

    #[test]
    fn cauchy_index_of_reciprocal() {
        // Index of 1/x over (-1, 1): one jump from -inf to +inf: +1.
        let p0 = Poly::x();
        let p1 = Poly::one();
        assert_eq!(cauchy_index(&p0, &p1, &rat(-1), &rat(1)).unwrap(), 1);
        // Index of -1/x: -1.
        let m1 = Poly::constant(rat(-1));
        assert_eq!(cauchy_index(&p0, &m1, &rat(-1), &rat(1)).unwrap(), -1);
        // Index of y/1: no poles: 0.
        assert_eq!(cauchy_index(&p1, &p0, &rat(-1), &rat(1)).unwrap(), 0);
    }
}
