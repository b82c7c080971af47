//! Bivariate polynomials for splitting f(x + iy) into real and imaginary
//! parts, plus resultants that eliminate one variable.
//!
//! Resultants are computed by evaluation and Newton interpolation: the
//! Sylvester determinant is a polynomial in the surviving variable whose
//! degree is bounded a priori, so sampling at enough rational points and
//! interpolating is exact.  Degree drops at a sample are corrected with the
//! standard leading-coefficient power rule, which is valid because the first
//! argument always has a constant leading coefficient here.

use super::poly::Poly;
use super::rational::{rat, Rational};
use super::LinalgError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Polynomial in x and y, stored as coefficients of powers of y, each a
/// polynomial in x.  No trailing zero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    ypolys: Vec<Poly>,
}

impl BiPoly {
    pub fn new(mut ypolys: Vec<Poly>) -> Self {
        while ypolys.last().map_or(false, |p| p.is_zero()) {
            ypolys.pop();
        }
        BiPoly { ypolys }
    }

    pub fn zero() -> Self {
        BiPoly { ypolys: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.ypolys.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        if self.ypolys.is_empty() {
            None
        } else {
            Some(self.ypolys.len() - 1)
        }
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.ypolys.iter().filter_map(|p| p.degree()).max()
    }

    pub fn y_coeff(&self, j: usize) -> Poly {
        self.ypolys.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.ypolys.len().max(other.ypolys.len());
        BiPoly::new(
            (0..n)
                .map(|j| &self.y_coeff(j) + &other.y_coeff(j))
                .collect(),
        )
    }

    fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.ypolys.len().max(other.ypolys.len());
        BiPoly::new(
            (0..n)
                .map(|j| &self.y_coeff(j) - &other.y_coeff(j))
                .collect(),
        )
    }

    fn mul_by_x(&self) -> BiPoly {
        BiPoly::new(self.ypolys.iter().map(|p| p * &Poly::x()).collect())
    }

    fn mul_by_y(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![Poly::zero()];
        v.extend(self.ypolys.iter().cloned());
        BiPoly::new(v)
    }

    fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly::new(self.ypolys.iter().map(|p| p.scale(c)).collect())
    }

    /// Substitutes a rational for y, leaving a polynomial in x.
    pub fn eval_y_at(&self, y: &Rational) -> Poly {
        let mut acc = Poly::zero();
        for p in self.ypolys.iter().rev() {
            acc = &acc.scale(y) + p;
        }
        acc
    }

    /// Substitutes a rational for x, leaving a polynomial in y.
    pub fn eval_x_at(&self, x: &Rational) -> Poly {
        Poly::new(self.ypolys.iter().map(|p| p.eval(x)).collect())
    }

    /// Value at a rational point.
    pub fn eval_at(&self, x: &Rational, y: &Rational) -> Rational {
        self.eval_x_at(x).eval(y)
    }

    /// Swaps the roles of x and y.
    pub fn transpose_xy(&self) -> BiPoly {
        let dx = match self.deg_x() {
            None => return BiPoly::zero(),
            Some(d) => d,
        };
        let mut cols: Vec<Vec<Rational>> = vec![vec![]; dx + 1];
        for (j, p) in self.ypolys.iter().enumerate() {
            for (i, col) in cols.iter_mut().enumerate() {
                while col.len() <= j {
                    col.push(Rational::zero());
                }
                col[j] = p.coeff(i);
            }
        }
        BiPoly::new(cols.into_iter().map(Poly::new).collect())
    }
}

/// Real and imaginary parts of f(x + iy) for real x, y: returns (P, Q) with
/// f(x + iy) = P(x, y) + i Q(x, y) as a polynomial identity.
pub fn real_imag_parts(f: &Poly) -> (BiPoly, BiPoly) {
    // Re and Im of (x + iy)^k by the recurrence of multiplication by x + iy.
    let mut a = BiPoly::new(vec![Poly::one()]); // Re((x+iy)^0)
    let mut b = BiPoly::zero(); // Im((x+iy)^0)
    let mut p = BiPoly::zero();
    let mut q = BiPoly::zero();
    let d = f.deg_or_0();
    for k in 0..=d {
        let c = f.coeff(k);
        if !c.is_zero() {
            p = p.add(&a.scale(&c));
            q = q.add(&b.scale(&c));
        }
        if k < d {
            let na = a.mul_by_x().sub(&b.mul_by_y());
            let nb = b.mul_by_x().add(&a.mul_by_y());
            a = na;
            b = nb;
        }
    }
    (p, q)
}

/// Resultant of a and b as polynomials in y, eliminating y; the result is a
/// polynomial in x equal to the Sylvester determinant taken at the formal
/// y-degrees of a and b.  Requires the leading y-coefficient of `a` to be a
/// nonzero constant.
pub fn resultant_elim_y(a: &BiPoly, b: &BiPoly) -> Result<Poly, LinalgError> {
    let bound = match elim_degree_bound(a, b)? {
        None => return trivial_elim(a, b),
        Some(bd) => bd,
    };
    resultant_elim_y_sampled(a, b, bound)
}

/// Like `resultant_elim_y` but sampling only hint+1 points when the exact
/// degree of the result is known; one extra sample verifies the hint and on
/// a mismatch the full-bound computation runs instead.
pub fn resultant_elim_y_hinted(
    a: &BiPoly,
    b: &BiPoly,
    hint: usize,
) -> Result<Poly, LinalgError> {
    let bound = match elim_degree_bound(a, b)? {
        None => return trivial_elim(a, b),
        Some(bd) => bd,
    };
    if hint >= bound {
        return resultant_elim_y_sampled(a, b, bound);
    }
    let candidate = resultant_elim_y_sampled(a, b, hint)?;
    let check_t = sample_points(hint + 2).pop().unwrap();
    if candidate.eval(&check_t) == sample_resultant_at(a, b, &check_t)? {
        Ok(candidate)
    } else {
        resultant_elim_y_sampled(a, b, bound)
    }
}

/// Degree bound for the eliminated resultant, or None when b has y-degree 0
/// (handled by `trivial_elim`).
fn elim_degree_bound(a: &BiPoly, b: &BiPoly) -> Result<Option<usize>, LinalgError> {
    let da = a.deg_y().ok_or(LinalgError::DegreeTooSmall)?;
    let db = match b.deg_y() {
        None => return Ok(None),
        Some(d) => d,
    };
    if a.y_coeff(da).degree() != Some(0) {
        return Err(LinalgError::Internal(
            "resultant elimination needs a constant leading coefficient".into(),
        ));
    }
    if db == 0 {
        return Ok(None);
    }
    let ax = a.deg_x().unwrap_or(0);
    let bx = b.deg_x().unwrap_or(0);
    Ok(Some(db * ax + da * bx))
}

/// Elimination when b does not involve y: da copies of b along the diagonal
/// of the Sylvester matrix (or the zero polynomial if b vanishes).
fn trivial_elim(a: &BiPoly, b: &BiPoly) -> Result<Poly, LinalgError> {
    let da = a.deg_y().ok_or(LinalgError::DegreeTooSmall)?;
    if b.is_zero() {
        return Ok(Poly::zero());
    }
    let base = b.y_coeff(0);
    let mut acc = Poly::one();
    for _ in 0..da {
        acc = &acc * &base;
    }
    Ok(acc)
}

fn resultant_elim_y_sampled(a: &BiPoly, b: &BiPoly, degree: usize) -> Result<Poly, LinalgError> {
    let samples = sample_points(degree + 1);
    let mut points = Vec::with_capacity(samples.len());
    for t in samples {
        let v = sample_resultant_at(a, b, &t)?;
        points.push((t, v));
    }
    Ok(newton_interpolate(&points))
}

/// Value of the formal-degree Sylvester determinant at x = t.
fn sample_resultant_at(a: &BiPoly, b: &BiPoly, t: &Rational) -> Result<Rational, LinalgError> {
    let da = a.deg_y().ok_or(LinalgError::DegreeTooSmall)?;
    let db = b.deg_y().ok_or(LinalgError::DegreeTooSmall)?;
    let lc_a = a.y_coeff(da).coeff(0);
    let at = a.eval_x_at(t);
    if at.degree() != Some(da) {
        return Err(LinalgError::Internal(
            "constant leading coefficient dropped degree".into(),
        ));
    }
    let bt = b.eval_x_at(t);
    Ok(match bt.degree() {
        None => Rational::zero(),
        Some(dbt) => {
            let corr = pow_rat(&lc_a, (db - dbt) as u32);
            corr * fast_resultant(&at, &bt)
        }
    })
}

/// Resultant eliminating x; requires the leading x-coefficient of `a` to be
/// a nonzero constant.
pub fn resultant_elim_x(a: &BiPoly, b: &BiPoly) -> Result<Poly, LinalgError> {
    resultant_elim_y(&a.transpose_xy(), &b.transpose_xy())
}

/// Hinted variant of `resultant_elim_x`.
pub fn resultant_elim_x_hinted(
    a: &BiPoly,
    b: &BiPoly,
    hint: usize,
) -> Result<Poly, LinalgError> {
    resultant_elim_y_hinted(&a.transpose_xy(), &b.transpose_xy(), hint)
}

/// Resultant through an integer pseudo-remainder sequence when both inputs
/// have integer coefficients, falling back to the rational recursion.
fn fast_resultant(a: &Poly, b: &Poly) -> Rational {
    match (as_int_vec(a), as_int_vec(b)) {
        (Some(ia), Some(ib)) => int_resultant(ia, ib),
        _ => a.resultant(b),
    }
}

fn as_int_vec(p: &Poly) -> Option<Vec<BigInt>> {
    p.coeffs()
        .iter()
        .map(|c| {
            if c.denom() == &BigInt::from(1) {
                Some(c.numer().clone())
            } else {
                None
            }
        })
        .collect()
}

/// Exact resultant of two integer polynomials by a content-stripped pseudo
/// remainder sequence.  Each level applies the identities
/// Res(A, B) = (-1)^{dA dB} lc(B)^{dA - dR} Res(B, R) with R = A mod B, and
/// Res(B, cR) = c^{dB} Res(B, R), with the pseudo-remainder scale factor
/// lc(B)^s tracked exactly.
fn int_resultant(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Rational {
    let mut acc = Rational::one();
    loop {
        if a.is_empty() || b.is_empty() {
            return Rational::zero();
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return acc * pow_int(&b[0], da as i64);
        }
        if da == 0 {
            return acc * pow_int(&a[0], db as i64);
        }
        if da < db {
            if da % 2 == 1 && db % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let lb = b[db].clone();
        let (mut r, s) = int_prem_scaled(&a, &b);
        if r.is_empty() {
            return Rational::zero();
        }
        let c = strip_content_positive(&mut r);
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        // lc(B)^{dA - dR} * (c / lc(B)^s)^{dB}
        acc *= pow_int(&lb, da as i64 - dr as i64 - (s as i64) * db as i64);
        acc *= pow_int(&c, db as i64);
        a = b;
        b = r;
    }
}

/// Pseudo remainder r = lc(b)^s * (a mod b) with the number s of scaling
/// steps actually applied.
fn int_prem_scaled(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, u32) {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut s = 0u32;
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        s += 1;
        for j in 0..=db {
            let t = &lr * &b[j];
            r[dr - db + j] = &r[dr - db + j] - &t;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    (r, s)
}

/// Divides out the positive content, returning it; sign stays in the poly.
fn strip_content_positive(v: &mut Vec<BigInt>) -> BigInt {
    let mut content = BigInt::zero();
    for c in v.iter() {
        content = num_integer::gcd(content, c.clone());
        if content == BigInt::from(1) {
            return content;
        }
    }
    if content.is_zero() || content == BigInt::from(1) {
        return BigInt::from(1);
    }
    for c in v.iter_mut() {
        *c = &*c / &content;
    }
    content
}

fn pow_int(base: &BigInt, e: i64) -> Rational {
    let p = base.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p)
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Distinct rational sample points 0, 1, -1, 2, -2, ...
fn sample_points(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n);
    out.push(rat(0));
    let mut k = 1i64;
    while out.len() < n {
        out.push(rat(k));
        if out.len() < n {
            out.push(rat(-k));
        }
        k += 1;
    }
    out.truncate(n);
    out
}

/// Newton interpolation through distinct rational points.
pub fn newton_interpolate(points: &[(Rational, Rational)]) -> Poly {
    let n = points.len();
    if n == 0 {
        return Poly::zero();
    }
    let mut coef: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            coef[i] = num / den;
        }
    }
    let mut poly = Poly::zero();
    let mut basis = Poly::one();
    for (k, c) in coef.iter().enumerate() {
        poly = &poly + &basis.scale(c);
        if k + 1 < n {
            let lin = Poly::new(vec![-points[k].0.clone(), Rational::one()]);
            basis = &basis * &lin;
        }
    }
    poly
}

/// Monic square root of a monic polynomial of even degree, if one exists
/// with rational coefficients; verified by squaring.
pub fn monic_poly_sqrt(p: &Poly) -> Option<Poly> {
    let d = p.degree()?;
    if d % 2 != 0 {
        return None;
    }
    if p.leading() != Some(&Rational::one()) {
        return None;
    }
    let m = d / 2;
    let mut s = vec![Rational::zero(); m + 1];
    s[m] = Rational::one();
    // Coefficient of x^{m+k} in s^2 is sum of s_i s_j over i + j = m + k;
    // isolating the two terms with {i, j} = {m, k} solves for s_k top down.
    for k in (0..m).rev() {
        let mut acc = Rational::zero();
        for i in 0..=m {
            let rem = m + k;
            if i > rem {
                continue;
            }
            let j = rem - i;
            if j > m || (i == m && j == k) || (i == k && j == m) {
                continue;
            }
            acc += &s[i] * &s[j];
        }
        s[k] = (p.coeff(m + k) - acc) / rat(2);
    }
    let cand = Poly::new(s);
    if &(&cand * &cand) == p {
        Some(cand)
    } else {
        None
    }
}

/// Square root of a polynomial up to a positive rational factor: returns
/// monic t with t^2 ~ p, or None if p is not a square times a rational.
pub fn integer_poly_sqrt(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return None;
    }
    monic_poly_sqrt(&p.monic())
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ratio};
    use super::*;

    #[test]
    fn real_imag_parts_of_quadratic() {
        // f = z^2 + 1: P = x^2 - y^2 + 1, Q = 2xy.
        let f = Poly::from_i64(&[1, 0, 1]);
        let (p, q) = real_imag_parts(&f);
        assert_eq!(p.eval_at(&rat(3), &rat(2)), rat(9 - 4 + 1));
        assert_eq!(q.eval_at(&rat(3), &rat(2)), rat(12));
        assert_eq!(p.deg_y(), Some(2));
        assert_eq!(q.deg_y(), Some(1));
    }

    #[test]
    fn real_imag_identity_on_samples() {
        // Check f(x+iy) = P + iQ via complex arithmetic at Gaussian rationals.
        let f = Poly::from_i64(&[2, -1, 0, 3, 1]);
        let (p, q) = real_imag_parts(&f);
        for (x, y) in [(1i64, 1i64), (2, -1), (0, 3), (-2, -2)] {
            let (xr, yr) = (rat(x), rat(y));
            // Evaluate f at x + iy with explicit complex arithmetic.
            let (mut re, mut im) = (Rational::zero(), Rational::zero());
            for c in f.coeffs().iter().rev() {
                // (re + i im) * (x + i y) + c
                let nre = &re * &xr - &im * &yr + c;
                let nim = &re * &yr + &im * &xr;
                re = nre;
                im = nim;
            }
            assert_eq!(p.eval_at(&xr, &yr), re);
            assert_eq!(q.eval_at(&xr, &yr), im);
        }
    }

    #[test]
    fn transpose_roundtrip() {
        let f = Poly::from_i64(&[1, 2, 0, 1]);
        let (p, _) = real_imag_parts(&f);
        assert_eq!(p.transpose_xy().transpose_xy(), p);
    }

    #[test]
    fn resultant_elim_matches_univariate() {
        // With a, b independent of x, elimination reduces to the ordinary
        // resultant as a constant polynomial.
        let a = BiPoly::new(vec![
            Poly::from_i64(&[-2]),
            Poly::zero(),
            Poly::from_i64(&[1]),
        ]); // y^2 - 2
        let b = BiPoly::new(vec![
            Poly::from_i64(&[-3]),
            Poly::zero(),
            Poly::from_i64(&[1]),
        ]); // y^2 - 3
        let r = resultant_elim_y(&a, &b).unwrap();
        assert_eq!(r, Poly::from_i64(&[1]));
    }

    #[test]
    fn resultant_elim_sum_of_roots() {
        // a = y^2 - 2 (roots +-sqrt2), b = (y - x)^2 - 3 shifts roots of
        // y^2 - 3 by x; resultant vanishes exactly at x = +-sqrt2 +- sqrt3,
        // i.e. equals x^4 - 10x^2 + 1 up to a constant.
        let a = BiPoly::new(vec![
            Poly::from_i64(&[-2]),
            Poly::zero(),
            Poly::from_i64(&[1]),
        ]);
        let b = BiPoly::new(vec![
            Poly::from_i64(&[-3, 0, 1]), // x^2 - 3
            Poly::from_i64(&[0, -2]),    // -2x * y
            Poly::from_i64(&[1]),        // y^2
        ]);
        let r = resultant_elim_y(&a, &b).unwrap();
        assert_eq!(r.monic(), Poly::from_i64(&[1, 0, -10, 0, 1]).monic());
    }

    #[test]
    fn resultant_detects_common_root_line() {
        // a = y - x, b = y^2 - x^2 share the root y = x for every x:
        // resultant is identically zero... but b has no constant leading
        // coefficient restriction issue since a leads.  Res(a, b) = 0.
        let a = BiPoly::new(vec![Poly::from_i64(&[0, -1]), Poly::from_i64(&[1])]);
        let b = BiPoly::new(vec![
            Poly::from_i64(&[0, 0, -1]),
            Poly::zero(),
            Poly::from_i64(&[1]),
        ]);
        let r = resultant_elim_y(&a, &b).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Poly::new(vec![ratio(1, 2), rat(-3), ratio(7, 5), rat(1)]);
        let pts: Vec<(Rational, Rational)> = (-2..=2)
            .map(|t| {
                let x = rat(t);
                let v = f.eval(&x);
                (x, v)
            })
            .collect();
        assert_eq!(newton_interpolate(&pts), f);
    }

    #[test]
    fn poly_sqrt_roundtrip() {
        let t = Poly::from_i64(&[3, -2, 1, 1]);
        let sq = &t * &t;
        let back = integer_poly_sqrt(&sq.scale(&ratio(7, 3))).unwrap();
        assert_eq!(back, t.monic());
        assert!(integer_poly_sqrt(&Poly::from_i64(&[1, 1, 1])).is_none());
        assert!(integer_poly_sqrt(&Poly::from_i64(&[1, 2, 2])).is_none());
    }
}
