//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.  Division, gcd and squarefree parts
//! are exact; gcd runs a primitive pseudo remainder sequence over the
//! integers to keep coefficient growth in check.

use super::rational::{sign, Rational};
use super::LinalgError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*x", c),
                _ => format!("{}*x^{}", c, i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    /// Builds a polynomial from coefficients (lowest degree first),
    /// stripping trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// Convenience constructor from machine integers, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Monomial c * x^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with zero treated as degree 0 (for size bookkeeping only).
    pub fn deg_or_0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder with deg r < deg other; errors on zero divisor.
    pub fn divrem(&self, other: &Poly) -> Result<(Poly, Poly), LinalgError> {
        let dn = other.degree().ok_or(LinalgError::DivisionByZero)?;
        if self.degree().map_or(true, |d| d < dn) {
            return Ok((Poly::zero(), self.clone()));
        }
        let dm = self.degree().unwrap();
        let lead = other.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); dm - dn + 1];
        for k in (0..=dm - dn).rev() {
            let c = &rem[k + dn] / &lead;
            if !c.is_zero() {
                for j in 0..=dn {
                    let t = &other.coeffs[j] * &c;
                    rem[k + j] = &rem[k + j] - &t;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dn);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, other: &Poly) -> Result<Poly, LinalgError> {
        let (q, r) = self.divrem(other)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(LinalgError::Internal(
                "expected exact polynomial division".into(),
            ))
        }
    }

    /// Greatest common divisor, normalized monic (or 1 for coprime inputs).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let a = int_primitive(self);
        let b = int_primitive(other);
        let g = int_gcd(a, b);
        let p = Poly::from_bigint(&g);
        p.monic()
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Result<Poly, LinalgError> {
        if self.is_zero() {
            return Err(LinalgError::DegreeTooSmall);
        }
        let g = self.gcd(&self.derivative());
        self.monic().exact_div(&g)
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Integer coefficient vector after clearing denominators and content,
    /// preserving sign; empty for the zero polynomial.
    pub fn to_primitive_int(&self) -> Vec<BigInt> {
        int_primitive(self)
    }

    pub fn from_bigint(coeffs: &[BigInt]) -> Poly {
        Poly::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Resultant of self and other, exact over the rationals.
    ///
    /// Euclidean recursion: Res(A, B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R}
    /// Res(B, R) with R the remainder; base case Res(A, const b) = b^{deg A}.
    pub fn resultant(&self, other: &Poly) -> Rational {
        fn go(a: &Poly, b: &Poly) -> Rational {
            let da = match a.degree() {
                None => return Rational::zero(),
                Some(d) => d,
            };
            let db = match b.degree() {
                None => return Rational::zero(),
                Some(d) => d,
            };
            if db == 0 {
                return pow_rat(b.leading().unwrap(), da as u32);
            }
            if da == 0 {
                return pow_rat(a.leading().unwrap(), db as u32);
            }
            let (_, r) = a.divrem(b).expect("nonzero divisor");
            let sgn = if (da * db) % 2 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            };
            match r.degree() {
                None => Rational::zero(),
                Some(dr) => {
                    sgn * pow_rat(b.leading().unwrap(), (da - dr) as u32) * go(b, &r)
                }
            }
        }
        go(self, other)
    }

    /// Sign of the polynomial at +infinity (sign of leading coefficient).
    pub fn sign_at_pos_inf(&self) -> i32 {
        self.leading().map_or(0, sign)
    }

    /// Sign at -infinity.
    pub fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Cauchy bound: every real or complex root has absolute value below
    /// 1 + max |c_i| / |c_n|.
    pub fn root_bound(&self) -> Result<Rational, LinalgError> {
        let d = self.degree().ok_or(LinalgError::DegreeTooSmall)?;
        if d == 0 {
            return Err(LinalgError::DegreeTooSmall);
        }
        let lead = self.leading().unwrap().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..d] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        Ok(Rational::one() + m / lead)
    }
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Integer coefficients of c * p for the smallest positive rational c making
/// all coefficients integral with content one.  Sign preserved.
fn int_primitive(p: &Poly) -> Vec<BigInt> {
    if p.is_zero() {
        return vec![];
    }
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &content).collect()
    }
}

/// Gcd of primitive integer polynomials via a primitive pseudo remainder
/// sequence; result primitive with positive leading coefficient.
fn int_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    loop {
        if b.is_empty() {
            if let Some(l) = a.last() {
                if l.is_negative() {
                    return a.iter().map(|c| -c).collect();
                }
            }
            return a;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = int_pseudo_rem(&a, &b);
        a = b;
        b = int_primitive_vec(r);
    }
}

/// Pseudo remainder of lc(b)^{da-db+1} * a by b over the integers.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r := lb * r - lr * x^{dr-db} * b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            let t = &lr * &b[j];
            r[dr - db + j] = &r[dr - db + j] - &t;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive_vec(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_one() {
        v
    } else {
        v.iter().map(|c| c / &content).collect()
    }
}
