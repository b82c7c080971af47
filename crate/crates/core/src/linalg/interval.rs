//! Rational interval arithmetic, used for cheap certified exclusion tests.

use super::poly::Poly;
use super::rational::Rational;
use num_traits::{Signed, Zero};

/// Closed rational interval [lo, hi].
#[derive(Clone, Debug, PartialEq)]
pub struct RInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &RInterval) -> RInterval {
        RInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn mul(&self, other: &RInterval) -> RInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RInterval { lo, hi }
    }
}

/// Complex interval: a rectangle re x im in the complex plane.
#[derive(Clone, Debug, PartialEq)]
pub struct CInterval {
    pub re: RInterval,
    pub im: RInterval,
}

impl CInterval {
    pub fn new(re: RInterval, im: RInterval) -> Self {
        CInterval { re, im }
    }

    pub fn point(re: Rational, im: Rational) -> Self {
        CInterval {
            re: RInterval::point(re),
            im: RInterval::point(im),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, other: &CInterval) -> CInterval {
        CInterval {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &CInterval) -> CInterval {
        CInterval {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }
}

/// Interval Horner evaluation of a real polynomial over a complex rectangle.
/// If the result does not contain zero, f has no root in the rectangle.
pub fn eval_poly_on_box(f: &Poly, z: &CInterval) -> CInterval {
    let mut acc = CInterval::point(Rational::zero(), Rational::zero());
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z).add(&CInterval::point(c.clone(), Rational::zero()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ratio};
    use super::*;

    #[test]
    fn interval_multiplication_signs() {
        let a = RInterval::new(rat(-2), rat(3));
        let b = RInterval::new(rat(-1), rat(4));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-8));
        assert_eq!(p.hi, rat(12));
    }

    #[test]
    fn exclusion_certifies_no_root() {
        // f = z^2 + 1 has roots +-i; a box far from them excludes zero.
        let f = Poly::from_i64(&[1, 0, 1]);
        let far = CInterval::new(
            RInterval::new(rat(2), rat(3)),
            RInterval::new(ratio(1, 10), ratio(2, 10)),
        );
        assert!(!eval_poly_on_box(&f, &far).contains_zero());
        // A box containing i does not exclude.
        let near = CInterval::new(
            RInterval::new(ratio(-1, 10), ratio(1, 10)),
            RInterval::new(ratio(9, 10), ratio(11, 10)),
        );
        assert!(eval_poly_on_box(&f, &near).contains_zero());
    }
}
