//! Small helpers around arbitrary precision rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d from machine integers; panics if d == 0.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Floor of sqrt(n) for a nonnegative integer; panics on negative input.
pub fn isqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt_floor of negative integer");
    num_integer::Roots::sqrt(n)
}

/// Largest rational j/2^s with (j/2^s)^2 <= x, for x >= 0.
pub fn grid_sqrt_below(x: &Rational, s: u32) -> Rational {
    assert!(!x.is_negative());
    let two_s = BigInt::one() << s;
    // j = floor(2^s * sqrt(p/q)) = floor(sqrt(4^s p q) / q), adjust exactly.
    let p = x.numer();
    let q = x.denom();
    let mut j = isqrt_floor(&(&two_s * &two_s * p * q)) / q;
    while &j * &j * q > &two_s * &two_s * p {
        j -= 1;
    }
    while (&j + 1u32) * (&j + 1u32) * q <= &two_s * &two_s * p {
        j += 1;
    }
    Rational::new(j, two_s)
}

/// Smallest rational j/2^s with (j/2^s)^2 >= x, for x >= 0.
pub fn grid_sqrt_above(x: &Rational, s: u32) -> Rational {
    assert!(!x.is_negative());
    let below = grid_sqrt_below(x, s);
    if &below * &below == *x {
        below
    } else {
        below + Rational::new(BigInt::one(), BigInt::one() << s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sqrt_bounds() {
        let x = ratio(5, 1);
        for s in [0u32, 3, 10] {
            let lo = grid_sqrt_below(&x, s);
            let hi = grid_sqrt_above(&x, s);
            assert!(&lo * &lo <= x);
            assert!(&hi * &hi >= x);
            assert!(&hi - &lo <= Rational::new(BigInt::from(1), BigInt::from(1) << s));
        }
    }

    #[test]
    fn grid_sqrt_exact_square() {
        let x = ratio(9, 4);
        let lo = grid_sqrt_below(&x, 1);
        let hi = grid_sqrt_above(&x, 1);
        assert_eq!(lo, ratio(3, 2));
        assert_eq!(hi, ratio(3, 2));
    }

    #[test]
    fn grid_sqrt_monotone_in_grid() {
        // Finer grids tighten from inside: floor rises, ceil falls.
        let x = ratio(2, 1);
        let mut prev_lo = grid_sqrt_below(&x, 1);
        let mut prev_hi = grid_sqrt_above(&x, 1);
        for s in 2..12 {
            let lo = grid_sqrt_below(&x, s);
            let hi = grid_sqrt_above(&x, s);
            assert!(lo >= prev_lo);
            assert!(hi <= prev_hi);
            prev_lo = lo;
            prev_hi = hi;
        }
    }
}
