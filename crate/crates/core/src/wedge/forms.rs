//! Alternating multilinear forms with exact coordinates.
//!
//! A form of degree r on an n-dimensional space is stored by its values on
//! the index-increasing r-tuples of standard basis vectors, ordered
//! lexicographically.  The scalar type is generic so the same machinery
//! serves exact rational forms and the complex-rational forms of the
//! numeric oracle.

use super::WedgeError;
use num_traits::{One, Zero};
use std::ops::{Neg, Sub};

/// Scalar requirements for form arithmetic: a commutative ring with exact
/// equality.  `Zero` supplies addition, `One` supplies multiplication.
pub trait Scalar:
    Clone + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Sub<Output = T> + Neg<Output = T>
{
}

/// Binomial coefficient in machine integers; saturates instead of wrapping
/// so callers can compare against a cap safely.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * ((n - j) as u128) / ((j + 1) as u128);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Lexicographic rank of a strictly increasing tuple among all increasing
/// k-tuples with entries below n.
pub fn tuple_rank(n: usize, tuple: &[usize]) -> usize {
    let r = tuple.len();
    let mut rank = 0;
    let mut lo = 0;
    for (j, &ij) in tuple.iter().enumerate() {
        for v in lo..ij {
            rank += binomial(n - 1 - v, r - 1 - j);
        }
        lo = ij + 1;
    }
    rank
}

/// Inverse of [`tuple_rank`]: the increasing tuple at a lexicographic
/// position.
pub fn tuple_unrank(n: usize, r: usize, mut rank: usize) -> Vec<usize> {
    let mut tuple = Vec::with_capacity(r);
    let mut v = 0;
    for j in 0..r {
        loop {
            let cnt = binomial(n - 1 - v, r - 1 - j);
            if rank < cnt {
                tuple.push(v);
                v += 1;
                break;
            }
            rank -= cnt;
            v += 1;
        }
    }
    tuple
}

/// Calls `f` on every strictly increasing r-tuple below n, in
/// lexicographic order.
pub fn for_each_tuple(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut t: Vec<usize> = (0..r).collect();
    loop {
        f(&t);
        // Advance to the next tuple in lexicographic order.
        let mut j = r;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if t[j] < n - (r - j) {
                t[j] += 1;
                for k in j + 1..r {
                    t[k] = t[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Determinant of a k x k matrix given by an entry callback, by dynamic
/// programming over column subsets.  Uses only ring operations, so it is
/// division free and exact for any [`Scalar`].
pub fn det_by_minors<T: Scalar>(k: usize, entry: impl Fn(usize, usize) -> T) -> T {
    let full = 1usize << k;
    let mut d: Vec<T> = vec![T::zero(); full];
    d[0] = T::one();
    for mask in 1..full {
        let row = (mask as u32).count_ones() as usize - 1;
        let mut acc = T::zero();
        let mut pos = 0;
        for j in 0..k {
            if mask & (1 << j) != 0 {
                let term = entry(row, j) * d[mask & !(1 << j)].clone();
                if (row + pos) % 2 == 0 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
                pos += 1;
            }
        }
        d[mask] = acc;
    }
    d[full - 1].clone()
}

/// An alternating r-form on an n-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct AltForm<T> {
    n: usize,
    r: usize,
    vals: Vec<T>,
}

impl<T: Scalar> AltForm<T> {
    pub fn zero(n: usize, r: usize) -> Self {
        AltForm {
            n,
            r,
            vals: vec![T::zero(); binomial(n, r)],
        }
    }

    pub fn from_vals(n: usize, r: usize, vals: Vec<T>) -> Result<Self, WedgeError> {
        if vals.len() != binomial(n, r) {
            return Err(WedgeError::InvalidInput(format!(
                "expected {} coordinates for a degree-{} form on {} dimensions, got {}",
                binomial(n, r),
                r,
                n,
                vals.len()
            )));
        }
        Ok(AltForm { n, r, vals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn vals(&self) -> &[T] {
        &self.vals
    }

    pub fn get(&self, tuple: &[usize]) -> &T {
        &self.vals[tuple_rank(self.n, tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: T) {
        self.vals[tuple_rank(self.n, tuple)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, WedgeError> {
        self.check_shape(other)?;
        let vals = self
            .vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(AltForm {
            n: self.n,
            r: self.r,
            vals,
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        AltForm {
            n: self.n,
            r: self.r,
            vals: self.vals.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> AltForm<U> {
        AltForm {
            n: self.n,
            r: self.r,
            vals: self.vals.iter().map(&f).collect(),
        }
    }

    /// Wedge product; degrees add, the underlying space is shared.
    pub fn wedge(&self, other: &Self) -> Result<Self, WedgeError> {
        if self.n != other.n {
            return Err(WedgeError::InvalidInput(format!(
                "wedge of forms on different spaces ({} vs {})",
                self.n, other.n
            )));
        }
        let (p, q) = (self.r, other.r);
        let mut out = AltForm::zero(self.n, p + q);
        let mut positions: Vec<usize> = Vec::new();
        for_each_tuple(self.n, p + q, |tuple| {
            let mut acc = T::zero();
            // Split the tuple into a p-subset for self and the complement
            // for other; the sign is the parity of the shuffle.
            positions.clear();
            positions.extend(0..p);
            loop {
                let left: Vec<usize> = positions.iter().map(|&i| tuple[i]).collect();
                let mut inv = 0;
                for (i, &pi) in positions.iter().enumerate() {
                    inv += pi - i;
                }
                let right: Vec<usize> = (0..p + q)
                    .filter(|i| !positions.contains(i))
                    .map(|i| tuple[i])
                    .collect();
                let term = self.get(&left).clone() * other.get(&right).clone();
                if inv % 2 == 0 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
                // Next p-subset of positions in lexicographic order.
                let mut j = p;
                let done = loop {
                    if j == 0 {
                        break true;
                    }
                    j -= 1;
                    if positions[j] < p + q - (p - j) {
                        positions[j] += 1;
                        for k in j + 1..p {
                            positions[k] = positions[k - 1] + 1;
                        }
                        break false;
                    }
                };
                if done {
                    break;
                }
            }
            let rank = tuple_rank(self.n, tuple);
            out.vals[rank] = acc;
        });
        Ok(out)
    }

    /// Precomposes every argument with the linear map sending the j-th
    /// basis vector of the new space to `cols[j]`.  With n columns this is
    /// the pullback along a square matrix; with exactly r columns the
    /// single coordinate of the result is the evaluation on those vectors.
    pub fn precompose(&self, cols: &[Vec<T>]) -> Result<Self, WedgeError> {
        for c in cols {
            if c.len() != self.n {
                return Err(WedgeError::InvalidInput(format!(
                    "column length {} does not match form dimension {}",
                    c.len(),
                    self.n
                )));
            }
        }
        let m = cols.len();
        let r = self.r;
        let mut out = AltForm::zero(m, r);
        let support: Vec<(Vec<usize>, &T)> = {
            let mut s = Vec::new();
            for_each_tuple(self.n, r, |j| {
                let v = self.get(j);
                if !v.is_zero() {
                    s.push((j.to_vec(), v));
                }
            });
            s
        };
        for_each_tuple(m, r, |i| {
            let mut acc = T::zero();
            for (j, w) in &support {
                let minor = det_by_minors(r, |a, b| cols[i[b]][j[a]].clone());
                acc = acc + (*w).clone() * minor;
            }
            let rank = tuple_rank(m, i);
            out.vals[rank] = acc;
        });
        Ok(out)
    }

    /// Evaluates the form on exactly r vectors.
    pub fn evaluate(&self, vectors: &[Vec<T>]) -> Result<T, WedgeError> {
        if vectors.len() != self.r {
            return Err(WedgeError::InvalidInput(format!(
                "degree-{} form evaluated on {} vectors",
                self.r,
                vectors.len()
            )));
        }
        Ok(self.precompose(vectors)?.vals[0].clone())
    }

    fn check_shape(&self, other: &Self) -> Result<(), WedgeError> {
        if self.n != other.n || self.r != other.r {
            return Err(WedgeError::InvalidInput(format!(
                "form shape mismatch: ({}, {}) vs ({}, {})",
                self.n, self.r, other.n, other.r
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rational};

    #[test]
    fn rank_and_unrank_agree_with_enumeration() {
        for n in 1..=8 {
            for r in 1..=n {
                let mut expected = 0;
                for_each_tuple(n, r, |t| {
                    assert_eq!(tuple_rank(n, t), expected);
                    assert_eq!(tuple_unrank(n, r, expected), t);
                    expected += 1;
                });
                assert_eq!(expected, binomial(n, r));
            }
        }
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 0..20 {
            for k in 0..=n {
                let pascal = if k == 0 || k == n {
                    1
                } else {
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                };
                assert_eq!(binomial(n, k), pascal);
            }
        }
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn determinant_by_minors_matches_cofactors() {
        let m = [
            [rat(2), rat(0), rat(1)],
            [rat(1), rat(3), rat(-1)],
            [rat(0), rat(4), rat(1)],
        ];
        let d = det_by_minors(3, |i, j| m[i][j].clone());
        // 2*(3*1+4) - 0 + 1*(4-0) = 14 + 4
        assert_eq!(d, rat(18));
        assert_eq!(det_by_minors(0, |_, _| rat(7)), rat(1));
    }

    #[test]
    fn wedge_of_covectors_is_the_two_by_two_minor() {
        // dx0 wedge dx1 on Q^3.
        let dx0 = AltForm::from_vals(3, 1, vec![rat(1), rat(0), rat(0)]).unwrap();
        let dx1 = AltForm::from_vals(3, 1, vec![rat(0), rat(1), rat(0)]).unwrap();
        let w = dx0.wedge(&dx1).unwrap();
        assert_eq!(w.get(&[0, 1]), &rat(1));
        assert_eq!(w.get(&[0, 2]), &rat(0));
        assert_eq!(w.get(&[1, 2]), &rat(0));
        let v1 = vec![rat(3), rat(5), rat(0)];
        let v2 = vec![rat(2), rat(4), rat(0)];
        assert_eq!(w.evaluate(&[v1, v2]).unwrap(), rat(2));
        // Anticommutativity.
        let wr = dx1.wedge(&dx0).unwrap();
        assert_eq!(wr.get(&[0, 1]), &rat(-1));
    }

    #[test]
    fn wedge_square_of_a_symplectic_form_doubles_the_top_coordinate() {
        // phi = dx0^dx1 + dx2^dx3 on Q^4; phi^phi = 2 dx0^dx1^dx2^dx3.
        let mut phi: AltForm<Rational> = AltForm::zero(4, 2);
        phi.set(&[0, 1], rat(1));
        phi.set(&[2, 3], rat(1));
        let sq = phi.wedge(&phi).unwrap();
        assert_eq!(sq.get(&[0, 1, 2, 3]), &rat(2));
    }

    #[test]
    fn precompose_with_identity_is_identity() {
        let mut w: AltForm<Rational> = AltForm::zero(4, 2);
        w.set(&[0, 2], rat(5));
        w.set(&[1, 3], rat(-2));
        let id: Vec<Vec<Rational>> = (0..4)
            .map(|j| (0..4).map(|i| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        assert_eq!(w.precompose(&id).unwrap(), w);
    }

    #[test]
    fn precompose_scales_by_the_determinant_on_the_top_power() {
        let mut w: AltForm<Rational> = AltForm::zero(3, 3);
        w.set(&[0, 1, 2], rat(1));
        let m = [
            [rat(1), rat(2), rat(0)],
            [rat(0), rat(1), rat(3)],
            [rat(1), rat(0), rat(1)],
        ];
        let cols: Vec<Vec<Rational>> = (0..3).map(|j| (0..3).map(|i| m[i][j].clone()).collect()).collect();
        let pulled = w.precompose(&cols).unwrap();
        let det = det_by_minors(3, |i, j| m[i][j].clone());
        assert_eq!(pulled.get(&[0, 1, 2]), &det);
    }
}
