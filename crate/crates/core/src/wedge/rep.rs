//! A rational vector space with an exact action of a number field.
//!
//! The representation is certified at construction: the claimed minimal
//! polynomial must annihilate the generator's action, a free-module basis
//! over the field is found greedily and recorded, and the commutant
//! dimension is checked against the matrix-algebra count for a free
//! module.

use super::WedgeError;
use crate::linalg::{solve_square, LinalgError, Poly, QMatrix, Rational};
use crate::nf::{FieldElement, NumberField};
use num_traits::{One, Zero};

/// The space Q^N together with a faithful action of a number field F that
/// makes it a free F-module of rank N / [F:Q].
#[derive(Clone, Debug)]
pub struct FRepresentation {
    dim_v: usize,
    f_action: QMatrix,
    f_minpoly: Poly,
    field: NumberField,
    gen_powers: Vec<QMatrix>,
    f_basis: Vec<usize>,
    basis_inv: QMatrix,
    rank: usize,
}

impl FRepresentation {
    /// Certifies and wraps a generator action.  `f_action` is the matrix of
    /// a generator of F on Q^N and `f_minpoly` its minimal polynomial.
    pub fn new(f_action: QMatrix, f_minpoly: Poly) -> Result<Self, WedgeError> {
        let n = f_action.nrows();
        if n == 0 || f_action.ncols() != n {
            return Err(WedgeError::InvalidInput(format!(
                "generator action must be square and non-empty ({}x{})",
                f_action.nrows(),
                f_action.ncols()
            )));
        }
        let field = NumberField::new(f_minpoly.clone())?;
        let d = field.degree();
        if n % d != 0 {
            return Err(WedgeError::InvalidInput(format!(
                "dimension {} is not divisible by the field degree {}",
                n, d
            )));
        }
        let rank = n / d;

        // Powers of the action up to the field degree, then the
        // annihilation check f_minpoly(f_action) = 0.
        let mut gen_powers = Vec::with_capacity(d + 1);
        gen_powers.push(QMatrix::identity(n));
        for _ in 0..d {
            let last = gen_powers.last().unwrap();
            gen_powers.push(last.mul(&f_action)?);
        }
        let mut acc = QMatrix::zero(n, n);
        for k in 0..=d {
            acc = acc.add(&gen_powers[k].scale(&f_minpoly.coeff(k)))?;
        }
        if !matrix_is_zero(&acc) {
            return Err(WedgeError::InvalidInput(
                "claimed minimal polynomial does not annihilate the action".into(),
            ));
        }
        gen_powers.truncate(d);

        // Greedy free-module basis: whenever a standard basis vector lies
        // outside the current F-span, its whole F-line must be new.
        let mut span: Vec<Vec<Rational>> = Vec::new();
        let mut f_basis = Vec::new();
        let mut rank_so_far = 0;
        for j in 0..n {
            let ej = unit_vector(n, j);
            let mut with = span.clone();
            with.push(ej.clone());
            if QMatrix::from_rows(with)?.rank() == rank_so_far {
                continue;
            }
            for pow in &gen_powers {
                span.push(pow.mul_vec(&ej)?);
            }
            let got = QMatrix::from_rows(span.clone())?.rank();
            if got != rank_so_far + d {
                return Err(WedgeError::RankDefect {
                    expected: rank_so_far + d,
                    got,
                });
            }
            rank_so_far = got;
            f_basis.push(j);
        }
        if f_basis.len() != rank || rank_so_far != n {
            return Err(WedgeError::RankDefect {
                expected: n,
                got: rank_so_far,
            });
        }

        // Commutant dimension count: End_F(V) of a free rank-r module has
        // Q-dimension r^2 d.
        let commutant_dim = commutant_dimension(&f_action)?;
        if commutant_dim != rank * rank * d {
            return Err(WedgeError::RankDefect {
                expected: rank * rank * d,
                got: commutant_dim,
            });
        }

        // Basis-change matrix from F-coordinates (basis element i, power k
        // of the generator, column i*d + k) to standard coordinates.
        let mut cols = Vec::with_capacity(n);
        for &j in &f_basis {
            let ej = unit_vector(n, j);
            for pow in &gen_powers {
                cols.push(pow.mul_vec(&ej)?);
            }
        }
        let b = QMatrix::from_cols(cols)?;
        let mut inv_cols = Vec::with_capacity(n);
        for j in 0..n {
            inv_cols.push(solve_square(&b, &unit_vector(n, j))?);
        }
        let basis_inv = QMatrix::from_cols(inv_cols)?;

        Ok(FRepresentation {
            dim_v: n,
            f_action,
            f_minpoly,
            field,
            gen_powers,
            f_basis,
            basis_inv,
            rank,
        })
    }

    /// `copies` copies of the regular representation of the field with the
    /// given minimal polynomial, as companion blocks.
    pub fn regular(f_minpoly: &Poly, copies: usize) -> Result<Self, WedgeError> {
        let d = f_minpoly.degree().ok_or_else(|| {
            WedgeError::InvalidInput("minimal polynomial must be non-constant".into())
        })?;
        if d == 0 || copies == 0 {
            return Err(WedgeError::InvalidInput(
                "regular representation needs positive degree and copies".into(),
            ));
        }
        if !f_minpoly.leading().map(|c| c.is_one()).unwrap_or(false) {
            return Err(WedgeError::InvalidInput(
                "minimal polynomial must be monic".into(),
            ));
        }
        let n = d * copies;
        let mut a = QMatrix::zero(n, n);
        for c in 0..copies {
            let off = c * d;
            for t in 0..d - 1 {
                a.set(off + t + 1, off + t, Rational::one());
            }
            for k in 0..d {
                a.set(off + k, off + d - 1, -f_minpoly.coeff(k));
            }
        }
        FRepresentation::new(a, f_minpoly.clone())
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn f_action(&self) -> &QMatrix {
        &self.f_action
    }

    pub fn f_minpoly(&self) -> &Poly {
        &self.f_minpoly
    }

    /// Indices of the standard basis vectors whose F-lines form the
    /// recorded free-module basis.
    pub fn f_basis(&self) -> &[usize] {
        &self.f_basis
    }

    /// The matrix of an arbitrary field element acting on V.
    pub fn rho(&self, f: &FieldElement) -> Result<QMatrix, WedgeError> {
        if f.field() != &self.field {
            return Err(WedgeError::InvalidInput(
                "field element does not belong to the acting field".into(),
            ));
        }
        let mut acc = QMatrix::zero(self.dim_v, self.dim_v);
        for (k, c) in f.coords().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.gen_powers[k].scale(c))?;
            }
        }
        Ok(acc)
    }

    /// F-coordinates of a vector in the recorded free-module basis.
    pub fn f_coords(&self, v: &[Rational]) -> Result<Vec<FieldElement>, WedgeError> {
        if v.len() != self.dim_v {
            return Err(WedgeError::InvalidInput(format!(
                "vector length {} does not match dimension {}",
                v.len(),
                self.dim_v
            )));
        }
        let c = self.basis_inv.mul_vec(v)?;
        let d = self.field.degree();
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            out.push(self.field.element(c[i * d..(i + 1) * d].to_vec())?);
        }
        Ok(out)
    }
}

fn unit_vector(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::one();
    v
}

fn matrix_is_zero(m: &QMatrix) -> bool {
    (0..m.nrows()).all(|i| m.row(i).iter().all(|x| x.is_zero()))
}

/// Q-dimension of the commutant of `a` in the full matrix algebra, as the
/// kernel dimension of X -> aX - Xa.
fn commutant_dimension(a: &QMatrix) -> Result<usize, LinalgError> {
    let n = a.nrows();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // Equation for entry (i, j) of aX - Xa; unknown X[p][q] sits at
            // column p*n + q.
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[k * n + j] += a.get(i, k).clone();
                row[i * n + k] -= a.get(k, j).clone();
            }
            rows.push(row);
        }
    }
    let rank = QMatrix::from_rows(rows)?.rank();
    Ok(n * n - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn regular_representation_certifies_as_free() {
        let f = Poly::from_i64(&[1, 0, 1]); // x^2 + 1
        let rep = FRepresentation::regular(&f, 2).unwrap();
        assert_eq!(rep.dim_v(), 4);
        assert_eq!(rep.rank(), 2);
        assert_eq!(rep.degree(), 2);
        assert_eq!(rep.f_basis(), &[0, 2]);
    }

    #[test]
    fn rational_field_acts_by_the_identity() {
        let f = Poly::from_i64(&[-1, 1]); // x - 1
        let rep = FRepresentation::new(QMatrix::identity(3), f).unwrap();
        assert_eq!(rep.rank(), 3);
        assert_eq!(rep.degree(), 1);
    }

    #[test]
    fn non_annihilating_polynomial_is_rejected() {
        let f = Poly::from_i64(&[1, 0, 1]);
        let err = FRepresentation::new(QMatrix::identity(2), f).unwrap_err();
        assert!(matches!(err, WedgeError::InvalidInput(_)));
    }

    #[test]
    fn oversized_minimal_polynomial_fails_the_free_module_check() {
        // The identity is annihilated by (x-1)(x-2) but Q[x]/((x-1)(x-2))
        // does not act freely through it.
        let f = Poly::from_i64(&[2, -3, 1]);
        let err = FRepresentation::new(QMatrix::identity(2), f).unwrap_err();
        assert!(matches!(err, WedgeError::RankDefect { .. }));
    }

    #[test]
    fn field_coordinates_invert_the_basis_change() {
        let f = Poly::from_i64(&[1, 0, 1]);
        let rep = FRepresentation::regular(&f, 2).unwrap();
        // v = (1, 2, 3, 4) in standard coordinates.
        let v = vec![rat(1), rat(2), rat(3), rat(4)];
        let coords = rep.f_coords(&v).unwrap();
        assert_eq!(coords.len(), 2);
        // First copy carries 1 + 2i, second 3 + 4i.
        assert_eq!(coords[0].coords(), &[rat(1), rat(2)]);
        assert_eq!(coords[1].coords(), &[rat(3), rat(4)]);
    }

    #[test]
    fn rho_of_the_generator_is_the_action_matrix() {
        let f = Poly::from_i64(&[1, 0, 1]);
        let rep = FRepresentation::regular(&f, 2).unwrap();
        let g = rep.field().gen();
        assert_eq!(&rep.rho(&g).unwrap(), rep.f_action());
        let sq = g.mul(&g).unwrap();
        let m = rep.rho(&sq).unwrap();
        assert_eq!(m, rep.f_action().mul(rep.f_action()).unwrap());
    }
}
