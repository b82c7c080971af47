//! Exact rational matrices with fraction-free elimination.
//!
//! Elimination first scales each row to integers, then runs Bareiss
//! single-step fraction-free reduction with column pivoting.  Row scaling by
//! positive rationals preserves rank, kernel and row space, which is all the
//! callers need.

use super::poly::Poly;
use super::rational::Rational;
use super::LinalgError;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction: pivot columns and the rank.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced rows over the integers (scaled), one per pivot.
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each reduced row, strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
    cols: usize,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            if row.len() != c {
                return Err(LinalgError::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let m = QMatrix::from_rows(cols)?;
        Ok(m.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn trace(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Fraction-free row echelon form after scaling rows to integers.
    pub fn echelon(&self) -> Echelon {
        let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut den = BigInt::one();
            for j in 0..self.cols {
                den = num_integer::lcm(den, self.get(i, j).denom().clone());
            }
            int_rows.push(
                (0..self.cols)
                    .map(|j| {
                        let c = self.get(i, j);
                        c.numer() * (&den / c.denom())
                    })
                    .collect(),
            );
        }
        bareiss(int_rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    /// Basis of the right kernel { v : A v = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        ech.kernel_basis()
    }

    /// Characteristic polynomial via exact Hessenberg-free expansion on the
    /// Faddeev-LeVerrier recurrence.  Fine for the small matrices used here.
    pub fn charpoly(&self) -> Result<Poly, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Faddeev-LeVerrier: M_0 = 0, c_n = 1;
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = QMatrix::zero(n, n);
        for k in 1..=n {
            let mut am = self.mul(&m)?;
            let ck = coeffs[n - k + 1].clone();
            for i in 0..n {
                let cur = am.get(i, i) + &ck;
                am.set(i, i, cur);
            }
            let t = self.mul(&am)?.trace()?;
            coeffs[n - k] = -t / Rational::from_integer(BigInt::from(k));
            m = am;
        }
        Ok(Poly::new(coeffs))
    }
}

/// Bareiss fraction-free elimination with column pivoting on integer rows.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= nrows {
            break;
        }
        // Find a pivot row at or below r with nonzero entry in column c.
        let mut piv = None;
        for i in r..nrows {
            if !rows[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        rows.swap(r, p);
        let pivot_val = rows[r][c].clone();
        for i in r + 1..nrows {
            let head = rows[i][c].clone();
            for j in 0..cols {
                let v = (&pivot_val * &rows[i][j] - &head * &rows[r][j]) / &prev;
                rows[i][j] = v;
            }
        }
        prev = pivot_val;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon {
        rank: pivots.len(),
        rows,
        pivots,
        cols,
    }
}

impl Echelon {
    /// Kernel basis by back substitution, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[fc] = Rational::one();
            for k in (0..self.pivots.len()).rev() {
                let pc = self.pivots[k];
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !self.rows[k][j].is_zero() && !v[j].is_zero() {
                        acc += Rational::from_integer(self.rows[k][j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / Rational::from_integer(self.rows[k][pc].clone());
            }
            basis.push(v);
        }
        basis
    }
}

/// If `v` lies in the span of `basis` (independent vectors of equal length),
/// returns the coordinates of `v`; otherwise None.
pub fn span_membership(
    basis: &[Vec<Rational>],
    v: &[Rational],
) -> Result<Option<Vec<Rational>>, LinalgError> {
    let dim = v.len();
    for b in basis {
        if b.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                got: b.len(),
            });
        }
    }
    if basis.is_empty() {
        return Ok(if v.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        });
    }
    // Columns: basis vectors then v.  Each row of the augmented matrix is
    // one equation of B x = v, so echelon rows stay equations.
    let mut cols: Vec<Vec<Rational>> = basis.to_vec();
    cols.push(v.to_vec());
    let m = QMatrix::from_cols(cols)?;
    let ech = m.echelon();
    let k = basis.len();
    let rank_b = ech.pivots.iter().filter(|&&p| p < k).count();
    if rank_b < k {
        return Err(LinalgError::BasisDependent);
    }
    if ech.pivots.contains(&k) {
        return Ok(None);
    }
    // Solve B x = v by back substitution on the echelon rows restricted to
    // the first k columns with rhs column k.
    let mut x = vec![Rational::zero(); k];
    for r in (0..ech.rank).rev() {
        let pc = ech.pivots[r];
        let mut acc = Rational::from_integer(ech.rows[r][k].clone());
        for j in pc + 1..k {
            if !ech.rows[r][j].is_zero() {
                acc -= Rational::from_integer(ech.rows[r][j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rational::from_integer(ech.rows[r][pc].clone());
    }
    Ok(Some(x))
}

/// Solves A x = b for square invertible A; errors if singular.
pub fn solve_square(a: &QMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    if a.nrows() != a.ncols() {
        return Err(LinalgError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let cols: Vec<Vec<Rational>> = (0..a.ncols()).map(|j| a.col(j)).collect();
    match span_membership(&cols, b)? {
        Some(x) => Ok(x),
        None => Err(LinalgError::Internal("singular system".into())),
    }
}
