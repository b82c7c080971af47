//! Numeric complex structures commuting with a field action.
//!
//! The "floating point" layer is deterministic by construction: embedding
//! values enter as certified root boxes quantized to a grid of 10^-p (p
//! the precision in decimal digits), all intermediate arithmetic on
//! complex numbers with rational parts is exact, and the final matrix is
//! quantized back to the grid.  Residual norms (maximum entrywise
//! |re| + |im|) are computed exactly and must stay below the tolerance.

use super::rep::FRepresentation;
use super::WedgeError;
use crate::linalg::{QMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: Rational,
    pub im: Rational,
}

impl CRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        CRat { re, im }
    }

    pub fn from_re(re: Rational) -> Self {
        CRat {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        CRat {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        CRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// The exact norm |re| + |im|, equivalent to the modulus for
    /// threshold comparisons.
    pub fn abs1(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    pub fn inv(&self) -> Result<Self, WedgeError> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(WedgeError::IllConditioned(
                "exact division by a zero complex value".into(),
            ));
        }
        Ok(CRat {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn div(&self, rhs: &CRat) -> Result<Self, WedgeError> {
        Ok(self.clone() * rhs.inv()?)
    }
}

impl Add for CRat {
    type Output = CRat;
    fn add(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for CRat {
    type Output = CRat;
    fn sub(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for CRat {
    type Output = CRat;
    fn mul(self, rhs: CRat) -> CRat {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        CRat { re, im }
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for CRat {
    fn zero() -> Self {
        CRat {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRat {
    fn one() -> Self {
        CRat {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }
}

/// Rounds to the nearest multiple of 10^-p (ties away from zero).
pub fn round_grid(x: &Rational, p: u32) -> Rational {
    let scale = Rational::from_integer(BigInt::from(10u32).pow(p));
    (x * &scale).round() / scale
}

/// One over ten to the given power, as an exact rational.
pub fn pow10_inv(p: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(p))
}

pub(super) type CMat = Vec<Vec<CRat>>;

pub(super) fn cmat_identity(n: usize) -> CMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { CRat::one() } else { CRat::zero() })
                .collect()
        })
        .collect()
}

pub(super) fn cmat_from_q(m: &QMatrix) -> CMat {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| CRat::from_re(m.get(i, j).clone())).collect())
        .collect()
}

pub(super) fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![CRat::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] = out[i][j].clone() + a[i][t].clone() * b[t][j].clone();
                }
            }
        }
    }
    out
}

pub(super) fn cmat_col(m: &CMat, j: usize) -> Vec<CRat> {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Inverts by Gauss-Jordan elimination with deterministic partial
/// pivoting (largest |re| + |im|, earliest row on ties); a pivot below
/// `floor` counts as numerically singular.
pub(super) fn cmat_inv(a: &CMat, floor: &Rational) -> Result<CMat, WedgeError> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = cmat_identity(n);
    for col in 0..n {
        let mut best = col;
        let mut best_abs = m[col][col].abs1();
        for r in col + 1..n {
            let abs = m[r][col].abs1();
            if abs > best_abs {
                best = r;
                best_abs = abs;
            }
        }
        if best_abs < *floor {
            return Err(WedgeError::IllConditioned(format!(
                "pivot {} below the separation floor during inversion",
                best_abs
            )));
        }
        m.swap(col, best);
        inv.swap(col, best);
        let piv = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = m[col][j].clone() * piv.clone();
            inv[col][j] = inv[col][j].clone() * piv.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                m[r][j] = m[r][j].clone() - factor.clone() * m[col][j].clone();
                inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
            }
        }
    }
    Ok(inv)
}

/// Count of numerically independent columns, by elimination with the same
/// deterministic pivot rule as [`cmat_inv`].
pub(super) fn cmat_rank(a: &CMat, floor: &Rational) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut rank = 0;
    for col in 0..cols {
        let mut best = None;
        let mut best_abs = floor.clone();
        for r in rank..rows {
            let abs = m[r][col].abs1();
            if abs > best_abs {
                best = Some(r);
                best_abs = abs;
            }
        }
        let Some(pr) = best else { continue };
        m.swap(rank, pr);
        let piv = m[rank][col].inv().expect("pivot above floor is nonzero");
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * piv.clone();
            for j in col..cols {
                m[r][j] = m[r][j].clone() - factor.clone() * m[rank][j].clone();
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A realified complex structure on Q^N, quantized to the 10^-p grid,
/// with its exactly computed residual norms.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructureNum {
    pub j_matrix: QMatrix,
    pub precision: u32,
    pub tolerance: Rational,
    pub residual_square: Rational,
    pub residual_commute: Rational,
    pub residual_realify: Rational,
}

/// Default residual tolerance, 10^-8.
pub fn default_tolerance() -> Rational {
    pow10_inv(8)
}

/// Builds a complex structure J on V that commutes with the field action
/// and acts with eigenvalue +i on an n_sigma-dimensional subspace of each
/// embedding eigenspace.  `multiplicities` is indexed by the canonical
/// embedding order; each entry must pair with its conjugate to the module
/// rank.  Requires at least 30 digits of precision.
pub fn build_complex_structure(
    rep: &FRepresentation,
    multiplicities: &[u64],
    precision: u32,
) -> Result<ComplexStructureNum, WedgeError> {
    if precision < 30 {
        return Err(WedgeError::InvalidInput(format!(
            "precision {} is below the minimum of 30 digits",
            precision
        )));
    }
    let n = rep.dim_v();
    let d = rep.degree();
    let r = rep.rank();
    if multiplicities.len() != d {
        return Err(WedgeError::InvalidInput(format!(
            "expected {} multiplicities, got {}",
            d,
            multiplicities.len()
        )));
    }
    let width = pow10_inv(precision + 10);
    let roots = rep.field().embeddings_at(&width)?;
    for s in 0..d {
        let pair = multiplicities[s] + multiplicities[roots.conj[s]];
        if pair as usize != r {
            return Err(WedgeError::InvalidInput(format!(
                "multiplicity pair at embedding {} sums to {} instead of the rank {}",
                s, pair, r
            )));
        }
    }

    // Quantized embedding values; conjugate boxes mirror exactly, so
    // sigma[conj[s]] is the exact conjugate of sigma[s].
    let sigma: Vec<CRat> = roots
        .boxes
        .iter()
        .map(|b| {
            CRat::new(
                round_grid(&b.re_mid(), precision),
                round_grid(&b.im_mid(), precision),
            )
        })
        .collect();
    let floor = pow10_inv(precision / 2);

    let a_c = cmat_from_q(rep.f_action());
    let mut s_cols: Vec<Option<Vec<Vec<CRat>>>> = vec![None; d];
    let mut d_signs: Vec<Option<Vec<bool>>> = vec![None; d];

    for s in 0..d {
        if roots.conj[s] < s {
            continue;
        }
        // Lagrange projector onto the sigma_s eigenspace of the action.
        let mut proj = cmat_identity(n);
        let mut denom = CRat::one();
        for (t, sig_t) in sigma.iter().enumerate() {
            if t == s {
                continue;
            }
            let mut factor = a_c.clone();
            for (i, row) in factor.iter_mut().enumerate() {
                row[i] = row[i].clone() - sig_t.clone();
            }
            proj = cmat_mul(&proj, &factor);
            denom = denom * (sigma[s].clone() - sig_t.clone());
        }
        if denom.abs1() < floor {
            return Err(WedgeError::IllConditioned(
                "embedding separation below the precision floor".into(),
            ));
        }
        let scale = denom.inv()?;
        for row in proj.iter_mut() {
            for v in row.iter_mut() {
                *v = v.clone() * scale.clone();
            }
        }

        // Deterministic choice of r independent columns of the projector.
        let pivots = independent_columns(&proj, r, &floor)?;
        if roots.conj[s] == s {
            // Real embedding: the projector is exactly real, so pair the
            // chosen real columns into two-dimensional J-invariant planes.
            if r % 2 != 0 || multiplicities[s] as usize * 2 != r {
                return Err(WedgeError::InvalidInput(format!(
                    "real embedding {} needs a balanced even rank, got n = {} with r = {}",
                    s, multiplicities[s], r
                )));
            }
            for (i, row) in proj.iter().enumerate() {
                for v in row {
                    if !v.im.is_zero() {
                        return Err(WedgeError::IllConditioned(format!(
                            "projector at a real embedding has imaginary residue in row {}",
                            i
                        )));
                    }
                }
            }
            let mut cols = Vec::with_capacity(r);
            let mut signs = Vec::with_capacity(r);
            for k in 0..r / 2 {
                let b0 = cmat_col(&proj, pivots[2 * k]);
                let b1 = cmat_col(&proj, pivots[2 * k + 1]);
                // b0 -+ i b1 are the +-i eigenvectors of the rotation
                // sending b0 to b1.
                let plus: Vec<CRat> = b0
                    .iter()
                    .zip(&b1)
                    .map(|(x, y)| x.clone() - CRat::i() * y.clone())
                    .collect();
                let minus: Vec<CRat> = b0
                    .iter()
                    .zip(&b1)
                    .map(|(x, y)| x.clone() + CRat::i() * y.clone())
                    .collect();
                cols.push(plus);
                signs.push(true);
                cols.push(minus);
                signs.push(false);
            }
            s_cols[s] = Some(cols);
            d_signs[s] = Some(signs);
        } else {
            let cols: Vec<Vec<CRat>> =
                pivots.iter().map(|&j| cmat_col(&proj, j)).collect();
            let n_plus = multiplicities[s] as usize;
            let signs: Vec<bool> = (0..r).map(|k| k < n_plus).collect();
            let conj_cols: Vec<Vec<CRat>> = cols
                .iter()
                .map(|c| c.iter().map(CRat::conj).collect())
                .collect();
            let conj_signs: Vec<bool> = signs.iter().map(|b| !b).collect();
            s_cols[s] = Some(cols);
            d_signs[s] = Some(signs);
            s_cols[roots.conj[s]] = Some(conj_cols);
            d_signs[roots.conj[s]] = Some(conj_signs);
        }
    }

    // Assemble S and D, then J = S D S^-1 realified.
    let mut s_mat: CMat = vec![Vec::with_capacity(n); n];
    let mut diag: Vec<CRat> = Vec::with_capacity(n);
    for s in 0..d {
        let cols = s_cols[s].take().expect("every embedding slot is filled");
        let signs = d_signs[s].take().expect("every embedding slot is filled");
        for (c, plus) in cols.into_iter().zip(signs) {
            for (i, v) in c.into_iter().enumerate() {
                s_mat[i].push(v);
            }
            diag.push(if plus { CRat::i() } else { -CRat::i() });
        }
    }
    let s_inv = cmat_inv(&s_mat, &floor)?;
    let mut t_mat = s_mat;
    for row in t_mat.iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = v.clone() * diag[j].clone();
        }
    }
    let j_c = cmat_mul(&t_mat, &s_inv);

    let mut residual_realify = Rational::zero();
    let mut j_rows = Vec::with_capacity(n);
    for row in &j_c {
        let mut out = Vec::with_capacity(n);
        for v in row {
            let im = v.im.abs();
            if im > residual_realify {
                residual_realify = im;
            }
            out.push(round_grid(&v.re, precision));
        }
        j_rows.push(out);
    }
    let j_matrix = QMatrix::from_rows(j_rows)?;

    let tolerance = default_tolerance();
    let square_defect = j_matrix.mul(&j_matrix)?.add(&QMatrix::identity(n))?;
    let residual_square = max_abs(&square_defect);
    let ja = j_matrix.mul(rep.f_action())?;
    let aj = rep.f_action().mul(&j_matrix)?;
    let commute_defect = ja.add(&aj.scale(&-Rational::one()))?;
    let residual_commute = max_abs(&commute_defect);
    if residual_square > tolerance
        || residual_commute > tolerance
        || residual_realify > tolerance
    {
        return Err(WedgeError::IllConditioned(format!(
            "residuals ({}, {}, {}) exceed tolerance {} at precision {}; increase precision",
            residual_square, residual_commute, residual_realify, tolerance, precision
        )));
    }
    Ok(ComplexStructureNum {
        j_matrix,
        precision,
        tolerance,
        residual_square,
        residual_commute,
        residual_realify,
    })
}

/// First r column indices that are numerically independent, by Gaussian
/// elimination on a working copy with the deterministic pivot rule.
fn independent_columns(
    m: &CMat,
    r: usize,
    floor: &Rational,
) -> Result<Vec<usize>, WedgeError> {
    let rows = m.len();
    let cols = m[0].len();
    let mut work = m.clone();
    let mut pivots = Vec::with_capacity(r);
    let mut rank = 0;
    for col in 0..cols {
        if pivots.len() == r {
            break;
        }
        let mut best = None;
        let mut best_abs = floor.clone();
        for row in rank..rows {
            let abs = work[row][col].abs1();
            if abs > best_abs {
                best = Some(row);
                best_abs = abs;
            }
        }
        let Some(pr) = best else { continue };
        work.swap(rank, pr);
        let piv = work[rank][col].inv()?;
        for row in rank + 1..rows {
            if work[row][col].is_zero() {
                continue;
            }
            let factor = work[row][col].clone() * piv.clone();
            for j in col..cols {
                work[row][j] = work[row][j].clone() - factor.clone() * work[rank][j].clone();
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if pivots.len() != r {
        return Err(WedgeError::IllConditioned(format!(
            "projector rank {} fell short of the module rank {}",
            pivots.len(),
            r
        )));
    }
    Ok(pivots)
}

fn max_abs(m: &QMatrix) -> Rational {
    let mut best = Rational::zero();
    for i in 0..m.nrows() {
        for v in m.row(i) {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
    }
    best
}
