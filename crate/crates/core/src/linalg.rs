//! Dense complex linear algebra for the small (3 and 9 dimensional) objects
//! used throughout the crate.
//!
//! Everything here is row-major and allocation-light. The Hermitian
//! eigensolver is a cyclic Jacobi iteration, which is plenty for 9×9.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

pub use num_complex::Complex64 as Complex;

/// Relative cutoff used by [`nullspace`] and [`gram_rank`] unless told otherwise.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;
/// Allowed relative asymmetry for matrices handed to [`hermitian_eigen`].
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |H_jk - conj(H_kj)| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite entry encountered")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// A dense complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVec(Vec<Complex>);

impl CVec {
    pub fn new(entries: Vec<Complex>) -> Self {
        CVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        CVec(vec![Complex::new(0.0, 0.0); dim])
    }

    /// Standard basis vector `e_k` (zero based).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Complex::new(1.0, 0.0);
        v
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        CVec(xs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex> {
        self.0.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVec) -> Complex {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn conj(&self) -> CVec {
        CVec(self.0.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, k: Complex) -> CVec {
        CVec(self.0.iter().map(|z| z * k).collect())
    }

    /// Returns `self / |self|`; the zero vector is returned unchanged.
    pub fn normalized(&self) -> CVec {
        let n = self.norm();
        if n == 0.0 {
            self.clone()
        } else {
            self.scale(Complex::new(1.0 / n, 0.0))
        }
    }

    pub fn sub(&self, other: &CVec) -> CVec {
        CVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<usize> for CVec {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVec {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        &mut self.0[i]
    }
}

impl From<Vec<Complex>> for CVec {
    fn from(v: Vec<Complex>) -> Self {
        CVec(v)
    }
}

/// A dense, row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(CMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Builds a real matrix from rows; panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Complex::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[CVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.dim());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.dim(),
                });
            }
            data.extend_from_slice(r.as_slice());
        }
        Ok(CMat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = Complex::new(x, 0.0);
        }
        m
    }

    /// The rank-one matrix `|u><v|`.
    pub fn outer(u: &CVec, v: &CVec) -> Self {
        Self::from_fn(u.dim(), v.dim(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> CVec {
        CVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> CVec {
        CVec((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &CMat) -> Result<CMat> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &CVec) -> Result<CVec> {
        if self.cols != v.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(CVec(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
                .collect(),
        ))
    }

    /// `<v|self|v>` for square `self`.
    pub fn quadratic_form(&self, v: &CVec) -> Result<Complex> {
        Ok(v.inner(&self.mul_vec(v)?))
    }

    pub fn add(&self, other: &CMat) -> Result<CMat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMat) -> Result<CMat> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CMat, f: impl Fn(Complex, Complex) -> Complex) -> Result<CMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: Complex) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max_jk |H_jk - conj(H_kj)|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Restriction to the given row/column index set.
    pub fn submatrix(&self, idx: &[usize]) -> CMat {
        CMat::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])])
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (rb, cb) = (b.rows, b.cols);
    CMat::from_fn(a.rows * rb, a.cols * cb, |i, j| {
        a[(i / rb, j / cb)] * b[(i % rb, j % cb)]
    })
}

/// Kronecker product of two vectors; entry `x_i y_j` lands at `i * dim(y) + j`.
pub fn kron_vec(x: &CVec, y: &CVec) -> CVec {
    let mut out = Vec::with_capacity(x.dim() * y.dim());
    for xi in x.iter() {
        for yj in y.iter() {
            out.push(xi * yj);
        }
    }
    CVec(out)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(a: &CMat) -> Result<Complex> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.rows;
    let mut m = a.data.clone();
    let mut det = Complex::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].norm().total_cmp(&m[j * n + col].norm()))
            .unwrap();
        if m[pivot * n + col].norm() == 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        if pivot != col {
            for k in 0..n {
                m.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = m[r * n + col] / p;
            if factor == Complex::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = m[col * n + k];
                m[r * n + k] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<CVec>,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn lowest(&self) -> (f64, &CVec) {
        (self.values[0], &self.vectors[0])
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// `hermiticity_tol` is relative to `max |H|`. Iteration stops once the
/// off-diagonal Frobenius mass drops below `1e-14 * |H|_F`.
pub fn hermitian_eigen(h: &CMat, hermiticity_tol: f64) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(LinalgError::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    if !h.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let asym = h.hermiticity_defect();
    if asym > hermiticity_tol * h.max_abs().max(f64::MIN_POSITIVE) {
        return Err(LinalgError::NotHermitian { asymmetry: asym });
    }

    let n = h.rows;
    // work on the exactly Hermitian part
    let mut a: Vec<Complex> = (0..n * n)
        .map(|k| 0.5 * (h[(k / n, k % n)] + h[(k % n, k / n)].conj()))
        .collect();
    let mut v = CMat::identity(n).data;
    let sweeps = jacobi_in_place(&mut a, &mut v, n);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| a[i * n + i].re).collect(),
        vectors: order
            .iter()
            .map(|&i| CVec((0..n).map(|k| v[k * n + i]).collect()))
            .collect(),
        sweeps,
    })
}

/// Cyclic Jacobi sweeps on a row-major Hermitian `a` (n×n), accumulating the
/// rotations into `v`. On return `a` is diagonal to working precision and the
/// columns of `v` are the eigenvectors. Returns the number of sweeps.
pub(crate) fn jacobi_in_place(a: &mut [Complex], v: &mut [Complex], n: usize) -> usize {
    let frob = |a: &[Complex]| a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off = |a: &[Complex]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let scale = frob(a);

    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS && off(a) > JACOBI_TOL * scale {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane
                let jpp = Complex::new(cs, 0.0);
                let jpq = Complex::new(sn, 0.0);
                let jqp = -sn * phase.conj();
                let jqq = cs * phase.conj();

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * jpp + akq * jqp;
                    a[k * n + q] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[p * n + q] = Complex::new(0.0, 0.0);
                a[q * n + p] = Complex::new(0.0, 0.0);
                a[p * n + p] = Complex::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex::new(a[q * n + q].re, 0.0);

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * jpp + vkq * jqp;
                    v[k * n + q] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    sweeps
}

/// Lowest eigenpair of a 3×3 Hermitian matrix given row-major, without
/// allocating. Used by the see-saw inner loop.
pub(crate) fn lowest_eigenpair3(m: &[Complex; 9]) -> (f64, [Complex; 3]) {
    let mut a = *m;
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let mut v = [one, zero, zero, zero, one, zero, zero, zero, one];
    jacobi_in_place(&mut a, &mut v, 3);
    let mut k = 0;
    for i in 1..3 {
        if a[i * 3 + i].re < a[k * 3 + k].re {
            k = i;
        }
    }
    (a[k * 3 + k].re, [v[k], v[3 + k], v[6 + k]])
}

/// Orthonormal basis of the (numerical) kernel of a Hermitian matrix.
///
/// An eigenvector is kept when `|λ| <= rank_tol * max(1, max|λ|)`.
pub fn nullspace(h: &CMat, rank_tol: f64) -> Result<Vec<CVec>> {
    let eig = hermitian_eigen(h, DEFAULT_HERMITICITY_TOL)?;
    let top = eig.values.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let cut = rank_tol * top.max(1.0);
    Ok(eig
        .values
        .iter()
        .zip(eig.vectors)
        .filter(|(l, _)| l.abs() <= cut)
        .map(|(_, v)| v)
        .collect())
}

/// Gram matrix `G_jk = <v_j|v_k>`.
pub fn gram_matrix(vs: &[CVec]) -> Result<CMat> {
    let dim = vs.first().map_or(0, |v| v.dim());
    if let Some(bad) = vs.iter().find(|v| v.dim() != dim) {
        return Err(LinalgError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let k = vs.len();
    let mut g = CMat::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let z = vs[i].inner(&vs[j]);
            g[(i, j)] = z;
            g[(j, i)] = z.conj();
        }
    }
    Ok(g)
}

/// Dimension of the span of `vs`: the number of Gram eigenvalues above
/// `rank_tol` times the largest one.
pub fn gram_rank(vs: &[CVec], rank_tol: f64) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    if vs.iter().any(|v| !v.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let g = gram_matrix(vs)?;
    let eig = hermitian_eigen(&g, DEFAULT_HERMITICITY_TOL)?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0);
    }
    Ok(eig.values.iter().filter(|&&l| l > rank_tol * top).count())
}
