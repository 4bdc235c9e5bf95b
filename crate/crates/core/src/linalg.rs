//! Dense column-major matrices, Householder QR and one-sided Jacobi SVD.
//!
//! Only what the least-squares solves need. Everything is sequential and allocation is limited to
//! the factor storage, so results are bit-reproducible for identical inputs.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Dense real matrix stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// All-zero `rows × cols` matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major values.
    ///
    /// Panics if `values.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols, "expected {} values", rows * cols);
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = values[i * cols + j];
            }
        }
        m
    }

    /// Builds a matrix from column-major values.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "expected {} values", rows * cols);
        Matrix { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column `j` as a slice.
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Column `j` as a mutable slice.
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Column-major storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Transposed copy.
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for (i, v) in self.col(j).iter().enumerate() {
                t[(j, i)] = *v;
            }
        }
        t
    }

    /// `self · x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![0.0; self.rows];
        for (j, xj) in x.iter().enumerate() {
            axpy(*xj, self.col(j), &mut out);
        }
        out
    }

    /// `selfᵀ · y`.
    pub fn tr_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows);
        (0..self.cols).map(|j| math::dot(self.col(j), y)).collect()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    /// Two disjoint columns, mutably.
    fn two_cols_mut(&mut self, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
        debug_assert!(p < q);
        let rows = self.rows;
        let (head, tail) = self.data.split_at_mut(q * rows);
        (&mut head[p * rows..(p + 1) * rows], &mut tail[..rows])
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

#[inline]
fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Householder QR of a matrix with at least as many rows as columns.
///
/// Reflector vectors are stored below the diagonal (with an implicit leading 1) and `R` on and
/// above it, as in LAPACK's `geqrf`.
#[derive(Debug, Clone)]
pub struct Qr {
    factors: Matrix,
    tau: Vec<f64>,
}

impl Qr {
    /// Factors `a`. Panics if `a` is wider than tall.
    pub fn new(mut a: Matrix) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        assert!(rows >= cols, "QR needs rows >= cols");
        let mut tau = vec![0.0; cols];
        for j in 0..cols {
            let (left, right) = a.data.split_at_mut((j + 1) * rows);
            let v = &mut left[j * rows + j..];
            let alpha = v[0];
            let tail_sq: f64 = v[1..].iter().map(|x| x * x).sum();
            if tail_sq == 0.0 {
                continue;
            }
            let norm = math::sqrt(alpha * alpha + tail_sq);
            let beta = if alpha >= 0.0 { -norm } else { norm };
            tau[j] = (beta - alpha) / beta;
            let inv = 1.0 / (alpha - beta);
            v[1..].iter_mut().for_each(|x| *x *= inv);
            v[0] = beta;
            let t = tau[j];
            for c in right.chunks_exact_mut(rows) {
                let target = &mut c[j..];
                let w = target[0] + math::dot(&v[1..], &target[1..]);
                let tw = t * w;
                target[0] -= tw;
                axpy(-tw, &v[1..], &mut target[1..]);
            }
        }
        Qr { factors: a, tau }
    }

    /// Number of columns of the factored matrix.
    pub fn cols(&self) -> usize {
        self.factors.cols
    }

    /// The `cols × cols` upper-triangular factor.
    pub fn r(&self) -> Matrix {
        let n = self.factors.cols;
        let mut r = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                r[(i, j)] = self.factors[(i, j)];
            }
        }
        r
    }

    fn reflect(&self, j: usize, y: &mut [f64]) {
        let t = self.tau[j];
        if t == 0.0 {
            return;
        }
        let v = &self.factors.col(j)[j + 1..];
        let target = &mut y[j..];
        let w = target[0] + math::dot(v, &target[1..]);
        let tw = t * w;
        target[0] -= tw;
        axpy(-tw, v, &mut target[1..]);
    }

    /// Overwrites `y` (length `rows`) with `Qᵀy`.
    pub fn apply_qt(&self, y: &mut [f64]) {
        assert_eq!(y.len(), self.factors.rows);
        for j in 0..self.factors.cols {
            self.reflect(j, y);
        }
    }

    /// Overwrites `y` (length `rows`) with `Qy`.
    pub fn apply_q(&self, y: &mut [f64]) {
        assert_eq!(y.len(), self.factors.rows);
        for j in (0..self.factors.cols).rev() {
            self.reflect(j, y);
        }
    }
}

/// Thin singular value decomposition `A = U Σ Vᵀ` of a matrix with rows ≥ cols.
///
/// Singular values are not sorted.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Left singular vectors, `rows × cols`. Columns for zero singular values are zero.
    pub u: Matrix,
    /// Singular values, one per column.
    pub sigma: Vec<f64>,
    /// Right singular vectors, `cols × cols`.
    pub v: Matrix,
}

const MAX_SWEEPS: usize = 80;

impl Svd {
    /// One-sided (Hestenes) Jacobi SVD.
    pub fn new(mut a: Matrix) -> Self {
        let (rows, n) = (a.rows, a.cols);
        assert!(rows >= n, "Jacobi SVD needs rows >= cols");
        let mut v = Matrix::identity(n);
        let mut norms: Vec<f64> = vec![0.0; n];
        let tol = f64::EPSILON;
        for _ in 0..MAX_SWEEPS {
            for (j, nj) in norms.iter_mut().enumerate() {
                *nj = a.col(j).iter().map(|x| x * x).sum();
            }
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha = norms[p];
                    let beta = norms[q];
                    if alpha == 0.0 || beta == 0.0 {
                        continue;
                    }
                    let (ap, aq) = a.two_cols_mut(p, q);
                    let gamma = math::dot(ap, aq);
                    if gamma.abs() <= tol * math::sqrt(alpha) * math::sqrt(beta) {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + math::hypot(1.0, zeta));
                    let c = 1.0 / math::hypot(1.0, t);
                    let s = c * t;
                    rotate(ap, aq, c, s);
                    let (vp, vq) = v.two_cols_mut(p, q);
                    rotate(vp, vq, c, s);
                    norms[p] = alpha - t * gamma;
                    norms[q] = beta + t * gamma;
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sigma = vec![0.0; n];
        for (j, s) in sigma.iter_mut().enumerate() {
            let col = a.col_mut(j);
            let norm = math::sqrt(col.iter().map(|x| x * x).sum());
            *s = norm;
            if norm > 0.0 {
                col.iter_mut().for_each(|x| *x /= norm);
            }
        }
        Svd { u: a, sigma, v }
    }

    /// Largest singular value.
    pub fn max_singular_value(&self) -> f64 {
        self.sigma.iter().copied().fold(0.0, f64::max)
    }
}

#[inline]
fn rotate(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let (a, b) = (*xi, *yi);
        *xi = c * a - s * b;
        *yi = s * a + c * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn random(rows: usize, cols: usize, seed: u64) -> Matrix {
        let mut s = Stream::new(seed, 9);
        let data = (0..rows * cols).map(|_| 2.0 * s.unit_f64() - 1.0).collect();
        Matrix::from_col_major(rows, cols, data)
    }

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn qr_reconstructs() {
        let a = random(9, 4, 1);
        let qr = Qr::new(a.clone());
        let r = qr.r();
        for j in 0..4 {
            let mut col = vec![0.0; 9];
            col[..4].copy_from_slice(r.col(j));
            qr.apply_q(&mut col);
            assert!(max_abs_diff(&col, a.col(j)) < 1e-14);
        }
        let mut y: Vec<f64> = (0..9).map(|i| i as f64).collect();
        let y0 = y.clone();
        qr.apply_qt(&mut y);
        qr.apply_q(&mut y);
        assert!(max_abs_diff(&y, &y0) < 1e-13);
    }

    #[test]
    fn svd_reconstructs_with_orthonormal_factors() {
        let a = random(7, 5, 2);
        let svd = Svd::new(a.clone());
        for i in 0..7 {
            for j in 0..5 {
                let mut v = 0.0;
                for k in 0..5 {
                    v += svd.u[(i, k)] * svd.sigma[k] * svd.v[(j, k)];
                }
                assert!((v - a[(i, j)]).abs() < 1e-14);
            }
        }
        for p in 0..5 {
            for q in 0..5 {
                let uu = math::dot(svd.u.col(p), svd.u.col(q));
                let vv = math::dot(svd.v.col(p), svd.v.col(q));
                let e = if p == q { 1.0 } else { 0.0 };
                assert!((uu - e).abs() < 1e-13 && (vv - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn svd_of_rank_one() {
        let a = Matrix::from_row_major(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let mut s = Svd::new(a).sigma;
        s.sort_by(f64::total_cmp);
        assert!(s[0].abs() < 1e-15);
        assert!((s[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn products() {
        let a = Matrix::from_row_major(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(a.mul_vec(&[1.0, 0.0, -1.0]), vec![-2.0, -2.0]);
        assert_eq!(a.tr_mul_vec(&[1.0, 1.0]), vec![5.0, 7.0, 9.0]);
        assert_eq!(a.transpose()[(2, 1)], 6.0);
    }
}
