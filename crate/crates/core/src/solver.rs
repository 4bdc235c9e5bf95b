//! Minimum-norm least-squares solves of `Hβ = Y`.
//!
//! `H` is reduced by Householder QR to a square triangular factor whose SVD is taken with one-sided
//! Jacobi rotations. Singular values at or below `rcond · σ_max` are discarded, so the result is
//! the Moore–Penrose solution `β = H⁺Y` of the truncated problem.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{config, Error, Result};
use crate::linalg::{Matrix, Qr, Svd};

/// Hidden-layer output matrix: one row per sample, one column per hidden node.
pub type DesignMatrix = Matrix;

/// Default relative cutoff for singular values: `ε · max(rows, cols)`.
pub fn default_rcond(rows: usize, cols: usize) -> f64 {
    f64::EPSILON * rows.max(cols) as f64
}

/// Minimum-norm least-squares solution of `h · β = y`.
///
/// `rcond` defaults to [`default_rcond`].
pub fn solve_min_norm(h: &DesignMatrix, y: &[f64], rcond: Option<f64>) -> Result<Vec<f64>> {
    solve_regularized(h, y, rcond, 0.0)
}

/// Least squares with an optional ridge penalty `ridge · ‖β‖²`.
///
/// Each retained singular value `σ` contributes with factor `σ / (σ² + ridge)`; with `ridge = 0`
/// this is exactly [`solve_min_norm`].
pub fn solve_regularized(
    h: &DesignMatrix,
    y: &[f64],
    rcond: Option<f64>,
    ridge: f64,
) -> Result<Vec<f64>> {
    let (rows, cols) = (h.rows(), h.cols());
    if rows == 0 || cols == 0 {
        return Err(config("design matrix must have at least one row and one column"));
    }
    if y.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            got: y.len(),
        });
    }
    let rcond = rcond.unwrap_or_else(|| default_rcond(rows, cols));
    if !rcond.is_finite() || rcond < 0.0 {
        return Err(config("rcond must be a finite value >= 0"));
    }
    if !ridge.is_finite() || ridge < 0.0 {
        return Err(config("ridge must be a finite value >= 0"));
    }
    if !h.as_slice().iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("design matrix"));
    }
    if !y.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("targets"));
    }

    if rows >= cols {
        let qr = Qr::new(h.clone());
        let mut z = y.to_vec();
        qr.apply_qt(&mut z);
        z.truncate(cols);
        let svd = Svd::new(qr.r());
        // β = V · f(Σ) · Uᵀ z
        let coeffs = filtered_coefficients(&svd, &z, rcond, ridge, |svd, k| svd.u.col(k));
        Ok(combine(&svd.v, &coeffs, cols))
    } else {
        // Hᵀ = QR and R = UΣVᵀ give H = V Σ Uᵀ Qᵀ, so β = Q U f(Σ) Vᵀ y.
        let qr = Qr::new(h.transpose());
        let svd = Svd::new(qr.r());
        let coeffs = filtered_coefficients(&svd, y, rcond, ridge, |svd, k| svd.v.col(k));
        let mut beta = combine(&svd.u, &coeffs, rows);
        beta.resize(cols, 0.0);
        qr.apply_q(&mut beta);
        Ok(beta)
    }
}

fn filtered_coefficients<'a>(
    svd: &'a Svd,
    rhs: &[f64],
    rcond: f64,
    ridge: f64,
    project_on: impl Fn(&'a Svd, usize) -> &'a [f64],
) -> Vec<f64> {
    let cutoff = rcond * svd.max_singular_value();
    svd.sigma
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            if s <= cutoff || s == 0.0 {
                0.0
            } else {
                let proj = crate::math::dot(project_on(svd, k), rhs);
                proj * s / (s * s + ridge)
            }
        })
        .collect()
}

fn combine(basis: &Matrix, coeffs: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            for (o, b) in out.iter_mut().zip(basis.col(k)) {
                *o += c * b;
            }
        }
    }
    out
}
