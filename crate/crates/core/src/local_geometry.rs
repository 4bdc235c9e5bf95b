//! Nearest-neighbour neighbourhoods and local affine fits.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::dataset::Dataset;
use crate::error::{config, Result};
use crate::linalg::Matrix;
use crate::math;
use crate::solver::solve_min_norm;

/// Affine model `y = slopesᵀx + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    /// Slope along each input axis.
    pub slopes: Vec<f64>,
    /// Value at the origin.
    pub intercept: f64,
}

impl Hyperplane {
    /// Builds a hyperplane from its coefficients.
    pub fn new(slopes: Vec<f64>, intercept: f64) -> Self {
        Hyperplane { slopes, intercept }
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.slopes.len()
    }

    /// `slopesᵀx + intercept`.
    pub fn value(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.slopes.len(), "input dimension mismatch");
        math::dot(&self.slopes, x) + self.intercept
    }
}

/// An anchor point together with its `k` nearest training points.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighborhood {
    /// Dataset index of the anchor.
    pub center_index: usize,
    /// Dataset indices of all members; the anchor comes first, then neighbours by increasing
    /// distance (ties by index).
    pub member_indices: Vec<usize>,
    dim: usize,
    points: Vec<f64>,
    targets: Vec<f64>,
}

impl Neighborhood {
    /// A neighbourhood built directly from row-major `points` and their `targets`; indices are
    /// `0..len` with the first row as the anchor.
    pub fn from_points(dim: usize, points: Vec<f64>, targets: Vec<f64>) -> Self {
        assert!(dim > 0, "dimension must be positive");
        assert_eq!(points.len(), dim * targets.len(), "points/targets size mismatch");
        Neighborhood {
            center_index: 0,
            member_indices: (0..targets.len()).collect(),
            dim,
            points,
            targets,
        }
    }

    /// Number of members, anchor included.
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    /// `true` if there are no members.
    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Input vector of member `i` (in member order).
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    /// Target of member `i`.
    pub fn target(&self, i: usize) -> f64 {
        self.targets[i]
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Returns the anchor `center_index` and its `k` nearest other samples (Euclidean distance, ties
/// broken by lower dataset index). Exact linear scan.
pub fn find_neighborhood(dataset: &Dataset, center_index: usize, k: usize) -> Result<Neighborhood> {
    let n_samples = dataset.len();
    if n_samples == 0 {
        return Err(config("dataset is empty"));
    }
    if center_index >= n_samples {
        return Err(config(alloc::format!(
            "center index {center_index} out of range for {n_samples} samples"
        )));
    }
    if k == 0 || k >= n_samples {
        return Err(config(alloc::format!(
            "k must satisfy 1 <= k <= N-1 (k = {k}, N = {n_samples})"
        )));
    }
    let center = dataset.input(center_index);
    let mut candidates: Vec<(f64, usize)> = dataset
        .rows()
        .enumerate()
        .filter(|&(i, _)| i != center_index)
        .map(|(i, row)| (squared_distance(center, row), i))
        .collect();
    let order = |a: &(f64, usize), b: &(f64, usize)| -> Ordering {
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
    };
    if k < candidates.len() {
        candidates.select_nth_unstable_by(k - 1, order);
        candidates.truncate(k);
    }
    candidates.sort_unstable_by(order);

    let dim = dataset.dim();
    let mut member_indices = Vec::with_capacity(k + 1);
    let mut points = Vec::with_capacity((k + 1) * dim);
    let mut targets = Vec::with_capacity(k + 1);
    for idx in core::iter::once(center_index).chain(candidates.iter().map(|c| c.1)) {
        member_indices.push(idx);
        points.extend_from_slice(dataset.input(idx));
        targets.push(dataset.target(idx));
    }
    Ok(Neighborhood {
        center_index,
        member_indices,
        dim,
        points,
        targets,
    })
}

/// Least-squares affine fit to the members of `neighborhood`.
///
/// The fit is computed on centred data, so when the members do not determine the plane uniquely
/// (duplicates, collinear points) the returned slopes are the smallest ones among all
/// least-squares solutions. Requires at least `n + 1` members.
pub fn fit_hyperplane(neighborhood: &Neighborhood) -> Result<Hyperplane> {
    let dim = neighborhood.dim;
    let count = neighborhood.len();
    if count < dim + 1 {
        return Err(config(alloc::format!(
            "a hyperplane in {dim} dimensions needs at least {} points, neighbourhood has {count}",
            dim + 1
        )));
    }
    let inv = 1.0 / count as f64;
    let mut x_mean = alloc::vec![0.0; dim];
    for row in neighborhood.points.chunks_exact(dim) {
        for (m, v) in x_mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    x_mean.iter_mut().for_each(|m| *m *= inv);
    let y_mean = neighborhood.targets.iter().sum::<f64>() * inv;

    let mut design = Matrix::zeros(count, dim);
    for (i, row) in neighborhood.points.chunks_exact(dim).enumerate() {
        for j in 0..dim {
            design[(i, j)] = row[j] - x_mean[j];
        }
    }
    let rhs: Vec<f64> = neighborhood.targets.iter().map(|y| y - y_mean).collect();
    let slopes = solve_min_norm(&design, &rhs, None)?;
    let intercept = y_mean - math::dot(&slopes, &x_mean);
    Ok(Hyperplane { slopes, intercept })
}
