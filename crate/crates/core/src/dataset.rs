//! Training/test samples and the min–max scaling that maps them into the unit cube.

use alloc::vec::Vec;

use crate::benchmarks::{Split, TargetFunction};
use crate::error::{config, Error, Result};

/// Affine maps between natural units and the normalized space the network works in.
///
/// Inputs map from `input_ranges[j]` to `[0, 1]`; targets map from `target_source` to
/// `target_interval`. A degenerate range (`min == max`) maps everything to the lower end.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    /// Natural `(min, max)` of each input axis.
    pub input_ranges: Vec<(f64, f64)>,
    /// Natural `(min, max)` of the targets.
    pub target_source: (f64, f64),
    /// Interval the targets are mapped onto, e.g. `(0, 1)` or `(-1, 1)`.
    pub target_interval: (f64, f64),
}

fn forward(v: f64, (lo, hi): (f64, f64), (to_lo, to_hi): (f64, f64)) -> f64 {
    if hi == lo {
        to_lo
    } else {
        to_lo + (v - lo) / (hi - lo) * (to_hi - to_lo)
    }
}

fn backward(v: f64, (lo, hi): (f64, f64), (to_lo, to_hi): (f64, f64)) -> f64 {
    if hi == lo {
        lo
    } else {
        lo + (v - to_lo) / (to_hi - to_lo) * (hi - lo)
    }
}

impl Normalization {
    /// Leaves inputs in `[0, 1]ⁿ` and targets in `[0, 1]` unchanged.
    pub fn identity(dim: usize) -> Self {
        Normalization {
            input_ranges: alloc::vec![(0.0, 1.0); dim],
            target_source: (0.0, 1.0),
            target_interval: (0.0, 1.0),
        }
    }

    /// Fits the per-axis and target ranges to row-major `inputs` and `targets`.
    pub fn fit(dim: usize, inputs: &[f64], targets: &[f64], target_interval: (f64, f64)) -> Self {
        let mut input_ranges = alloc::vec![(f64::INFINITY, f64::NEG_INFINITY); dim];
        for row in inputs.chunks_exact(dim) {
            for (r, v) in input_ranges.iter_mut().zip(row) {
                r.0 = r.0.min(*v);
                r.1 = r.1.max(*v);
            }
        }
        Normalization {
            input_ranges,
            target_source: min_max(targets),
            target_interval,
        }
    }

    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.input_ranges.len()
    }

    /// Natural input → unit cube.
    pub fn normalize_input(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim(), "input dimension mismatch");
        x.iter()
            .zip(&self.input_ranges)
            .map(|(v, r)| forward(*v, *r, (0.0, 1.0)))
            .collect()
    }

    /// Unit cube → natural input.
    pub fn denormalize_input(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim(), "input dimension mismatch");
        x.iter()
            .zip(&self.input_ranges)
            .map(|(v, r)| backward(*v, *r, (0.0, 1.0)))
            .collect()
    }

    /// Natural target → normalized target.
    pub fn normalize_target(&self, y: f64) -> f64 {
        forward(y, self.target_source, self.target_interval)
    }

    /// Normalized target → natural target.
    pub fn denormalize_target(&self, y: f64) -> f64 {
        backward(y, self.target_source, self.target_interval)
    }
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        })
}

/// Where a generated dataset came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    /// Target function.
    pub tf: TargetFunction,
    /// Seed of the generator.
    pub seed: u64,
    /// Train or test.
    pub split: Split,
}

/// `N` normalized input vectors with scalar targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    inputs: Vec<f64>,
    targets: Vec<f64>,
    normalization: Normalization,
    provenance: Option<Provenance>,
}

impl Dataset {
    /// Wraps already-normalized row-major `inputs` and `targets` with an identity normalization.
    pub fn new(dim: usize, inputs: Vec<f64>, targets: Vec<f64>) -> Result<Self> {
        Self::with_normalization(inputs, targets, Normalization::identity(dim))
    }

    /// Wraps normalized data together with the scaling that produced it.
    pub fn with_normalization(
        inputs: Vec<f64>,
        targets: Vec<f64>,
        normalization: Normalization,
    ) -> Result<Self> {
        let dim = normalization.dim();
        if dim == 0 {
            return Err(config("input dimension must be at least 1"));
        }
        if inputs.len() != dim * targets.len() {
            return Err(Error::DimensionMismatch {
                expected: dim * targets.len(),
                got: inputs.len(),
            });
        }
        if !inputs.iter().chain(&targets).all(|v| v.is_finite()) {
            return Err(Error::NonFinite("dataset"));
        }
        Ok(Dataset {
            dim,
            inputs,
            targets,
            normalization,
            provenance: None,
        })
    }

    /// Attaches generator metadata.
    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    /// `true` if there are no samples.
    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Input dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Input vector of sample `i`.
    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i * self.dim..(i + 1) * self.dim]
    }

    /// Target of sample `i`.
    pub fn target(&self, i: usize) -> f64 {
        self.targets[i]
    }

    /// Row-major inputs.
    pub fn inputs(&self) -> &[f64] {
        &self.inputs
    }

    /// Iterator over input vectors.
    pub fn rows(&self) -> core::slice::ChunksExact<'_, f64> {
        self.inputs.chunks_exact(self.dim)
    }

    /// All targets.
    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    /// Scaling used to produce the stored values.
    pub fn normalization(&self) -> &Normalization {
        &self.normalization
    }

    /// Generator metadata, if any.
    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }
}
