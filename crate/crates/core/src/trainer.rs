//! The training loop and the trained network.
//!
//! Training draws all `m` anchor indices first, then for each anchor finds its neighbourhood, fits
//! the local hyperplane and places a node on it. The hidden-layer output matrix is assembled over
//! the training inputs and the output weights are its minimum-norm least-squares solution.

use alloc::string::String;
use alloc::vec::Vec;

use crate::activations::{parameterize, Activation, HiddenNode};
use crate::dataset::{Dataset, Normalization};
use crate::error::{config, Error, Result};
use crate::linalg::Matrix;
use crate::local_geometry::{find_neighborhood, fit_hyperplane, Hyperplane};
use crate::rng;
use crate::solver::{default_rcond, solve_regularized};

/// Hyperparameters of one training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    /// Activation family of every hidden node.
    pub activation: Activation,
    /// Number of hidden nodes `m`.
    pub hidden_nodes: usize,
    /// Neighbours `k` used for each local hyperplane fit.
    pub neighbors: usize,
    /// Seed for anchor selection.
    pub seed: u64,
    /// Relative singular-value cutoff; `None` uses `ε · max(N, m)`.
    pub rcond: Option<f64>,
    /// Ridge penalty on the output weights (0 = plain pseudoinverse).
    pub ridge: f64,
    /// Evaluate softplus literally, letting it overflow.
    pub softplus_naive: bool,
    /// Append a constant column to `H` and learn an output bias with it.
    pub output_bias: bool,
}

impl TrainConfig {
    /// Defaults for everything except the four essential settings.
    pub fn new(activation: Activation, hidden_nodes: usize, neighbors: usize, seed: u64) -> Self {
        TrainConfig {
            activation,
            hidden_nodes,
            neighbors,
            seed,
            rcond: None,
            ridge: 0.0,
            softplus_naive: false,
            output_bias: false,
        }
    }

    /// Checks the configuration against data of dimension `dim` with `samples` rows.
    pub fn validate(&self, dim: usize, samples: usize) -> Result<()> {
        if self.hidden_nodes == 0 {
            return Err(config("m (hidden nodes) must be at least 1"));
        }
        if self.neighbors < dim {
            return Err(config(alloc::format!(
                "k must be ≥ input dimension (k = {}, n = {dim})",
                self.neighbors
            )));
        }
        if self.neighbors == 0 {
            return Err(config("k must be at least 1"));
        }
        if samples < self.neighbors + 1 {
            return Err(config(alloc::format!(
                "need at least k+1 = {} training samples, got {samples}",
                self.neighbors + 1
            )));
        }
        if let Some(r) = self.rcond {
            if !r.is_finite() || r < 0.0 {
                return Err(config("rcond must be a finite value >= 0"));
            }
        }
        if !self.ridge.is_finite() || self.ridge < 0.0 {
            return Err(config("ridge must be a finite value >= 0"));
        }
        Ok(())
    }
}

/// A hidden node together with how it was placed.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedNode {
    /// The node itself.
    pub node: HiddenNode,
    /// Training-set index of the anchor `x*`.
    pub anchor_index: usize,
    /// Coordinates of the anchor (normalized space).
    pub anchor: Vec<f64>,
    /// Local hyperplane the node was fitted to.
    pub plane: Hyperplane,
}

/// A trained single-hidden-layer network `φ(x) = Σ βᵢ hᵢ(x)` (plus an optional output bias).
///
/// Inputs to [`predict`](Self::predict) are in the normalized space; use
/// [`predict_natural`](Self::predict_natural) for natural units.
#[derive(Debug, Clone, PartialEq)]
pub struct FnnModel {
    /// Input dimension `n`.
    pub input_dim: usize,
    /// Activation family shared by all nodes.
    pub activation: Activation,
    /// Hidden nodes in training order.
    pub nodes: Vec<PlacedNode>,
    /// Output weights, one per node.
    pub beta: Vec<f64>,
    /// Weight of the constant column, when trained with one.
    pub output_bias: Option<f64>,
    /// Scaling captured from the training data.
    pub normalization: Normalization,
    /// Anchor seed.
    pub seed: u64,
    /// Identifier of the random generator that drew the anchors.
    pub rng: String,
    /// Neighbourhood size used in training.
    pub neighbors: usize,
    /// Cutoff actually used for the output solve.
    pub rcond: f64,
    /// Ridge penalty used for the output solve.
    pub ridge: f64,
    /// Whether softplus is evaluated literally.
    pub softplus_naive: bool,
}

impl FnnModel {
    /// Number of hidden nodes.
    pub fn hidden_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Output of hidden node `j` at `x`, evaluated the same way as during training.
    pub fn node_output(&self, j: usize, x: &[f64]) -> f64 {
        let node = &self.nodes[j].node;
        if self.softplus_naive {
            node.evaluate_naive(x)
        } else {
            node.evaluate(x)
        }
    }

    /// Network output at a normalized input.
    ///
    /// Panics if `x.len() != input_dim`.
    pub fn predict(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.input_dim,
            "input has {} components, model expects {}",
            x.len(),
            self.input_dim
        );
        let hidden: f64 = self
            .beta
            .iter()
            .enumerate()
            .map(|(j, b)| b * self.node_output(j, x))
            .sum();
        hidden + self.output_bias.unwrap_or(0.0)
    }

    /// [`predict`](Self::predict) over row-major `inputs`.
    pub fn predict_batch(&self, inputs: &[f64]) -> Vec<f64> {
        assert_eq!(
            inputs.len() % self.input_dim,
            0,
            "batch length is not a multiple of the input dimension"
        );
        inputs
            .chunks_exact(self.input_dim)
            .map(|x| self.predict(x))
            .collect()
    }

    /// Prediction for an input in natural units, returned in natural target units.
    pub fn predict_natural(&self, x: &[f64]) -> f64 {
        let xn = self.normalization.normalize_input(x);
        self.normalization.denormalize_target(self.predict(&xn))
    }
}

/// Trains a network on `dataset` (inputs normalized to `[0, 1]ⁿ`).
pub fn train(dataset: &Dataset, config: &TrainConfig) -> Result<FnnModel> {
    let dim = dataset.dim();
    let samples = dataset.len();
    if samples == 0 {
        return Err(self::config("dataset is empty"));
    }
    config.validate(dim, samples)?;

    let anchors = rng::anchor_indices(config.seed, config.hidden_nodes, samples);
    let mut nodes = Vec::with_capacity(anchors.len());
    for &anchor_index in &anchors {
        let neighborhood = find_neighborhood(dataset, anchor_index, config.neighbors)?;
        let plane = fit_hyperplane(&neighborhood)?;
        let anchor = dataset.input(anchor_index).to_vec();
        let node = parameterize(config.activation, &plane, &anchor);
        nodes.push(PlacedNode {
            node,
            anchor_index,
            anchor,
            plane,
        });
    }

    let cols = nodes.len() + usize::from(config.output_bias);
    let mut h = Matrix::zeros(samples, cols);
    for (j, placed) in nodes.iter().enumerate() {
        let column = h.col_mut(j);
        for (i, (cell, x)) in column.iter_mut().zip(dataset.rows()).enumerate() {
            let v = if config.softplus_naive {
                placed.node.evaluate_naive(x)
            } else {
                placed.node.evaluate(x)
            };
            if !v.is_finite() {
                return Err(Error::NonFiniteActivation { node: j, row: i });
            }
            *cell = v;
        }
    }
    if config.output_bias {
        h.col_mut(cols - 1).fill(1.0);
    }

    let rcond = config.rcond.unwrap_or_else(|| default_rcond(samples, cols));
    let mut beta = solve_regularized(&h, dataset.targets(), Some(rcond), config.ridge)?;
    let output_bias = if config.output_bias { beta.pop() } else { None };

    Ok(FnnModel {
        input_dim: dim,
        activation: config.activation,
        nodes,
        beta,
        output_bias,
        normalization: dataset.normalization().clone(),
        seed: config.seed,
        rng: String::from(rng::RNG_ID),
        neighbors: config.neighbors,
        rcond,
        ridge: config.ridge,
        softplus_naive: config.softplus_naive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn zero_nodes_rejected() {
        let d = Dataset::new(1, vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let err = train(&d, &TrainConfig::new(Activation::Sine, 0, 1, 0)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn k_below_dimension_rejected() {
        let d = Dataset::new(2, vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0], vec![0.0, 1.0, 2.0]).unwrap();
        let err = train(&d, &TrainConfig::new(Activation::Sine, 1, 1, 0)).unwrap_err();
        assert!(err.to_string().contains("k must be ≥ input dimension"), "{err}");
    }

    #[test]
    fn too_few_samples_rejected() {
        let d = Dataset::new(1, vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        assert!(train(&d, &TrainConfig::new(Activation::Sine, 1, 2, 0)).is_err());
    }

    #[test]
    fn naive_softplus_overflow_names_node() {
        // Steep data: slope 2000 → weight 4000, z reaches ~4000 at the far end.
        let d = Dataset::new(1, vec![0.0, 0.001, 1.0], vec![0.0, 2.0, 2.0]).unwrap();
        let mut cfg = TrainConfig::new(Activation::Softplus, 1, 1, 3);
        cfg.softplus_naive = true;
        match train(&d, &cfg) {
            Err(Error::NonFiniteActivation { node: 0, .. }) => {}
            Ok(m) => {
                // Anchor landed on the flat segment; the steep one must overflow.
                assert_eq!(m.nodes[0].anchor_index, 2);
            }
            Err(e) => panic!("unexpected error {e}"),
        }
        cfg.softplus_naive = false;
        let model = train(&d, &cfg).unwrap();
        assert!(model.beta.iter().all(|b| b.is_finite()));
    }

    #[test]
    fn output_bias_is_learned() {
        let d = Dataset::new(1, vec![0.0, 0.3, 0.6, 1.0], vec![0.7; 4]).unwrap();
        let mut cfg = TrainConfig::new(Activation::Sine, 3, 1, 5);
        cfg.output_bias = true;
        let m = train(&d, &cfg).unwrap();
        assert!((m.output_bias.unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(m.beta.len(), 3);
    }
}
