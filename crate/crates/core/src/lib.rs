//! Data-driven training of single-hidden-layer feedforward networks.
//!
//! Every hidden node is placed at a randomly drawn training point `x*`: a hyperplane is fitted by
//! least squares to `x*` and its `k` nearest neighbours, and the node's weights and bias are
//! derived in closed form so that the activation passes through its characteristic point at `x*`
//! with the same slopes as the local hyperplane. The output weights are then the minimum-norm
//! least-squares solution of `Hβ = Y`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, CSV handling, parallel sweeps and
//! the command-line front end live in the companion `ddm` crate.
//!
//! # Panics vs `Result`
//!
//! Misuse of the numeric hot path (dimension mismatches, non-finite inputs passed to
//! [`HiddenNode::evaluate`], [`FnnModel::predict`], [`TargetFunction::eval`] or [`rmse`]) is a
//! contract violation and panics. Configuration problems (bad `k`, empty datasets, zero-sized
//! matrices) are reported as [`Error`].
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod activations;
pub mod benchmarks;
pub mod dataset;
mod error;
pub mod linalg;
pub mod local_geometry;
mod math;
pub mod rng;
pub mod solver;
pub mod trainer;

pub use activations::{parameterize, Activation, HiddenNode};
pub use benchmarks::{make_dataset, make_dataset_pair, rmse, Split, TargetFunction};
pub use dataset::{Dataset, Normalization, Provenance};
pub use error::{Error, Result};
pub use local_geometry::{find_neighborhood, fit_hyperplane, Hyperplane, Neighborhood};
pub use solver::{solve_min_norm, solve_regularized, DesignMatrix};
pub use trainer::{train, FnnModel, PlacedNode, TrainConfig};
