//! Synthetic target functions, dataset generation, RMSE and single sweep cells.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::dataset::{min_max, Dataset, Normalization, Provenance};
use crate::error::{config, Error, Result};
use crate::math;
use crate::rng::{Stream, STREAM_TEST, STREAM_TRAIN};
use crate::trainer::{train, FnnModel, TrainConfig};

/// The five benchmark functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetFunction {
    /// `sin(20 eˣ) x²` on `[0, 1]`.
    Tf1,
    /// Three Gaussian bumps on `[0, 1]`.
    Tf2,
    /// `Σ sin(20 e^{xⱼ}) xⱼ²` on `[0, 1]ⁿ`.
    Tf3,
    /// Michalewicz, `-Σ sin(xᵢ) sin²⁰(i xᵢ² / π)` on `[0, π]ⁿ`.
    Tf4,
    /// Schwefel, `418.9829 n - Σ xᵢ sin(√|xᵢ|)` on `[-500, 500]ⁿ`.
    Tf5,
}

impl TargetFunction {
    /// All functions.
    pub const ALL: [TargetFunction; 5] = [
        TargetFunction::Tf1,
        TargetFunction::Tf2,
        TargetFunction::Tf3,
        TargetFunction::Tf4,
        TargetFunction::Tf5,
    ];

    /// Lowercase token (`tf1` … `tf5`).
    pub const fn token(self) -> &'static str {
        match self {
            TargetFunction::Tf1 => "tf1",
            TargetFunction::Tf2 => "tf2",
            TargetFunction::Tf3 => "tf3",
            TargetFunction::Tf4 => "tf4",
            TargetFunction::Tf5 => "tf5",
        }
    }

    /// Required arity for the univariate functions, `None` for the multivariate ones.
    pub const fn fixed_arity(self) -> Option<usize> {
        match self {
            TargetFunction::Tf1 | TargetFunction::Tf2 => Some(1),
            _ => None,
        }
    }

    /// Natural interval of every input axis.
    pub const fn domain(self) -> (f64, f64) {
        match self {
            TargetFunction::Tf1 | TargetFunction::Tf2 | TargetFunction::Tf3 => (0.0, 1.0),
            TargetFunction::Tf4 => (0.0, PI),
            TargetFunction::Tf5 => (-500.0, 500.0),
        }
    }

    /// Interval the targets are normalized onto.
    pub const fn target_interval(self) -> (f64, f64) {
        match self {
            TargetFunction::Tf1 | TargetFunction::Tf2 => (0.0, 1.0),
            _ => (-1.0, 1.0),
        }
    }

    /// Checks that `n` inputs are allowed.
    pub fn check_arity(self, n: usize) -> Result<()> {
        match self.fixed_arity() {
            Some(a) if a != n => Err(config(alloc::format!(
                "{self} takes exactly {a} input, got n = {n}"
            ))),
            _ if n == 0 => Err(config("n must be at least 1")),
            _ => Ok(()),
        }
    }

    /// Function value at a point of the natural domain.
    ///
    /// Panics on a wrong arity or a coordinate outside the domain.
    pub fn eval(self, x: &[f64]) -> f64 {
        if let Some(a) = self.fixed_arity() {
            assert_eq!(x.len(), a, "{self} takes {a} input(s)");
        }
        assert!(!x.is_empty(), "empty input");
        let (lo, hi) = self.domain();
        assert!(
            x.iter().all(|v| (lo..=hi).contains(v)),
            "input outside the domain [{lo}, {hi}] of {self}"
        );
        match self {
            TargetFunction::Tf1 | TargetFunction::Tf3 => x
                .iter()
                .map(|&v| math::sin(20.0 * math::exp(v)) * v * v)
                .sum(),
            TargetFunction::Tf2 => {
                let v = x[0];
                let bump = |c: f64| math::exp(-(c * c));
                0.2 * bump(10.0 * v - 4.0)
                    + 0.5 * bump(80.0 * v - 40.0)
                    + 0.3 * bump(80.0 * v - 20.0)
            }
            TargetFunction::Tf4 => -x
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let inner = math::sin((i + 1) as f64 * v * v / PI);
                    math::sin(v) * math::powf(inner, 20.0)
                })
                .sum::<f64>(),
            TargetFunction::Tf5 => {
                418.9829 * x.len() as f64
                    - x.iter()
                        .map(|&v| v * math::sin(math::sqrt(v.abs())))
                        .sum::<f64>()
            }
        }
    }
}

impl fmt::Display for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TargetFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        TargetFunction::ALL
            .into_iter()
            .find(|t| t.token() == lower)
            .ok_or_else(|| config(alloc::format!("unknown target function `{s}` (tf1..tf5)")))
    }
}

/// Which half of a benchmark a dataset is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    /// Uniform random inputs.
    Train,
    /// An even grid for `n = 1`, independent uniform inputs otherwise.
    Test,
}

impl Split {
    /// `train` or `test`.
    pub const fn token(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

/// Raw samples in natural units, before target normalization.
struct RawSamples {
    inputs: Vec<f64>,
    targets: Vec<f64>,
}

fn sample(tf: TargetFunction, n: usize, split: Split, size: usize, seed: u64) -> RawSamples {
    let (lo, hi) = tf.domain();
    let width = hi - lo;
    let mut inputs = Vec::with_capacity(size * n);
    match (split, n) {
        (Split::Test, 1) => {
            let last = (size - 1) as f64;
            inputs.extend((0..size).map(|i| lo + (i as f64 / last) * width));
        }
        _ => {
            let stream = match split {
                Split::Train => STREAM_TRAIN,
                Split::Test => STREAM_TEST,
            };
            let mut rng = Stream::new(seed, stream);
            inputs.extend((0..size * n).map(|_| lo + rng.unit_f64() * width));
        }
    }
    let targets = inputs.chunks_exact(n).map(|x| tf.eval(x)).collect();
    RawSamples { inputs, targets }
}

fn check_request(tf: TargetFunction, n: usize, size: usize) -> Result<()> {
    tf.check_arity(n)?;
    if size < 2 {
        return Err(config(alloc::format!("dataset size must be at least 2, got {size}")));
    }
    Ok(())
}

fn build(
    tf: TargetFunction,
    n: usize,
    split: Split,
    seed: u64,
    raw: RawSamples,
    normalization: &Normalization,
) -> Result<Dataset> {
    let inputs: Vec<f64> = raw
        .inputs
        .chunks_exact(n)
        .flat_map(|x| normalization.normalize_input(x))
        .collect();
    let targets = raw
        .targets
        .iter()
        .map(|&y| normalization.normalize_target(y))
        .collect();
    Ok(
        Dataset::with_normalization(inputs, targets, normalization.clone())?.with_provenance(
            Provenance {
                tf,
                seed,
                split,
            },
        ),
    )
}

fn normalization_for(tf: TargetFunction, n: usize, target_source: (f64, f64)) -> Normalization {
    Normalization {
        input_ranges: alloc::vec![tf.domain(); n],
        target_source,
        target_interval: tf.target_interval(),
    }
}

/// One split on its own; targets are scaled by this split's own min/max.
pub fn make_dataset(
    tf: TargetFunction,
    n: usize,
    split: Split,
    size: usize,
    seed: u64,
) -> Result<Dataset> {
    check_request(tf, n, size)?;
    let raw = sample(tf, n, split, size, seed);
    let norm = normalization_for(tf, n, min_max(&raw.targets));
    build(tf, n, split, seed, raw, &norm)
}

/// Train and test splits sharing one normalization (target min/max over both splits).
pub fn make_dataset_pair(
    tf: TargetFunction,
    n: usize,
    train_size: usize,
    test_size: usize,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    check_request(tf, n, train_size)?;
    check_request(tf, n, test_size)?;
    let train_raw = sample(tf, n, Split::Train, train_size, seed);
    let test_raw = sample(tf, n, Split::Test, test_size, seed);
    let (a, b) = min_max(&train_raw.targets);
    let (c, d) = min_max(&test_raw.targets);
    let norm = normalization_for(tf, n, (a.min(c), b.max(d)));
    Ok((
        build(tf, n, Split::Train, seed, train_raw, &norm)?,
        build(tf, n, Split::Test, seed, test_raw, &norm)?,
    ))
}

/// Root mean squared error.
///
/// Panics if the lengths differ or are zero.
pub fn rmse(predicted: &[f64], actual: &[f64]) -> f64 {
    assert_eq!(
        predicted.len(),
        actual.len(),
        "rmse: {} predictions for {} targets",
        predicted.len(),
        actual.len()
    );
    assert!(!predicted.is_empty(), "rmse of empty vectors");
    let sse: f64 = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum();
    math::sqrt(sse / predicted.len() as f64)
}

/// Outcome of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    /// Training finished.
    Fitted {
        /// RMSE on the training split (normalized units).
        rmse_train: f64,
        /// RMSE on the test split (normalized units).
        rmse_test: f64,
    },
    /// A hidden node produced a non-finite output (literal softplus overflow).
    Overflow {
        /// Offending node.
        node: usize,
    },
}

impl CellOutcome {
    /// Test RMSE, if the cell was fitted.
    pub fn rmse_test(&self) -> Option<f64> {
        match self {
            CellOutcome::Fitted { rmse_test, .. } => Some(*rmse_test),
            CellOutcome::Overflow { .. } => None,
        }
    }
}

/// RMSE of `model` over a dataset.
pub fn model_rmse(model: &FnnModel, data: &Dataset) -> f64 {
    rmse(&model.predict_batch(data.inputs()), data.targets())
}

/// Trains on `train` and scores on both splits. Overflow becomes [`CellOutcome::Overflow`]; any
/// other error is returned.
pub fn run_cell(train_set: &Dataset, test_set: &Dataset, config: &TrainConfig) -> Result<CellOutcome> {
    match train(train_set, config) {
        Ok(model) => Ok(CellOutcome::Fitted {
            rmse_train: model_rmse(&model, train_set),
            rmse_test: model_rmse(&model, test_set),
        }),
        Err(Error::NonFiniteActivation { node, .. }) => Ok(CellOutcome::Overflow { node }),
        Err(e) => Err(e),
    }
}
