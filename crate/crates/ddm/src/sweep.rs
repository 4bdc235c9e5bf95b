//! Benchmark sweeps over activations, node counts and seeds, plus the named presets.

use std::time::Instant;

use rayon::prelude::*;

use ddm_core::benchmarks::run_cell;
use ddm_core::{make_dataset_pair, Activation, TargetFunction, TrainConfig};

use crate::error::CliError;
use crate::report::{ExperimentReport, Record};

/// Everything needed to run a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Target function.
    pub tf: TargetFunction,
    /// Input dimension.
    pub n: usize,
    /// Activations, in report order.
    pub activations: Vec<Activation>,
    /// Hidden-node counts, in report order.
    pub m_values: Vec<usize>,
    /// Neighbourhood size.
    pub k: usize,
    /// Anchor seeds, in report order.
    pub seeds: Vec<u64>,
    /// Training-set size.
    pub train_size: usize,
    /// Test-set size.
    pub test_size: usize,
    /// Seed of the shared train/test data.
    pub data_seed: u64,
    /// Singular-value cutoff override.
    pub rcond: Option<f64>,
    /// Ridge penalty.
    pub ridge: f64,
    /// Evaluate softplus literally.
    pub softplus_naive: bool,
    /// Learn an output bias.
    pub output_bias: bool,
    /// Fill the `wall_ms` column (makes the report non-reproducible).
    pub record_time: bool,
}

impl SweepSpec {
    /// Standard settings for `tf` with `n` inputs: sizes by dimension, `k = n`, all activations,
    /// seed 1.
    pub fn defaults(tf: TargetFunction, n: usize) -> Self {
        let size = default_size(n);
        SweepSpec {
            tf,
            n,
            activations: Activation::ALL.to_vec(),
            m_values: vec![default_m(tf, n)],
            k: n,
            seeds: vec![1],
            train_size: size,
            test_size: size,
            data_seed: 0,
            rcond: None,
            ridge: 0.0,
            softplus_naive: false,
            output_bias: false,
            record_time: false,
        }
    }

    fn config(&self, af: Activation, m: usize, seed: u64) -> TrainConfig {
        TrainConfig {
            activation: af,
            hidden_nodes: m,
            neighbors: self.k,
            seed,
            rcond: self.rcond,
            ridge: self.ridge,
            softplus_naive: self.softplus_naive,
            output_bias: self.output_bias,
        }
    }

    /// Rejects empty lists and any cell configuration that would fail, before work starts.
    pub fn validate(&self) -> Result<(), CliError> {
        self.tf.check_arity(self.n)?;
        if self.activations.is_empty() {
            return Err(CliError::Invalid("activation list is empty".into()));
        }
        if self.m_values.is_empty() {
            return Err(CliError::Invalid("m list is empty".into()));
        }
        if self.seeds.is_empty() {
            return Err(CliError::Invalid("seed list is empty".into()));
        }
        if self.train_size < 2 || self.test_size < 2 {
            return Err(CliError::Invalid(
                "train and test sizes must be at least 2".into(),
            ));
        }
        for &m in &self.m_values {
            self.config(self.activations[0], m, self.seeds[0])
                .validate(self.n, self.train_size)?;
        }
        Ok(())
    }

    /// Number of cells.
    pub fn cells(&self) -> usize {
        self.activations.len() * self.m_values.len() * self.seeds.len()
    }
}

/// Size of train and test sets for `n` inputs.
pub fn default_size(n: usize) -> usize {
    match n {
        1 | 2 => 5000,
        3..=5 => 20_000,
        _ => 50_000,
    }
}

fn default_m(tf: TargetFunction, n: usize) -> usize {
    match (tf, n) {
        (TargetFunction::Tf1, _) => 30,
        (TargetFunction::Tf2, _) => 120,
        _ => 500,
    }
}

/// Runs every (activation, m, seed) cell on one shared dataset pair, in parallel on the current
/// rayon pool. Records come back in (activation, m, seed) order whatever the scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<ExperimentReport, CliError> {
    spec.validate()?;
    let (train_set, test_set) =
        make_dataset_pair(spec.tf, spec.n, spec.train_size, spec.test_size, spec.data_seed)?;
    let mut cells = Vec::with_capacity(spec.cells());
    for &af in &spec.activations {
        for &m in &spec.m_values {
            for &seed in &spec.seeds {
                cells.push((af, m, seed));
            }
        }
    }
    let records = cells
        .par_iter()
        .map(|&(af, m, seed)| {
            let start = Instant::now();
            let outcome = run_cell(&train_set, &test_set, &spec.config(af, m, seed))?;
            let wall_ms = spec.record_time.then(|| start.elapsed().as_millis());
            Ok(Record {
                tf: spec.tf,
                n: spec.n,
                af,
                m,
                k: spec.k,
                seed,
                outcome,
                wall_ms,
            })
        })
        .collect::<Result<Vec<_>, ddm_core::Error>>()?;
    Ok(ExperimentReport { records })
}

/// Runs `f` on a dedicated pool of `threads` workers (or the global pool when `None`).
pub fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Invalid("--threads must be at least 1".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Invalid(format!("cannot start thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// A named experiment family with every setting pinned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    /// Name used on the command line.
    pub name: &'static str,
    /// Target function.
    pub tf: TargetFunction,
    /// Input dimension.
    pub n: usize,
}

impl Preset {
    /// The sweep this preset stands for.
    pub fn spec(&self) -> SweepSpec {
        SweepSpec::defaults(self.tf, self.n)
    }
}

/// All presets.
pub const PRESETS: [Preset; 11] = [
    Preset { name: "tf1-n1", tf: TargetFunction::Tf1, n: 1 },
    Preset { name: "tf2-n1", tf: TargetFunction::Tf2, n: 1 },
    Preset { name: "tf3-n2", tf: TargetFunction::Tf3, n: 2 },
    Preset { name: "tf3-n5", tf: TargetFunction::Tf3, n: 5 },
    Preset { name: "tf3-n10", tf: TargetFunction::Tf3, n: 10 },
    Preset { name: "tf4-n2", tf: TargetFunction::Tf4, n: 2 },
    Preset { name: "tf4-n5", tf: TargetFunction::Tf4, n: 5 },
    Preset { name: "tf4-n10", tf: TargetFunction::Tf4, n: 10 },
    Preset { name: "tf5-n2", tf: TargetFunction::Tf5, n: 2 },
    Preset { name: "tf5-n5", tf: TargetFunction::Tf5, n: 5 },
    Preset { name: "tf5-n10", tf: TargetFunction::Tf5, n: 10 },
];

/// Looks up a preset by name; the error lists the valid names.
pub fn preset(name: &str) -> Result<Preset, CliError> {
    PRESETS.iter().copied().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Invalid(format!(
            "unknown preset `{name}`; available presets: {}",
            names.join(", ")
        ))
    })
}
