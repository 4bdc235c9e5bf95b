//! Command-line interface.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use ddm_core::benchmarks::model_rmse;
use ddm_core::{make_dataset_pair, rmse, train, Activation, TargetFunction, TrainConfig};

use crate::data::{read_table, training_dataset, write_csv, write_text};
use crate::error::CliError;
use crate::model_io::{load_model, save_model};
use crate::sweep::{preset, run_sweep, with_threads, SweepSpec};

/// Data-driven training of single-hidden-layer feedforward networks.
#[derive(Debug, Parser)]
#[command(name = "ddm", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a network on a CSV file (n input columns, then the target).
    Train(TrainArgs),
    /// Predict with a saved model on a CSV file of inputs.
    Predict(PredictArgs),
    /// Run a named benchmark preset and write its report.
    Bench(BenchArgs),
    /// Run an arbitrary benchmark sweep and write its report.
    Sweep(SweepArgs),
    /// Write fitted-curve and node-shape data for a one-dimensional target function.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
struct SolveFlags {
    /// Relative singular-value cutoff (default: machine epsilon × max(N, m)).
    #[arg(long)]
    rcond: Option<f64>,
    /// Ridge penalty on the output weights.
    #[arg(long, default_value_t = 0.0)]
    ridge: f64,
    /// Evaluate softplus literally as ln(1 + e^z), which can overflow.
    #[arg(long)]
    softplus_naive: bool,
    /// Add a constant hidden column (output bias).
    #[arg(long)]
    output_bias: bool,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Training data.
    #[arg(long)]
    data: PathBuf,
    /// Activation: sigu, sigb, sin, satu, satb, relu or soft.
    #[arg(long, default_value = "sigu")]
    af: String,
    /// Hidden nodes.
    #[arg(long)]
    m: usize,
    /// Neighbours per local hyperplane fit (at least the input dimension).
    #[arg(long)]
    k: usize,
    /// Anchor seed.
    #[arg(long, env = "DDM_SEED", default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    solve: SolveFlags,
    /// Model file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// Model file.
    #[arg(long)]
    model: PathBuf,
    /// Input CSV: n input columns, optionally followed by a target column.
    #[arg(long)]
    data: PathBuf,
    /// Predictions CSV to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepFlags {
    /// Activations, comma separated (default: all seven).
    #[arg(long)]
    af: Option<String>,
    /// Hidden-node counts, comma separated.
    #[arg(long)]
    m: Option<String>,
    /// Neighbourhood size (default: n).
    #[arg(long)]
    k: Option<usize>,
    /// Anchor seeds, comma separated.
    #[arg(long, env = "DDM_SEED")]
    seed: Option<String>,
    /// Training-set size.
    #[arg(long)]
    train_size: Option<usize>,
    /// Test-set size.
    #[arg(long)]
    test_size: Option<usize>,
    /// Seed of the generated train/test data.
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    #[command(flatten)]
    solve: SolveFlags,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    threads: Option<usize>,
    /// Fill the wall_ms column (the report is then no longer reproducible byte for byte).
    #[arg(long)]
    wall_time: bool,
    /// Report CSV to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Preset name, e.g. tf1-n1, tf2-n1, tf3-n2 … tf5-n10.
    #[arg(long)]
    preset: String,
    #[command(flatten)]
    flags: SweepFlags,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Target function: tf1 … tf5.
    #[arg(long)]
    tf: String,
    /// Input dimension.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[command(flatten)]
    flags: SweepFlags,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// One-dimensional target function.
    #[arg(long)]
    tf: String,
    /// Input dimension (curves exist only for n = 1).
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Activation.
    #[arg(long, default_value = "sigu")]
    af: String,
    /// Hidden nodes.
    #[arg(long, default_value_t = 30)]
    m: usize,
    /// Neighbourhood size.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Anchor seed.
    #[arg(long, env = "DDM_SEED", default_value_t = 1)]
    seed: u64,
    /// Training-set size.
    #[arg(long, default_value_t = 5000)]
    train_size: usize,
    /// Test grid size.
    #[arg(long, default_value_t = 5000)]
    test_size: usize,
    /// Seed of the generated training data.
    #[arg(long, default_value_t = 0)]
    data_seed: u64,
    #[command(flatten)]
    solve: SolveFlags,
    /// Fitted curve CSV (x,y_true,y_fit).
    #[arg(long)]
    out: PathBuf,
    /// Node shapes CSV (x,node_1..node_m); defaults to `<out>` with a `_nodes` suffix.
    #[arg(long)]
    nodes_out: Option<PathBuf>,
}

/// Runs one parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(a) => cmd_train(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Curve(a) => cmd_curve(a),
    }
}

fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, CliError> {
    let items: Vec<&str> = raw.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(CliError::Invalid(format!("{what} list is empty")));
    }
    items
        .into_iter()
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Invalid(format!("invalid {what} `{s}`")))
        })
        .collect()
}

fn parse_activation(s: &str) -> Result<Activation, CliError> {
    s.parse::<Activation>().map_err(|e| CliError::Invalid(e.to_string()))
}

fn parse_tf(s: &str) -> Result<TargetFunction, CliError> {
    s.parse::<TargetFunction>().map_err(|e| CliError::Invalid(e.to_string()))
}

fn train_config(af: Activation, m: usize, k: usize, seed: u64, solve: &SolveFlags) -> TrainConfig {
    TrainConfig {
        activation: af,
        hidden_nodes: m,
        neighbors: k,
        seed,
        rcond: solve.rcond,
        ridge: solve.ridge,
        softplus_naive: solve.softplus_naive,
        output_bias: solve.output_bias,
    }
}

fn cmd_train(a: TrainArgs) -> Result<(), CliError> {
    let af = parse_activation(&a.af)?;
    let config = train_config(af, a.m, a.k, a.seed, &a.solve);
    let dataset = training_dataset(&a.data)?;
    config.validate(dataset.dim(), dataset.len())?;
    let model = train(&dataset, &config)?;
    write_text(&a.out, &save_model(&model))?;
    let norm = &model.normalization;
    let predicted: Vec<f64> = model
        .predict_batch(dataset.inputs())
        .into_iter()
        .map(|y| norm.denormalize_target(y))
        .collect();
    let actual: Vec<f64> = dataset
        .targets()
        .iter()
        .map(|&y| norm.denormalize_target(y))
        .collect();
    println!("rmse_train={:?}", rmse(&predicted, &actual));
    Ok(())
}

fn cmd_predict(a: PredictArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.model).map_err(|e| CliError::io(&a.model, e))?;
    let model = load_model(&text).map_err(|source| CliError::Model {
        path: a.model.clone(),
        source,
    })?;
    let table = read_table(&a.data)?;
    let dim = model.input_dim;
    let has_target = match table.width() {
        w if w == dim => false,
        w if w == dim + 1 => true,
        w => {
            return Err(CliError::Input {
                path: a.data.clone(),
                line: 1,
                message: format!(
                    "model takes {dim} input(s): expected {dim} or {} columns, found {w}",
                    dim + 1
                ),
            })
        }
    };
    let inputs = table.leading_columns(dim);
    let predicted: Vec<f64> = inputs
        .chunks_exact(dim)
        .map(|x| model.predict_natural(x))
        .collect();
    let mut header: Vec<String> = table.header[..dim].to_vec();
    header.push("prediction".into());
    let rows: Vec<Vec<f64>> = inputs
        .chunks_exact(dim)
        .zip(&predicted)
        .map(|(x, y)| x.iter().copied().chain([*y]).collect())
        .collect();
    write_csv(&a.out, &header, &rows)?;
    if has_target && !predicted.is_empty() {
        println!("rmse={:?}", rmse(&predicted, &table.column(dim)));
    }
    Ok(())
}

fn apply_flags(spec: &mut SweepSpec, f: &SweepFlags) -> Result<(), CliError> {
    if let Some(af) = &f.af {
        spec.activations = parse_list::<String>(af, "activation")?
            .iter()
            .map(|s| parse_activation(s))
            .collect::<Result<_, _>>()?;
    }
    if let Some(m) = &f.m {
        spec.m_values = parse_list(m, "m")?;
    }
    if let Some(k) = f.k {
        spec.k = k;
    }
    if let Some(seed) = &f.seed {
        spec.seeds = parse_list(seed, "seed")?;
    }
    if let Some(s) = f.train_size {
        spec.train_size = s;
    }
    if let Some(s) = f.test_size {
        spec.test_size = s;
    }
    spec.data_seed = f.data_seed;
    spec.rcond = f.solve.rcond;
    spec.ridge = f.solve.ridge;
    spec.softplus_naive = f.solve.softplus_naive;
    spec.output_bias = f.solve.output_bias;
    spec.record_time = f.wall_time;
    spec.validate()
}

fn execute_sweep(spec: &SweepSpec, flags: &SweepFlags, default_out: &str) -> Result<(), CliError> {
    let report = with_threads(flags.threads, || run_sweep(spec))??;
    let out = flags
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(default_out));
    write_text(&out, &report.to_csv())?;
    print!("{}", report.summary_grid());
    println!("wrote {} records to {}", report.records.len(), out.display());
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let p = preset(&a.preset)?;
    let mut spec = p.spec();
    apply_flags(&mut spec, &a.flags)?;
    execute_sweep(&spec, &a.flags, &format!("{}.csv", p.name))
}

fn cmd_sweep(a: SweepArgs) -> Result<(), CliError> {
    let tf = parse_tf(&a.tf)?;
    tf.check_arity(a.n)?;
    let mut spec = SweepSpec::defaults(tf, a.n);
    if a.flags.m.is_none() {
        return Err(CliError::Invalid("--m is required for sweep".into()));
    }
    apply_flags(&mut spec, &a.flags)?;
    execute_sweep(&spec, &a.flags, &format!("{tf}-n{}-sweep.csv", a.n))
}

fn nodes_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let ext = out.extension().map(|e| e.to_string_lossy().into_owned());
    let name = match ext {
        Some(e) => format!("{stem}_nodes.{e}"),
        None => format!("{stem}_nodes"),
    };
    out.with_file_name(name)
}

fn cmd_curve(a: CurveArgs) -> Result<(), CliError> {
    let tf = parse_tf(&a.tf)?;
    if a.n != 1 {
        return Err(CliError::Invalid(format!(
            "curves are one-dimensional only; {tf} with n = {} has no curve to plot (use sweep instead)",
            a.n
        )));
    }
    tf.check_arity(a.n)?;
    let af = parse_activation(&a.af)?;
    let config = train_config(af, a.m, a.k, a.seed, &a.solve);
    config.validate(1, a.train_size)?;
    let (train_set, test_set) = make_dataset_pair(tf, 1, a.train_size, a.test_size, a.data_seed)?;
    let model = train(&train_set, &config)?;

    let fit_rows: Vec<Vec<f64>> = test_set
        .rows()
        .zip(test_set.targets())
        .map(|(x, y)| vec![x[0], *y, model.predict(x)])
        .collect();
    write_csv(
        &a.out,
        &["x".into(), "y_true".into(), "y_fit".into()],
        &fit_rows,
    )?;

    let mut header = vec!["x".to_string()];
    header.extend((1..=model.hidden_nodes()).map(|j| format!("node_{j}")));
    let node_rows: Vec<Vec<f64>> = test_set
        .rows()
        .map(|x| {
            std::iter::once(x[0])
                .chain((0..model.hidden_nodes()).map(|j| model.node_output(j, x)))
                .collect()
        })
        .collect();
    let nodes_out = a.nodes_out.clone().unwrap_or_else(|| nodes_path(&a.out));
    write_csv(&nodes_out, &header, &node_rows)?;
    println!("rmse_test={:?}", model_rmse(&model, &test_set));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list::<u64>("1, 2,3", "seed").unwrap(), vec![1, 2, 3]);
        assert!(parse_list::<u64>("", "seed").unwrap_err().to_string().contains("empty"));
        assert!(parse_list::<u64>("1,x", "seed").is_err());
    }

    #[test]
    fn nodes_file_name() {
        assert_eq!(nodes_path(Path::new("out/fit.csv")), PathBuf::from("out/fit_nodes.csv"));
        assert_eq!(nodes_path(Path::new("fit")), PathBuf::from("fit_nodes"));
    }
}
