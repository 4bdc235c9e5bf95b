//! Sweep results, their CSV form and the summary grid.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ddm_core::benchmarks::CellOutcome;
use ddm_core::{Activation, TargetFunction};

/// CSV header of a report.
pub const CSV_HEADER: &str = "tf,n,af,m,k,seed,rmse_train,rmse_test,wall_ms,status";

/// One trained and scored network.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    /// Target function.
    pub tf: TargetFunction,
    /// Input dimension.
    pub n: usize,
    /// Activation family.
    pub af: Activation,
    /// Hidden nodes.
    pub m: usize,
    /// Neighbourhood size.
    pub k: usize,
    /// Anchor seed.
    pub seed: u64,
    /// Result of the cell.
    pub outcome: CellOutcome,
    /// Wall-clock training and scoring time, when recorded.
    pub wall_ms: Option<u128>,
}

impl Record {
    /// `ok` or `overflow`.
    pub fn status(&self) -> &'static str {
        match self.outcome {
            CellOutcome::Fitted { .. } => "ok",
            CellOutcome::Overflow { .. } => "overflow",
        }
    }
}

/// Ordered results of a sweep.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    /// Records in (activation, m, seed) order.
    pub records: Vec<Record>,
}

impl ExperimentReport {
    /// Report as CSV text. Failed cells leave the RMSE fields empty; `wall_ms` is empty unless
    /// timing was recorded.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let (train, test) = match r.outcome {
                CellOutcome::Fitted {
                    rmse_train,
                    rmse_test,
                } => (format!("{rmse_train:?}"), format!("{rmse_test:?}")),
                CellOutcome::Overflow { .. } => (String::new(), String::new()),
            };
            let wall = r.wall_ms.map(|w| w.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.tf,
                r.n,
                r.af,
                r.m,
                r.k,
                r.seed,
                train,
                test,
                wall,
                r.status()
            )
            .unwrap();
        }
        out
    }

    /// Median test RMSE over seeds for every (tf, n, m, activation); `None` when every seed
    /// failed.
    pub fn median_test_rmse(&self) -> BTreeMap<(TargetFunction, usize, usize, Activation), Option<f64>> {
        let mut groups: BTreeMap<_, Vec<f64>> = BTreeMap::new();
        for r in &self.records {
            let entry = groups.entry((r.tf, r.n, r.m, r.af)).or_default();
            if let Some(v) = r.outcome.rmse_test() {
                entry.push(v);
            }
        }
        groups
            .into_iter()
            .map(|(key, values)| (key, median(values)))
            .collect()
    }

    /// Table of median test RMSE: one row per (tf, n, m), one column per activation.
    pub fn summary_grid(&self) -> String {
        let medians = self.median_test_rmse();
        let afs: Vec<Activation> = Activation::ALL
            .into_iter()
            .filter(|a| self.records.iter().any(|r| r.af == *a))
            .collect();
        let mut out = format!("{:<16}", "tf / n / m");
        for af in &afs {
            write!(out, "{:>11}", af.token()).unwrap();
        }
        out.push('\n');
        let mut rows: Vec<(TargetFunction, usize, usize)> =
            medians.keys().map(|(t, n, m, _)| (*t, *n, *m)).collect();
        rows.dedup();
        for (tf, n, m) in rows {
            write!(out, "{:<16}", format!("{tf} n={n} m={m}")).unwrap();
            for af in &afs {
                let cell = match medians.get(&(tf, n, m, *af)) {
                    Some(Some(v)) => format!("{v:.2e}"),
                    _ => "-".to_string(),
                };
                write!(out, "{cell:>11}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Median of a list (mean of the two middle values for even lengths).
pub fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len().is_multiple_of(2) {
        0.5 * (values[mid - 1] + values[mid])
    } else {
        values[mid]
    })
}
