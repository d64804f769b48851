//! CSV tables and the run manifest.
//!
//! The CSV schemas are the stable public contract of the tool: column names
//! are fixed, floats are printed with 9 significant digits in scientific
//! notation and a `.` decimal separator, so re-running an identical config
//! reproduces every byte. The manifest names every file written, the schema
//! version and the resolved configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use linksim_core::costrank::RankedCombo;
use linksim_core::evaluator::{ComboEvaluation, RunStatistics, SweepSeries};
use linksim_core::scenario::RNG_IDENTITY;

use crate::config::{config_digest, ResolvedConfig};
use crate::CliError;

pub const CSV_SCHEMA_VERSION: u32 = 1;

pub const RESULTS_COLUMNS: [&str; 15] = [
    "technology",
    "architecture",
    "n_runs",
    "bh_rate_bps_mean",
    "bh_rate_bps_std",
    "bh_rate_bps_ci95",
    "aggregate_access_bps_mean",
    "aggregate_access_bps_std",
    "aggregate_access_bps_ci95",
    "delivered_rate_bps_mean",
    "delivered_rate_bps_std",
    "delivered_rate_bps_ci95",
    "total_latency_s_mean",
    "total_latency_s_std",
    "total_latency_s_ci95",
];

pub const RUNS_COLUMNS: [&str; 7] = [
    "technology",
    "architecture",
    "run_index",
    "bh_rate_bps",
    "aggregate_access_bps",
    "delivered_rate_bps",
    "total_latency_s",
];

pub const RANK_COLUMNS: [&str; 6] = [
    "technology",
    "architecture",
    "cost",
    "normalized_rate",
    "normalized_latency",
    "normalized_weight",
];

pub const SWEEP_COLUMNS: [&str; 7] = [
    "technology",
    "architecture",
    "n_users",
    "total_latency_s_mean",
    "total_latency_s_std",
    "total_latency_s_ci95",
    "n_runs",
];

/// Fixed float formatting: 9 significant digits, locale-independent.
pub fn fmt_float(value: f64) -> String {
    format!("{value:.8e}")
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn open_writer(path: &Path) -> Result<csv::Writer<std::fs::File>, CliError> {
    csv::Writer::from_path(path).map_err(|e| io_err(path, e))
}

fn stat_fields(stats: &RunStatistics) -> [String; 3] {
    [
        fmt_float(stats.mean),
        fmt_float(stats.std_dev),
        fmt_float(stats.ci95_half_width),
    ]
}

pub fn write_results_csv(path: &Path, evaluations: &[ComboEvaluation]) -> Result<(), CliError> {
    let mut writer = open_writer(path)?;
    writer.write_record(RESULTS_COLUMNS).map_err(|e| io_err(path, e))?;
    for eval in evaluations {
        let mut record = vec![
            eval.combo.technology.to_string(),
            eval.combo.architecture.to_string(),
            eval.runs.len().to_string(),
        ];
        for stats in [
            &eval.stats.bh_rate_bps,
            &eval.stats.aggregate_access_bps,
            &eval.stats.delivered_rate_bps,
            &eval.stats.total_latency_s,
        ] {
            record.extend(stat_fields(stats));
        }
        writer.write_record(&record).map_err(|e| io_err(path, e))?;
    }
    writer.flush().map_err(|e| io_err(path, e))
}

pub fn write_runs_csv(path: &Path, evaluations: &[ComboEvaluation]) -> Result<(), CliError> {
    let mut writer = open_writer(path)?;
    writer.write_record(RUNS_COLUMNS).map_err(|e| io_err(path, e))?;
    for eval in evaluations {
        for (run_index, run) in eval.runs.iter().enumerate() {
            writer
                .write_record([
                    eval.combo.technology.to_string(),
                    eval.combo.architecture.to_string(),
                    run_index.to_string(),
                    fmt_float(run.bh_rate_bps),
                    fmt_float(run.aggregate_access_bps),
                    fmt_float(run.delivered_rate_bps),
                    fmt_float(run.total_latency_s),
                ])
                .map_err(|e| io_err(path, e))?;
        }
    }
    writer.flush().map_err(|e| io_err(path, e))
}

pub fn write_rank_csv(path: &Path, ranked: &[RankedCombo]) -> Result<(), CliError> {
    let mut writer = open_writer(path)?;
    writer.write_record(RANK_COLUMNS).map_err(|e| io_err(path, e))?;
    for entry in ranked {
        writer
            .write_record([
                entry.combo.technology.to_string(),
                entry.combo.architecture.to_string(),
                fmt_float(entry.cost),
                fmt_float(entry.normalized[0]),
                fmt_float(entry.normalized[1]),
                fmt_float(entry.normalized[2]),
            ])
            .map_err(|e| io_err(path, e))?;
    }
    writer.flush().map_err(|e| io_err(path, e))
}

pub fn write_sweep_csv(
    path: &Path,
    series: &[SweepSeries],
    n_runs: u64,
) -> Result<(), CliError> {
    let mut writer = open_writer(path)?;
    writer.write_record(SWEEP_COLUMNS).map_err(|e| io_err(path, e))?;
    for s in series {
        for point in &s.points {
            writer
                .write_record([
                    s.combo.technology.to_string(),
                    s.combo.architecture.to_string(),
                    point.n_users.to_string(),
                    fmt_float(point.latency.mean),
                    fmt_float(point.latency.std_dev),
                    fmt_float(point.latency.ci95_half_width),
                    n_runs.to_string(),
                ])
                .map_err(|e| io_err(path, e))?;
        }
    }
    writer.flush().map_err(|e| io_err(path, e))
}

/// Metadata for one invocation: enough to reproduce the run and to check
/// that nothing about the configuration drifted.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool_version: String,
    pub command: String,
    pub config_digest: String,
    pub seed: u64,
    pub n_runs: u64,
    pub rng_identity: String,
    pub timestamp: String,
    pub combos: Vec<String>,
    pub flag_overrides: Vec<String>,
    pub outputs: Vec<String>,
    pub csv_schema_version: u32,
    pub columns: BTreeMap<String, Vec<String>>,
    pub resolved_config: ResolvedConfig,
}

impl Manifest {
    pub fn new(
        command: &str,
        config: &ResolvedConfig,
        flag_overrides: Vec<String>,
        outputs: Vec<String>,
    ) -> Self {
        let columns: BTreeMap<String, Vec<String>> = outputs
            .iter()
            .filter_map(|name| {
                let cols: &[&str] = match name.as_str() {
                    "results.csv" => &RESULTS_COLUMNS,
                    "runs.csv" => &RUNS_COLUMNS,
                    "rank.csv" => &RANK_COLUMNS,
                    "sweep.csv" => &SWEEP_COLUMNS,
                    _ => return None,
                };
                Some((name.clone(), cols.iter().map(|c| c.to_string()).collect()))
            })
            .collect();
        Manifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config_digest: config_digest(config),
            seed: config.eval.scenario.rng_seed,
            n_runs: config.eval.scenario.n_runs,
            rng_identity: RNG_IDENTITY.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            combos: config.combos.clone(),
            flag_overrides,
            outputs,
            csv_schema_version: CSV_SCHEMA_VERSION,
            columns,
            resolved_config: config.clone(),
        }
    }

    pub fn write(&self, out_dir: &Path) -> Result<PathBuf, CliError> {
        let path = out_dir.join("manifest.json");
        let file = std::fs::File::create(&path).map_err(|e| io_err(&path, e))?;
        serde_json::to_writer_pretty(&file, self).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }
}
