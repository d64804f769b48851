//! `linksim`: evaluate, sweep and rank UAV shore-link/architecture
//! combinations for a maritime search-and-rescue scenario.
//!
//! Three subcommands cover the workflow:
//!
//! * `evaluate` runs the seeded Monte Carlo over every combination and
//!   writes the per-combo statistics (`results.csv`) and the raw per-run
//!   metrics (`runs.csv`).
//! * `sweep-users` repeats the evaluation over a list of user counts and
//!   writes the latency curves (`sweep.csv`).
//! * `rank` evaluates, then scores each combination with the weighted cost
//!   function (`rank.csv`, plus the evaluation tables it derived from).
//!
//! Every invocation writes a `manifest.json` naming the outputs, the config
//! digest and the fully resolved configuration. Exit codes: 1 config error,
//! 2 evaluation error, 3 I/O error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linksim_core::costrank::{rank, AttributeVector};
use linksim_core::evaluator::{evaluate_all, sweep_users, ComboEvaluation, EvalConfig};

use config::{load_file, resolve, FileConfig, FlagOverrides, Resolution};
use output::Manifest;

/// Error with a process exit code attached.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or config file (exit 1).
    Config(String),
    /// The evaluation itself failed (exit 2).
    Runtime(String),
    /// Filesystem or serialization failure (exit 3).
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Runtime(msg) => write!(f, "evaluation error: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "linksim", version, about = "UAV maritime network link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte Carlo evaluation and write results.csv + runs.csv.
    Evaluate(EvaluateArgs),
    /// Evaluate over a list of user counts and write sweep.csv.
    SweepUsers(SweepArgs),
    /// Evaluate, then rank combinations by the weighted cost function.
    Rank(RankArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; omit to run with the built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for the output files (created if missing).
    #[arg(long, env = "LINKSIM_OUT_DIR")]
    out_dir: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the number of Monte Carlo runs.
    #[arg(long)]
    runs: Option<u64>,
    /// Comma-separated technology:architecture pairs to evaluate
    /// (e.g. sub6-siso:flying-bs,fso:relay).
    #[arg(long, value_delimiter = ',')]
    combos: Option<Vec<String>>,
    /// Add the mmWave combinations to the default enumeration.
    #[arg(long)]
    include_mmwave: bool,
    /// Worker threads; 0 uses all cores. Results are identical either way.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated user counts for the sweep.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
    counts: Vec<usize>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cost weights as rate,latency,weight (normalized internally).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Evaluate(args) => &args.common,
        Command::SweepUsers(args) => &args.common,
        Command::Rank(args) => &args.common,
    };

    let file = match &common.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };
    let weights_flag = match &cli.command {
        Command::Rank(args) => match &args.weights {
            Some(w) if w.len() == 3 => Some([w[0], w[1], w[2]]),
            Some(w) => {
                return Err(CliError::Config(format!(
                    "--weights takes exactly three values, got {}",
                    w.len()
                )))
            }
            None => None,
        },
        _ => None,
    };
    let resolution = resolve(
        file,
        FlagOverrides {
            seed: common.seed,
            runs: common.runs,
            combos: common.combos.clone(),
            include_mmwave: common.include_mmwave,
            weights: weights_flag,
        },
    )?;

    std::fs::create_dir_all(&common.out_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", common.out_dir.display())))?;

    let execute = || match &cli.command {
        Command::Evaluate(_) => evaluate(&resolution, &common.out_dir),
        Command::SweepUsers(args) => sweep(&resolution, &common.out_dir, &args.counts),
        Command::Rank(_) => rank_combos(&resolution, &common.out_dir),
    };
    if common.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(common.threads)
            .build()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        pool.install(execute)
    } else {
        execute()
    }
}

fn run_evaluation(resolution: &Resolution) -> Result<Vec<ComboEvaluation>, CliError> {
    evaluate_all(&resolution.config.eval, &resolution.combo_ids)
        .map_err(|e| CliError::Runtime(e.to_string()))
}

fn finish(
    command: &str,
    resolution: &Resolution,
    out_dir: &std::path::Path,
    outputs: Vec<String>,
) -> Result<(), CliError> {
    let manifest = Manifest::new(
        command,
        &resolution.config,
        resolution.flag_overrides.clone(),
        outputs,
    );
    manifest.write(out_dir)?;
    println!(
        "{command}: wrote {} to {}",
        manifest.outputs.join(", "),
        out_dir.display()
    );
    println!("config digest: {}", manifest.config_digest);
    Ok(())
}

fn evaluate(resolution: &Resolution, out_dir: &std::path::Path) -> Result<(), CliError> {
    let evaluations = run_evaluation(resolution)?;
    output::write_results_csv(&out_dir.join("results.csv"), &evaluations)?;
    output::write_runs_csv(&out_dir.join("runs.csv"), &evaluations)?;
    finish(
        "evaluate",
        resolution,
        out_dir,
        vec![
            "results.csv".to_string(),
            "runs.csv".to_string(),
            "manifest.json".to_string(),
        ],
    )
}

fn sweep(
    resolution: &Resolution,
    out_dir: &std::path::Path,
    counts: &[usize],
) -> Result<(), CliError> {
    let n_spots = resolution.config.eval.scenario.n_user_spots;
    if counts.is_empty() {
        return Err(CliError::Config("--counts must name at least one user count".into()));
    }
    if let Some(bad) = counts.iter().find(|&&c| c < n_spots) {
        return Err(CliError::Config(format!(
            "--counts value {bad} is below the number of user spots ({n_spots})"
        )));
    }
    let series = sweep_users(&resolution.config.eval, &resolution.combo_ids, counts)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    output::write_sweep_csv(
        &out_dir.join("sweep.csv"),
        &series,
        resolution.config.eval.scenario.n_runs,
    )?;
    finish(
        "sweep-users",
        resolution,
        out_dir,
        vec!["sweep.csv".to_string(), "manifest.json".to_string()],
    )
}

fn rank_combos(resolution: &Resolution, out_dir: &std::path::Path) -> Result<(), CliError> {
    let evaluations = run_evaluation(resolution)?;
    let eval_cfg: &EvalConfig = &resolution.config.eval;
    let entries: Vec<_> = evaluations
        .iter()
        .map(|e| {
            (
                e.combo,
                AttributeVector {
                    data_rate_bps: e.stats.delivered_rate_bps.mean,
                    latency_s: e.stats.total_latency_s.mean,
                    weight_kg: eval_cfg
                        .architectures
                        .profile(e.combo.architecture)
                        .payload_weight_kg,
                },
            )
        })
        .collect();
    let ranked = rank(&entries, &resolution.config.weights)
        .map_err(|e| CliError::Runtime(e.to_string()))?;

    output::write_results_csv(&out_dir.join("results.csv"), &evaluations)?;
    output::write_runs_csv(&out_dir.join("runs.csv"), &evaluations)?;
    output::write_rank_csv(&out_dir.join("rank.csv"), &ranked)?;
    finish(
        "rank",
        resolution,
        out_dir,
        vec![
            "results.csv".to_string(),
            "runs.csv".to_string(),
            "rank.csv".to_string(),
            "manifest.json".to_string(),
        ],
    )
}
