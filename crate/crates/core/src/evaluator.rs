//! Monte Carlo engine over (technology, architecture) combinations.
//!
//! Each run samples a scenario, computes per-user two-ray SNR and access
//! rates, dimensions the shore-to-UAV link for the combination's technology,
//! applies the delivered-rate bottleneck and the latency composition, and
//! returns one metric tuple. Runs are independent work items; aggregation
//! always happens in run-index order so results are bit-identical no matter
//! how many workers execute them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::architecture::{
    access_rate_per_user, end_to_end, total_latency, ArchitectureKind, ArchitectureProfiles,
};
use crate::channel::{free_space_path_loss, snr_linear, RadioLinkGeometry, two_ray_path_loss};
use crate::error::{Error, Result};
use crate::linktech::{
    capacity_fso, capacity_massive_mimo, capacity_mmwave, capacity_sub6_mimo2x2,
    capacity_sub6_siso, BhTechnologySpec, FsoParams, MassiveMimoParams, TechnologyKind,
};
use crate::scenario::{sample_scenario, slant_distance, ScenarioConfig};

/// Offset added to `run_index` when a two-ray null forces one deterministic
/// resample. Large enough that resample streams never collide with regular
/// run streams.
pub const NULL_RESAMPLE_STRIDE: u64 = 1 << 32;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Parameters of every backhaul/fronthaul technology plus the carriers used
/// to dimension the shore-to-UAV link budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TechnologySet {
    /// Carrier for the three sub-6 GHz options (Hz).
    pub sub6_carrier_hz: f64,
    pub sub6_siso_bandwidth_hz: f64,
    pub sub6_mimo2x2_bandwidth_hz: f64,
    pub massive_mimo: MassiveMimoParams,
    pub fso: FsoParams,
    /// Carrier for the mmWave option (Hz).
    pub mmwave_carrier_hz: f64,
    pub mmwave_bandwidth_hz: f64,
}

impl Default for TechnologySet {
    fn default() -> Self {
        TechnologySet {
            sub6_carrier_hz: 2.6e9,
            sub6_siso_bandwidth_hz: 20e6,
            sub6_mimo2x2_bandwidth_hz: 20e6,
            massive_mimo: MassiveMimoParams::default(),
            fso: FsoParams::default(),
            mmwave_carrier_hz: 28e9,
            mmwave_bandwidth_hz: 400e6,
        }
    }
}

impl TechnologySet {
    /// The parameter bundle for one technology tag.
    pub fn spec_for(&self, kind: TechnologyKind) -> BhTechnologySpec {
        match kind {
            TechnologyKind::Sub6Siso => BhTechnologySpec::Sub6Siso {
                bandwidth_hz: self.sub6_siso_bandwidth_hz,
            },
            TechnologyKind::Sub6Mimo2x2 => BhTechnologySpec::Sub6Mimo2x2 {
                bandwidth_hz: self.sub6_mimo2x2_bandwidth_hz,
            },
            TechnologyKind::Sub6MassiveMimo => {
                BhTechnologySpec::Sub6MassiveMimo(self.massive_mimo)
            }
            TechnologyKind::Fso => BhTechnologySpec::Fso(self.fso),
            TechnologyKind::MmWave => BhTechnologySpec::MmWave {
                bandwidth_hz: self.mmwave_bandwidth_hz,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("sub6_carrier_hz", self.sub6_carrier_hz),
            ("mmwave_carrier_hz", self.mmwave_carrier_hz),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::config(format!("{name} must be positive")));
            }
        }
        for kind in TechnologyKind::ALL {
            self.spec_for(kind).validate()?;
        }
        Ok(())
    }
}

/// Everything one evaluation needs besides the combination list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub scenario: ScenarioConfig,
    pub technologies: TechnologySet,
    pub architectures: ArchitectureProfiles,
    /// Receiver noise figure applied on both hops (dB).
    pub noise_figure_db: f64,
    /// Packet size used for serialization latency (bits).
    pub packet_bits: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            scenario: ScenarioConfig::default(),
            technologies: TechnologySet::default(),
            architectures: ArchitectureProfiles::default(),
            noise_figure_db: crate::channel::DEFAULT_NOISE_FIGURE_DB,
            packet_bits: 12_000.0,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.technologies.validate()?;
        self.architectures.validate()?;
        if !self.noise_figure_db.is_finite() || self.noise_figure_db < 0.0 {
            return Err(Error::config("noise_figure_db must be non-negative"));
        }
        if !self.packet_bits.is_finite() || self.packet_bits < 0.0 {
            return Err(Error::config("packet_bits must be non-negative"));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Combinations
// ---------------------------------------------------------------------------

/// One (technology, architecture) pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComboId {
    pub technology: TechnologyKind,
    pub architecture: ArchitectureKind,
}

impl ComboId {
    pub fn new(technology: TechnologyKind, architecture: ArchitectureKind) -> Self {
        ComboId {
            technology,
            architecture,
        }
    }
}

impl std::fmt::Display for ComboId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.technology, self.architecture)
    }
}

impl std::str::FromStr for ComboId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tech, arch) = s.split_once(':').ok_or_else(|| {
            Error::config(format!(
                "combo `{s}` must be written technology:architecture"
            ))
        })?;
        Ok(ComboId::new(tech.parse()?, arch.parse()?))
    }
}

/// The default enumeration: four technologies by three architectures, with
/// mmWave added behind the flag.
pub fn default_combos(include_mmwave: bool) -> Vec<ComboId> {
    let mut combos = Vec::new();
    for tech in TechnologyKind::ALL {
        if tech == TechnologyKind::MmWave && !include_mmwave {
            continue;
        }
        for arch in ArchitectureKind::ALL {
            combos.push(ComboId::new(tech, arch));
        }
    }
    combos
}

// ---------------------------------------------------------------------------
// Metrics and statistics
// ---------------------------------------------------------------------------

/// Raw metrics of a single run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunMetrics {
    /// Shore-to-UAV link rate for the combination's technology (bit/s).
    pub bh_rate_bps: f64,
    /// Sum of per-user access rates (bit/s).
    pub aggregate_access_bps: f64,
    /// Rate deliverable end to end after the bottleneck (bit/s).
    pub delivered_rate_bps: f64,
    /// Mean per-user latency (s).
    pub total_latency_s: f64,
}

/// Mean, spread and confidence interval of one metric over the runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunStatistics {
    pub mean: f64,
    pub std_dev: f64,
    pub ci95_half_width: f64,
    pub n_samples: u64,
}

/// Two-pass statistics over a slice, in slice order. `std_dev` is the sample
/// standard deviation (zero for a single sample) and the confidence interval
/// is the usual normal approximation `1.96 std / sqrt(n)`.
pub fn run_statistics(values: &[f64]) -> RunStatistics {
    assert!(!values.is_empty(), "statistics need at least one sample");
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_dev = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    RunStatistics {
        mean,
        std_dev,
        ci95_half_width: 1.96 * std_dev / n.sqrt(),
        n_samples: values.len() as u64,
    }
}

/// Per-metric statistics for one combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComboStatistics {
    pub bh_rate_bps: RunStatistics,
    pub aggregate_access_bps: RunStatistics,
    pub delivered_rate_bps: RunStatistics,
    pub total_latency_s: RunStatistics,
}

impl ComboStatistics {
    pub fn from_runs(runs: &[RunMetrics]) -> Self {
        let collect = |f: fn(&RunMetrics) -> f64| runs.iter().map(f).collect::<Vec<_>>();
        ComboStatistics {
            bh_rate_bps: run_statistics(&collect(|r| r.bh_rate_bps)),
            aggregate_access_bps: run_statistics(&collect(|r| r.aggregate_access_bps)),
            delivered_rate_bps: run_statistics(&collect(|r| r.delivered_rate_bps)),
            total_latency_s: run_statistics(&collect(|r| r.total_latency_s)),
        }
    }
}

/// All runs and their aggregate statistics for one combination.
#[derive(Debug, Clone, PartialEq)]
pub struct ComboEvaluation {
    pub combo: ComboId,
    pub runs: Vec<RunMetrics>,
    pub stats: ComboStatistics,
}

/// One point of a user-count sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub n_users: usize,
    pub latency: RunStatistics,
}

/// Latency-versus-user-count series for one combination.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub combo: ComboId,
    pub points: Vec<SweepPoint>,
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

/// Shore-to-UAV downlink rate for one technology at the configured distance.
/// Radio options see a free-space line-of-sight budget at their carrier;
/// the optical option is a pure photon budget over the same distance.
pub fn bh_link_rate(cfg: &EvalConfig, technology: TechnologyKind) -> Result<f64> {
    let tech = &cfg.technologies;
    let distance = cfg.scenario.bh_distance_m;
    let eirp = cfg.scenario.ground_eirp_dbm;
    let radio_snr = |carrier_hz: f64, bandwidth_hz: f64| -> Result<f64> {
        let loss = free_space_path_loss(carrier_hz, distance)?;
        snr_linear(eirp, loss, bandwidth_hz, cfg.noise_figure_db)
    };
    match tech.spec_for(technology) {
        BhTechnologySpec::Sub6Siso { bandwidth_hz } => {
            capacity_sub6_siso(bandwidth_hz, radio_snr(tech.sub6_carrier_hz, bandwidth_hz)?)
        }
        BhTechnologySpec::Sub6Mimo2x2 { bandwidth_hz } => {
            capacity_sub6_mimo2x2(bandwidth_hz, radio_snr(tech.sub6_carrier_hz, bandwidth_hz)?)
        }
        BhTechnologySpec::Sub6MassiveMimo(params) => {
            let snr = radio_snr(tech.sub6_carrier_hz, params.bandwidth_hz)?;
            capacity_massive_mimo(&params, snr)
        }
        BhTechnologySpec::Fso(params) => capacity_fso(&params, distance),
        BhTechnologySpec::MmWave { bandwidth_hz } => {
            capacity_mmwave(bandwidth_hz, radio_snr(tech.mmwave_carrier_hz, bandwidth_hz)?)
        }
    }
}

fn run_once(cfg: &EvalConfig, combo: ComboId, sample_index: u64) -> Result<RunMetrics> {
    let sc = &cfg.scenario;
    let instance = sample_scenario(sc, sample_index)?;
    let profile = cfg.architectures.profile(combo.architecture);
    let bh_rate = bh_link_rate(cfg, combo.technology)?;

    let n_users = sc.n_users;
    let mut aggregate_access = 0.0;
    let mut latency_sum = 0.0;
    for user in &instance.users {
        let slant = slant_distance(instance.uav_position_m, [user.x_m, user.y_m], sc.user_height_m);
        let geom = RadioLinkGeometry::new(sc.access_freq_hz, slant, sc.uav_height_m, sc.user_height_m)?;
        let loss = two_ray_path_loss(&geom)?;
        let snr = snr_linear(sc.uav_eirp_dbm, loss, sc.access_bandwidth_hz, cfg.noise_figure_db)?;
        aggregate_access +=
            access_rate_per_user(combo.architecture, sc.access_bandwidth_hz, n_users, snr)?;
        // A packet serializes at the rate of the slots the UAV actually
        // transmits in; the relay's half time-share is a throughput effect
        // and is already carried by the access and delivered rates.
        let slot_rate =
            access_rate_per_user(ArchitectureKind::FlyingRrh, sc.access_bandwidth_hz, n_users, snr)?;
        latency_sum += total_latency(
            profile,
            cfg.packet_bits,
            slot_rate,
            slant,
            sc.bh_distance_m,
            bh_rate,
        )?;
    }
    let mean_latency = latency_sum / n_users as f64;
    let result = end_to_end(profile, n_users, aggregate_access, bh_rate, mean_latency)?;

    let bh_cap = match combo.architecture {
        ArchitectureKind::Relay => 0.5 * bh_rate,
        _ => bh_rate,
    };
    assert!(
        result.delivered_rate_bps <= bh_cap && result.delivered_rate_bps <= aggregate_access,
        "delivered rate exceeds a bottleneck cap"
    );

    Ok(RunMetrics {
        bh_rate_bps: bh_rate,
        aggregate_access_bps: aggregate_access,
        delivered_rate_bps: result.delivered_rate_bps,
        total_latency_s: result.total_latency_s,
    })
}

/// Evaluate one combination on one run.
///
/// If the sampled geometry lands a user on an exact two-ray null, the run is
/// resampled once at `run_index + NULL_RESAMPLE_STRIDE`; a second null aborts
/// the run with the combo and run identified.
pub fn evaluate_run(cfg: &EvalConfig, combo: ComboId, run_index: u64) -> Result<RunMetrics> {
    let wrap = |source: Error| Error::RunAborted {
        combo: combo.to_string(),
        run_index,
        source: Box::new(source),
    };
    match run_once(cfg, combo, run_index) {
        Err(Error::TwoRayNull { .. }) => {
            run_once(cfg, combo, run_index + NULL_RESAMPLE_STRIDE).map_err(wrap)
        }
        Err(other) => Err(wrap(other)),
        ok => ok,
    }
}

/// Evaluate every combination over `cfg.scenario.n_runs` seeded runs.
///
/// Runs execute in parallel; metrics are collected and aggregated in
/// run-index order, so the output is deterministic for a fixed config
/// regardless of worker count. Duplicate combos yield duplicate entries.
pub fn evaluate_all(cfg: &EvalConfig, combos: &[ComboId]) -> Result<Vec<ComboEvaluation>> {
    if combos.is_empty() {
        return Err(Error::domain("combo list must not be empty"));
    }
    cfg.validate()?;
    combos
        .iter()
        .map(|&combo| {
            let runs: Result<Vec<RunMetrics>> = (0..cfg.scenario.n_runs)
                .into_par_iter()
                .map(|run_index| evaluate_run(cfg, combo, run_index))
                .collect();
            let runs = runs?;
            let stats = ComboStatistics::from_runs(&runs);
            Ok(ComboEvaluation { combo, runs, stats })
        })
        .collect()
}

/// Latency curves over a list of user counts (one `evaluate_all` per count).
pub fn sweep_users(
    cfg: &EvalConfig,
    combos: &[ComboId],
    user_counts: &[usize],
) -> Result<Vec<SweepSeries>> {
    if user_counts.is_empty() {
        return Err(Error::domain("user_counts must not be empty"));
    }
    for &count in user_counts {
        if count < cfg.scenario.n_user_spots {
            return Err(Error::domain(format!(
                "user count {count} is below the number of user spots {}",
                cfg.scenario.n_user_spots
            )));
        }
    }
    let mut series: Vec<SweepSeries> = combos
        .iter()
        .map(|&combo| SweepSeries {
            combo,
            points: Vec::with_capacity(user_counts.len()),
        })
        .collect();
    for &count in user_counts {
        let mut point_cfg = cfg.clone();
        point_cfg.scenario.n_users = count;
        let evaluations = evaluate_all(&point_cfg, combos)?;
        for (slot, evaluation) in series.iter_mut().zip(evaluations) {
            slot.points.push(SweepPoint {
                n_users: count,
                latency: evaluation.stats.total_latency_s,
            });
        }
    }
    Ok(series)
}
