//! Config file loading and flag resolution.
//!
//! The config is a JSON document in which every key is optional and falls
//! back to the built-in default; unknown keys are hard errors so typos
//! cannot silently revert a value to its default. Precedence is
//! flags > file > defaults, and the fully resolved configuration is echoed
//! into the run manifest together with the list of flag overrides applied.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use linksim_core::costrank::CostWeights;
use linksim_core::evaluator::{default_combos, ComboId, EvalConfig};

use crate::CliError;

// ---------------------------------------------------------------------------
// File schema (all keys optional)
// ---------------------------------------------------------------------------

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    scenario: Option<ScenarioSection>,
    technologies: Option<TechnologiesSection>,
    architectures: Option<ArchitecturesSection>,
    noise_figure_db: Option<f64>,
    packet_bits: Option<f64>,
    include_mmwave: Option<bool>,
    /// Cost weights as [rate, latency, weight].
    weights: Option<[f64; 3]>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSection {
    area_side_m: Option<f64>,
    user_area_side_m: Option<f64>,
    n_user_spots: Option<usize>,
    n_users: Option<usize>,
    rescuer_ratio: Option<f64>,
    uav_height_m: Option<f64>,
    user_height_m: Option<f64>,
    bh_distance_m: Option<f64>,
    access_freq_hz: Option<f64>,
    access_bandwidth_hz: Option<f64>,
    ground_eirp_dbm: Option<f64>,
    uav_eirp_dbm: Option<f64>,
    n_runs: Option<u64>,
    rng_seed: Option<u64>,
    uav_position_m: Option<[f64; 2]>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TechnologiesSection {
    sub6_carrier_hz: Option<f64>,
    sub6_siso_bandwidth_hz: Option<f64>,
    sub6_mimo2x2_bandwidth_hz: Option<f64>,
    massive_mimo: Option<MassiveMimoSection>,
    fso: Option<FsoSection>,
    mmwave_carrier_hz: Option<f64>,
    mmwave_bandwidth_hz: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MassiveMimoSection {
    bandwidth_hz: Option<f64>,
    m_antennas: Option<u32>,
    k_streams: Option<u32>,
    coherence_symbols: Option<f64>,
    csi_quality: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FsoSection {
    tx_power_w: Option<f64>,
    eta_t: Option<f64>,
    eta_r: Option<f64>,
    pol_loss_db: Option<f64>,
    atm_loss_db_per_km: Option<f64>,
    wavelength_m: Option<f64>,
    rx_aperture_area_m2: Option<f64>,
    beam_divergence_rad: Option<f64>,
    photons_per_bit: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArchitecturesSection {
    relay: Option<ProfileSection>,
    flying_bs: Option<ProfileSection>,
    flying_rrh: Option<ProfileSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileSection {
    processing_latency_s: Option<f64>,
    payload_weight_kg: Option<f64>,
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

/// Flag-level overrides handed in by the CLI layer.
#[derive(Debug, Default)]
pub struct FlagOverrides {
    pub seed: Option<u64>,
    pub runs: Option<u64>,
    pub combos: Option<Vec<String>>,
    pub include_mmwave: bool,
    pub weights: Option<[f64; 3]>,
}

/// The fully resolved configuration; serialized verbatim into the manifest
/// and hashed for the config digest.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    #[serde(flatten)]
    pub eval: EvalConfig,
    pub weights: CostWeights,
    pub include_mmwave: bool,
    pub combos: Vec<String>,
}

#[derive(Debug)]
pub struct Resolution {
    pub config: ResolvedConfig,
    pub combo_ids: Vec<ComboId>,
    pub flag_overrides: Vec<String>,
}

pub fn load_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut deserializer = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut deserializer)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn apply<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

/// Merge defaults, the optional file and the flags into one validated
/// configuration.
pub fn resolve(file: FileConfig, flags: FlagOverrides) -> Result<Resolution, CliError> {
    let mut eval = EvalConfig::default();
    let mut include_mmwave = false;
    let mut weights_raw = [1.0, 1.0, 1.0];

    if let Some(s) = file.scenario {
        let sc = &mut eval.scenario;
        apply(&mut sc.area_side_m, s.area_side_m);
        apply(&mut sc.user_area_side_m, s.user_area_side_m);
        apply(&mut sc.n_user_spots, s.n_user_spots);
        apply(&mut sc.n_users, s.n_users);
        apply(&mut sc.rescuer_ratio, s.rescuer_ratio);
        apply(&mut sc.uav_height_m, s.uav_height_m);
        apply(&mut sc.user_height_m, s.user_height_m);
        apply(&mut sc.bh_distance_m, s.bh_distance_m);
        apply(&mut sc.access_freq_hz, s.access_freq_hz);
        apply(&mut sc.access_bandwidth_hz, s.access_bandwidth_hz);
        apply(&mut sc.ground_eirp_dbm, s.ground_eirp_dbm);
        apply(&mut sc.uav_eirp_dbm, s.uav_eirp_dbm);
        apply(&mut sc.n_runs, s.n_runs);
        apply(&mut sc.rng_seed, s.rng_seed);
        if s.uav_position_m.is_some() {
            sc.uav_position_m = s.uav_position_m;
        }
    }
    if let Some(t) = file.technologies {
        let tech = &mut eval.technologies;
        apply(&mut tech.sub6_carrier_hz, t.sub6_carrier_hz);
        apply(&mut tech.sub6_siso_bandwidth_hz, t.sub6_siso_bandwidth_hz);
        apply(&mut tech.sub6_mimo2x2_bandwidth_hz, t.sub6_mimo2x2_bandwidth_hz);
        apply(&mut tech.mmwave_carrier_hz, t.mmwave_carrier_hz);
        apply(&mut tech.mmwave_bandwidth_hz, t.mmwave_bandwidth_hz);
        if let Some(mm) = t.massive_mimo {
            let p = &mut tech.massive_mimo;
            apply(&mut p.bandwidth_hz, mm.bandwidth_hz);
            apply(&mut p.m_antennas, mm.m_antennas);
            apply(&mut p.k_streams, mm.k_streams);
            apply(&mut p.coherence_symbols, mm.coherence_symbols);
            apply(&mut p.csi_quality, mm.csi_quality);
        }
        if let Some(fso) = t.fso {
            let p = &mut tech.fso;
            apply(&mut p.tx_power_w, fso.tx_power_w);
            apply(&mut p.eta_t, fso.eta_t);
            apply(&mut p.eta_r, fso.eta_r);
            apply(&mut p.pol_loss_db, fso.pol_loss_db);
            apply(&mut p.atm_loss_db_per_km, fso.atm_loss_db_per_km);
            apply(&mut p.wavelength_m, fso.wavelength_m);
            apply(&mut p.rx_aperture_area_m2, fso.rx_aperture_area_m2);
            apply(&mut p.beam_divergence_rad, fso.beam_divergence_rad);
            apply(&mut p.photons_per_bit, fso.photons_per_bit);
        }
    }
    if let Some(a) = file.architectures {
        for (section, profile) in [
            (a.relay, &mut eval.architectures.relay),
            (a.flying_bs, &mut eval.architectures.flying_bs),
            (a.flying_rrh, &mut eval.architectures.flying_rrh),
        ] {
            if let Some(p) = section {
                apply(&mut profile.processing_latency_s, p.processing_latency_s);
                apply(&mut profile.payload_weight_kg, p.payload_weight_kg);
            }
        }
    }
    apply(&mut eval.noise_figure_db, file.noise_figure_db);
    apply(&mut eval.packet_bits, file.packet_bits);
    apply(&mut include_mmwave, file.include_mmwave);
    apply(&mut weights_raw, file.weights);

    // Flags win over the file.
    let mut flag_overrides = Vec::new();
    if let Some(seed) = flags.seed {
        eval.scenario.rng_seed = seed;
        flag_overrides.push(format!("seed={seed}"));
    }
    if let Some(runs) = flags.runs {
        eval.scenario.n_runs = runs;
        flag_overrides.push(format!("runs={runs}"));
    }
    if flags.include_mmwave {
        include_mmwave = true;
        flag_overrides.push("include-mmwave".to_string());
    }
    if let Some(w) = flags.weights {
        weights_raw = w;
        flag_overrides.push(format!("weights={},{},{}", w[0], w[1], w[2]));
    }
    let combo_ids = match &flags.combos {
        Some(list) => {
            flag_overrides.push(format!("combos={}", list.join(",")));
            list.iter()
                .map(|s| s.parse::<ComboId>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Config(e.to_string()))?
        }
        None => default_combos(include_mmwave),
    };
    if combo_ids.is_empty() {
        return Err(CliError::Config("combo list is empty".to_string()));
    }

    eval.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let weights = CostWeights::new(weights_raw[0], weights_raw[1], weights_raw[2])
        .map_err(|e| CliError::Config(e.to_string()))?;

    Ok(Resolution {
        config: ResolvedConfig {
            eval,
            weights,
            include_mmwave,
            combos: combo_ids.iter().map(|c| c.to_string()).collect(),
        },
        combo_ids,
        flag_overrides,
    })
}

/// Content hash of the resolved config; stable for identical resolutions.
pub fn config_digest(config: &ResolvedConfig) -> String {
    let canonical = serde_json::to_string(config).expect("resolved config serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{}", hex::encode(hasher.finalize()))
}
