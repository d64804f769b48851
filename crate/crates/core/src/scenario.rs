//! Maritime scenario geometry and seeded Monte Carlo sampling.
//!
//! A square operations area holds two square user spots: one for the people
//! in distress, one for the rescue team. The UAV hovers over the midpoint of
//! the spot centers. Sampling is keyed by `(rng_seed, run_index)` so runs can
//! execute in any order, serially or in parallel, with identical output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator identity recorded in run metadata: changing it silently would
/// invalidate every golden output.
pub const RNG_IDENTITY: &str = "chacha8(seed_from_u64(rng_seed); stream = run_index)";

/// Full geometric and radio configuration of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Side of the square operations area (m).
    pub area_side_m: f64,
    /// Side of each square user spot (m).
    pub user_area_side_m: f64,
    /// Number of user spots; users occupy the first two.
    pub n_user_spots: usize,
    /// Total UE count.
    pub n_users: usize,
    /// Fraction of users that are rescuers, within [1/3, 2/3].
    pub rescuer_ratio: f64,
    /// UAV hover height (m).
    pub uav_height_m: f64,
    /// User antenna height above the sea (m).
    pub user_height_m: f64,
    /// Fixed shore-to-UAV backhaul/fronthaul distance (m).
    pub bh_distance_m: f64,
    /// Access-link carrier frequency (Hz).
    pub access_freq_hz: f64,
    /// Access-link bandwidth (Hz).
    pub access_bandwidth_hz: f64,
    /// Shore station EIRP (dBm).
    pub ground_eirp_dbm: f64,
    /// UAV EIRP on the access link (dBm).
    pub uav_eirp_dbm: f64,
    /// Number of independent Monte Carlo runs.
    pub n_runs: u64,
    /// Master seed for the run-keyed substreams.
    pub rng_seed: u64,
    /// Optional fixed UAV ground position; `None` hovers over the midpoint
    /// of the two spot centers.
    pub uav_position_m: Option<[f64; 2]>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            area_side_m: 1000.0,
            user_area_side_m: 100.0,
            n_user_spots: 2,
            n_users: 6,
            rescuer_ratio: 1.0 / 3.0,
            uav_height_m: 200.0,
            user_height_m: 2.0,
            bh_distance_m: 50_000.0,
            access_freq_hz: 2.6e9,
            access_bandwidth_hz: 20e6,
            ground_eirp_dbm: 43.0,
            uav_eirp_dbm: 20.0,
            n_runs: 100,
            rng_seed: 1,
            uav_position_m: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("area_side_m", self.area_side_m),
            ("user_area_side_m", self.user_area_side_m),
            ("uav_height_m", self.uav_height_m),
            ("user_height_m", self.user_height_m),
            ("bh_distance_m", self.bh_distance_m),
            ("access_freq_hz", self.access_freq_hz),
            ("access_bandwidth_hz", self.access_bandwidth_hz),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::config(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if self.user_area_side_m > self.area_side_m {
            return Err(Error::config(format!(
                "user spots of side {} m cannot fit inside an area of side {} m",
                self.user_area_side_m, self.area_side_m
            )));
        }
        if self.n_user_spots == 0 {
            return Err(Error::config("n_user_spots must be at least 1"));
        }
        if self.n_users < self.n_user_spots {
            return Err(Error::config(format!(
                "n_users = {} must be at least n_user_spots = {}",
                self.n_users, self.n_user_spots
            )));
        }
        if !(self.rescuer_ratio >= 1.0 / 3.0 && self.rescuer_ratio <= 2.0 / 3.0) {
            return Err(Error::config(format!(
                "rescuer_ratio must lie in [1/3, 2/3], got {}",
                self.rescuer_ratio
            )));
        }
        if !self.ground_eirp_dbm.is_finite() || !self.uav_eirp_dbm.is_finite() {
            return Err(Error::config("EIRP values must be finite"));
        }
        if self.n_runs == 0 {
            return Err(Error::config("n_runs must be at least 1"));
        }
        if let Some([x, y]) = self.uav_position_m {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::config("uav_position_m must be finite"));
            }
        }
        Ok(())
    }

    pub fn uav_height_above_user_m(&self) -> f64 {
        self.uav_height_m - self.user_height_m
    }
}

/// Which cluster a user belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UserKind {
    Rescuee,
    Rescuer,
}

/// One sampled user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserPlacement {
    pub x_m: f64,
    pub y_m: f64,
    pub kind: UserKind,
}

/// One Monte Carlo draw of the scenario geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInstance {
    pub spot_centers: Vec<[f64; 2]>,
    pub users: Vec<UserPlacement>,
    /// UAV position, z up (m).
    pub uav_position_m: [f64; 3],
}

/// Number of rescuers among `n_users` at the given ratio, rounded half up.
pub fn rescuer_count(n_users: usize, rescuer_ratio: f64) -> usize {
    (n_users as f64 * rescuer_ratio + 0.5).floor() as usize
}

/// Kind of the user at `index`, independent of the total user count.
///
/// The rounding staircase guarantees that the first `n` users always contain
/// exactly `rescuer_count(n, ratio)` rescuers, so growing the population
/// extends a sampled instance instead of reshuffling it. Sweeps over user
/// counts then see nested populations, which keeps latency curves monotone
/// run by run.
fn user_kind_at(index: usize, rescuer_ratio: f64) -> UserKind {
    if rescuer_count(index + 1, rescuer_ratio) > rescuer_count(index, rescuer_ratio) {
        UserKind::Rescuer
    } else {
        UserKind::Rescuee
    }
}

/// Draw the scenario for `run_index`. Deterministic in
/// `(cfg.rng_seed, run_index)`; see [`RNG_IDENTITY`].
pub fn sample_scenario(cfg: &ScenarioConfig, run_index: u64) -> Result<ScenarioInstance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    rng.set_stream(run_index);

    let half_spot = cfg.user_area_side_m / 2.0;
    let lo = half_spot;
    let hi = cfg.area_side_m - half_spot;
    let mut spot_centers = Vec::with_capacity(cfg.n_user_spots);
    for _ in 0..cfg.n_user_spots {
        let center = if lo < hi {
            [rng.random_range(lo..hi), rng.random_range(lo..hi)]
        } else {
            // Degenerate geometry: the spot fills the area, no freedom left.
            [lo, lo]
        };
        spot_centers.push(center);
    }

    // Rescuees occupy the first spot, rescuers the second (or the same one
    // if only a single spot is configured).
    let rescuee_spot = spot_centers[0];
    let rescuer_spot = spot_centers[1.min(cfg.n_user_spots - 1)];

    let mut users = Vec::with_capacity(cfg.n_users);
    for i in 0..cfg.n_users {
        let kind = user_kind_at(i, cfg.rescuer_ratio);
        let spot = match kind {
            UserKind::Rescuee => rescuee_spot,
            UserKind::Rescuer => rescuer_spot,
        };
        users.push(UserPlacement {
            x_m: spot[0] + rng.random_range(-half_spot..half_spot),
            y_m: spot[1] + rng.random_range(-half_spot..half_spot),
            kind,
        });
    }

    let ground = cfg.uav_position_m.unwrap_or([
        (rescuee_spot[0] + rescuer_spot[0]) / 2.0,
        (rescuee_spot[1] + rescuer_spot[1]) / 2.0,
    ]);

    Ok(ScenarioInstance {
        spot_centers,
        users,
        uav_position_m: [ground[0], ground[1], cfg.uav_height_m],
    })
}

/// Euclidean 3-D distance from the UAV to a user at `user_height_m`.
pub fn slant_distance(uav_position_m: [f64; 3], user_xy_m: [f64; 2], user_height_m: f64) -> f64 {
    let dx = uav_position_m[0] - user_xy_m[0];
    let dy = uav_position_m[1] - user_xy_m[1];
    let dz = uav_position_m[2] - user_height_m;
    (dx * dx + dy * dy + dz * dz).sqrt()
}
