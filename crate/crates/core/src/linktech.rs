//! Capacity models for the candidate backhaul/fronthaul technologies.
//!
//! Five shore-to-UAV options are covered: sub-6 GHz SISO, 2x2 MIMO (taken as
//! an idealized 2x multiplexing gain), massive MIMO with pilot overhead and
//! CSI quality, free-space optics as a photon budget, and a wide-band
//! mmWave carrier. Each calculator maps technology parameters and a link
//! state to a downlink capacity in bit/s.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::channel::SPEED_OF_LIGHT_M_S;
use crate::error::{Error, Result};

/// Planck constant (J*s), used for the FSO photon energy.
pub const PLANCK_CONSTANT_J_S: f64 = 6.626_070_15e-34;

// ---------------------------------------------------------------------------
// Technology parameter types
// ---------------------------------------------------------------------------

/// Tag identifying one of the five technologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TechnologyKind {
    Sub6Siso,
    Sub6Mimo2x2,
    Sub6MassiveMimo,
    Fso,
    MmWave,
}

impl TechnologyKind {
    pub const ALL: [TechnologyKind; 5] = [
        TechnologyKind::Sub6Siso,
        TechnologyKind::Sub6Mimo2x2,
        TechnologyKind::Sub6MassiveMimo,
        TechnologyKind::Fso,
        TechnologyKind::MmWave,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TechnologyKind::Sub6Siso => "sub6-siso",
            TechnologyKind::Sub6Mimo2x2 => "sub6-mimo2x2",
            TechnologyKind::Sub6MassiveMimo => "sub6-massive-mimo",
            TechnologyKind::Fso => "fso",
            TechnologyKind::MmWave => "mmwave",
        }
    }
}

impl std::fmt::Display for TechnologyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TechnologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TechnologyKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown technology `{s}`")))
    }
}

/// Massive MIMO array and pilot parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassiveMimoParams {
    /// Channel bandwidth (Hz).
    pub bandwidth_hz: f64,
    /// Transmit antennas M.
    pub m_antennas: u32,
    /// Spatially multiplexed streams K.
    pub k_streams: u32,
    /// Coherence interval length in symbols; K/tau is the pilot overhead.
    pub coherence_symbols: f64,
    /// CSI quality in (0, 1], 1 = perfect estimation.
    pub csi_quality: f64,
}

impl Default for MassiveMimoParams {
    fn default() -> Self {
        MassiveMimoParams {
            bandwidth_hz: 20e6,
            m_antennas: 64,
            k_streams: 1,
            coherence_symbols: 200.0,
            csi_quality: 1.0,
        }
    }
}

impl MassiveMimoParams {
    pub fn validate(&self) -> Result<()> {
        if !self.bandwidth_hz.is_finite() || self.bandwidth_hz <= 0.0 {
            return Err(Error::domain("massive MIMO bandwidth must be positive"));
        }
        if self.k_streams < 1 || self.m_antennas < self.k_streams {
            return Err(Error::domain(format!(
                "massive MIMO requires M >= K >= 1, got M={} K={}",
                self.m_antennas, self.k_streams
            )));
        }
        if !self.coherence_symbols.is_finite()
            || self.coherence_symbols <= self.k_streams as f64
        {
            return Err(Error::domain(format!(
                "coherence interval tau = {} must exceed K = {} or the pilot \
                 overhead leaves no payload symbols",
                self.coherence_symbols, self.k_streams
            )));
        }
        if !(self.csi_quality > 0.0 && self.csi_quality <= 1.0) {
            return Err(Error::domain("csi_quality must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Free-space optics transmitter, path and receiver parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsoParams {
    /// Optical transmit power (W).
    pub tx_power_w: f64,
    /// Transmitter optics efficiency in (0, 1].
    pub eta_t: f64,
    /// Receiver optics efficiency in (0, 1].
    pub eta_r: f64,
    /// Aggregate polarization/pointing/vibration loss (dB).
    pub pol_loss_db: f64,
    /// Clear-air atmospheric extinction (dB/km).
    pub atm_loss_db_per_km: f64,
    /// Laser wavelength (m).
    pub wavelength_m: f64,
    /// Receiver aperture area (m^2).
    pub rx_aperture_area_m2: f64,
    /// Full beam divergence angle (rad).
    pub beam_divergence_rad: f64,
    /// Photons required per received bit.
    pub photons_per_bit: f64,
}

impl Default for FsoParams {
    fn default() -> Self {
        FsoParams {
            tx_power_w: 0.1,
            eta_t: 0.8,
            eta_r: 0.8,
            pol_loss_db: 3.0,
            atm_loss_db_per_km: 0.43,
            wavelength_m: 1550e-9,
            rx_aperture_area_m2: 0.0314,
            beam_divergence_rad: 1e-3,
            photons_per_bit: 100.0,
        }
    }
}

impl FsoParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta_t > 0.0 && self.eta_t <= 1.0) || !(self.eta_r > 0.0 && self.eta_r <= 1.0) {
            return Err(Error::domain("FSO optics efficiencies must lie in (0, 1]"));
        }
        if self.photons_per_bit < 1.0 {
            return Err(Error::domain("photons_per_bit must be >= 1"));
        }
        if self.beam_divergence_rad <= 0.0 {
            return Err(Error::domain("beam divergence must be positive"));
        }
        let positive = [
            ("tx_power_w", self.tx_power_w),
            ("wavelength_m", self.wavelength_m),
            ("rx_aperture_area_m2", self.rx_aperture_area_m2),
        ];
        for (name, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::domain(format!("{name} must be positive")));
            }
        }
        if self.pol_loss_db < 0.0 || self.atm_loss_db_per_km < 0.0 {
            return Err(Error::domain("FSO losses must be non-negative"));
        }
        Ok(())
    }
}

/// One technology with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "technology")]
pub enum BhTechnologySpec {
    Sub6Siso { bandwidth_hz: f64 },
    Sub6Mimo2x2 { bandwidth_hz: f64 },
    Sub6MassiveMimo(MassiveMimoParams),
    Fso(FsoParams),
    MmWave { bandwidth_hz: f64 },
}

impl BhTechnologySpec {
    pub fn kind(&self) -> TechnologyKind {
        match self {
            BhTechnologySpec::Sub6Siso { .. } => TechnologyKind::Sub6Siso,
            BhTechnologySpec::Sub6Mimo2x2 { .. } => TechnologyKind::Sub6Mimo2x2,
            BhTechnologySpec::Sub6MassiveMimo(_) => TechnologyKind::Sub6MassiveMimo,
            BhTechnologySpec::Fso(_) => TechnologyKind::Fso,
            BhTechnologySpec::MmWave { .. } => TechnologyKind::MmWave,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BhTechnologySpec::Sub6Siso { bandwidth_hz }
            | BhTechnologySpec::Sub6Mimo2x2 { bandwidth_hz }
            | BhTechnologySpec::MmWave { bandwidth_hz } => {
                if !bandwidth_hz.is_finite() || *bandwidth_hz <= 0.0 {
                    Err(Error::domain("bandwidth must be positive"))
                } else {
                    Ok(())
                }
            }
            BhTechnologySpec::Sub6MassiveMimo(p) => p.validate(),
            BhTechnologySpec::Fso(p) => p.validate(),
        }
    }
}

// ---------------------------------------------------------------------------
// Capacity calculators
// ---------------------------------------------------------------------------

fn check_capacity_inputs(bandwidth_hz: f64, snr_linear: f64) -> Result<()> {
    if !bandwidth_hz.is_finite() || bandwidth_hz <= 0.0 {
        return Err(Error::domain(format!(
            "bandwidth_hz must be positive, got {bandwidth_hz}"
        )));
    }
    if !snr_linear.is_finite() || snr_linear < 0.0 {
        return Err(Error::domain(format!(
            "snr_linear must be non-negative, got {snr_linear}"
        )));
    }
    Ok(())
}

/// Shannon capacity of a single stream, `B log2(1 + SNR)` (bit/s).
pub fn capacity_sub6_siso(bandwidth_hz: f64, snr_linear: f64) -> Result<f64> {
    check_capacity_inputs(bandwidth_hz, snr_linear)?;
    Ok(bandwidth_hz * (1.0 + snr_linear).log2())
}

/// Idealized 2x2 multiplexing gain: exactly twice the SISO capacity.
pub fn capacity_sub6_mimo2x2(bandwidth_hz: f64, snr_linear: f64) -> Result<f64> {
    Ok(2.0 * capacity_sub6_siso(bandwidth_hz, snr_linear)?)
}

/// Massive MIMO lower-bound capacity with pilot overhead,
/// `B K (1 - K/tau) log2(1 + c_csi M SNR / (K SNR + 1))` (bit/s).
pub fn capacity_massive_mimo(params: &MassiveMimoParams, snr_linear: f64) -> Result<f64> {
    params.validate()?;
    if !snr_linear.is_finite() || snr_linear < 0.0 {
        return Err(Error::domain(format!(
            "snr_linear must be non-negative, got {snr_linear}"
        )));
    }
    let k = params.k_streams as f64;
    let m = params.m_antennas as f64;
    let overhead = 1.0 - k / params.coherence_symbols;
    let effective_snr = params.csi_quality * m * snr_linear / (k * snr_linear + 1.0);
    Ok(params.bandwidth_hz * k * overhead * (1.0 + effective_snr).log2())
}

/// Photon-budget capacity of an FSO link (bit/s).
///
/// The beam footprint at range d is `A_B = pi (theta d / 2)^2`; the collected
/// fraction `A_R / A_B` is clamped to 1 when the aperture exceeds the
/// footprint (near field). Atmospheric loss accrues per km of path.
pub fn capacity_fso(params: &FsoParams, distance_m: f64) -> Result<f64> {
    params.validate()?;
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(Error::domain(format!(
            "distance_m must be positive, got {distance_m}"
        )));
    }
    let beam_area_m2 = PI * (params.beam_divergence_rad * distance_m / 2.0).powi(2);
    let collection = (params.rx_aperture_area_m2 / beam_area_m2).min(1.0);
    let atm_loss_db = params.atm_loss_db_per_km * distance_m / 1000.0;
    let photon_energy_j = PLANCK_CONSTANT_J_S * SPEED_OF_LIGHT_M_S / params.wavelength_m;
    let collected_power_w = params.tx_power_w
        * params.eta_t
        * params.eta_r
        * 10f64.powf(-params.pol_loss_db / 10.0)
        * 10f64.powf(-atm_loss_db / 10.0)
        * collection;
    Ok(collected_power_w / (photon_energy_j * params.photons_per_bit))
}

/// Shannon capacity on the wide mmWave carrier; same contract as
/// [`capacity_sub6_siso`], callers supply the 400 MHz-class bandwidth and an
/// SNR computed at the mmWave carrier frequency.
pub fn capacity_mmwave(bandwidth_hz: f64, snr_linear: f64) -> Result<f64> {
    capacity_sub6_siso(bandwidth_hz, snr_linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{free_space_path_loss, snr_linear};
    use proptest::prelude::*;

    fn assert_rel(actual: f64, expected: f64, rel: f64) {
        let err = (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            err <= rel,
            "expected {expected}, got {actual} (rel err {err:e})"
        );
    }

    #[test]
    fn siso_reference_values() {
        assert_eq!(capacity_sub6_siso(20e6, 1.0).unwrap(), 20e6);
        assert_eq!(capacity_sub6_siso(20e6, 0.0).unwrap(), 0.0);
        assert_rel(
            capacity_sub6_siso(20e6, 66.7).unwrap(),
            121_621_678.57375269,
            1e-12,
        );
        assert!(capacity_sub6_siso(20e6, -0.1).is_err());
        assert!(capacity_sub6_siso(0.0, 1.0).is_err());
    }

    #[test]
    fn mimo2x2_is_exactly_twice_siso() {
        for (b, snr) in [(20e6, 1.0), (20e6, 66.7), (5e6, 1234.5)] {
            assert_eq!(
                capacity_sub6_mimo2x2(b, snr).unwrap(),
                2.0 * capacity_sub6_siso(b, snr).unwrap()
            );
        }
        assert_eq!(capacity_sub6_mimo2x2(20e6, 1.0).unwrap(), 40e6);
    }

    #[test]
    fn massive_mimo_reference_value() {
        let params = MassiveMimoParams::default();
        assert_rel(
            capacity_massive_mimo(&params, 2.667).unwrap(),
            110_868_544.84948118,
            1e-12,
        );
        assert_eq!(capacity_massive_mimo(&params, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn massive_mimo_overhead_factor() {
        // K = 1, tau = 2 halves the payload fraction.
        let half = MassiveMimoParams {
            coherence_symbols: 2.0,
            ..MassiveMimoParams::default()
        };
        let full_rate_term = (1.0f64 + 64.0 * 1.0 / (1.0 + 1.0)).log2();
        assert_rel(
            capacity_massive_mimo(&half, 1.0).unwrap(),
            20e6 * 0.5 * full_rate_term,
            1e-12,
        );
    }

    #[test]
    fn massive_mimo_rejects_k_at_or_above_tau() {
        let bad = MassiveMimoParams {
            k_streams: 4,
            coherence_symbols: 4.0,
            ..MassiveMimoParams::default()
        };
        assert!(matches!(
            capacity_massive_mimo(&bad, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn massive_mimo_saturates_at_interference_limit() {
        // With perfect CSI the effective SNR tends to M/K as SNR grows.
        let params = MassiveMimoParams::default();
        let cap = capacity_massive_mimo(&params, 1e6).unwrap();
        let k = params.k_streams as f64;
        let m = params.m_antennas as f64;
        let limit = params.bandwidth_hz
            * k
            * (1.0 - k / params.coherence_symbols)
            * (1.0 + m / k).log2();
        assert!((cap - limit).abs() / limit < 1e-3);
    }

    #[test]
    fn fso_reference_value_at_50_km() {
        let cap = capacity_fso(&FsoParams::default(), 50_000.0).unwrap();
        assert_rel(cap, 283_357_490.63670295, 1e-9);
    }

    #[test]
    fn fso_is_linear_in_each_efficiency() {
        let base = FsoParams::default();
        let halved = FsoParams {
            eta_r: base.eta_r / 2.0,
            ..base
        };
        let c0 = capacity_fso(&base, 50_000.0).unwrap();
        let c1 = capacity_fso(&halved, 50_000.0).unwrap();
        assert_rel(c1 / c0, 0.5, 1e-12);
    }

    #[test]
    fn fso_distance_scaling_in_far_field() {
        // Beyond the near-field clamp, doubling d quadruples the footprint
        // and adds the per-km extinction: C(2d)/C(d) = 0.25 * 10^(-a d / 10_000).
        let params = FsoParams::default();
        let d = 10_000.0;
        let c1 = capacity_fso(&params, d).unwrap();
        let c2 = capacity_fso(&params, 2.0 * d).unwrap();
        let expected = 0.25 * 10f64.powf(-params.atm_loss_db_per_km * d / 1000.0 / 10.0);
        assert_rel(c2 / c1, expected, 1e-12);
    }

    #[test]
    fn fso_near_field_clamps_collection_to_unity() {
        // At 50 m the footprint (pi * 0.025^2 ~ 0.002 m^2) is smaller than the
        // aperture, so only the atmospheric term separates nearby distances.
        let params = FsoParams::default();
        let c1 = capacity_fso(&params, 50.0).unwrap();
        let c2 = capacity_fso(&params, 100.0).unwrap();
        let expected = 10f64.powf(-params.atm_loss_db_per_km * 0.05 / 10.0);
        assert_rel(c2 / c1, expected, 1e-12);
    }

    #[test]
    fn fso_rejects_invalid_params() {
        let no_optics = FsoParams {
            eta_t: 0.0,
            ..FsoParams::default()
        };
        assert!(capacity_fso(&no_optics, 1000.0).is_err());
        let sub_photon = FsoParams {
            photons_per_bit: 0.5,
            ..FsoParams::default()
        };
        assert!(capacity_fso(&sub_photon, 1000.0).is_err());
        assert!(capacity_fso(&FsoParams::default(), 0.0).is_err());
    }

    #[test]
    fn mmwave_reference_chain_at_50_km() {
        assert_eq!(capacity_mmwave(400e6, 1.0).unwrap(), 400e6);
        assert_eq!(capacity_mmwave(400e6, 0.0).unwrap(), 0.0);
        // 28 GHz carrier over 50 km is heavily range-limited.
        let loss = free_space_path_loss(28e9, 50_000.0).unwrap();
        assert_rel(loss, 155.37034393544812, 1e-12);
        let snr = snr_linear(43.0, loss, 400e6, 5.0).unwrap();
        assert_rel(snr, 0.0011505503135906521, 1e-9);
        let cap = capacity_mmwave(400e6, snr).unwrap();
        assert_rel(cap, 663_575.6272706587, 1e-9);
    }

    #[test]
    fn technology_kind_names_round_trip() {
        for kind in TechnologyKind::ALL {
            assert_eq!(kind.name().parse::<TechnologyKind>().unwrap(), kind);
        }
        assert!("sub7-ultra".parse::<TechnologyKind>().is_err());
    }

    proptest! {
        #[test]
        fn capacities_non_negative_zero_iff_zero_snr(
            b in 1e3..1e9f64,
            snr in 0.0..1e5f64,
        ) {
            let c = capacity_sub6_siso(b, snr).unwrap();
            prop_assert!(c >= 0.0);
            prop_assert_eq!(c == 0.0, snr == 0.0);
        }

        #[test]
        fn capacity_strictly_increasing_in_snr(
            b in 1e3..1e9f64,
            snr in 0.0..1e5f64,
            bump in 0.01..100.0f64,
        ) {
            prop_assert!(
                capacity_sub6_siso(b, snr + bump).unwrap()
                    > capacity_sub6_siso(b, snr).unwrap()
            );
            let mm = MassiveMimoParams::default();
            prop_assert!(
                capacity_massive_mimo(&mm, snr + bump).unwrap()
                    > capacity_massive_mimo(&mm, snr).unwrap()
            );
        }

        #[test]
        fn mimo_identity_holds_everywhere(b in 1e3..1e9f64, snr in 0.0..1e6f64) {
            prop_assert_eq!(
                capacity_sub6_mimo2x2(b, snr).unwrap(),
                2.0 * capacity_sub6_siso(b, snr).unwrap()
            );
        }

        #[test]
        fn fso_monotone_decreasing_beyond_near_field(
            d in 300.0..80_000.0f64,
            factor in 1.01..4.0f64,
        ) {
            let params = FsoParams::default();
            prop_assert!(
                capacity_fso(&params, d * factor).unwrap()
                    < capacity_fso(&params, d).unwrap()
            );
        }

        #[test]
        fn fso_increasing_in_tx_power(p in 0.01..10.0f64, bump in 1.01..5.0f64) {
            let base = FsoParams { tx_power_w: p, ..FsoParams::default() };
            let more = FsoParams { tx_power_w: p * bump, ..FsoParams::default() };
            prop_assert!(
                capacity_fso(&more, 50_000.0).unwrap()
                    > capacity_fso(&base, 50_000.0).unwrap()
            );
        }
    }
}
