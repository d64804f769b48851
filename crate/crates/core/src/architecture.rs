//! End-to-end models for the three aerial platform architectures.
//!
//! A relay UAV forwards the ground signal under a half-duplex time share, a
//! flying base station carries the full stack, and a flying remote radio
//! head leaves baseband processing on shore. The three differ in access-rate
//! factor, end-to-end latency composition and communication payload weight;
//! the payload weight doubles as the energy-cost proxy when ranking.

use serde::{Deserialize, Serialize};

use crate::channel::SPEED_OF_LIGHT_M_S;
use crate::error::{Error, Result};

/// Role of the equipment carried by the UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArchitectureKind {
    Relay,
    FlyingBs,
    FlyingRrh,
}

impl ArchitectureKind {
    pub const ALL: [ArchitectureKind; 3] = [
        ArchitectureKind::Relay,
        ArchitectureKind::FlyingBs,
        ArchitectureKind::FlyingRrh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ArchitectureKind::Relay => "relay",
            ArchitectureKind::FlyingBs => "flying-bs",
            ArchitectureKind::FlyingRrh => "flying-rrh",
        }
    }
}

impl std::fmt::Display for ArchitectureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ArchitectureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ArchitectureKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown architecture `{s}`")))
    }
}

/// Onboard processing latency and communication payload mass for one
/// architecture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchitectureProfile {
    pub kind: ArchitectureKind,
    /// Time spent processing the radio signal on the UAV (s).
    pub processing_latency_s: f64,
    /// Mass of the communication equipment (kg).
    pub payload_weight_kg: f64,
}

impl ArchitectureProfile {
    /// Default profile per architecture: an amplify-and-forward relay barely
    /// touches the signal, a full base station runs the whole stack, and an
    /// RRH only handles the RF front end.
    pub fn default_for(kind: ArchitectureKind) -> Self {
        let (processing_latency_s, payload_weight_kg) = match kind {
            ArchitectureKind::Relay => (1.0e-4, 0.4),
            ArchitectureKind::FlyingBs => (5.0e-3, 10.0),
            ArchitectureKind::FlyingRrh => (2.5e-4, 6.0),
        };
        ArchitectureProfile {
            kind,
            processing_latency_s,
            payload_weight_kg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.processing_latency_s.is_finite() || self.processing_latency_s < 0.0 {
            return Err(Error::config(format!(
                "{} processing latency must be non-negative",
                self.kind
            )));
        }
        if !self.payload_weight_kg.is_finite() || self.payload_weight_kg <= 0.0 {
            return Err(Error::config(format!(
                "{} payload weight must be positive",
                self.kind
            )));
        }
        Ok(())
    }
}

/// The three profiles used by an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchitectureProfiles {
    pub relay: ArchitectureProfile,
    pub flying_bs: ArchitectureProfile,
    pub flying_rrh: ArchitectureProfile,
}

impl Default for ArchitectureProfiles {
    fn default() -> Self {
        ArchitectureProfiles {
            relay: ArchitectureProfile::default_for(ArchitectureKind::Relay),
            flying_bs: ArchitectureProfile::default_for(ArchitectureKind::FlyingBs),
            flying_rrh: ArchitectureProfile::default_for(ArchitectureKind::FlyingRrh),
        }
    }
}

impl ArchitectureProfiles {
    pub fn profile(&self, kind: ArchitectureKind) -> &ArchitectureProfile {
        match kind {
            ArchitectureKind::Relay => &self.relay,
            ArchitectureKind::FlyingBs => &self.flying_bs,
            ArchitectureKind::FlyingRrh => &self.flying_rrh,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (kind, profile) in [
            (ArchitectureKind::Relay, &self.relay),
            (ArchitectureKind::FlyingBs, &self.flying_bs),
            (ArchitectureKind::FlyingRrh, &self.flying_rrh),
        ] {
            if profile.kind != kind {
                return Err(Error::config(format!(
                    "profile slot {kind} holds a {} profile",
                    profile.kind
                )));
            }
            profile.validate()?;
        }
        Ok(())
    }
}

/// End-to-end outcome for one architecture in one sampled scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndToEndResult {
    /// Aggregate DL rate actually deliverable to the users (bit/s).
    pub delivered_rate_bps: f64,
    /// Delivered rate per user after sharing and bottleneck (bit/s).
    pub per_user_rate_bps: f64,
    /// Mean per-user latency (s).
    pub total_latency_s: f64,
    pub payload_weight_kg: f64,
}

/// Access-link rate one user sees under equal bandwidth sharing (bit/s).
///
/// The relay spends half its time slots listening to the ground station, so
/// its access rate is exactly half the flying-BS/RRH rate for the same
/// inputs.
pub fn access_rate_per_user(
    kind: ArchitectureKind,
    bandwidth_hz: f64,
    n_users: usize,
    snr_linear: f64,
) -> Result<f64> {
    if n_users == 0 {
        return Err(Error::domain("n_users must be at least 1"));
    }
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
    let shared = bandwidth_hz / n_users as f64 * (1.0 + snr_linear).log2();
    Ok(match kind {
        ArchitectureKind::Relay => 0.5 * shared,
        ArchitectureKind::FlyingBs | ArchitectureKind::FlyingRrh => shared,
    })
}

/// Rate deliverable end to end: the access aggregate capped by the
/// backhaul/fronthaul rate. The relay listens to the ground half the time,
/// so its usable backhaul share is half the link rate; the access-side
/// halving already sits in [`access_rate_per_user`].
pub fn delivered_rate(kind: ArchitectureKind, aggregate_access_bps: f64, bh_rate_bps: f64) -> f64 {
    let bh_cap = match kind {
        ArchitectureKind::Relay => 0.5 * bh_rate_bps,
        ArchitectureKind::FlyingBs | ArchitectureKind::FlyingRrh => bh_rate_bps,
    };
    aggregate_access_bps.min(bh_cap)
}

/// Latency one user experiences: both hops contribute propagation plus
/// serialization, and the onboard processing is added once. The composition
/// is identical for all three architectures; they differ only through the
/// rates and processing latency fed in.
pub fn total_latency(
    profile: &ArchitectureProfile,
    packet_bits: f64,
    per_user_rate_bps: f64,
    access_distance_m: f64,
    bh_distance_m: f64,
    bh_rate_bps: f64,
) -> Result<f64> {
    profile.validate()?;
    if !packet_bits.is_finite() || packet_bits < 0.0 {
        return Err(Error::domain("packet_bits must be non-negative"));
    }
    if access_distance_m <= 0.0 || bh_distance_m <= 0.0 {
        return Err(Error::domain("link distances must be positive"));
    }
    let serialization = |rate_bps: f64, label: &str| -> Result<f64> {
        if packet_bits == 0.0 {
            return Ok(0.0);
        }
        if !rate_bps.is_finite() || rate_bps <= 0.0 {
            return Err(Error::domain(format!(
                "{label} rate must be positive to serialize a non-empty packet"
            )));
        }
        Ok(packet_bits / rate_bps)
    };
    let access_latency =
        access_distance_m / SPEED_OF_LIGHT_M_S + serialization(per_user_rate_bps, "access")?;
    let bh_latency = bh_distance_m / SPEED_OF_LIGHT_M_S + serialization(bh_rate_bps, "backhaul")?;
    Ok(access_latency + bh_latency + profile.processing_latency_s + core_to_cloud_latency())
}

/// Latency of the fiber hop between cloud and core. An ideal high-rate fiber
/// link contributes nothing; the term exists so the latency composition
/// stays explicit.
pub fn core_to_cloud_latency() -> f64 {
    0.0
}

/// Assemble the end-to-end record for one run, enforcing the bottleneck
/// invariants by construction.
pub fn end_to_end(
    profile: &ArchitectureProfile,
    n_users: usize,
    aggregate_access_bps: f64,
    bh_rate_bps: f64,
    total_latency_s: f64,
) -> Result<EndToEndResult> {
    if n_users == 0 {
        return Err(Error::domain("n_users must be at least 1"));
    }
    let delivered = delivered_rate(profile.kind, aggregate_access_bps, bh_rate_bps);
    Ok(EndToEndResult {
        delivered_rate_bps: delivered,
        per_user_rate_bps: delivered / n_users as f64,
        total_latency_s,
        payload_weight_kg: profile.payload_weight_kg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_rel(actual: f64, expected: f64, rel: f64) {
        let err = (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
        assert!(
            err <= rel,
            "expected {expected}, got {actual} (rel err {err:e})"
        );
    }

    #[test]
    fn access_rate_reference_values() {
        assert_eq!(
            access_rate_per_user(ArchitectureKind::FlyingRrh, 20e6, 1, 1.0).unwrap(),
            20e6
        );
        assert_rel(
            access_rate_per_user(ArchitectureKind::FlyingBs, 20e6, 10, 5.0).unwrap(),
            5_169_925.001442312,
            1e-12,
        );
        assert!(access_rate_per_user(ArchitectureKind::Relay, 20e6, 0, 1.0).is_err());
    }

    #[test]
    fn relay_access_is_exactly_half_of_flying_bs() {
        for (n, snr) in [(1usize, 0.5), (7, 12.0), (32, 66.7)] {
            let bs = access_rate_per_user(ArchitectureKind::FlyingBs, 20e6, n, snr).unwrap();
            let relay = access_rate_per_user(ArchitectureKind::Relay, 20e6, n, snr).unwrap();
            assert_eq!(relay, bs / 2.0);
        }
    }

    #[test]
    fn delivered_rate_min_rule() {
        assert_eq!(
            delivered_rate(ArchitectureKind::FlyingBs, 50e6, 121.7e6),
            50e6
        );
        assert_eq!(
            delivered_rate(ArchitectureKind::FlyingRrh, 50e6, 37.5e6),
            37.5e6
        );
        assert_eq!(delivered_rate(ArchitectureKind::Relay, 50e6, 40e6), 20e6);
        for kind in ArchitectureKind::ALL {
            assert_eq!(delivered_rate(kind, 0.0, 37.5e6), 0.0);
        }
    }

    #[test]
    fn latency_reference_composition() {
        let profile = ArchitectureProfile {
            kind: ArchitectureKind::FlyingBs,
            processing_latency_s: 5e-3,
            payload_weight_kg: 10.0,
        };
        let latency =
            total_latency(&profile, 12_000.0, 5.17e6, 1_000.0, 50_000.0, 37.5e6).unwrap();
        assert_rel(latency, 0.00781120086069806, 1e-12);
    }

    #[test]
    fn zero_packet_leaves_only_propagation_and_processing() {
        let profile = ArchitectureProfile::default_for(ArchitectureKind::FlyingRrh);
        let latency = total_latency(&profile, 0.0, 1e6, 1_000.0, 50_000.0, 37.5e6).unwrap();
        let expected = 51_000.0 / SPEED_OF_LIGHT_M_S + profile.processing_latency_s;
        assert_rel(latency, expected, 1e-12);
        // Zero rate is fine for an empty packet but not otherwise.
        assert!(total_latency(&profile, 0.0, 0.0, 1.0, 1.0, 0.0).is_ok());
        assert!(total_latency(&profile, 1.0, 0.0, 1.0, 1.0, 1e6).is_err());
    }

    #[test]
    fn relay_and_rrh_latency_match_on_identical_links() {
        let mut relay = ArchitectureProfile::default_for(ArchitectureKind::Relay);
        relay.processing_latency_s = 2.5e-4;
        let rrh = ArchitectureProfile::default_for(ArchitectureKind::FlyingRrh);
        let args = (12_000.0, 3e6, 800.0, 50_000.0, 37.5e6);
        assert_eq!(
            total_latency(&relay, args.0, args.1, args.2, args.3, args.4).unwrap(),
            total_latency(&rrh, args.0, args.1, args.2, args.3, args.4).unwrap()
        );
    }

    #[test]
    fn core_to_cloud_term_is_zero() {
        assert_eq!(core_to_cloud_latency(), 0.0);
        let profile = ArchitectureProfile::default_for(ArchitectureKind::FlyingBs);
        let base = total_latency(&profile, 12_000.0, 5e6, 1_000.0, 50_000.0, 37.5e6).unwrap();
        assert_eq!(base + core_to_cloud_latency(), base);
    }

    #[test]
    fn end_to_end_record_applies_bottleneck() {
        let profile = ArchitectureProfile::default_for(ArchitectureKind::FlyingBs);
        let result = end_to_end(&profile, 6, 50e6, 37.5e6, 8e-3).unwrap();
        assert_eq!(result.delivered_rate_bps, 37.5e6);
        assert_eq!(result.per_user_rate_bps, 37.5e6 / 6.0);
        assert_eq!(result.payload_weight_kg, 10.0);
    }

    #[test]
    fn default_profiles_preserve_processing_order() {
        let profiles = ArchitectureProfiles::default();
        assert!(profiles.flying_bs.processing_latency_s > profiles.flying_rrh.processing_latency_s);
        assert!(profiles.flying_bs.processing_latency_s > profiles.relay.processing_latency_s);
        profiles.validate().unwrap();
    }

    proptest! {
        #[test]
        fn delivered_never_exceeds_either_side(
            agg in 0.0..1e9f64,
            bh in 0.0..1e9f64,
        ) {
            for kind in ArchitectureKind::ALL {
                let d = delivered_rate(kind, agg, bh);
                prop_assert!(d <= agg && d <= bh);
                prop_assert!(d >= 0.0);
            }
        }

        #[test]
        fn relay_half_rate_identity(
            n in 1usize..64,
            snr in 0.0..1e4f64,
            bw in 1e6..1e8f64,
        ) {
            let bs = access_rate_per_user(ArchitectureKind::FlyingBs, bw, n, snr).unwrap();
            let rrh = access_rate_per_user(ArchitectureKind::FlyingRrh, bw, n, snr).unwrap();
            let relay = access_rate_per_user(ArchitectureKind::Relay, bw, n, snr).unwrap();
            prop_assert_eq!(relay, bs / 2.0);
            prop_assert_eq!(bs, rrh);
        }

        #[test]
        fn latency_monotone_in_packet_and_rates(
            packet in 1.0..1e6f64,
            rate in 1e4..1e9f64,
            bh_rate in 1e4..1e9f64,
            extra in 1.0..1e6f64,
        ) {
            let profile = ArchitectureProfile::default_for(ArchitectureKind::FlyingBs);
            let base = total_latency(&profile, packet, rate, 1e3, 5e4, bh_rate).unwrap();
            prop_assert!(total_latency(&profile, packet + extra, rate, 1e3, 5e4, bh_rate).unwrap() > base);
            prop_assert!(total_latency(&profile, packet, rate * 2.0, 1e3, 5e4, bh_rate).unwrap() <= base);
            prop_assert!(total_latency(&profile, packet, rate, 1e3, 5e4, bh_rate * 2.0).unwrap() <= base);
        }

        #[test]
        fn bs_latency_dominates_rrh_when_processing_dominates(
            packet in 0.0..1e5f64,
            rate in 1e5..1e9f64,
        ) {
            let bs = ArchitectureProfile::default_for(ArchitectureKind::FlyingBs);
            let rrh = ArchitectureProfile::default_for(ArchitectureKind::FlyingRrh);
            let l_bs = total_latency(&bs, packet, rate, 1e3, 5e4, 37.5e6).unwrap();
            let l_rrh = total_latency(&rrh, packet, rate, 1e3, 5e4, 37.5e6).unwrap();
            prop_assert!(l_bs > l_rrh);
        }
    }
}
