//! Propagation and link-budget primitives for air-to-sea links.
//!
//! The UAV-to-user hop over a smooth sea is modeled with a two-ray
//! reflection term,
//!
//! ```text
//! L(d) = -20 log10{ (lambda / 4 pi d) * [2 sin(2 pi h_t h_r / lambda d)] }
//! ```
//!
//! while the long shore-to-UAV hop uses plain free-space loss. Noise is the
//! thermal floor at -174 dBm/Hz plus the receiver noise figure.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Thermal noise density at 290 K (dBm/Hz).
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Receiver noise figure used when a config does not override it (dB).
pub const DEFAULT_NOISE_FIGURE_DB: f64 = 5.0;

/// Below this magnitude the two-ray sine term counts as a destructive null.
pub const TWO_RAY_NULL_EPSILON: f64 = 1e-12;

/// Geometry of a single radio hop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioLinkGeometry {
    /// Carrier frequency (Hz).
    pub frequency_hz: f64,
    /// Transmitter-receiver separation, 3-D slant distance (m).
    pub distance_m: f64,
    /// Transmitter antenna height (m).
    pub tx_height_m: f64,
    /// Receiver antenna height (m).
    pub rx_height_m: f64,
}

impl RadioLinkGeometry {
    pub fn new(
        frequency_hz: f64,
        distance_m: f64,
        tx_height_m: f64,
        rx_height_m: f64,
    ) -> Result<Self> {
        let geom = RadioLinkGeometry {
            frequency_hz,
            distance_m,
            tx_height_m,
            rx_height_m,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("frequency_hz", self.frequency_hz),
            ("distance_m", self.distance_m),
            ("tx_height_m", self.tx_height_m),
            ("rx_height_m", self.rx_height_m),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Carrier wavelength (m).
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT_M_S / self.frequency_hz
    }
}

/// Receiver-side budget for one hop. `rx_power_dbm` and `snr_db` are derived
/// from the other fields; [`link_budget`] keeps the arithmetic identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub eirp_dbm: f64,
    pub path_loss_db: f64,
    pub noise_figure_db: f64,
    pub bandwidth_hz: f64,
    pub rx_power_dbm: f64,
    pub snr_db: f64,
}

/// Two-ray path loss over a smooth reflecting surface (dB).
///
/// The sign of the sine term is a carrier phase; only its magnitude enters
/// the loss. Near a destructive null the loss is unbounded, so exact nulls
/// are reported as [`Error::TwoRayNull`] instead of returning infinity,
/// which lets a caller resample deterministically. The value can be negative
/// at short range (constructive maxima); it is not clamped.
pub fn two_ray_path_loss(geom: &RadioLinkGeometry) -> Result<f64> {
    geom.validate()?;
    let lambda = geom.wavelength_m();
    let phase = 2.0 * PI * geom.tx_height_m * geom.rx_height_m / (lambda * geom.distance_m);
    let sine_magnitude = phase.sin().abs();
    if sine_magnitude < TWO_RAY_NULL_EPSILON {
        return Err(Error::TwoRayNull {
            distance_m: geom.distance_m,
            sine_magnitude,
        });
    }
    let amplitude = lambda / (4.0 * PI * geom.distance_m) * 2.0 * sine_magnitude;
    Ok(-20.0 * amplitude.log10())
}

/// Free-space (Friis) path loss, `20 log10(4 pi d / lambda)` (dB).
pub fn free_space_path_loss(frequency_hz: f64, distance_m: f64) -> Result<f64> {
    if !frequency_hz.is_finite() || frequency_hz <= 0.0 {
        return Err(Error::domain(format!(
            "frequency_hz must be positive, got {frequency_hz}"
        )));
    }
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(Error::domain(format!(
            "distance_m must be positive, got {distance_m}"
        )));
    }
    let lambda = SPEED_OF_LIGHT_M_S / frequency_hz;
    Ok(20.0 * (4.0 * PI * distance_m / lambda).log10())
}

/// Thermal noise power in `bandwidth_hz` plus the receiver noise figure (dBm).
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !bandwidth_hz.is_finite() || bandwidth_hz <= 0.0 {
        return Err(Error::domain(format!(
            "bandwidth_hz must be positive, got {bandwidth_hz}"
        )));
    }
    if !noise_figure_db.is_finite() || noise_figure_db < 0.0 {
        return Err(Error::domain(format!(
            "noise_figure_db must be non-negative, got {noise_figure_db}"
        )));
    }
    Ok(THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db)
}

/// Linear SNR from an EIRP, a path loss and the noise floor.
pub fn snr_linear(
    eirp_dbm: f64,
    path_loss_db: f64,
    bandwidth_hz: f64,
    noise_figure_db: f64,
) -> Result<f64> {
    let noise_dbm = noise_power_dbm(bandwidth_hz, noise_figure_db)?;
    Ok(10f64.powf((eirp_dbm - path_loss_db - noise_dbm) / 10.0))
}

/// Assemble the full receiver budget for one hop.
pub fn link_budget(
    eirp_dbm: f64,
    path_loss_db: f64,
    bandwidth_hz: f64,
    noise_figure_db: f64,
) -> Result<LinkBudget> {
    let noise_dbm = noise_power_dbm(bandwidth_hz, noise_figure_db)?;
    let rx_power_dbm = eirp_dbm - path_loss_db;
    Ok(LinkBudget {
        eirp_dbm,
        path_loss_db,
        noise_figure_db,
        bandwidth_hz,
        rx_power_dbm,
        snr_db: rx_power_dbm - noise_dbm,
    })
}
