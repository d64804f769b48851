//! Weighted cost function over normalized per-combination attributes.
//!
//! Delivered rate, latency and payload weight are min-max normalized so that
//! lower is always better (the rate axis is flipped), then combined into a
//! weighted sum. The combination with the smallest cost is the suggested
//! technology/architecture pairing for a given priority profile.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::ComboId;

/// Raw attributes of one combination. Rate is a benefit attribute; latency
/// and weight are cost attributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttributeVector {
    pub data_rate_bps: f64,
    pub latency_s: f64,
    pub weight_kg: f64,
}

impl AttributeVector {
    fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("data_rate_bps", self.data_rate_bps),
            ("latency_s", self.latency_s),
            ("weight_kg", self.weight_kg),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and non-negative, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Weight coefficients for (rate, latency, weight), stored normalized to
/// sum 1 so rankings are invariant under positive rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct CostWeights {
    normalized: [f64; 3],
}

impl CostWeights {
    pub fn new(rate: f64, latency: f64, weight: f64) -> Result<Self> {
        let raw = [rate, latency, weight];
        for w in raw {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::config(format!(
                    "weights must be finite and non-negative, got {w}"
                )));
            }
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::config("at least one weight must be positive"));
        }
        Ok(CostWeights {
            normalized: [raw[0] / sum, raw[1] / sum, raw[2] / sum],
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.normalized
    }
}

impl Default for CostWeights {
    fn default() -> Self {
        CostWeights::new(1.0, 1.0, 1.0).expect("uniform weights are valid")
    }
}

impl TryFrom<[f64; 3]> for CostWeights {
    type Error = Error;

    fn try_from(raw: [f64; 3]) -> Result<Self> {
        CostWeights::new(raw[0], raw[1], raw[2])
    }
}

impl From<CostWeights> for [f64; 3] {
    fn from(w: CostWeights) -> [f64; 3] {
        w.normalized
    }
}

/// One ranked combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedCombo {
    pub combo: ComboId,
    pub cost: f64,
    /// Normalized (rate, latency, weight), each in [0, 1], lower is better.
    pub normalized: [f64; 3],
}

/// Min-max normalize each attribute column to [0, 1] with lower-is-better
/// orientation. A degenerate column (max = min) maps to 0 for every
/// combination so it stays neutral in the cost.
pub fn normalize_attributes(vectors: &[AttributeVector]) -> Result<Vec<[f64; 3]>> {
    if vectors.is_empty() {
        return Err(Error::domain("attribute list must not be empty"));
    }
    for v in vectors {
        v.validate()?;
    }
    let column = |f: fn(&AttributeVector) -> f64| -> (f64, f64) {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in vectors {
            min = min.min(f(v));
            max = max.max(f(v));
        }
        (min, max)
    };
    let (rate_min, rate_max) = column(|v| v.data_rate_bps);
    let (lat_min, lat_max) = column(|v| v.latency_s);
    let (wgt_min, wgt_max) = column(|v| v.weight_kg);

    let cost_axis = |value: f64, min: f64, max: f64| {
        if max > min {
            (value - min) / (max - min)
        } else {
            0.0
        }
    };
    let benefit_axis = |value: f64, min: f64, max: f64| {
        if max > min {
            (max - value) / (max - min)
        } else {
            0.0
        }
    };

    Ok(vectors
        .iter()
        .map(|v| {
            [
                benefit_axis(v.data_rate_bps, rate_min, rate_max),
                cost_axis(v.latency_s, lat_min, lat_max),
                cost_axis(v.weight_kg, wgt_min, wgt_max),
            ]
        })
        .collect())
}

/// Weighted sum of a normalized attribute vector; lies in [0, 1].
pub fn cost(weights: &CostWeights, normalized: [f64; 3]) -> f64 {
    weights
        .as_array()
        .iter()
        .zip(normalized)
        .map(|(w, s)| w * s)
        .sum()
}

/// Rank every combination by ascending cost. Ties break on the technology
/// tag order, then the architecture tag order, so the output is a stable
/// function of its input.
pub fn rank(
    entries: &[(ComboId, AttributeVector)],
    weights: &CostWeights,
) -> Result<Vec<RankedCombo>> {
    if entries.is_empty() {
        return Err(Error::domain("rank input must not be empty"));
    }
    let vectors: Vec<AttributeVector> = entries.iter().map(|(_, v)| *v).collect();
    let normalized = normalize_attributes(&vectors)?;
    let mut ranked: Vec<RankedCombo> = entries
        .iter()
        .zip(normalized)
        .map(|(&(combo, _), s)| RankedCombo {
            combo,
            cost: cost(weights, s),
            normalized: s,
        })
        .collect();
    ranked.sort_by(|a, b| a.cost.total_cmp(&b.cost).then(a.combo.cmp(&b.combo)));
    Ok(ranked)
}
