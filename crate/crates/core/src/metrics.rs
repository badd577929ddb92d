//! Per-text scalar measures: specific diversity, entropy, emergence,
//! self-organization and complexity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::FrequencyProfile;

/// Raw entropies may stray this far outside [0, 1] before clamping is
/// considered a bug rather than rounding.
const ROUNDING_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityMeasures {
    /// Specific diversity D/L.
    pub d: f64,
    /// Entropy with logarithm base D.
    pub h: f64,
    /// Emergence; equal to `h`.
    pub e: f64,
    /// Self-organization, `1 - h`.
    pub s: f64,
    /// Complexity, `4 e s`.
    pub c: f64,
}

impl ComplexityMeasures {
    /// Derives e, s and c from an entropy value.
    pub fn from_parts(d: f64, h: f64) -> Self {
        let s = 1.0 - h;
        ComplexityMeasures {
            d,
            h,
            e: h,
            s,
            c: 4.0 * h * s,
        }
    }
}

fn nonempty(p: &FrequencyProfile) -> Result<()> {
    if p.length() == 0 {
        Err(Error::domain("measure of an empty profile"))
    } else {
        Ok(())
    }
}

pub fn specific_diversity(p: &FrequencyProfile) -> Result<f64> {
    nonempty(p)?;
    Ok(p.diversity() as f64 / p.length() as f64)
}

/// Shannon entropy of the profile in base D. A single-symbol profile has
/// entropy 0.
pub fn entropy(p: &FrequencyProfile) -> Result<f64> {
    nonempty(p)?;
    entropy_of_counts(p.frequencies())
}

/// Entropy of an arbitrary multiset of positive counts.
pub fn entropy_of_counts<I>(counts: I) -> Result<f64>
where
    I: IntoIterator<Item = u64>,
{
    let counts: Vec<u64> = counts.into_iter().collect();
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::domain("entropy of an empty distribution"));
    }
    let d = counts.len();
    if d == 1 {
        return Ok(0.0);
    }
    let total = total as f64;
    let nats: f64 = counts
        .iter()
        .map(|&f| {
            let p = f as f64 / total;
            -p * p.ln()
        })
        .sum();
    let h = nats / (d as f64).ln();
    if !(-ROUNDING_SLACK..=1.0 + ROUNDING_SLACK).contains(&h) {
        return Err(Error::domain(format!("entropy {h} outside [0, 1]")));
    }
    Ok(h.clamp(0.0, 1.0))
}

pub fn complexity_measures(p: &FrequencyProfile) -> Result<ComplexityMeasures> {
    Ok(ComplexityMeasures::from_parts(
        specific_diversity(p)?,
        entropy(p)?,
    ))
}
