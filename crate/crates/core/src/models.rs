//! Corpus-level models: Heaps' law growth of diversity with length, the
//! one-parameter entropy model `h = d^q` with `q = (α - 2)/(α - 1)`, and a
//! nearest-curve language classifier built on fitted entropy models.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::ComplexityMeasures;
use crate::regression::least_squares;

/// `D = k · L^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeapsFit {
    pub k: f64,
    pub beta: f64,
    pub rms_log_error: f64,
    pub n_points: usize,
}

/// Fitted entropy model `h = d^q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    pub alpha: f64,
    pub q: f64,
    /// Sum of squared entropy residuals at the optimum.
    pub sse: f64,
    pub n_points: usize,
}

impl AlphaFit {
    /// Model with a given exponent, without data.
    pub fn from_q(q: f64) -> Result<Self> {
        Ok(AlphaFit {
            alpha: alpha_from_q(q)?,
            q,
            sse: 0.0,
            n_points: 0,
        })
    }

    pub fn predict(&self, d: f64) -> Result<f64> {
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::domain(format!("specific diversity {d} outside (0, 1]")));
        }
        Ok(d.powf(self.q))
    }
}

pub fn q_from_alpha(alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return Err(Error::Singularity);
    }
    Ok((alpha - 2.0) / (alpha - 1.0))
}

pub fn alpha_from_q(q: f64) -> Result<f64> {
    if q == 1.0 {
        return Err(Error::domain("q = 1 has no finite alpha"));
    }
    Ok((2.0 - q) / (1.0 - q))
}

/// Least squares in log-log space over `(L, D)` pairs.
pub fn fit_heaps(points: &[(u64, u64)]) -> Result<HeapsFit> {
    if let Some(&(l, d)) = points.iter().find(|(l, d)| *l == 0 || *d == 0) {
        return Err(Error::domain(format!("Heaps point (L={l}, D={d}) must be positive")));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(l, d)| ((l as f64).ln(), (d as f64).ln()))
        .collect();
    let line = least_squares(&logs).map_err(|_| {
        Error::Fit("Heaps fit needs at least 2 points with distinct L".into())
    })?;
    Ok(HeapsFit {
        k: line.intercept.exp(),
        beta: line.slope,
        rms_log_error: line.rms,
        n_points: points.len(),
    })
}

pub fn heaps_predict(fit: &HeapsFit, length: u64) -> Result<f64> {
    if length == 0 {
        return Err(Error::domain("Heaps prediction needs L >= 1"));
    }
    Ok(fit.k * (length as f64).powf(fit.beta))
}

pub fn model_entropy(d: f64, alpha: f64) -> Result<f64> {
    if !(d > 0.0 && d <= 1.0) {
        return Err(Error::domain(format!("specific diversity {d} outside (0, 1]")));
    }
    Ok(d.powf(q_from_alpha(alpha)?))
}

fn sse(points: &[(f64, f64)], q: f64) -> f64 {
    points
        .iter()
        .map(|&(d, h)| {
            let r = h - d.powf(q);
            r * r
        })
        .sum()
}

const Q_MAX: f64 = 1.0 - 1e-9;
const GRID: usize = 2000;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Exponent `q` in `[0, 1)` minimizing `Σ (h - d^q)^2`, mapped back to α.
///
/// A coarse grid brackets the best cell, then golden-section refines it. The
/// objective need not be unimodal over the whole interval, so the grid
/// comes first.
pub fn fit_alpha(points: &[(f64, f64)]) -> Result<AlphaFit> {
    if points.is_empty() {
        return Err(Error::Fit("entropy model fit needs at least one point".into()));
    }
    if let Some(&(d, _)) = points.iter().find(|(d, _)| !(*d > 0.0 && *d <= 1.0)) {
        return Err(Error::domain(format!("specific diversity {d} outside (0, 1]")));
    }
    if points.iter().all(|&(d, _)| d == 1.0) {
        return Err(Error::Fit("every point has d = 1; q is unidentifiable".into()));
    }
    let step = Q_MAX / GRID as f64;
    let best = (0..=GRID)
        .map(|i| (i, sse(points, i as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .unwrap();
    let lo = (best.saturating_sub(1)) as f64 * step;
    let hi = ((best + 1).min(GRID)) as f64 * step;
    let mut q = golden_min(|q| sse(points, q), lo, hi, 1e-13);
    // the boundaries are not visited by golden-section
    for edge in [lo, hi] {
        if sse(points, edge) < sse(points, q) {
            q = edge;
        }
    }
    Ok(AlphaFit {
        alpha: alpha_from_q(q)?,
        q,
        sse: sse(points, q),
        n_points: points.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: String,
    /// `|h - d^q|` per model.
    pub residuals: BTreeMap<String, f64>,
}

/// Picks the model whose entropy curve passes closest to the text's
/// `(d, h)`. Ties go to the lexicographically first label.
pub fn classify_language(
    m: &ComplexityMeasures,
    fits: &BTreeMap<String, AlphaFit>,
) -> Result<Classification> {
    if fits.is_empty() {
        return Err(Error::EmptyModels);
    }
    let mut residuals = BTreeMap::new();
    let mut best: Option<(&String, f64)> = None;
    for (label, fit) in fits {
        let r = (m.h - fit.predict(m.d)?).abs();
        residuals.insert(label.clone(), r);
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((label, r));
        }
    }
    Ok(Classification {
        label: best.unwrap().0.clone(),
        residuals,
    })
}
