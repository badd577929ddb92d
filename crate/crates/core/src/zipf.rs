//! Zipf exponents, Zipf references and Zipf deviations over rank segments.
//!
//! Within a segment `[a, b]` ranks are re-based so the model reads
//! `f(r) = f_a / (r - a + 1)^g`; the `r = a` term is exactly `f_a` and for
//! `a = 1` this is the usual `f_1 / r^g`.
//!
//! The slice-level functions take ranked frequencies as `f64` so exact
//! (non-integer) power laws can be checked; the profile-level functions wrap
//! them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::FrequencyProfile;
use crate::regression::least_squares;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZipfFit {
    /// First rank of the segment (1-based).
    pub a: usize,
    /// Last rank of the segment.
    pub b: usize,
    /// Fitted decay exponent, reported positive for decaying profiles.
    pub g: f64,
    /// Observed frequency at rank `a`.
    pub f_a: f64,
    /// Tokens actually observed in the segment.
    pub observed: f64,
    /// Zipf reference Z over the segment.
    pub z: f64,
    /// Zipf deviation `(observed - Z) / Z`.
    pub j: f64,
    /// RMS residual of the log-log regression.
    pub rms_log_error: f64,
}

fn check_segment(len: usize, a: usize, b: usize) -> Result<()> {
    if a < 1 || a > b || b > len {
        return Err(Error::Bounds {
            a,
            b,
            diversity: len,
        });
    }
    Ok(())
}

/// Least-squares fit of `ln f_r` against `ln(r - a + 1)` over `[a, b]`,
/// returning `(g, rms)` with `g` the negated slope.
pub fn fit_exponent_ranked(freqs: &[f64], a: usize, b: usize) -> Result<(f64, f64)> {
    check_segment(freqs.len(), a, b)?;
    if b - a + 1 < 2 {
        return Err(Error::Fit(format!(
            "segment [{a}, {b}] has fewer than 2 rank points"
        )));
    }
    let points: Vec<(f64, f64)> = freqs[a - 1..b]
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            if f > 0.0 {
                Ok((((i + 1) as f64).ln(), f.ln()))
            } else {
                Err(Error::Fit(format!("non-positive frequency {f}")))
            }
        })
        .collect::<Result<_>>()?;
    let line = least_squares(&points)?;
    Ok((-line.slope + 0.0, line.rms))
}

pub fn fit_zipf_exponent(p: &FrequencyProfile, a: usize, b: usize) -> Result<f64> {
    let freqs: Vec<f64> = p.frequencies().map(|f| f as f64).collect();
    fit_exponent_ranked(&freqs, a, b).map(|(g, _)| g)
}

/// `Σ_{r=a..b} f_a / (r - a + 1)^g`.
pub fn zipf_reference(f_a: f64, a: usize, b: usize, g: f64) -> Result<f64> {
    if a < 1 || b < a {
        return Err(Error::domain(format!("invalid segment [{a}, {b}]")));
    }
    if f_a <= 0.0 || !f_a.is_finite() {
        return Err(Error::domain(format!("anchor frequency {f_a} must be positive")));
    }
    if g < 0.0 || !g.is_finite() {
        return Err(Error::domain(format!("exponent {g} must be non-negative")));
    }
    Ok((1..=b - a + 1).map(|k| f_a / (k as f64).powf(g)).sum())
}

/// `(observed - z) / z`.
pub fn deviation(observed: f64, z: f64) -> f64 {
    (observed - z) / z
}

/// Fits g over `[a, b]`, builds the reference from the observed anchor and
/// returns the whole fit.
///
/// A segment that grows instead of decaying fits a negative slope; such an
/// exponent cannot anchor a reference and is reported as a fit error.
pub fn zipf_segment(freqs: &[f64], a: usize, b: usize) -> Result<ZipfFit> {
    let (g, rms) = fit_exponent_ranked(freqs, a, b)?;
    if g < 0.0 {
        return Err(Error::Fit(format!(
            "segment [{a}, {b}] rises with rank (g = {g})"
        )));
    }
    let f_a = freqs[a - 1];
    let z = zipf_reference(f_a, a, b, g)?;
    let observed: f64 = freqs[a - 1..b].iter().sum();
    Ok(ZipfFit {
        a,
        b,
        g,
        f_a,
        observed,
        z,
        j: deviation(observed, z),
        rms_log_error: rms,
    })
}

/// Zipf deviation over the whole profile, J over `[1, D]`.
pub fn zipf_deviation(p: &FrequencyProfile) -> Result<ZipfFit> {
    let d = p.diversity();
    if d < 2 {
        return Err(Error::Fit(format!("need D >= 2, got {d}")));
    }
    let freqs: Vec<f64> = p.frequencies().map(|f| f as f64).collect();
    zipf_segment(&freqs, 1, d)
}

/// Zipf deviation of the tail `[theta, D]`, with g re-fit over the tail.
pub fn tail_zipf_deviation(p: &FrequencyProfile) -> Result<ZipfFit> {
    let d = p.diversity();
    if d < 2 {
        return Err(Error::Fit(format!("need D >= 2, got {d}")));
    }
    let theta = p.tail_start();
    if theta >= d {
        return Err(Error::UndefinedTail {
            theta,
            diversity: d,
        });
    }
    let freqs: Vec<f64> = p.frequencies().map(|f| f as f64).collect();
    zipf_segment(&freqs, theta, d)
}
