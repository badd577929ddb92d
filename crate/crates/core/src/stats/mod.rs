//! Descriptive statistics, Pearson correlation and two-sample t tests.

pub mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descriptive {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub stddev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TTestKind {
    /// Unequal variances, Welch–Satterthwaite degrees of freedom.
    #[default]
    Welch,
    /// Pooled variance, `n1 + n2 - 2` degrees of freedom.
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: f64,
    /// Two-tailed p-value.
    pub p: f64,
    pub n1: usize,
    pub n2: usize,
    pub kind: TTestKind,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample variance around a known mean.
fn variance(xs: &[f64], m: f64) -> f64 {
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

pub fn descriptive_stats(xs: &[f64]) -> Result<Descriptive> {
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let m = mean(xs);
    Ok(Descriptive {
        n: xs.len(),
        mean: m,
        stddev: variance(xs, m).sqrt(),
    })
}

pub fn welch_t_test(xs: &[f64], ys: &[f64]) -> Result<TTestResult> {
    t_test(xs, ys, TTestKind::Welch)
}

pub fn t_test(xs: &[f64], ys: &[f64], kind: TTestKind) -> Result<TTestResult> {
    for s in [xs, ys] {
        if s.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: s.len(),
            });
        }
    }
    let (n1, n2) = (xs.len() as f64, ys.len() as f64);
    let (m1, m2) = (mean(xs), mean(ys));
    let (v1, v2) = (variance(xs, m1), variance(ys, m2));
    if v1 == 0.0 && v2 == 0.0 {
        return Err(Error::DegenerateSample);
    }
    let (se2, df) = match kind {
        TTestKind::Welch => {
            let (a, b) = (v1 / n1, v2 / n2);
            let df = (a + b).powi(2) / (a * a / (n1 - 1.0) + b * b / (n2 - 1.0));
            (a + b, df)
        }
        TTestKind::Pooled => {
            let df = n1 + n2 - 2.0;
            let sp2 = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / df;
            (sp2 * (1.0 / n1 + 1.0 / n2), df)
        }
    };
    let t = (m1 - m2) / se2.sqrt();
    // the p-value is a probability of a non-empty event; keep it off zero
    let p = special::student_t_two_tailed(t, df).clamp(f64::MIN_POSITIVE, 1.0);
    Ok(TTestResult {
        t,
        df,
        p,
        n1: xs.len(),
        n2: ys.len(),
        kind,
    })
}

pub fn pearson_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::UndefinedCorrelation(format!(
            "samples differ in length ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a sample has zero variance".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn descriptive_examples() {
        let d = descriptive_stats(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((d.mean, d.stddev), (1.0, 0.0));
        let d = descriptive_stats(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(d.mean, 2.5);
        assert_abs_diff_eq!(d.stddev, (5.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert!(matches!(
            descriptive_stats(&[1.0]),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn identical_samples() {
        let xs = [1.0, 2.0, 4.0];
        let r = welch_t_test(&xs, &xs).unwrap();
        assert_eq!(r.t, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn degenerate_samples() {
        assert!(matches!(
            welch_t_test(&[2.0, 2.0], &[3.0, 3.0, 3.0]),
            Err(Error::DegenerateSample)
        ));
        assert!(welch_t_test(&[2.0], &[3.0, 4.0]).is_err());
    }

    #[test]
    fn swapping_samples_flips_t() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let ys = [2.0, 4.0, 6.0, 8.0, 10.0];
        for kind in [TTestKind::Welch, TTestKind::Pooled] {
            let a = t_test(&xs, &ys, kind).unwrap();
            let b = t_test(&ys, &xs, kind).unwrap();
            assert_eq!(a.t, -b.t);
            assert_abs_diff_eq!(a.p, b.p, epsilon = 1e-12);
        }
    }

    #[test]
    fn pearson_examples() {
        let xs = [1.0, 2.0, 3.5, 7.0];
        let twice: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let neg: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert_abs_diff_eq!(pearson_correlation(&xs, &twice).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pearson_correlation(&xs, &neg).unwrap(), -1.0, epsilon = 1e-15);
        assert!(matches!(
            pearson_correlation(&xs, &[1.0; 4]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(pearson_correlation(&xs, &[1.0, 2.0]).is_err());
    }
}
