//! Plot data as tab-separated `x`, `y`, `series` rows. Nothing is rendered.

use std::io::Write;
use std::str::FromStr;

use super::library::{Group, Library};
use super::record::ClassLabel;
use crate::error::{Error, Result};
use crate::models::{heaps_predict, model_entropy};
use crate::profile::FrequencyProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Diversity against length, with Heaps fits.
    DiversityVsLength,
    /// Entropy against specific diversity, with entropy-model curves.
    EntropyVsDiversity,
    /// Emergence, self-organization and complexity against specific diversity.
    MeasuresVsDiversity,
    /// The same measures against length.
    MeasuresVsLength,
    /// Ranked frequency profiles (plot on log-log axes).
    RankedProfiles,
    /// Cumulative share of tokens by rank.
    Cdf,
    /// Whole-profile Zipf deviation against length.
    DeviationVsLength,
    /// Tail Zipf deviation against tail length.
    TailDeviationVsTailLength,
}

impl Figure {
    pub const NAMES: &'static str = "fig2, fig3, fig4, fig5, fig6, fig7, fig8, fig9, fig10, fig11";

    pub fn needs_profiles(self) -> bool {
        matches!(self, Figure::RankedProfiles | Figure::Cdf)
    }
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "fig2" => Figure::DiversityVsLength,
            "fig3" | "fig4" => Figure::EntropyVsDiversity,
            "fig5" => Figure::MeasuresVsDiversity,
            "fig6" => Figure::MeasuresVsLength,
            "fig7" | "fig8" => Figure::RankedProfiles,
            "fig9" => Figure::Cdf,
            "fig10" => Figure::DeviationVsLength,
            "fig11" => Figure::TailDeviationVsTailLength,
            _ => {
                return Err(Error::Format {
                    what: "figure",
                    detail: format!("unknown figure `{s}` (one of {})", Figure::NAMES),
                })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotRow {
    pub x: f64,
    pub y: f64,
    pub series: String,
}

fn row(x: f64, y: f64, series: impl Into<String>) -> PlotRow {
    PlotRow {
        x,
        y,
        series: series.into(),
    }
}

const CURVE_POINTS: usize = 100;

/// Series computed from the records (and stored fits) of a library.
pub fn library_series(lib: &Library, figure: Figure) -> Result<Vec<PlotRow>> {
    if figure.needs_profiles() {
        return Err(Error::Format {
            what: "figure",
            detail: "ranked profiles and CDFs need the texts, not a library".into(),
        });
    }
    let mut rows = Vec::new();
    for label in ClassLabel::ALL {
        let group = Group::single(label);
        let recs: Vec<_> = lib.select(&group).collect();
        if recs.is_empty() {
            continue;
        }
        let name = label.as_str();
        match figure {
            Figure::DiversityVsLength => {
                rows.extend(recs.iter().map(|r| row(r.length as f64, r.diversity as f64, name)));
                if let Ok(fit) = lib.fit_heaps(&group) {
                    let mut ls: Vec<u64> = recs.iter().map(|r| r.length).collect();
                    ls.sort_unstable();
                    ls.dedup();
                    for l in ls {
                        rows.push(row(l as f64, heaps_predict(&fit, l)?, format!("{name} heaps fit")));
                    }
                }
            }
            Figure::EntropyVsDiversity => {
                rows.extend(recs.iter().map(|r| row(r.d, r.h, name)));
                if let Ok(fit) = lib.fit_alpha(&group) {
                    for i in 1..=CURVE_POINTS {
                        let d = i as f64 / CURVE_POINTS as f64;
                        rows.push(row(d, model_entropy(d, fit.alpha)?, format!("{name} model")));
                    }
                }
            }
            Figure::MeasuresVsDiversity | Figure::MeasuresVsLength => {
                for r in &recs {
                    let x = if figure == Figure::MeasuresVsLength { r.length as f64 } else { r.d };
                    rows.push(row(x, r.e, format!("{name} e")));
                    rows.push(row(x, r.s, format!("{name} s")));
                    rows.push(row(x, r.c, format!("{name} c")));
                }
            }
            Figure::DeviationVsLength => {
                rows.extend(
                    recs.iter()
                        .filter_map(|r| Some(row(r.length as f64, r.j_1d?, name))),
                );
            }
            Figure::TailDeviationVsTailLength => {
                // printed tables carry no tail lengths; fall back to L, labelled as such
                if recs.iter().any(|r| r.tail_length.is_some()) {
                    rows.extend(
                        recs.iter()
                            .filter_map(|r| Some(row(r.tail_length? as f64, r.j_theta_d?, name))),
                    );
                } else {
                    rows.extend(recs.iter().filter_map(|r| {
                        Some(row(r.length as f64, r.j_theta_d?, format!("{name} vs L")))
                    }));
                }
            }
            Figure::RankedProfiles | Figure::Cdf => unreachable!(),
        }
    }
    Ok(rows)
}

/// Rank plots and CDFs of named profiles.
pub fn profile_series<'a, I>(profiles: I, figure: Figure) -> Result<Vec<PlotRow>>
where
    I: IntoIterator<Item = (&'a str, &'a FrequencyProfile)>,
{
    let mut rows = Vec::new();
    for (name, p) in profiles {
        match figure {
            Figure::RankedProfiles => rows.extend(
                p.entries()
                    .iter()
                    .map(|e| row(e.rank as f64, e.frequency as f64, name)),
            ),
            Figure::Cdf => rows.extend(p.cdf()?.points.into_iter().map(|(k, f)| row(k as f64, f, name))),
            _ => {
                return Err(Error::Format {
                    what: "figure",
                    detail: "only ranked profiles and CDFs are drawn from profiles".into(),
                })
            }
        }
    }
    Ok(rows)
}

pub fn write_tsv<W: Write>(rows: &[PlotRow], mut w: W) -> Result<()> {
    let mut out = String::from("x\ty\tseries\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.x, r.y, r.series));
    }
    w.write_all(out.as_bytes()).map_err(|e| Error::io("<output>", e))
}
