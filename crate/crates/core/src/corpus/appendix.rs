//! The published per-text table, bundled as a CSV fixture.
//!
//! Columns: name, class, L, D, d, h, g, J_1D, J_thetaD, with values as
//! printed (three decimals). The table has no tail-start or tail-length
//! columns.

use std::io::Read;

use serde::{Deserialize, Serialize};

use super::library::Library;
use super::record::{ClassLabel, TextRecord};
use crate::error::{Error, Result};

pub const HEADER: &str = "name,class,L,D,d,h,g,J_1D,J_thetaD";

const BUNDLED: &str = include_str!("../../fixtures/appendix_a.csv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppendixRow {
    pub name: String,
    pub class: ClassLabel,
    #[serde(rename = "L")]
    pub length: u64,
    #[serde(rename = "D")]
    pub diversity: u64,
    /// As printed, not recomputed.
    pub d: f64,
    pub h: f64,
    pub g: f64,
    #[serde(rename = "J_1D")]
    pub j_1d: f64,
    #[serde(rename = "J_thetaD")]
    pub j_theta_d: f64,
}

pub fn parse_appendix<R: Read>(r: R) -> Result<Vec<AppendixRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header: Vec<&str> = rdr.headers()?.iter().collect::<Vec<_>>();
    if header.join(",") != HEADER {
        return Err(Error::Format {
            what: "appendix CSV",
            detail: format!("expected header `{HEADER}`"),
        });
    }
    let rows = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<AppendixRow>, _>>()?;
    if let Some(r) = rows.iter().find(|r| r.length == 0 || r.diversity == 0 || r.diversity > r.length) {
        return Err(Error::Format {
            what: "appendix CSV",
            detail: format!("{}: L={} D={}", r.name, r.length, r.diversity),
        });
    }
    Ok(rows)
}

pub fn bundled_appendix() -> Vec<AppendixRow> {
    parse_appendix(BUNDLED.as_bytes()).expect("bundled fixture parses")
}

impl AppendixRow {
    /// The row as a record. `d` is recomputed from `L` and `D` so the record
    /// identities hold exactly; `e`, `s`, `c` are derived from the printed `h`.
    pub fn to_record(&self) -> TextRecord {
        let h = self.h;
        TextRecord {
            name: self.name.clone(),
            class_label: self.class,
            mode: self.class.default_mode(),
            length: self.length,
            diversity: self.diversity,
            theta: None,
            d: self.diversity as f64 / self.length as f64,
            h,
            e: h,
            s: 1.0 - h,
            c: 4.0 * h * (1.0 - h),
            g: Some(self.g),
            g_tail: None,
            j_1d: Some(self.j_1d),
            j_theta_d: Some(self.j_theta_d),
            tail_length: None,
            source_path: None,
            content_digest: None,
        }
    }
}

/// Repeated names get a ` (n)` suffix.
pub fn appendix_library(rows: &[AppendixRow]) -> Result<Library> {
    Library::with_unique_names(rows.iter().map(AppendixRow::to_record).collect())
}
