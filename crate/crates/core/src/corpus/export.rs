//! Records to and from CSV and JSON.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::record::{ClassLabel, TextRecord};
use crate::error::{Error, Result};

pub const RECORD_COLUMNS: [&str; 14] = [
    "name", "class", "L", "D", "theta", "d", "h", "e", "s", "c", "g", "g_tail", "J_1D", "J_thetaD",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Format {
                what: "export format",
                detail: format!("unknown format `{s}` (csv or json)"),
            }),
        }
    }
}

// `{}` on f64 prints the shortest string that parses back to the same value
fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(r: &TextRecord) -> [String; 14] {
    [
        r.name.clone(),
        r.class_label.to_string(),
        r.length.to_string(),
        r.diversity.to_string(),
        opt(r.theta),
        r.d.to_string(),
        r.h.to_string(),
        r.e.to_string(),
        r.s.to_string(),
        r.c.to_string(),
        opt(r.g),
        opt(r.g_tail),
        opt(r.j_1d),
        opt(r.j_theta_d),
    ]
}

pub fn write_records_csv<W: Write>(records: &[TextRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(RECORD_COLUMNS)?;
    for r in records {
        out.write_record(csv_row(r))?;
    }
    out.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub fn write_records_json<W: Write>(records: &[TextRecord], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, records)?;
    w.write_all(b"\n").map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[TextRecord], format: ExportFormat, w: W) -> Result<()> {
    match format {
        ExportFormat::Csv => write_records_csv(records, w),
        ExportFormat::Json => write_records_json(records, w),
    }
}

pub fn export_records(records: &[TextRecord], format: ExportFormat, path: &std::path::Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write_records(records, format, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}

fn parse_field<T: std::str::FromStr>(row: usize, col: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Format {
        what: "records CSV",
        detail: format!("row {row}: column {col} has bad value `{s}`"),
    })
}

fn parse_opt<T: std::str::FromStr>(row: usize, col: &str, s: &str) -> Result<Option<T>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_field(row, col, s).map(Some)
    }
}

/// Reads a records CSV written by [`write_records_csv`], checking every
/// record's identities.
pub fn import_records_csv<R: Read>(r: R) -> Result<Vec<TextRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != RECORD_COLUMNS {
        return Err(Error::Format {
            what: "records CSV",
            detail: format!("expected header `{}`", RECORD_COLUMNS.join(",")),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let n = i + 2;
        let f = |k: usize| row.get(k).unwrap_or("");
        let class_label: ClassLabel = parse_field(n, "class", f(1))?;
        let rec = TextRecord {
            name: f(0).to_string(),
            class_label,
            mode: class_label.default_mode(),
            length: parse_field(n, "L", f(2))?,
            diversity: parse_field(n, "D", f(3))?,
            theta: parse_opt(n, "theta", f(4))?,
            d: parse_field(n, "d", f(5))?,
            h: parse_field(n, "h", f(6))?,
            e: parse_field(n, "e", f(7))?,
            s: parse_field(n, "s", f(8))?,
            c: parse_field(n, "c", f(9))?,
            g: parse_opt(n, "g", f(10))?,
            g_tail: parse_opt(n, "g_tail", f(11))?,
            j_1d: parse_opt(n, "J_1D", f(12))?,
            j_theta_d: parse_opt(n, "J_thetaD", f(13))?,
            tail_length: None,
            source_path: None,
            content_digest: None,
        };
        rec.check_invariants()?;
        out.push(rec);
    }
    Ok(out)
}

pub fn import_records_json<R: Read>(r: R) -> Result<Vec<TextRecord>> {
    let records: Vec<TextRecord> = serde_json::from_reader(r)?;
    for rec in &records {
        rec.check_invariants()?;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::record::{analyze_text, AnalyzeConfig};

    #[test]
    fn empty_export_is_header_only() {
        let mut buf = Vec::new();
        write_records_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "name,class,L,D,theta,d,h,e,s,c,g,g_tail,J_1D,J_thetaD\n"
        );
    }

    #[test]
    fn one_record_round_trips() {
        let cfg = AnalyzeConfig::natural(ClassLabel::English);
        let r = analyze_text("The cat saw the dog, and the dog saw a cat.", "t", &cfg).unwrap();
        let mut buf = Vec::new();
        write_records_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        assert_eq!(String::from_utf8_lossy(&buf).lines().count(), 2);
        let back = import_records_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 1);
        let b = &back[0];
        assert_eq!((b.d, b.h, b.c, b.j_1d, b.g_tail), (r.d, r.h, r.c, r.j_1d, r.g_tail));
        assert_eq!(b.theta, r.theta);
    }

    #[test]
    fn import_rejects_broken_identities() {
        let csv = "name,class,L,D,theta,d,h,e,s,c,g,g_tail,J_1D,J_thetaD\n\
                   x,english,10,5,2,0.5,0.9,0.8,0.1,0.36,,,,\n";
        assert!(import_records_csv(csv.as_bytes()).is_err());
        let csv = "name,L\nx,1\n";
        assert!(import_records_csv(csv.as_bytes()).is_err());
    }
}
