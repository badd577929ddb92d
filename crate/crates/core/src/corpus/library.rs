use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::record::{ClassLabel, TextRecord};
use crate::error::{Error, Result};
use crate::models::{fit_alpha, fit_heaps, AlphaFit, HeapsFit};
use crate::profile::{merge_all, FrequencyProfile};
use crate::stats::{descriptive_stats, pearson_correlation, t_test, Descriptive, TTestKind, TTestResult};

/// Seconds since the Unix epoch, or `SOURCE_DATE_EPOCH` when set so that
/// library files can be reproduced byte for byte.
pub fn timestamp() -> u64 {
    if let Some(v) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        return v;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// A set of class labels analyzed together, e.g. `english+spanish`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Group(BTreeSet<ClassLabel>);

impl Group {
    pub fn single(label: ClassLabel) -> Self {
        Group(BTreeSet::from([label]))
    }

    pub fn contains(&self, label: ClassLabel) -> bool {
        self.0.contains(&label)
    }
}

impl FromStr for Group {
    type Err = Error;

    /// `natural` is shorthand for `english+spanish`.
    fn from_str(s: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for part in s.split('+').map(str::trim) {
            if part.eq_ignore_ascii_case("natural") {
                set.insert(ClassLabel::English);
                set.insert(ClassLabel::Spanish);
            } else {
                set.insert(part.parse()?);
            }
        }
        Ok(Group(set))
    }
}

impl TryFrom<String> for Group {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Group> for String {
    fn from(g: Group) -> String {
        g.to_string()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|l| l.as_str()).collect();
        f.write_str(&names.join("+"))
    }
}

/// Corpus-level fits for one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelFits {
    pub label: Group,
    pub heaps: Option<HeapsFit>,
    pub alpha: Option<AlphaFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Library {
    records: Vec<TextRecord>,
    #[serde(default)]
    pub fits: BTreeMap<String, LabelFits>,
    /// Free-form echo of the configuration that produced the library.
    #[serde(default)]
    pub config: serde_json::Value,
    pub created: u64,
    pub updated: u64,
}

/// Column of per-text deviations a comparison runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum JColumn {
    #[default]
    #[serde(rename = "J_1D")]
    Whole,
    #[serde(rename = "J_thetaD")]
    Tail,
}

impl FromStr for JColumn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J_1D" | "j1d" | "whole" => Ok(JColumn::Whole),
            "J_thetaD" | "jthetad" | "tail" => Ok(JColumn::Tail),
            _ => Err(Error::Format {
                what: "column",
                detail: format!("unknown column `{s}` (J_1D or J_thetaD)"),
            }),
        }
    }
}

impl JColumn {
    pub fn of(self, r: &TextRecord) -> Option<f64> {
        match self {
            JColumn::Whole => r.j_1d,
            JColumn::Tail => r.j_theta_d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct GroupSummary {
    pub label: Group,
    pub n: usize,
    pub J1D: Option<Descriptive>,
    pub JthetaD: Option<Descriptive>,
    pub corr_J1D_L: Option<f64>,
    /// Against the tail length; absent when records carry no tail lengths.
    pub corr_JthetaD_Ltail: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub column: JColumn,
    pub first: GroupSummary,
    pub second: GroupSummary,
    pub test: TTestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedRow {
    pub rank: usize,
    pub symbol: String,
    pub use_percent: f64,
}

/// Merged frequency profile of a group with usage percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedTable {
    pub label: String,
    pub texts: usize,
    pub total_length: u64,
    pub diversity: usize,
    pub tail_start: usize,
    pub rows: Vec<MergedRow>,
}

pub fn merged_language_profile<'a, I>(profiles: I, label: &str) -> Result<MergedTable>
where
    I: IntoIterator<Item = &'a FrequencyProfile>,
{
    let profiles: Vec<&FrequencyProfile> = profiles.into_iter().collect();
    if profiles.is_empty() {
        return Err(Error::NoMatchingTexts(label.to_string()));
    }
    let merged = merge_all(profiles.iter().copied());
    let total = merged.length();
    if total == 0 {
        return Err(Error::NoMatchingTexts(label.to_string()));
    }
    let rows = merged
        .entries()
        .iter()
        .map(|e| MergedRow {
            rank: e.rank,
            symbol: e.symbol.clone(),
            use_percent: 100.0 * e.frequency as f64 / total as f64,
        })
        .collect();
    Ok(MergedTable {
        label: label.to_string(),
        texts: profiles.len(),
        total_length: total,
        diversity: merged.diversity(),
        tail_start: merged.tail_start(),
        rows,
    })
}

fn correlation(pairs: &[(f64, f64)]) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
    pearson_correlation(&xs, &ys).ok()
}

impl Library {
    /// Records are kept sorted by name; names must be unique.
    pub fn new(mut records: Vec<TextRecord>) -> Result<Self> {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = records.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::DuplicateName(w[0].name.clone()));
        }
        let now = timestamp();
        Ok(Library {
            records,
            fits: BTreeMap::new(),
            config: serde_json::Value::Null,
            created: now,
            updated: now,
        })
    }

    /// Renames later duplicates `name (2)`, `name (3)`, … instead of failing.
    pub fn with_unique_names(records: Vec<TextRecord>) -> Result<Self> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut out = Vec::with_capacity(records.len());
        for mut r in records {
            if seen.contains(&r.name) {
                let base = r.name.clone();
                let mut n = 2;
                while seen.contains(&format!("{base} ({n})")) {
                    n += 1;
                }
                r.name = format!("{base} ({n})");
            }
            seen.insert(r.name.clone());
            out.push(r);
        }
        Self::new(out)
    }

    pub fn records(&self) -> &[TextRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&TextRecord> {
        self.records
            .binary_search_by(|r| r.name.as_str().cmp(name))
            .ok()
            .map(|i| &self.records[i])
    }

    /// Inserts or replaces a record by name.
    pub fn upsert(&mut self, record: TextRecord) {
        match self
            .records
            .binary_search_by(|r| r.name.as_str().cmp(&record.name))
        {
            Ok(i) => self.records[i] = record,
            Err(i) => self.records.insert(i, record),
        }
        self.updated = timestamp();
    }

    pub fn remove(&mut self, name: &str) -> Option<TextRecord> {
        let i = self
            .records
            .binary_search_by(|r| r.name.as_str().cmp(name))
            .ok()?;
        self.updated = timestamp();
        Some(self.records.remove(i))
    }

    pub fn select<'a>(&'a self, group: &'a Group) -> impl Iterator<Item = &'a TextRecord> + 'a {
        self.records.iter().filter(move |r| group.contains(r.class_label))
    }

    pub fn labels(&self) -> BTreeSet<ClassLabel> {
        self.records.iter().map(|r| r.class_label).collect()
    }

    pub fn group_summary(&self, group: &Group) -> Result<GroupSummary> {
        let recs: Vec<&TextRecord> = self.select(group).collect();
        if recs.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: recs.len(),
            });
        }
        let whole: Vec<(f64, f64)> = recs
            .iter()
            .filter_map(|r| r.j_1d.map(|j| (j, r.length as f64)))
            .collect();
        let tail: Vec<f64> = recs.iter().filter_map(|r| r.j_theta_d).collect();
        let tail_pairs: Vec<(f64, f64)> = recs
            .iter()
            .filter_map(|r| Some((r.j_theta_d?, r.tail_length? as f64)))
            .collect();
        let js: Vec<f64> = whole.iter().map(|p| p.0).collect();
        Ok(GroupSummary {
            label: group.clone(),
            n: recs.len(),
            J1D: descriptive_stats(&js).ok(),
            JthetaD: descriptive_stats(&tail).ok(),
            corr_J1D_L: correlation(&whole),
            corr_JthetaD_Ltail: correlation(&tail_pairs),
        })
    }

    pub fn column(&self, group: &Group, column: JColumn) -> Vec<f64> {
        self.select(group).filter_map(|r| column.of(r)).collect()
    }

    pub fn compare(
        &self,
        first: &Group,
        second: &Group,
        column: JColumn,
        kind: TTestKind,
    ) -> Result<Comparison> {
        let test = t_test(
            &self.column(first, column),
            &self.column(second, column),
            kind,
        )?;
        Ok(Comparison {
            column,
            first: self.group_summary(first)?,
            second: self.group_summary(second)?,
            test,
        })
    }

    pub fn heaps_points(&self, group: &Group) -> Vec<(u64, u64)> {
        self.select(group).map(|r| (r.length, r.diversity)).collect()
    }

    pub fn entropy_points(&self, group: &Group) -> Vec<(f64, f64)> {
        self.select(group).map(|r| (r.d, r.h)).collect()
    }

    pub fn fit_heaps(&self, group: &Group) -> Result<HeapsFit> {
        fit_heaps(&self.heaps_points(group))
    }

    pub fn fit_alpha(&self, group: &Group) -> Result<AlphaFit> {
        fit_alpha(&self.entropy_points(group))
    }

    /// Fits both models for `group` and stores them under its name.
    pub fn refit(&mut self, group: &Group) -> Result<&LabelFits> {
        let fits = LabelFits {
            label: group.clone(),
            heaps: self.fit_heaps(group).ok(),
            alpha: self.fit_alpha(group).ok(),
        };
        if fits.heaps.is_none() && fits.alpha.is_none() {
            return Err(Error::Fit(format!("no model could be fitted for `{group}`")));
        }
        let key = group.to_string();
        self.fits.insert(key.clone(), fits);
        self.updated = timestamp();
        Ok(&self.fits[&key])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let lib: Library = serde_json::from_str(json)?;
        let names: HashSet<&str> = lib.records.iter().map(|r| r.name.as_str()).collect();
        if names.len() != lib.records.len() {
            return Err(Error::Format {
                what: "library",
                detail: "record names are not unique".into(),
            });
        }
        let mut lib = lib;
        lib.records.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(lib)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut json = self.to_json()?;
        json.push('\n');
        std::fs::write(path, json).map_err(|e| Error::io(path, e))
    }

    /// Loads a JSON library, a records CSV or a printed-table fixture CSV,
    /// chosen by extension and header.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let is_csv = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if !is_csv {
            return Self::from_json(&text);
        }
        let header = text.lines().next().unwrap_or_default();
        if header == super::appendix::HEADER {
            let rows = super::appendix::parse_appendix(text.as_bytes())?;
            super::appendix::appendix_library(&rows)
        } else {
            Self::new(super::export::import_records_csv(text.as_bytes())?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::record::{analyze_text, AnalyzeConfig};

    fn rec(name: &str, class: ClassLabel, text: &str) -> TextRecord {
        let mut cfg = AnalyzeConfig::natural(class);
        cfg.class_label = class;
        analyze_text(text, name, &cfg).unwrap()
    }

    #[test]
    fn group_parsing() {
        let g: Group = "natural".parse().unwrap();
        assert_eq!(g.to_string(), "english+spanish");
        assert_eq!("spanish+english".parse::<Group>().unwrap(), g);
        assert!("english+martian".parse::<Group>().is_err());
    }

    #[test]
    fn names_must_be_unique() {
        let a = rec("x", ClassLabel::English, "a b a");
        assert!(matches!(
            Library::new(vec![a.clone(), a.clone()]),
            Err(Error::DuplicateName(_))
        ));
        let lib = Library::with_unique_names(vec![a.clone(), a.clone(), a]).unwrap();
        let names: Vec<_> = lib.records().iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["x", "x (2)", "x (3)"]);
    }

    #[test]
    fn identical_records_have_zero_spread() {
        let a = rec("a", ClassLabel::English, "the cat saw the dog and the cat ran");
        let mut b = a.clone();
        b.name = "b".into();
        let lib = Library::new(vec![a, b]).unwrap();
        let s = lib.group_summary(&Group::single(ClassLabel::English)).unwrap();
        assert_eq!(s.n, 2);
        assert_eq!(s.J1D.unwrap().stddev, 0.0);
        assert!(lib.group_summary(&Group::single(ClassLabel::Spanish)).is_err());
    }

    #[test]
    fn merged_percentages() {
        let p = FrequencyProfile::from_counts([("a", 2), ("b", 1)]).unwrap();
        let q = FrequencyProfile::from_counts([("b", 3), ("c", 1)]).unwrap();
        let t = merged_language_profile([&p, &q], "x").unwrap();
        let got: Vec<(&str, f64)> = t.rows.iter().map(|r| (r.symbol.as_str(), r.use_percent)).collect();
        assert_eq!(got[0].0, "b");
        assert!((got[0].1 - 400.0 / 7.0).abs() < 1e-12);
        assert!((got[1].1 - 200.0 / 7.0).abs() < 1e-12);
        assert!((got[2].1 - 100.0 / 7.0).abs() < 1e-12);
        assert_eq!(t.total_length, 7);
        let single = merged_language_profile([&p], "x").unwrap();
        assert_eq!(single.rows.len(), 2);
        assert!(matches!(
            merged_language_profile(std::iter::empty(), "none"),
            Err(Error::NoMatchingTexts(_))
        ));
    }

    #[test]
    fn json_round_trip_keeps_fits() {
        let lib_recs = vec![
            rec("a", ClassLabel::English, "one two three one two one four"),
            rec("b", ClassLabel::English, "a b c d e f a b a g h i j k a"),
            rec("c", ClassLabel::English, "x y z x"),
        ];
        let mut lib = Library::new(lib_recs).unwrap();
        lib.refit(&Group::single(ClassLabel::English)).unwrap();
        let back = Library::from_json(&lib.to_json().unwrap()).unwrap();
        assert_eq!(back, lib);
        assert!(back.fits["english"].heaps.is_some());
    }
}
