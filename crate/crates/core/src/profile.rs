//! Ranked symbol-frequency distributions.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tokenizer::TokenStream;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub rank: usize,
    pub symbol: String,
    pub frequency: u64,
}

/// Symbols ranked by descending frequency; equal frequencies are ordered by
/// symbol text so the ranking is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyProfile {
    entries: Vec<ProfileEntry>,
    length: u64,
    /// Tail-start rank; 0 only for the empty profile.
    tail_start: usize,
}

impl FrequencyProfile {
    /// Builds a profile from `(symbol, count)` pairs. Symbols must be unique
    /// and counts positive.
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, u64)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (s, f) in counts {
            let s = s.into();
            if f == 0 {
                return Err(Error::domain(format!("symbol `{s}` has zero count")));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::domain(format!("symbol `{s}` listed twice")));
            }
            pairs.push((s, f));
        }
        Ok(Self::from_unique_counts(pairs))
    }

    fn from_unique_counts(mut pairs: Vec<(String, u64)>) -> Self {
        pairs.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let length = pairs.iter().map(|p| p.1).sum();
        let entries: Vec<ProfileEntry> = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (symbol, frequency))| ProfileEntry {
                rank: i + 1,
                symbol,
                frequency,
            })
            .collect();
        let freqs: Vec<u64> = entries.iter().map(|e| e.frequency).collect();
        let tail_start = tail_start_of(&freqs).unwrap_or(0);
        FrequencyProfile {
            entries,
            length,
            tail_start,
        }
    }

    /// A profile over synthetic symbols `s00001, s00002, …` with the given
    /// frequencies (in any order).
    pub fn from_frequencies(freqs: &[u64]) -> Result<Self> {
        let mut sorted = freqs.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_counts(
            sorted
                .into_iter()
                .enumerate()
                .map(|(i, f)| (format!("s{:05}", i + 1), f)),
        )
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    /// Total token count L.
    pub fn length(&self) -> u64 {
        self.length
    }

    /// Number of distinct symbols D.
    pub fn diversity(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rank at which the tail begins (inclusive). 0 for an empty profile.
    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    pub fn frequencies(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.frequency)
    }

    pub fn frequency(&self, rank: usize) -> Option<u64> {
        rank.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.frequency)
    }

    pub fn counts(&self) -> HashMap<&str, u64> {
        self.entries
            .iter()
            .map(|e| (e.symbol.as_str(), e.frequency))
            .collect()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::domain("profile is empty"))
        } else {
            Ok(())
        }
    }

    /// Number of tokens in ranks `a..=b` (1-based).
    pub fn segment_count(&self, a: usize, b: usize) -> Result<u64> {
        let d = self.diversity();
        if a < 1 || a > b || b > d {
            return Err(Error::Bounds { a, b, diversity: d });
        }
        Ok(self.entries[a - 1..b].iter().map(|e| e.frequency).sum())
    }

    /// Tokens in the tail, ranks `theta..=D`.
    pub fn tail_length(&self) -> Result<u64> {
        self.require_nonempty()?;
        self.segment_count(self.tail_start, self.diversity())
    }

    pub fn find_tail_start(&self) -> Result<usize> {
        self.require_nonempty()?;
        Ok(self.tail_start)
    }

    pub fn cdf(&self) -> Result<CdfSeries> {
        self.require_nonempty()?;
        let total = self.length as f64;
        let mut running = 0u64;
        let mut points: Vec<(usize, f64)> = self
            .entries
            .iter()
            .map(|e| {
                running += e.frequency;
                (e.rank, running as f64 / total)
            })
            .collect();
        // running == length exactly at the last rank
        if let Some(last) = points.last_mut() {
            last.1 = 1.0;
        }
        Ok(CdfSeries { points })
    }

    /// Writes `rank,symbol,frequency` rows after a `# L=…,D=…,theta=…` line.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = w;
        writeln!(
            w,
            "# L={},D={},theta={}",
            self.length,
            self.diversity(),
            self.tail_start
        )
        .map_err(|e| Error::io("<profile csv>", e))?;
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(["rank", "symbol", "frequency"])?;
        for e in &self.entries {
            csv.serialize((e.rank, &e.symbol, e.frequency))?;
        }
        csv.flush().map_err(|e| Error::io("<profile csv>", e))?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(mut r: R) -> Result<Self> {
        let mut header = String::new();
        r.read_line(&mut header)
            .map_err(|e| Error::io("<profile csv>", e))?;
        let header = header.trim();
        let meta = header.strip_prefix("# ").ok_or_else(|| Error::Format {
            what: "profile csv",
            detail: "missing `# L=…,D=…,theta=…` header line".into(),
        })?;
        let mut declared = HashMap::new();
        for kv in meta.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Format {
                what: "profile csv",
                detail: format!("bad header field `{kv}`"),
            })?;
            let v: u64 = v.parse().map_err(|_| Error::Format {
                what: "profile csv",
                detail: format!("bad header value `{kv}`"),
            })?;
            declared.insert(k.to_string(), v);
        }
        let mut rows = Vec::new();
        for rec in csv::Reader::from_reader(r).deserialize() {
            let (_rank, symbol, freq): (usize, String, u64) = rec?;
            rows.push((symbol, freq));
        }
        let p = Self::from_counts(rows)?;
        let check = |k: &str, actual: u64| match declared.get(k) {
            Some(&v) if v != actual => Err(Error::Format {
                what: "profile csv",
                detail: format!("header says {k}={v} but rows give {actual}"),
            }),
            _ => Ok(()),
        };
        check("L", p.length)?;
        check("D", p.diversity() as u64)?;
        check("theta", p.tail_start as u64)?;
        Ok(p)
    }
}

pub fn build_profile(tokens: &TokenStream) -> FrequencyProfile {
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for t in &tokens.tokens {
        *counts.entry(t.as_str()).or_default() += 1;
    }
    FrequencyProfile::from_unique_counts(
        counts
            .into_iter()
            .map(|(s, f)| (s.to_string(), f))
            .collect(),
    )
}

/// Tail start over a non-increasing frequency sequence: the largest rank
/// whose frequency no other rank shares, or 1 when every value is shared.
/// `None` for an empty sequence.
pub fn tail_start_of(freqs: &[u64]) -> Option<usize> {
    if freqs.is_empty() {
        return None;
    }
    let mut multiplicity: HashMap<u64, usize> = HashMap::new();
    for &f in freqs {
        *multiplicity.entry(f).or_default() += 1;
    }
    Some(
        freqs
            .iter()
            .rposition(|f| multiplicity[f] == 1)
            .map_or(1, |i| i + 1),
    )
}

pub fn merge_profiles(p: &FrequencyProfile, q: &FrequencyProfile) -> FrequencyProfile {
    let mut counts: HashMap<&str, u64> = p.counts();
    for e in &q.entries {
        *counts.entry(e.symbol.as_str()).or_default() += e.frequency;
    }
    FrequencyProfile::from_unique_counts(
        counts
            .into_iter()
            .map(|(s, f)| (s.to_string(), f))
            .collect(),
    )
}

/// Merges any number of profiles in one pass.
pub fn merge_all<'a, I>(profiles: I) -> FrequencyProfile
where
    I: IntoIterator<Item = &'a FrequencyProfile>,
{
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for p in profiles {
        for e in &p.entries {
            *counts.entry(e.symbol.as_str()).or_default() += e.frequency;
        }
    }
    FrequencyProfile::from_unique_counts(
        counts
            .into_iter()
            .map(|(s, f)| (s.to_string(), f))
            .collect(),
    )
}

/// Cumulative share of tokens covered by the top-k ranks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfSeries {
    pub points: Vec<(usize, f64)>,
}
