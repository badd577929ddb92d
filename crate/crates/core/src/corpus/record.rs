use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::metrics::{complexity_measures, ComplexityMeasures};
use crate::profile::{build_profile, FrequencyProfile};
use crate::tokenizer::{tokenize_artificial, tokenize_natural, CodeDialect, Language, Mode, TokenStream};
use crate::zipf::{tail_zipf_deviation, zipf_deviation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassLabel {
    English,
    Spanish,
    Artificial,
    Other,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 4] = [
        ClassLabel::English,
        ClassLabel::Spanish,
        ClassLabel::Artificial,
        ClassLabel::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::English => "english",
            ClassLabel::Spanish => "spanish",
            ClassLabel::Artificial => "artificial",
            ClassLabel::Other => "other",
        }
    }

    pub fn default_mode(self) -> Mode {
        match self {
            ClassLabel::Artificial => Mode::Artificial,
            _ => Mode::Natural,
        }
    }

    pub fn language(self) -> Language {
        match self {
            ClassLabel::English => Language::English,
            ClassLabel::Spanish => Language::Spanish,
            _ => Language::Other,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "english" | "eng" | "en" => Ok(ClassLabel::English),
            "spanish" | "esp" | "es" => Ok(ClassLabel::Spanish),
            "artificial" | "software" | "code" => Ok(ClassLabel::Artificial),
            "other" => Ok(ClassLabel::Other),
            _ => Err(Error::Format {
                what: "class label",
                detail: format!("unknown class `{s}`"),
            }),
        }
    }
}

/// One analyzed text: the row shape of the per-text property tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextRecord {
    pub name: String,
    #[serde(rename = "class")]
    pub class_label: ClassLabel,
    pub mode: Mode,
    #[serde(rename = "L")]
    pub length: u64,
    #[serde(rename = "D")]
    pub diversity: u64,
    /// Tail-start rank; unknown for records imported from printed tables.
    pub theta: Option<usize>,
    pub d: f64,
    pub h: f64,
    pub e: f64,
    pub s: f64,
    pub c: f64,
    /// Zipf exponent over `[1, D]`.
    pub g: Option<f64>,
    /// Zipf exponent re-fit over the tail.
    pub g_tail: Option<f64>,
    #[serde(rename = "J_1D")]
    pub j_1d: Option<f64>,
    #[serde(rename = "J_thetaD")]
    pub j_theta_d: Option<f64>,
    /// Tokens in ranks `[theta, D]`.
    #[serde(rename = "L_tail")]
    pub tail_length: Option<u64>,
    pub source_path: Option<String>,
    /// SHA-256 of the token stream, one token per line.
    pub content_digest: Option<String>,
}

/// Identity checks every record must satisfy.
pub(crate) const IDENTITY_TOL: f64 = 1e-12;

impl TextRecord {
    pub fn measures(&self) -> ComplexityMeasures {
        ComplexityMeasures {
            d: self.d,
            h: self.h,
            e: self.e,
            s: self.s,
            c: self.c,
        }
    }

    pub fn check_invariants(&self) -> Result<()> {
        let bad = |detail: String| {
            Err(Error::Format {
                what: "text record",
                detail: format!("{}: {detail}", self.name),
            })
        };
        if self.length == 0 || self.diversity == 0 || self.diversity > self.length {
            return bad(format!("L={} D={}", self.length, self.diversity));
        }
        let d = self.diversity as f64 / self.length as f64;
        if (self.d - d).abs() > IDENTITY_TOL {
            return bad(format!("d={} but D/L={d}", self.d));
        }
        if self.e != self.h {
            return bad("e != h".into());
        }
        if (self.s - (1.0 - self.h)).abs() > IDENTITY_TOL {
            return bad("s != 1 - h".into());
        }
        if (self.c - 4.0 * self.h * (1.0 - self.h)).abs() > IDENTITY_TOL {
            return bad("c != 4h(1-h)".into());
        }
        if let Some(t) = self.theta {
            if t < 1 || t as u64 > self.diversity {
                return bad(format!("theta={t} outside [1, D]"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeConfig {
    pub mode: Mode,
    pub class_label: ClassLabel,
    pub language: Language,
    /// Used in artificial mode.
    pub dialect: CodeDialect,
}

impl AnalyzeConfig {
    pub fn natural(class_label: ClassLabel) -> Self {
        AnalyzeConfig {
            mode: Mode::Natural,
            class_label,
            language: class_label.language(),
            dialect: CodeDialect::c_family(),
        }
    }

    pub fn artificial(dialect: CodeDialect) -> Self {
        AnalyzeConfig {
            mode: Mode::Artificial,
            class_label: ClassLabel::Artificial,
            language: Language::Other,
            dialect,
        }
    }
}

pub fn tokenize(source: &str, cfg: &AnalyzeConfig) -> TokenStream {
    match cfg.mode {
        Mode::Natural => tokenize_natural(source, cfg.language),
        Mode::Artificial => tokenize_artificial(source, &cfg.dialect),
    }
}

pub fn content_digest(tokens: &TokenStream) -> String {
    let mut hasher = Sha256::new();
    for t in &tokens.tokens {
        hasher.update(t.as_bytes());
        hasher.update(b"\n");
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Builds the record of an already computed profile.
pub fn record_from_profile(
    name: &str,
    profile: &FrequencyProfile,
    cfg: &AnalyzeConfig,
    digest: Option<String>,
) -> Result<TextRecord> {
    if profile.is_empty() {
        return Err(Error::EmptyText(name.to_string()));
    }
    let m = complexity_measures(profile)?;
    let whole = zipf_deviation(profile).ok();
    let tail = tail_zipf_deviation(profile).ok();
    Ok(TextRecord {
        name: name.to_string(),
        class_label: cfg.class_label,
        mode: cfg.mode,
        length: profile.length(),
        diversity: profile.diversity() as u64,
        theta: Some(profile.tail_start()),
        d: m.d,
        h: m.h,
        e: m.e,
        s: m.s,
        c: m.c,
        g: whole.map(|f| f.g),
        g_tail: tail.map(|f| f.g),
        j_1d: whole.map(|f| f.j),
        j_theta_d: tail.map(|f| f.j),
        tail_length: Some(profile.tail_length()?),
        source_path: None,
        content_digest: digest,
    })
}

/// Tokenize, profile and measure one text.
pub fn analyze_text_with_profile(
    source: &str,
    name: &str,
    cfg: &AnalyzeConfig,
) -> Result<(TextRecord, FrequencyProfile)> {
    let tokens = tokenize(source, cfg).with_name(name);
    if tokens.is_empty() {
        return Err(Error::EmptyText(name.to_string()));
    }
    let profile = build_profile(&tokens);
    let record = record_from_profile(name, &profile, cfg, Some(content_digest(&tokens)))?;
    Ok((record, profile))
}

pub fn analyze_text(source: &str, name: &str, cfg: &AnalyzeConfig) -> Result<TextRecord> {
    analyze_text_with_profile(source, name, cfg).map(|(r, _)| r)
}
