//! Turns raw text or source code into the symbol sequence every measurement
//! consumes.
//!
//! Natural-language rules:
//! * whitespace (spaces, line breaks) delimits words;
//! * every punctuation sign is its own symbol, except a `.` or `,` with a
//!   digit on both sides, which stays inside the number (`3.14`, `1,000`);
//!   an apostrophe or hyphen between two letters stays inside the word;
//! * words are case sensitive and accented forms are distinct;
//! * a title-case word at the start of the text or right after a `.` is
//!   lowercased, unless the same capitalized form also occurs somewhere that
//!   is not sentence-initial.
//!
//! Artificial-language rules: comments are dropped, each string literal
//! becomes one symbol with its whitespace deleted, and every operator or
//! punctuation character is its own symbol.

mod dialect;
mod lexer;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use dialect::{BlockComment, CodeDialect, DialectTable};
use lexer::{segments, SegmentKind};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Natural,
    Artificial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    English,
    Spanish,
    #[default]
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<String>,
    pub mode: Mode,
    pub source_name: String,
    /// Non-fatal diagnostics raised while tokenizing.
    pub warnings: Vec<String>,
}

impl TokenStream {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.source_name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Decodes UTF-8, reporting the offset of the first bad byte.
pub fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })
}

fn is_combining_mark(c: char) -> bool {
    matches!(c as u32, 0x0300..=0x036F | 0x1AB0..=0x1AFF | 0x1DC0..=0x1DFF | 0x20D0..=0x20FF | 0xFE20..=0xFE2F)
}

fn is_natural_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_combining_mark(c)
}

/// Splits one whitespace-free chunk into words and punctuation symbols.
fn split_natural_chunk(chunk: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut word = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let before = i.checked_sub(1).map(|j| chars[j]);
        let after = chars.get(i + 1).copied();
        let keep = if is_natural_word_char(c) {
            true
        } else if matches!(c, '.' | ',') {
            before.is_some_and(|b| b.is_ascii_digit()) && after.is_some_and(|a| a.is_ascii_digit())
        } else if matches!(c, '\'' | '’' | '-') {
            before.is_some_and(char::is_alphabetic) && after.is_some_and(char::is_alphabetic)
        } else {
            false
        };
        if keep {
            word.push(c);
        } else {
            if !word.is_empty() {
                out.push(std::mem::take(&mut word));
            }
            out.push(c.to_string());
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
}

fn is_title_case(word: &str) -> bool {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) if first.is_uppercase() => !chars.any(char::is_uppercase),
        _ => false,
    }
}

/// Opening signs that may sit between a period and the next word.
fn is_transparent_opener(token: &str, lang: Language) -> bool {
    match token {
        "\"" | "“" | "‘" | "(" | "[" | "«" => true,
        "¿" | "¡" => lang == Language::Spanish,
        _ => false,
    }
}

pub fn tokenize_natural(text: &str, lang: Language) -> TokenStream {
    let mut raw = Vec::new();
    for chunk in text.split_whitespace() {
        split_natural_chunk(chunk, &mut raw);
    }

    // Sentence-initial flags must come from the raw stream, before any
    // lowercasing, so both passes agree on positions.
    let mut initial = Vec::with_capacity(raw.len());
    let mut last_significant: Option<&str> = None;
    for tok in &raw {
        initial.push(last_significant.is_none_or(|t| t == "."));
        if !is_transparent_opener(tok, lang) {
            last_significant = Some(tok);
        }
    }

    let proper: HashSet<&str> = raw
        .iter()
        .zip(&initial)
        .filter(|(t, &init)| !init && is_title_case(t))
        .map(|(t, _)| t.as_str())
        .collect();

    let tokens = raw
        .iter()
        .zip(&initial)
        .map(|(t, &init)| {
            if init && is_title_case(t) && !proper.contains(t.as_str()) {
                t.to_lowercase()
            } else {
                t.clone()
            }
        })
        .collect();

    TokenStream {
        tokens,
        mode: Mode::Natural,
        source_name: String::new(),
        warnings: Vec::new(),
    }
}

/// Source with comments removed plus any diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub text: String,
    pub warnings: Vec<String>,
}

fn unterminated_warning(dialect: &CodeDialect, src: &str, start: usize) -> String {
    let line = src[..start].matches('\n').count() + 1;
    format!(
        "unterminated {} block comment starting on line {line}; stripped to end of input",
        dialect.name
    )
}

/// Removes line and block comments. A removed block comment squeezed between
/// two non-whitespace characters leaves a single space so neighbouring
/// symbols do not fuse.
pub fn strip_comments(source: &str, dialect: &CodeDialect) -> Stripped {
    let mut text = String::with_capacity(source.len());
    let mut warnings = Vec::new();
    for seg in segments(source, dialect) {
        match seg.kind {
            SegmentKind::Code | SegmentKind::Str => text.push_str(&source[seg.start..seg.end]),
            SegmentKind::Comment { terminated } => {
                if !terminated {
                    warnings.push(unterminated_warning(dialect, source, seg.start));
                }
                let before = text.chars().next_back();
                let after = source[seg.end..].chars().next();
                if before.is_some_and(|c| !c.is_whitespace())
                    && after.is_some_and(|c| !c.is_whitespace())
                {
                    text.push(' ');
                }
            }
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Stripped { text, warnings }
}

fn is_code_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || is_combining_mark(c)
}

fn split_code(code: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = code.chars().collect();
    let mut word = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_whitespace() {
            if !word.is_empty() {
                out.push(std::mem::take(&mut word));
            }
            continue;
        }
        let keep = is_code_word_char(c)
            || (c == '.'
                && i > 0
                && chars[i - 1].is_ascii_digit()
                && chars.get(i + 1).is_some_and(|a| a.is_ascii_digit()));
        if keep {
            word.push(c);
        } else {
            if !word.is_empty() {
                out.push(std::mem::take(&mut word));
            }
            out.push(c.to_string());
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
}

pub fn tokenize_artificial(source: &str, dialect: &CodeDialect) -> TokenStream {
    let mut tokens = Vec::new();
    let mut warnings = Vec::new();
    for seg in segments(source, dialect) {
        let piece = &source[seg.start..seg.end];
        match seg.kind {
            SegmentKind::Code => split_code(piece, &mut tokens),
            SegmentKind::Str => {
                tokens.push(piece.chars().filter(|c| !c.is_whitespace()).collect());
            }
            SegmentKind::Comment { terminated } => {
                if !terminated {
                    warnings.push(unterminated_warning(dialect, source, seg.start));
                }
            }
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    TokenStream {
        tokens,
        mode: Mode::Artificial,
        source_name: String::new(),
        warnings,
    }
}
