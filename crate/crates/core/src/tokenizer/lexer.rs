//! Splits source code into code, string-literal and comment segments.

use super::dialect::CodeDialect;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SegmentKind {
    Code,
    Str,
    /// `terminated` is false for a block comment that runs off the end.
    Comment { terminated: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Segment {
    pub kind: SegmentKind,
    pub start: usize,
    pub end: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// `marker` occurs at byte `at` of `src`. Alphanumeric markers such as
/// `REM` must stand alone as a word.
fn marker_at(src: &str, at: usize, marker: &str) -> bool {
    if !src[at..].starts_with(marker) {
        return false;
    }
    if marker.chars().all(is_word_char) {
        let before = src[..at].chars().next_back();
        let after = src[at + marker.len()..].chars().next();
        if before.is_some_and(is_word_char) || after.is_some_and(is_word_char) {
            return false;
        }
    }
    true
}

/// End (exclusive) of the string literal opened at `start` by `delim`. An
/// unterminated literal stops before the line break.
fn string_end(src: &str, start: usize, delim: char, escape: Option<char>) -> usize {
    let mut chars = src[start + delim.len_utf8()..].char_indices();
    let base = start + delim.len_utf8();
    while let Some((i, c)) = chars.next() {
        if Some(c) == escape {
            if let Some((_, n)) = chars.next() {
                if n == '\n' {
                    return base + i;
                }
            }
            continue;
        }
        if c == delim {
            return base + i + c.len_utf8();
        }
        if c == '\n' || c == '\r' {
            return base + i;
        }
    }
    src.len()
}

pub(crate) fn segments(src: &str, dialect: &CodeDialect) -> Vec<Segment> {
    let mut blocks: Vec<_> = dialect.block_comments.iter().collect();
    blocks.sort_by_key(|b| std::cmp::Reverse(b.open.len()));
    let mut lines: Vec<_> = dialect.line_comments.iter().collect();
    lines.sort_by_key(|l| std::cmp::Reverse(l.len()));

    let mut out = Vec::new();
    let mut code_start = 0;
    let mut prev: Option<char> = None;
    let mut i = 0;

    let flush = |out: &mut Vec<Segment>, code_start: usize, at: usize| {
        if at > code_start {
            out.push(Segment {
                kind: SegmentKind::Code,
                start: code_start,
                end: at,
            });
        }
    };

    while i < src.len() {
        let c = src[i..].chars().next().unwrap();

        if let Some(b) = blocks.iter().find(|b| src[i..].starts_with(b.open.as_str())) {
            flush(&mut out, code_start, i);
            let body = i + b.open.len();
            let (end, terminated) = match src[body..].find(b.close.as_str()) {
                Some(off) => (body + off + b.close.len(), true),
                None => (src.len(), false),
            };
            out.push(Segment {
                kind: SegmentKind::Comment { terminated },
                start: i,
                end,
            });
            i = end;
            code_start = end;
            prev = None;
            continue;
        }

        if lines.iter().any(|m| marker_at(src, i, m)) {
            flush(&mut out, code_start, i);
            let end = src[i..]
                .find(['\n', '\r'])
                .map_or(src.len(), |off| i + off);
            out.push(Segment {
                kind: SegmentKind::Comment { terminated: true },
                start: i,
                end,
            });
            i = end;
            code_start = end;
            prev = None;
            continue;
        }

        if dialect.string_delimiters.contains(&c) {
            let transpose = c == '\''
                && dialect.quote_is_transpose_after_operand
                && prev.is_some_and(|p| is_word_char(p) || matches!(p, ')' | ']' | '}' | '\'' | '.'));
            if !transpose {
                flush(&mut out, code_start, i);
                let end = string_end(src, i, c, dialect.escape);
                out.push(Segment {
                    kind: SegmentKind::Str,
                    start: i,
                    end,
                });
                i = end;
                code_start = end;
                prev = Some(c);
                continue;
            }
        }

        prev = Some(c);
        i += c.len_utf8();
    }
    flush(&mut out, code_start, src.len());
    out
}
