//! Comment and string-literal conventions for the programming languages the
//! artificial-mode tokenizer understands.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An open/close pair delimiting a block comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComment {
    pub open: String,
    pub close: String,
}

/// Lexical conventions of one family of programming languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDialect {
    pub name: String,
    /// Markers that comment out the rest of the line.
    #[serde(default)]
    pub line_comments: Vec<String>,
    #[serde(default)]
    pub block_comments: Vec<BlockComment>,
    /// Characters that open and close a string literal.
    #[serde(default)]
    pub string_delimiters: Vec<char>,
    /// Escape character inside string literals, if the language has one.
    #[serde(default)]
    pub escape: Option<char>,
    /// `'` after an operand is a transpose operator, not a string opener
    /// (Matlab).
    #[serde(default)]
    pub quote_is_transpose_after_operand: bool,
}

impl CodeDialect {
    fn new(
        name: &str,
        line: &[&str],
        block: &[(&str, &str)],
        strings: &[char],
        escape: Option<char>,
    ) -> Self {
        CodeDialect {
            name: name.to_string(),
            line_comments: line.iter().map(|s| s.to_string()).collect(),
            block_comments: block
                .iter()
                .map(|(o, c)| BlockComment {
                    open: o.to_string(),
                    close: c.to_string(),
                })
                .collect(),
            string_delimiters: strings.to_vec(),
            escape,
            quote_is_transpose_after_operand: false,
        }
    }

    /// C, C++, C#, Java: `//`, `/* */`, `"` and `'` with backslash escapes.
    pub fn c_family() -> Self {
        Self::new("c-family", &["//"], &[("/*", "*/")], &['"', '\''], Some('\\'))
    }

    /// Shell, Python, Perl and similar `#`-commented scripts.
    pub fn script_hash() -> Self {
        Self::new("script-hash", &["#"], &[], &['"', '\''], Some('\\'))
    }

    /// Visual Basic and classic BASIC: `'` and `REM` line comments.
    pub fn basic() -> Self {
        Self::new("basic", &["'", "REM", "Rem", "rem"], &[], &['"'], None)
    }

    /// Matlab / Octave: `%` lines, `%{ %}` blocks, `'` doubling as transpose.
    pub fn matlab() -> Self {
        let mut d = Self::new("matlab", &["%"], &[("%{", "%}")], &['\'', '"'], None);
        d.quote_is_transpose_after_operand = true;
        d
    }

    /// HTML and XML markup.
    pub fn markup() -> Self {
        Self::new("markup", &[], &[("<!--", "-->")], &['"'], None)
    }

    /// PHP, which mixes C-style and `#` comments.
    pub fn php() -> Self {
        Self::new(
            "php",
            &["//", "#"],
            &[("/*", "*/"), ("<!--", "-->")],
            &['"', '\''],
            Some('\\'),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Dialect("dialect name is empty".into()));
        }
        if self.line_comments.iter().any(String::is_empty) {
            return Err(Error::Dialect(format!(
                "{}: empty line-comment marker",
                self.name
            )));
        }
        for b in &self.block_comments {
            if b.open.is_empty() || b.close.is_empty() {
                return Err(Error::Dialect(format!(
                    "{}: block comment markers must be a non-empty open/close pair",
                    self.name
                )));
            }
        }
        if self.string_delimiters.iter().any(|c| c.is_whitespace()) {
            return Err(Error::Dialect(format!(
                "{}: whitespace cannot delimit strings",
                self.name
            )));
        }
        Ok(())
    }
}

/// Maps lower-cased file extensions (without the dot) to dialects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DialectTable {
    pub extensions: BTreeMap<String, CodeDialect>,
    /// Used for artificial-mode files whose extension is not listed.
    pub default: CodeDialect,
}

impl Default for DialectTable {
    fn default() -> Self {
        let mut extensions = BTreeMap::new();
        let c = CodeDialect::c_family();
        for ext in ["c", "h", "cpp", "hpp", "cc", "cs", "java", "js", "ts", "rs", "go"] {
            extensions.insert(ext.to_string(), c.clone());
        }
        for ext in ["py", "sh", "pl", "rb", "r"] {
            extensions.insert(ext.to_string(), CodeDialect::script_hash());
        }
        for ext in ["bas", "vb", "vbs", "frm"] {
            extensions.insert(ext.to_string(), CodeDialect::basic());
        }
        extensions.insert("m".into(), CodeDialect::matlab());
        for ext in ["html", "htm", "xml", "xhtml"] {
            extensions.insert(ext.to_string(), CodeDialect::markup());
        }
        extensions.insert("php".into(), CodeDialect::php());
        DialectTable {
            extensions,
            default: CodeDialect::c_family(),
        }
    }
}

impl DialectTable {
    pub fn from_json(json: &str) -> Result<Self> {
        let table: DialectTable = serde_json::from_str(json)?;
        table.validate()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&json)
    }

    pub fn validate(&self) -> Result<()> {
        self.default.validate()?;
        self.extensions.values().try_for_each(CodeDialect::validate)
    }

    /// Dialect registered for `ext`, case-insensitively.
    pub fn for_extension(&self, ext: &str) -> Option<&CodeDialect> {
        self.extensions.get(&ext.to_ascii_lowercase())
    }

    /// Looks a dialect up by name among the registered ones.
    pub fn by_name(&self, name: &str) -> Option<&CodeDialect> {
        if self.default.name == name {
            return Some(&self.default);
        }
        self.extensions.values().find(|d| d.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_table_is_valid() {
        let table = DialectTable::default();
        table.validate().unwrap();
        assert_eq!(table.for_extension("CS").unwrap().name, "c-family");
        assert_eq!(table.for_extension("m").unwrap().name, "matlab");
        assert!(table.for_extension("txt").is_none());
    }

    #[test]
    fn json_round_trip() {
        let table = DialectTable::default();
        let json = serde_json::to_string(&table).unwrap();
        assert_eq!(DialectTable::from_json(&json).unwrap(), table);
    }

    #[test]
    fn rejects_half_open_block() {
        let json = r#"{"extensions":{},"default":{"name":"x","block_comments":[{"open":"(*","close":""}]}}"#;
        assert!(matches!(
            DialectTable::from_json(json),
            Err(Error::Dialect(_))
        ));
    }
}
