//! Directory ingestion.
//!
//! Every regular file under the root is one text. Its class comes from
//! `manifest.json` at the root when that file names it (a JSON object
//! mapping relative paths or directory prefixes to class labels; the longest
//! matching prefix wins), otherwise from the first directory component
//! (`english/…`, `spanish/…`, `artificial/…`), otherwise from the configured
//! default. Artificial texts pick their comment dialect by extension.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::library::Library;
use super::record::{content_digest, record_from_profile, tokenize, AnalyzeConfig, ClassLabel, TextRecord};
use crate::error::{Error, Result};
use crate::profile::{build_profile, FrequencyProfile};
use crate::tokenizer::{decode, DialectTable, Mode};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, Default)]
pub struct IngestConfig {
    pub dialects: DialectTable,
    /// Class for files with no manifest entry and no recognizable top directory.
    pub default_label: Option<ClassLabel>,
    /// Forces one mode for every file instead of deriving it from the class.
    pub mode_override: Option<Mode>,
    /// Keep each text's profile in the report (needed for merged tables and
    /// rank plots).
    pub keep_profiles: bool,
}

#[derive(Debug, Clone)]
pub struct IngestReport {
    pub library: Library,
    /// One line per skipped file or tokenizer diagnostic, in path order.
    pub warnings: Vec<String>,
    pub profiles: BTreeMap<String, FrequencyProfile>,
}

fn rel_string(rel: &Path) -> String {
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn read_manifest(root: &Path) -> Result<Vec<(String, ClassLabel)>> {
    let path = root.join(MANIFEST);
    if !path.is_file() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let map: BTreeMap<String, String> = serde_json::from_str(&text)?;
    let mut entries = map
        .into_iter()
        .map(|(k, v)| Ok((k.trim_end_matches('/').to_string(), v.parse()?)))
        .collect::<Result<Vec<_>>>()?;
    // longest prefix first
    entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(entries)
}

fn label_for(rel: &str, manifest: &[(String, ClassLabel)], default: Option<ClassLabel>) -> ClassLabel {
    let by_manifest = manifest.iter().find(|(prefix, _)| {
        rel == prefix || (rel.starts_with(prefix.as_str()) && rel[prefix.len()..].starts_with('/'))
    });
    if let Some((_, label)) = by_manifest {
        return *label;
    }
    if let Some((top, _)) = rel.split_once('/') {
        if let Ok(label) = top.parse() {
            return label;
        }
    }
    default.unwrap_or(ClassLabel::Other)
}

struct Job {
    path: PathBuf,
    rel: String,
    name: String,
    label: ClassLabel,
}

enum Outcome {
    Done(Box<TextRecord>, Option<FrequencyProfile>, Vec<String>),
    Skipped(String),
}

fn analyze_job(job: &Job, cfg: &IngestConfig) -> Outcome {
    let bytes = match std::fs::read(&job.path) {
        Ok(b) => b,
        Err(e) => return Outcome::Skipped(format!("{}: unreadable ({e})", job.rel)),
    };
    let text = match decode(&bytes) {
        Ok(t) => t,
        Err(e) => return Outcome::Skipped(format!("{}: {e}", job.rel)),
    };
    let ext = job
        .path
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mode = cfg.mode_override.unwrap_or_else(|| job.label.default_mode());
    let analyze_cfg = AnalyzeConfig {
        mode,
        class_label: job.label,
        language: job.label.language(),
        dialect: cfg
            .dialects
            .for_extension(&ext)
            .unwrap_or(&cfg.dialects.default)
            .clone(),
    };
    let tokens = tokenize(text, &analyze_cfg);
    if tokens.is_empty() {
        return Outcome::Skipped(format!("{}: {}", job.rel, Error::EmptyText(job.name.clone())));
    }
    let profile = build_profile(&tokens);
    match record_from_profile(&job.name, &profile, &analyze_cfg, Some(content_digest(&tokens))) {
        Ok(mut rec) => {
            rec.source_path = Some(job.rel.clone());
            let warnings = tokens
                .warnings
                .iter()
                .map(|w| format!("{}: {w}", job.rel))
                .collect();
            let profile = cfg.keep_profiles.then_some(profile);
            Outcome::Done(Box::new(rec), profile, warnings)
        }
        Err(e) => Outcome::Skipped(format!("{}: {e}", job.rel)),
    }
}

/// Analyzes every file under `root`. Files are processed in parallel; the
/// result does not depend on scheduling.
pub fn ingest_directory(root: &Path, cfg: &IngestConfig) -> Result<IngestReport> {
    let meta = std::fs::metadata(root).map_err(|e| Error::io(root, e))?;
    if !meta.is_dir() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a directory"),
        ));
    }
    let manifest = read_manifest(root)?;
    let mut warnings = Vec::new();
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                warnings.push(format!("walk error: {e}"));
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = entry.path().strip_prefix(root).unwrap_or(entry.path());
        let rel_s = rel_string(rel);
        let hidden = rel
            .components()
            .any(|c| c.as_os_str().to_string_lossy().starts_with('.'));
        if hidden || rel_s == MANIFEST {
            continue;
        }
        files.push((entry.path().to_path_buf(), rel_s));
    }

    // names are file stems unless two files share a stem
    let mut stem_count: HashMap<String, usize> = HashMap::new();
    let stems: Vec<String> = files
        .iter()
        .map(|(p, _)| p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
        .collect();
    for s in &stems {
        *stem_count.entry(s.clone()).or_default() += 1;
    }
    let jobs: Vec<Job> = files
        .into_iter()
        .zip(stems)
        .map(|((path, rel), stem)| Job {
            name: if stem_count[&stem] > 1 { rel.clone() } else { stem },
            label: label_for(&rel, &manifest, cfg.default_label),
            path,
            rel,
        })
        .collect();

    let outcomes: Vec<Outcome> = jobs.par_iter().map(|j| analyze_job(j, cfg)).collect();

    let mut records = Vec::new();
    let mut profiles = BTreeMap::new();
    for (job, outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Outcome::Done(rec, profile, w) => {
                log::debug!("analyzed {} (L={}, D={})", job.rel, rec.length, rec.diversity);
                warnings.extend(w);
                if let Some(p) = profile {
                    profiles.insert(job.name.clone(), p);
                }
                records.push(*rec);
            }
            Outcome::Skipped(w) => {
                log::warn!("{w}");
                warnings.push(w);
            }
        }
    }
    let mut library = Library::new(records)?;
    library.config = serde_json::json!({
        "root": root.to_string_lossy(),
        "default_label": cfg.default_label.map(|l| l.as_str()),
        "mode_override": cfg.mode_override,
    });
    Ok(IngestReport {
        library,
        warnings,
        profiles,
    })
}
