use std::fs;
use std::path::Path;

use tempfile::TempDir;
use textplexity::corpus::{
    analyze_text, import_records_csv, import_records_json, ingest_directory, write_records,
    AnalyzeConfig, ClassLabel, ExportFormat, Group, IngestConfig, Library, TextRecord,
};
use textplexity::CodeDialect;

fn write(root: &Path, rel: &str, body: &[u8]) {
    let path = root.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(path, body).unwrap();
}

const TEXTS: &[(&str, &str)] = &[
    ("english/a.txt", "The cat saw the dog. The dog ran away."),
    ("english/b.txt", "We met John. John left early, and we stayed."),
    ("spanish/c.txt", "El perro vio al gato. El gato corrió."),
    ("spanish/d.txt", "¿Dónde está? Aquí está la casa grande."),
    ("artificial/e.c", "int main() { /* entry */ return x + 1; } // done"),
];

fn sample_corpus() -> TempDir {
    let dir = TempDir::new().unwrap();
    for (rel, body) in TEXTS {
        write(dir.path(), rel, body.as_bytes());
    }
    dir
}

fn without_path(mut r: TextRecord) -> TextRecord {
    r.source_path = None;
    r
}

#[test]
fn empty_directory_gives_empty_library() {
    let dir = TempDir::new().unwrap();
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    assert!(report.library.is_empty());
    assert!(report.warnings.is_empty());
}

#[test]
fn undecodable_file_is_skipped_with_a_warning() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "english/good.txt", b"A small text. A text.");
    write(dir.path(), "english/bad.txt", &[0xff, 0xfe, 0x00, 0xc3, 0x28]);
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    assert_eq!(report.library.len(), 1);
    assert_eq!(report.warnings.len(), 1);
    assert!(report.warnings[0].contains("bad.txt"), "{:?}", report.warnings);
}

#[test]
fn ingest_equals_per_file_analysis() {
    let dir = sample_corpus();
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    assert_eq!(report.library.len(), TEXTS.len());
    for (rel, body) in TEXTS {
        let stem = Path::new(rel).file_stem().unwrap().to_str().unwrap();
        let cfg = if rel.starts_with("artificial") {
            AnalyzeConfig::artificial(CodeDialect::c_family())
        } else if rel.starts_with("spanish") {
            AnalyzeConfig::natural(ClassLabel::Spanish)
        } else {
            AnalyzeConfig::natural(ClassLabel::English)
        };
        let direct = analyze_text(body, stem, &cfg).unwrap();
        let ingested = report.library.get(stem).unwrap().clone();
        assert_eq!(ingested.source_path.as_deref(), Some(*rel));
        assert_eq!(without_path(ingested), direct, "{rel}");
    }
}

#[test]
fn ingest_is_deterministic() {
    let dir = sample_corpus();
    let a = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    let b = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    assert_eq!(a.library.records(), b.library.records());
    assert_eq!(a.warnings, b.warnings);
}

#[test]
fn export_import_export_is_byte_identical() {
    let dir = sample_corpus();
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    let records = report.library.records();

    let mut csv1 = Vec::new();
    write_records(records, ExportFormat::Csv, &mut csv1).unwrap();
    let back = import_records_csv(csv1.as_slice()).unwrap();
    let mut csv2 = Vec::new();
    write_records(&back, ExportFormat::Csv, &mut csv2).unwrap();
    assert_eq!(csv1, csv2);

    let mut json1 = Vec::new();
    write_records(records, ExportFormat::Json, &mut json1).unwrap();
    let back = import_records_json(json1.as_slice()).unwrap();
    assert_eq!(back, records);
    let mut json2 = Vec::new();
    write_records(&back, ExportFormat::Json, &mut json2).unwrap();
    assert_eq!(json1, json2);
}

#[test]
fn library_file_round_trips() {
    let dir = sample_corpus();
    let mut lib = ingest_directory(dir.path(), &IngestConfig::default()).unwrap().library;
    lib.refit(&Group::single(ClassLabel::English)).unwrap();
    let out = TempDir::new().unwrap();
    let path = out.path().join("lib.json");
    lib.save(&path).unwrap();
    let back = Library::load(&path).unwrap();
    assert_eq!(back.records(), lib.records());
    assert_eq!(back.fits, lib.fits);
}

#[test]
fn manifest_overrides_directory_labels() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "texts/one.txt", b"Uno dos tres. Uno dos.");
    write(dir.path(), "texts/en/two.txt", b"One two three. One two.");
    write(dir.path(), "english/three.txt", b"Three little words.");
    write(
        dir.path(),
        "manifest.json",
        br#"{"texts": "spanish", "texts/en/": "english", "english/three.txt": "other"}"#,
    );
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    let label = |n: &str| report.library.get(n).unwrap().class_label;
    assert_eq!(report.library.len(), 3);
    assert_eq!(label("one"), ClassLabel::Spanish);
    assert_eq!(label("two"), ClassLabel::English);
    assert_eq!(label("three"), ClassLabel::Other);
}

#[test]
fn colliding_stems_fall_back_to_paths() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "english/x.txt", b"Some words here.");
    write(dir.path(), "spanish/x.txt", b"Unas palabras aqui.");
    let report = ingest_directory(dir.path(), &IngestConfig::default()).unwrap();
    let names: Vec<&str> = report.library.records().iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["english/x.txt", "spanish/x.txt"]);
}
