//! The library of analyzed texts: per-text records, directory ingestion,
//! group statistics, merged profiles, export and plot data.

pub mod appendix;
pub mod export;
pub mod ingest;
pub mod library;
pub mod plot;
pub mod record;

pub use appendix::{appendix_library, bundled_appendix, parse_appendix, AppendixRow};
pub use export::{
    export_records, import_records_csv, import_records_json, write_records, ExportFormat,
    RECORD_COLUMNS,
};
pub use ingest::{ingest_directory, IngestConfig, IngestReport};
pub use library::{
    merged_language_profile, Comparison, Group, GroupSummary, JColumn, LabelFits, Library,
    MergedRow, MergedTable,
};
pub use plot::{library_series, profile_series, write_tsv, Figure, PlotRow};
pub use record::{
    analyze_text, analyze_text_with_profile, content_digest, record_from_profile, tokenize,
    AnalyzeConfig, ClassLabel, TextRecord,
};
