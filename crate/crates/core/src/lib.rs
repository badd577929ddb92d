//! Symbolic diversity, entropy, emergence, self-organization, complexity
//! and Zipf/Heaps statistics for texts in natural and programming languages.
//!
//! The pipeline is: [`tokenizer`] turns a text into symbols, [`profile`]
//! ranks them by frequency, [`metrics`] and [`zipf`] measure the ranked
//! profile, and [`corpus`] collects the per-text records into a library on
//! which [`models`] and [`stats`] run corpus-level fits and tests.
//!
//! ```
//! use textplexity::corpus::{analyze_text, AnalyzeConfig, ClassLabel};
//!
//! let cfg = AnalyzeConfig::natural(ClassLabel::English);
//! let rec = analyze_text("The cat saw the dog. The dog ran.", "demo", &cfg).unwrap();
//! assert_eq!((rec.length, rec.diversity), (10, 6));
//! assert_eq!(rec.e, rec.h);
//! ```

pub mod corpus;
pub mod error;
pub mod metrics;
pub mod models;
pub mod profile;
mod regression;
pub mod stats;
pub mod tokenizer;
pub mod zipf;

pub use error::{Error, Result};
pub use metrics::{complexity_measures, entropy, specific_diversity, ComplexityMeasures};
pub use models::{
    alpha_from_q, classify_language, fit_alpha, fit_heaps, heaps_predict, model_entropy,
    q_from_alpha, AlphaFit, Classification, HeapsFit,
};
pub use profile::{build_profile, merge_profiles, CdfSeries, FrequencyProfile, ProfileEntry};
pub use stats::{
    descriptive_stats, pearson_correlation, t_test, welch_t_test, Descriptive, TTestKind,
    TTestResult,
};
pub use tokenizer::{
    strip_comments, tokenize_artificial, tokenize_natural, CodeDialect, DialectTable, Language,
    Mode, TokenStream,
};
pub use zipf::{
    fit_zipf_exponent, tail_zipf_deviation, zipf_deviation, zipf_reference, ZipfFit,
};
