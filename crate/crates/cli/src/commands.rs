use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;
use textplexity::corpus::{
    appendix_library, bundled_appendix, content_digest, ingest_directory, library_series,
    merged_language_profile, profile_series, record_from_profile, tokenize, write_records,
    write_tsv, AnalyzeConfig, ClassLabel, ExportFormat, Group, IngestConfig, IngestReport,
    JColumn, Library, TextRecord,
};
use textplexity::tokenizer::decode;
use textplexity::zipf::zipf_segment;
use textplexity::{
    build_profile, classify_language, AlphaFit, DialectTable, FrequencyProfile, Language, Mode,
    TTestKind,
};

use crate::table::{opt_real, p_value, pairs, real, render};
use crate::{Command, DataFormat, DialectOpts, Format, LangArg, Model, ModeArg, TextOpts};

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Tokenize { file, text } => cmd_tokenize(&file, &text),
        Command::Analyze { file, text, format, segment } => cmd_analyze(&file, &text, format, segment),
        Command::Corpus { dir, library, format, output, default_class, mode, dialects } => {
            let cfg = IngestConfig {
                dialects: load_dialects(&dialects)?,
                default_label: default_class,
                mode_override: mode.map(mode_of),
                keep_profiles: false,
            };
            cmd_corpus(&dir, &cfg, library.as_deref(), format, output.as_deref())
        }
        Command::Fit { model, library, label, format } => cmd_fit(model, &library, &label, format),
        Command::Compare { library, groups, column, pooled, format } => {
            let kind = if pooled { TTestKind::Pooled } else { TTestKind::Welch };
            let lib = load_library(&library)?;
            let cmp = lib
                .compare(&groups.0, &groups.1, column, kind)
                .with_context(|| format!("comparing {} and {}", groups.0, groups.1))?;
            match format {
                Format::Json => emit_json(&cmp),
                Format::Csv => bail!("compare supports table and json output"),
                Format::Table => {
                    let col = serde_json::to_value(column)?;
                    let col = col.as_str().unwrap_or_default().to_string();
                    let rows: Vec<Vec<String>> = [&cmp.first, &cmp.second]
                        .iter()
                        .map(|s| {
                            let stats = match column {
                                JColumn::Whole => s.J1D,
                                JColumn::Tail => s.JthetaD,
                            };
                            vec![
                                s.label.to_string(),
                                s.n.to_string(),
                                opt_real(stats.map(|d| d.mean)),
                                opt_real(stats.map(|d| d.stddev)),
                                opt_real(s.corr_J1D_L),
                                opt_real(s.corr_JthetaD_Ltail),
                            ]
                        })
                        .collect();
                    let mut out = format!("column {col}, {:?} t test\n", cmp.test.kind);
                    out.push_str(&render(
                        &["group", "n", "mean", "std", "corr J_1D:L", "corr J_thetaD:L_tail"],
                        &rows,
                    ));
                    out.push_str(&pairs(&[
                        ("t", real(cmp.test.t)),
                        ("df", real(cmp.test.df)),
                        ("p (two-tailed)", p_value(cmp.test.p)),
                    ]));
                    emit(None, out.as_bytes())
                }
            }
        }
        Command::Profile { path, merged, text, format, top } => match merged {
            Some(group) => cmd_merged(&path, &group, &text, format, top),
            None => cmd_profile(&path, &text, format, top),
        },
        Command::Plot { input, figure, output, dialects } => {
            let rows = if Path::new(&input).is_dir() {
                let cfg = IngestConfig {
                    dialects: load_dialects(&dialects)?,
                    keep_profiles: figure.needs_profiles(),
                    ..IngestConfig::default()
                };
                let report = ingest(Path::new(&input), &cfg)?;
                if figure.needs_profiles() {
                    profile_series(report.profiles.iter().map(|(k, v)| (k.as_str(), v)), figure)?
                } else {
                    library_series(&report.library, figure)?
                }
            } else {
                library_series(&load_library(&input)?, figure)?
            };
            let mut buf = Vec::new();
            write_tsv(&rows, &mut buf)?;
            emit(output.as_deref(), &buf)
        }
        Command::Export { library, format, output } => {
            let lib = load_library(&library)?;
            let mut buf = Vec::new();
            write_records(lib.records(), export_format(format), &mut buf)?;
            emit(output.as_deref(), &buf)
        }
        Command::Classify { file, library, text, format } => cmd_classify(&file, &library, &text, format),
    }
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Natural => Mode::Natural,
        ModeArg::Artificial => Mode::Artificial,
    }
}

fn lang_of(l: LangArg) -> Language {
    match l {
        LangArg::English => Language::English,
        LangArg::Spanish => Language::Spanish,
        LangArg::Other => Language::Other,
    }
}

fn export_format(f: DataFormat) -> ExportFormat {
    match f {
        DataFormat::Csv => ExportFormat::Csv,
        DataFormat::Json => ExportFormat::Json,
    }
}

fn load_dialects(opts: &DialectOpts) -> Result<DialectTable> {
    match &opts.dialects {
        Some(p) => DialectTable::load(p).with_context(|| format!("loading dialect table {}", p.display())),
        None => Ok(DialectTable::default()),
    }
}

/// `@appendix` is the bundled published table; anything else is a path.
fn load_library(source: &str) -> Result<Library> {
    if source == "@appendix" {
        return Ok(appendix_library(&bundled_appendix())?);
    }
    Library::load(Path::new(source)).with_context(|| format!("loading library {source}"))
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit(None, s.as_bytes())
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = decode(&bytes).with_context(|| format!("decoding {}", path.display()))?;
    Ok(text.to_string())
}

fn text_config(path: &Path, opts: &TextOpts) -> Result<AnalyzeConfig> {
    let table = load_dialects(&opts.dialects)?;
    let ext = path
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_default();
    let known = table.for_extension(&ext);
    let mode = opts
        .mode
        .map(mode_of)
        .or(opts.class.map(ClassLabel::default_mode))
        .unwrap_or(if known.is_some() { Mode::Artificial } else { Mode::Natural });
    let class_label = opts.class.unwrap_or(match (mode, opts.lang) {
        (Mode::Artificial, _) => ClassLabel::Artificial,
        (Mode::Natural, Some(LangArg::English)) => ClassLabel::English,
        (Mode::Natural, Some(LangArg::Spanish)) => ClassLabel::Spanish,
        (Mode::Natural, _) => ClassLabel::Other,
    });
    let language = opts.lang.map(lang_of).unwrap_or(class_label.language());
    let dialect = match &opts.dialect {
        Some(name) => table
            .by_name(name)
            .ok_or_else(|| anyhow!("no dialect named `{name}` in the dialect table"))?
            .clone(),
        None => known.unwrap_or(&table.default).clone(),
    };
    Ok(AnalyzeConfig {
        mode,
        class_label,
        language,
        dialect,
    })
}

fn analyze_file(path: &Path, opts: &TextOpts) -> Result<(TextRecord, FrequencyProfile)> {
    let cfg = text_config(path, opts)?;
    let text = read_text(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tokens = tokenize(&text, &cfg).with_name(name.clone());
    for w in &tokens.warnings {
        log::warn!("{}: {w}", path.display());
    }
    if tokens.is_empty() {
        bail!("{}: no symbols after tokenization", path.display());
    }
    let profile = build_profile(&tokens);
    let mut rec = record_from_profile(&name, &profile, &cfg, Some(content_digest(&tokens)))?;
    rec.source_path = Some(path.to_string_lossy().into_owned());
    Ok((rec, profile))
}

fn cmd_tokenize(file: &Path, opts: &TextOpts) -> Result<()> {
    let cfg = text_config(file, opts)?;
    let text = read_text(file)?;
    let tokens = tokenize(&text, &cfg);
    for w in &tokens.warnings {
        log::warn!("{}: {w}", file.display());
    }
    let mut out = String::new();
    for t in &tokens.tokens {
        out.push_str(t);
        out.push('\n');
    }
    emit(None, out.as_bytes())
}

fn record_pairs(r: &TextRecord) -> String {
    pairs(&[
        ("name", r.name.clone()),
        ("class", r.class_label.to_string()),
        ("L", r.length.to_string()),
        ("D", r.diversity.to_string()),
        ("theta", r.theta.map_or("-".into(), |t| t.to_string())),
        ("L_tail", r.tail_length.map_or("-".into(), |t| t.to_string())),
        ("d", real(r.d)),
        ("h", real(r.h)),
        ("e", real(r.e)),
        ("s", real(r.s)),
        ("c", real(r.c)),
        ("g", opt_real(r.g)),
        ("g_tail", opt_real(r.g_tail)),
        ("J_1D", opt_real(r.j_1d)),
        ("J_thetaD", opt_real(r.j_theta_d)),
    ])
}

fn cmd_analyze(file: &Path, opts: &TextOpts, format: Format, segment: Option<crate::Segment>) -> Result<()> {
    let (rec, profile) = analyze_file(file, opts)?;
    let seg = match segment {
        Some(s) => {
            let freqs: Vec<f64> = profile.frequencies().map(|f| f as f64).collect();
            Some(zipf_segment(&freqs, s.a, s.b).with_context(|| format!("segment {}:{}", s.a, s.b))?)
        }
        None => None,
    };
    match format {
        Format::Json => match seg {
            Some(seg) => emit_json(&json!({ "record": rec, "segment": seg })),
            None => emit_json(&rec),
        },
        Format::Csv => {
            if seg.is_some() {
                log::warn!("--segment is not part of the CSV record and is omitted");
            }
            let mut buf = Vec::new();
            write_records(std::slice::from_ref(&rec), ExportFormat::Csv, &mut buf)?;
            emit(None, &buf)
        }
        Format::Table => {
            let mut out = record_pairs(&rec);
            if let Some(z) = seg {
                out.push_str(&format!("\nsegment [{}, {}]\n", z.a, z.b));
                out.push_str(&pairs(&[
                    ("g", real(z.g)),
                    ("f_a", real(z.f_a)),
                    ("L_ab", real(z.observed)),
                    ("Z", real(z.z)),
                    ("J", real(z.j)),
                    ("rms log error", real(z.rms_log_error)),
                ]));
            }
            emit(None, out.as_bytes())
        }
    }
}

fn ingest(dir: &Path, cfg: &IngestConfig) -> Result<IngestReport> {
    let report = ingest_directory(dir, cfg).with_context(|| format!("ingesting {}", dir.display()))?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(report)
}

fn cmd_corpus(
    dir: &Path,
    cfg: &IngestConfig,
    library: Option<&Path>,
    format: DataFormat,
    output: Option<&Path>,
) -> Result<()> {
    let mut lib = ingest(dir, cfg)?.library;
    for label in lib.labels() {
        if let Err(e) = lib.refit(&Group::single(label)) {
            log::info!("no fits for {label}: {e}");
        }
    }
    log::info!("{} records", lib.len());
    if let Some(p) = library {
        lib.save(p).with_context(|| format!("saving library {}", p.display()))?;
    }
    let mut buf = Vec::new();
    write_records(lib.records(), export_format(format), &mut buf)?;
    emit(output, &buf)
}

fn cmd_fit(model: Model, library: &str, label: &Group, format: Format) -> Result<()> {
    let lib = load_library(library)?;
    if lib.select(label).next().is_none() {
        bail!("no records labelled `{label}` in {library}");
    }
    let (value, rows) = match model {
        Model::Heaps => {
            let f = lib.fit_heaps(label)?;
            (
                json!({ "label": label, "model": "heaps", "k": f.k, "beta": f.beta,
                        "rms_log_error": f.rms_log_error, "n_points": f.n_points }),
                vec![
                    ("label", label.to_string()),
                    ("k", real(f.k)),
                    ("beta", real(f.beta)),
                    ("rms log error", real(f.rms_log_error)),
                    ("n", f.n_points.to_string()),
                ],
            )
        }
        Model::Alpha => {
            let f = lib.fit_alpha(label)?;
            (
                json!({ "label": label, "model": "alpha", "alpha": f.alpha, "q": f.q,
                        "sse": f.sse, "n_points": f.n_points }),
                vec![
                    ("label", label.to_string()),
                    ("alpha", real(f.alpha)),
                    ("q", real(f.q)),
                    ("sse", real(f.sse)),
                    ("n", f.n_points.to_string()),
                ],
            )
        }
    };
    match format {
        Format::Json => emit_json(&value),
        Format::Csv => bail!("fit supports table and json output"),
        Format::Table => emit(None, pairs(&rows).as_bytes()),
    }
}

fn cmd_profile(path: &Path, opts: &TextOpts, format: Format, top: Option<usize>) -> Result<()> {
    let (_, p) = analyze_file(path, opts)?;
    let cdf = p.cdf()?;
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            p.write_csv(&mut buf)?;
            emit(None, &buf)
        }
        Format::Json => {
            let entries: Vec<_> = p
                .entries()
                .iter()
                .zip(&cdf.points)
                .map(|(e, (_, c))| json!({ "rank": e.rank, "symbol": e.symbol, "frequency": e.frequency, "cdf": c }))
                .collect();
            emit_json(&json!({ "L": p.length(), "D": p.diversity(), "theta": p.tail_start(), "entries": entries }))
        }
        Format::Table => {
            let l = p.length() as f64;
            let theta = p.tail_start();
            let rows: Vec<Vec<String>> = p
                .entries()
                .iter()
                .zip(&cdf.points)
                .take(top.unwrap_or(usize::MAX))
                .map(|(e, (_, c))| {
                    vec![
                        e.rank.to_string(),
                        e.symbol.clone(),
                        e.frequency.to_string(),
                        real(100.0 * e.frequency as f64 / l),
                        real(*c),
                        if e.rank >= theta { "tail" } else { "head" }.to_string(),
                    ]
                })
                .collect();
            let mut out = format!("# L={} D={} theta={}\n", p.length(), p.diversity(), theta);
            out.push_str(&render(&["rank", "symbol", "f", "use %", "cdf", "part"], &rows));
            emit(None, out.as_bytes())
        }
    }
}

fn cmd_merged(dir: &Path, group: &Group, opts: &TextOpts, format: Format, top: Option<usize>) -> Result<()> {
    let cfg = IngestConfig {
        dialects: load_dialects(&opts.dialects)?,
        mode_override: opts.mode.map(mode_of),
        default_label: opts.class,
        keep_profiles: true,
    };
    let report = ingest(dir, &cfg)?;
    let names: Vec<&str> = report.library.select(group).map(|r| r.name.as_str()).collect();
    let profiles: Vec<&FrequencyProfile> = names.iter().filter_map(|n| report.profiles.get(*n)).collect();
    let t = merged_language_profile(profiles, &group.to_string())?;
    match format {
        Format::Json => emit_json(&t),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["rank", "symbol", "use_percent"])?;
            for r in &t.rows {
                w.write_record([r.rank.to_string(), r.symbol.clone(), r.use_percent.to_string()])?;
            }
            emit(None, &w.into_inner()?)
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .take(top.unwrap_or(usize::MAX))
                .map(|r| vec![r.rank.to_string(), r.symbol.clone(), real(r.use_percent)])
                .collect();
            let mut out = format!(
                "# {}: {} texts, L={} D={} theta={}\n",
                t.label, t.texts, t.total_length, t.diversity, t.tail_start
            );
            out.push_str(&render(&["rank", "symbol", "use %"], &rows));
            emit(None, out.as_bytes())
        }
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

fn cmd_classify(file: &Path, library: &str, opts: &TextOpts, format: Format) -> Result<()> {
    let lib = load_library(library)?;
    let mut fits: BTreeMap<String, AlphaFit> = BTreeMap::new();
    for label in lib.labels() {
        let group = Group::single(label);
        let stored = lib.fits.get(&group.to_string()).and_then(|f| f.alpha);
        match stored.map_or_else(|| lib.fit_alpha(&group), Ok) {
            Ok(f) => {
                fits.insert(label.to_string(), f);
            }
            Err(e) => log::info!("no entropy model for {label}: {e}"),
        }
    }
    let (rec, _) = analyze_file(file, opts)?;
    let c = classify_language(&rec.measures(), &fits)?;
    match format {
        Format::Json => emit_json(&json!({ "name": rec.name, "d": rec.d, "h": rec.h, "label": c.label, "residuals": c.residuals })),
        Format::Csv => bail!("classify supports table and json output"),
        Format::Table => {
            let rows: Vec<Vec<String>> = c
                .residuals
                .iter()
                .map(|(k, r)| vec![k.clone(), real(fits[k].q), real(*r)])
                .collect();
            let mut out = format!("{}: d={} h={} -> {}\n", rec.name, real(rec.d), real(rec.h), c.label);
            out.push_str(&render(&["model", "q", "|h - d^q|"], &rows));
            emit(None, out.as_bytes())
        }
    }
}
