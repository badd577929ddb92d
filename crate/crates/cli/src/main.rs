//! `textplexity` command line.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when the inputs cannot
//! be read or analyzed.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use textplexity::corpus::{ClassLabel, Group, JColumn};

#[derive(Debug, Parser)]
#[command(name = "textplexity", version, about = "Diversity, entropy, complexity and Zipf/Heaps statistics of texts")]
pub struct Cli {
    /// More diagnostics on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the symbols of a text, one per line.
    Tokenize {
        file: PathBuf,
        #[command(flatten)]
        text: TextOpts,
    },
    /// Measure one text.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        text: TextOpts,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also fit and report a Zipf segment `a:b` (1-based ranks).
        #[arg(long)]
        segment: Option<Segment>,
    },
    /// Analyze every file under a directory into a library.
    Corpus {
        dir: PathBuf,
        /// Write the library (records and fits) as JSON here.
        #[arg(long)]
        library: Option<PathBuf>,
        /// Records output format.
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        /// Write records here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Class for files outside `english/`, `spanish/`, `artificial/` and
        /// not named in `manifest.json`.
        #[arg(long)]
        default_class: Option<ClassLabel>,
        /// Force one tokenization mode for every file.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        dialects: DialectOpts,
    },
    /// Fit a corpus-level model on a library.
    Fit {
        #[arg(value_enum)]
        model: Model,
        /// Library JSON, records CSV or published-table CSV; `@appendix` for
        /// the bundled table.
        library: String,
        /// Class label or `+`-joined labels; `natural` = english+spanish.
        #[arg(long)]
        label: Group,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Two-sample t test and correlations between two groups.
    Compare {
        library: String,
        /// Two groups separated by a comma, e.g. `english,spanish`.
        #[arg(long, value_parser = parse_groups)]
        groups: (Group, Group),
        #[arg(long, default_value = "J_1D")]
        column: JColumn,
        /// Pooled-variance test instead of Welch's.
        #[arg(long)]
        pooled: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Ranked frequency table of a text, or a merged table of one class
    /// across a directory.
    Profile {
        path: PathBuf,
        /// Treat `path` as a corpus directory and merge the profiles of this group.
        #[arg(long)]
        merged: Option<Group>,
        #[command(flatten)]
        text: TextOpts,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Print at most this many rows in table format.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Emit plot data as `x<TAB>y<TAB>series` rows.
    Plot {
        /// Library file, `@appendix`, or a corpus directory (needed for
        /// fig7, fig8 and fig9).
        input: String,
        #[arg(long)]
        figure: textplexity::corpus::Figure,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        dialects: DialectOpts,
    },
    /// Write a library's records as CSV or JSON.
    Export {
        library: String,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Assign a text to the class whose entropy model passes closest.
    Classify {
        file: PathBuf,
        /// Library whose per-class entropy fits are used.
        #[arg(long)]
        library: String,
        #[command(flatten)]
        text: TextOpts,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct DialectOpts {
    /// JSON dialect table (extension -> comment and string syntax).
    #[arg(long, env = "TEXTPLEXITY_DIALECTS")]
    pub dialects: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TextOpts {
    /// Defaults to artificial for extensions in the dialect table, natural otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    pub lang: Option<LangArg>,
    #[arg(long)]
    pub class: Option<ClassLabel>,
    /// Dialect name overriding the extension lookup (e.g. c-family, basic).
    #[arg(long)]
    pub dialect: Option<String>,
    #[command(flatten)]
    pub dialects: DialectOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Natural,
    Artificial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LangArg {
    English,
    Spanish,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Heaps,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
}

impl FromStr for Segment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or("expected a:b")?;
        let a: usize = a.trim().parse().map_err(|_| format!("bad rank `{a}`"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad rank `{b}`"))?;
        if a < 1 || a > b {
            return Err(format!("need 1 <= a <= b, got {a}:{b}"));
        }
        Ok(Segment { a, b })
    }
}

fn parse_groups(s: &str) -> Result<(Group, Group), String> {
    let (a, b) = s.split_once(',').ok_or("expected two groups, e.g. english,spanish")?;
    let a: Group = a.parse().map_err(|e: textplexity::Error| e.to_string())?;
    let b: Group = b.parse().map_err(|e: textplexity::Error| e.to_string())?;
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .parse_env("TEXTPLEXITY_LOG")
        .init();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
