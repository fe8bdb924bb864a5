//! Command-line front end: `first`, `follow`, `string-first`, `validate`
//! and `bench` over grammar files.
//!
//! Exit codes are stable:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | `bench` found naive and active results that differ |
//! | 2 | usage error |
//! | 3 | parse error in the grammar or category string |
//! | 4 | the grammar failed validation |
//! | 5 | a fixpoint exceeded `--max-iterations` or `--max-pairs` |
//! | 6 | a file could not be read |
//! | 7 | a category of the string is unknown to FIRST |

mod bench;
mod document;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use featfirst::{
    compute_first, compute_follow, first_of_string, parse_category_string, parse_grammar, validate,
    ComputeError, Diagnostic, Grammar, Limits, Mode, ParseError, ParseErrors, Restrictor, Severity,
};

pub use document::{OutputDocument, PairDoc};

pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const LIMIT: i32 = 5;
    pub const IO: i32 = 6;
    pub const UNKNOWN_CATEGORY: i32 = 7;
}

const EXIT_CODES: &str = "Exit codes: 0 success, 1 bench mode mismatch, 2 usage, 3 parse error, \
4 validation error, 5 limit exceeded, 6 unreadable file, 7 unknown category in string.";

#[derive(Debug, Parser)]
#[command(name = "featfirst", version, about = "FIRST and FOLLOW for unification grammars", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute FIRST.
    First(ComputeArgs),
    /// Compute FOLLOW.
    Follow(ComputeArgs),
    /// Compute FIRST of a string of categories, e.g. "NP[] VP[]".
    StringFirst {
        #[command(flatten)]
        args: ComputeArgs,
        /// Whitespace-separated categories; `$n` tags are shared across them.
        string: String,
    },
    /// Check a grammar and print its diagnostics.
    Validate { file: PathBuf },
    /// Run naive and active modes and compare them.
    Bench {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        guards: Guards,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Guards {
    /// Paths to delete from every stored category, comma-separated;
    /// overrides the grammar's `restrict` declaration. "" means none.
    #[arg(long)]
    pub restrictor: Option<Restrictor>,
    #[arg(long, default_value_t = Limits::default().max_iterations)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = Limits::default().max_pairs)]
    pub max_pairs: usize,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = Mode::Active)]
    pub mode: Mode,
    #[command(flatten)]
    pub guards: Guards,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include per-iteration statistics.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: cannot read: {source}")]
    Io { path: String, source: io::Error },
    #[error("{}", prefix_lines(.path, &.errors.to_string(), "error"))]
    Parse { path: String, errors: ParseErrors },
    #[error("{}", prefix_lines("<string>", &.0.to_string(), "error"))]
    StringParse(ParseError),
    #[error("{path}: grammar has {count} validation error(s)")]
    Validation { path: String, count: usize },
    #[error("{path}: error: {source}")]
    Compute { path: String, source: ComputeError },
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error("{0}")]
    Bench(#[from] bench::BenchError),
}

fn prefix_lines(path: &str, text: &str, severity: &str) -> String {
    text.lines()
        .map(|l| match l.split_once(": ") {
            Some((pos, msg)) => format!("{path}:{pos}: {severity}: {msg}"),
            None => format!("{path}: {severity}: {l}"),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Parse { .. } | CliError::StringParse(_) => exit::PARSE,
            CliError::Validation { .. } => exit::VALIDATION,
            CliError::Compute { source, .. } => match source {
                ComputeError::LimitExceeded { .. } => exit::LIMIT,
                ComputeError::UnknownCategory { .. } => exit::UNKNOWN_CATEGORY,
            },
            CliError::Output(_) => exit::IO,
            CliError::Bench(e) => e.exit_code(),
        }
    }
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}

pub(crate) fn load(path: &Path, guards: &Guards) -> Result<Grammar, CliError> {
    let name = display_path(path);
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    let mut g = parse_grammar(&text).map_err(|errors| CliError::Parse { path: name, errors })?;
    if let Some(phi) = &guards.restrictor {
        g.set_restrictor(phi.clone());
    }
    Ok(g.with_limits(Limits {
        max_iterations: guards.max_iterations,
        max_pairs: guards.max_pairs,
    }))
}

pub(crate) fn format_diagnostic(path: &str, d: &Diagnostic) -> String {
    format!("{path}:{d}")
}

/// Prints warnings to `err`; fails on any error-level diagnostic.
fn checked(path: &str, g: &Grammar, err: &mut dyn Write) -> Result<Vec<Diagnostic>, CliError> {
    let diags = validate(g);
    for d in &diags {
        writeln!(err, "{}", format_diagnostic(path, d))?;
    }
    let count = diags
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .count();
    if count > 0 {
        return Err(CliError::Validation {
            path: path.to_string(),
            count,
        });
    }
    Ok(diags)
}

fn compute(
    function: &'static str,
    args: &ComputeArgs,
    string: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let path = display_path(&args.file);
    let g = load(&args.file, &args.guards)?;
    let diagnostics = checked(&path, &g, err)?;
    let wrap = |source| CliError::Compute {
        path: path.clone(),
        source,
    };
    let first = compute_first(&g, args.mode).map_err(wrap)?;
    let (pairs, stats) = match function {
        "first" => (first.pairs, Some(first.stats)),
        "follow" => {
            let follow = compute_follow(&g, &first.pairs, args.mode).map_err(wrap)?;
            (follow.pairs, Some(follow.stats))
        }
        _ => {
            let cats =
                parse_category_string(string.unwrap_or_default()).map_err(CliError::StringParse)?;
            (
                first_of_string(&g, &first.pairs, &cats).map_err(wrap)?,
                None,
            )
        }
    };
    let doc = OutputDocument::new(
        &path,
        &g,
        function,
        args.mode,
        string,
        &pairs,
        stats.as_ref().filter(|_| args.stats),
        &diagnostics,
    );
    match args.format {
        Format::Text => out.write_all(doc.to_text().as_bytes())?,
        Format::Json => writeln!(out, "{}", doc.to_json())?,
    }
    Ok(())
}

fn validate_command(file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let path = display_path(file);
    let g = load(
        file,
        &Guards {
            restrictor: None,
            max_iterations: 0,
            max_pairs: 0,
        },
    )?;
    let diags = validate(&g);
    for d in &diags {
        writeln!(out, "{}", format_diagnostic(&path, d))?;
    }
    let errors = diags
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .count();
    writeln!(
        out,
        "{path}: {} rules, {errors} error(s), {} warning(s)",
        g.rules().len(),
        diags.len() - errors
    )?;
    if errors > 0 {
        return Err(CliError::Validation {
            path,
            count: errors,
        });
    }
    Ok(())
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::First(args) => compute("first", args, None, out, err),
        Command::Follow(args) => compute("follow", args, None, out, err),
        Command::StringFirst { args, string } => {
            compute("string-first", args, Some(string), out, err)
        }
        Command::Validate { file } => validate_command(file, out),
        Command::Bench {
            files,
            guards,
            format,
        } => bench::run(files, guards, *format, out, err),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{}", e.render());
            exit::USAGE
        }
        Err(e) => {
            // --help and --version
            let _ = write!(out, "{}", e.render());
            exit::OK
        }
    }
}
