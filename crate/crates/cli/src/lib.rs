//! Command-line front end for `ybe-fox`.
//!
//! [`run`] takes the argument vector and two sinks and returns the process
//! exit code: 0 when every check passes, 1 when a check fails, 2 for usage,
//! parse and I/O errors.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ybe-fox",
    version,
    about = "Yang-Baxter solutions from free group automorphisms"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Braid,
    Lemma1,
    Rack,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fox derivative of a word with respect to one generator.
    Derive {
        word: String,
        generator: String,
        /// Comma-separated generator names.
        #[arg(long, default_value = "x,y,z")]
        gens: String,
    },
    /// Check the braid equations, the coefficient identities, or the rack axioms.
    Verify {
        /// Either `u v` or a single `u,v`.
        #[arg(num_args = 1..=2, required = true)]
        words: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// List the classified pairs with their braid verdicts.
    Catalog {
        /// Range `a..b` for the conjugation family.
        #[arg(long = "m", default_value = "-2..2", allow_hyphen_values = true)]
        m: String,
    },
    /// Build the extended table for a pair and a model and export it.
    Build {
        #[command(flatten)]
        source: SolutionSource,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the Yang-Baxter equation on an export or a pair and model.
    Check {
        /// An export written by `build`.
        file: Option<PathBuf>,
        #[command(flatten)]
        source: SolutionSource,
        /// Also compare the second components term by term (needs a pair and model).
        #[arg(long)]
        verbose: bool,
        /// Maximum number of triple evaluations.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Full structured report for a pair and a model.
    ExportReport {
        #[command(flatten)]
        source: SolutionSource,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SolutionSource {
    /// The pair as `u,v`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Named model such as `C3:Z7x2`.
    #[arg(long, conflicts_with = "model_file")]
    pub preset: Option<String>,
    /// Model description file.
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    /// Build even if the pair fails the braid equations.
    #[arg(long)]
    pub unchecked: bool,
}

impl SolutionSource {
    fn is_empty(&self) -> bool {
        self.pair.is_none() && self.preset.is_none() && self.model_file.is_none()
    }
}

/// Parses `a..b` (inclusive) with optional signs.
pub fn parse_range(text: &str) -> Option<RangeInclusive<i64>> {
    let (a, b) = text.split_once("..")?;
    let a: i64 = a.trim().parse().ok()?;
    let b: i64 = b.trim().parse().ok()?;
    (a <= b).then_some(a..=b)
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match commands::dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
