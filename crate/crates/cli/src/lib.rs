//! `heegaard` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns what should
//! be written to standard output and standard error together with the exit
//! code. Exit codes: 0 on success (including answers such as "no connecting
//! class"), 1 for unreadable or invalid input, 2 for usage errors.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heegaard_core::grading::DEFAULT_RADIUS;
use num_rational::BigRational;

pub use report::{Digest, Report};

#[derive(Debug, Parser)]
#[command(name = "heegaard", version, about = "Gradings and index bookkeeping for Heegaard diagrams")]
pub struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search radius for nonnegative domain representatives.
    #[arg(long, global = true, default_value_t = DEFAULT_RADIUS)]
    pub radius: u32,
    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a diagram file describes a valid Heegaard diagram.
    Validate { file: PathBuf },
    /// Regions, vertices and homology of a diagram.
    Info { file: PathBuf },
    /// List the generators.
    Generators { file: PathBuf },
    /// Partition the generators into Spin^c classes.
    Spinc { file: PathBuf },
    /// Grading labels of all generators, with per-class divisibility.
    Grade { file: PathBuf },
    /// Solve for a domain connecting two generators.
    Domain {
        file: PathBuf,
        x: String,
        y: String,
        /// Search for a representative with nonnegative multiplicities.
        #[arg(long)]
        positive: bool,
    },
    /// Layer decomposition and index audit of a nonnegative domain from X to Y.
    Audit { file: PathBuf, x: String, y: String },
    /// Stabilize a diagram and write the result.
    Stabilize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a diagram from the atlas.
    Atlas {
        #[command(subcommand)]
        which: AtlasCommand,
    },
    /// Theta and grading shift from c1^2, Euler characteristic and signature.
    Shift {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        c1sq: BigRational,
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        sigma: i64,
    },
    /// Randomized consistency checks on small diagrams.
    Selftest {
        /// Number of random diagrams.
        #[arg(long, default_value_t = 40)]
        cases: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AtlasCommand {
    /// Lens space L(p, q).
    Torus {
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// S^1 x S^2 with a bigon pair.
    S1s2 {
        #[command(flatten)]
        out: OutputArg,
    },
    /// Open book with annulus page and monodromy the n-th power of the boundary twist.
    OpenbookAnnulus {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write the diagram here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.parse::<BigRational>().map_err(|e| format!("`{s}` is not a rational number: {e}"))
}

/// What a finished invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Output { stdout: text, stderr: String::new(), code: 0 }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let (report, raw) = commands::execute(&cli, echo);
    let mut out = Output { stdout: String::new(), stderr: String::new(), code: report.status };
    if cli.json {
        out.stdout = report.to_json();
    } else if let Some(msg) = report.error_message() {
        out.stderr = format!("error: {msg}\n");
    } else if let Some(raw) = raw {
        out.stdout = raw;
    } else {
        out.stdout = report.to_text();
    }
    out
}
