//! Command-line workflows over `tischler-core`, with deterministic,
//! schema-versioned JSON reports.
//!
//! Exit codes: 0 when every verdict passes, 1 on a domain failure, 2 on a
//! usage or input error.

pub mod checks;
mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand};
use report::Report;
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "tischler",
    version,
    about = "Tischler graphs, obstructions and critically fixed anti-rational maps"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Print the JSON report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file (for `extract-graph`, the graph).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fixed-point residual tolerance for map commands.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    Obstructed,
    Unobstructed,
}

#[derive(Debug, Clone, Args)]
pub struct MapSource {
    /// Built-in map: zbar, tetrahedral, f_<m0>_<m1>.
    #[arg(long, conflicts_with = "map")]
    pub name: Option<String>,
    /// Degree of `zbar`.
    #[arg(long)]
    pub d: Option<usize>,
    /// Map file: numerator and denominator coefficient lines.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a rotation system is a topological Tischler graph.
    Validate { file: PathBuf },
    /// Test for two faces sharing two edges.
    Obstruct {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "unobstructed")]
        expect: Expect,
    },
    /// Search for a Levy cycle and certify it by pull-back.
    Levy {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "unobstructed")]
        expect: Expect,
    },
    /// Enumerate Tischler graphs of a degree up to equivalence.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        branching: Option<String>,
        #[arg(long)]
        unobstructed: bool,
        #[arg(long, conflicts_with = "antipolynomial")]
        nonpolynomial: bool,
        #[arg(long)]
        antipolynomial: bool,
        /// Emit the bare catalog (the golden-file format).
        #[arg(long)]
        golden: bool,
    },
    /// Enumerate plane Tischler trees.
    Trees {
        #[arg(long, required_unless_present = "branching")]
        degree: Option<usize>,
        #[arg(long)]
        branching: Option<String>,
    },
    /// Pull back a curve once, or iterate.
    Pullback {
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        file: Option<PathBuf>,
        /// The graph file, as an alternative to the positional argument.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Curve word, or a file holding one (`@path` forces a file).
        #[arg(long)]
        curve: String,
        /// Iterate up to this many pull-backs.
        #[arg(long)]
        iterate: Option<usize>,
    },
    /// Fixed points, multipliers and the count identity of a map.
    VerifyMap {
        #[command(flatten)]
        source: MapSource,
    },
    /// Trace fixed internal rays and assemble the Tischler graph.
    ExtractGraph {
        #[command(flatten)]
        source: MapSource,
        /// Write the expanded graph (with repelling vertices) instead.
        #[arg(long)]
        full: bool,
    },
    /// Check the three icosahedral candidates of degree 31.
    VerifyIcosahedral,
    /// Automorphism group orders and chirality.
    Symmetry { file: PathBuf },
    /// Replay every acceptance criterion and the golden catalogs.
    CheckAll {
        /// Highest degree of golden catalog to compare.
        #[arg(long, default_value_t = 4)]
        golden_degree: usize,
    },
}

/// A failure before any report could be produced.
#[derive(Debug)]
pub struct UsageError(pub String);

/// Parses `args`, runs the command and returns the exit code along with
/// everything written to stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return (code, text);
        }
    };
    match commands::execute(&cli) {
        Ok(outcome) => {
            let code = if outcome.report.pass { 0 } else { 1 };
            (code, outcome.stdout)
        }
        Err(UsageError(msg)) => (2, format!("error: {msg}\n")),
    }
}

/// Entry point for the binary: prints and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, text) = run(args);
    if code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    code
}

pub(crate) struct Outcome {
    pub report: Report,
    pub stdout: String,
}
