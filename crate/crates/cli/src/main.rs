//! `kpclass`: classify graphs by the separation of their orbit spaces, and
//! run the groupoid-algebra and representation checks from the command line.
//!
//! Reports go to standard output and diagnostics to standard error. Exit
//! status is 0 for CCR, 10 for GCR but not CCR, 20 for not GCR and 64 for
//! unusable input; see the README for the per-command mapping.

mod batch;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kpclass::classify::EXIT_INPUT_ERROR;
use kpclass::topology::Condition;

#[derive(Debug, Parser)]
#[command(name = "kpclass", version, about = "CCR/GCR classification of graph algebras through their orbit spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed recorded in the report and used by randomized procedures.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level of a graph, or of a product of up to three graphs.
    Classify {
        /// Graph JSON file; repeat for a product.
        #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
        graph: Vec<PathBuf>,
        /// Classify every `*.json` file in this directory.
        #[arg(long, requires = "out")]
        batch: Option<PathBuf>,
        /// Directory receiving one report per batch input.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for batch mode.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Coefficient field, e.g. `complex` or `GF(7)`.
        #[arg(long, default_value = "complex")]
        field: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide condition M (closed orbits).
    CheckM {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Decide condition N (locally closed orbits).
    CheckN {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Orbit representatives with their closures.
    Orbits {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Bounded brute-force search for condition M or N.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        condition: Condition,
        #[arg(long, default_value_t = kpclass::topology::DEFAULT_ORACLE_DEPTH as u16, value_parser = clap::value_parser!(u16).range(1..))]
        depth: u16,
        #[command(flatten)]
        common: Common,
    },
    /// Convolution product of two functions on a finite groupoid.
    Convolve {
        /// Groupoid JSON file.
        #[arg(long)]
        groupoid: PathBuf,
        /// JSON object mapping arrow names to coefficients.
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// `Q` or a finite field `GF(q)`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        common: Common,
    },
    /// Composition factors and the Clifford, amplification and corner checks.
    RepnCheck {
        #[arg(long, value_enum)]
        check: RepnKind,
        /// Preset group: `C<n>`, `S3`, `D4`, `Q8` or `trivial`.
        #[arg(long, conflicts_with = "group_file")]
        group: Option<String>,
        /// Group JSON file with a multiplication table.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Finite field `GF(q)`.
        #[arg(long)]
        field: String,
        /// Comma-separated generators of a subgroup, by element name.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<String>,
        /// Amplification degree.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Split::Ignore)]
        split: Split,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepnKind {
    Chop,
    Clifford,
    Amplify,
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Split {
    Ignore,
    Require,
    Extend,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("kpclass: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
