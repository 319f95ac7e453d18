use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vc_core::graph::Numbering;

#[derive(Parser, Debug)]
#[command(name = "vc", version, about = "Local 3-approximation of minimum vertex cover in port-numbered graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the algorithm and every invariant check on one graph.
    Run {
        #[command(flatten)]
        input: InputArgs,
        /// Write the message transcript here.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph: `cycle N`, `path N`, `clique N`, `star LEAVES` or
    /// `random N MAX_DEGREE P`.
    Gen {
        kind: GenKind,
        #[arg(required = true)]
        params: Vec<String>,
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Output format; `pg` numbers ports in sorted order.
        #[arg(long, value_enum, default_value = "el")]
        format: Format,
        /// Defaults to standard output.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Exact minimum vertex cover (small graphs only).
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run under many seeded random port numberings.
    Sweep {
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "N", default_value_t = 100)]
        trials: u32,
        /// Master seed; trial seeds are derived from it.
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Replay a transcript against a graph and report divergences.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "PATH")]
        trace: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct InputArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Port numbering. Defaults to the file's own ports for `.pg` and to
    /// `sorted` for `.el`.
    #[arg(long, value_enum)]
    pub numbering: Option<NumberingArg>,
    /// Seed for `--numbering random`.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pg,
    El,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberingArg {
    Sorted,
    Input,
    Random,
}

impl From<NumberingArg> for Numbering {
    fn from(n: NumberingArg) -> Self {
        match n {
            NumberingArg::Sorted => Numbering::Sorted,
            NumberingArg::Input => Numbering::Input,
            NumberingArg::Random => Numbering::Random,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Cycle,
    Path,
    Clique,
    Star,
    Random,
}
