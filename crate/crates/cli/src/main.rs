//! `sccat`: batch checks over serialized simplicial sets, simplicial
//! categories and functors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sccat_core::Budget;

#[derive(Debug, Parser)]
#[command(name = "sccat", version, about = "Finite simplicial categories: validation, checks and constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Largest horn or boundary dimension examined by lifting checks.
    #[arg(long, global = true, default_value_t = Budget::default().max_dim)]
    pub max_dim: usize,
    /// Longest composite word in free closures; also caps attached cells.
    #[arg(long, global = true, default_value_t = Budget::default().max_words)]
    pub max_words: usize,
    /// Node cap for exhaustive searches.
    #[arg(long, global = true, default_value_t = Budget::default().max_steps)]
    pub max_steps: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report file (a directory for `corpus`). Defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record wall time per check. Off by default so reports are reproducible.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Options {
    pub fn budget(&self) -> Budget {
        Budget::new(self.max_dim, self.max_words, self.max_steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Boundary cells `U∂Δ[n] → UΔ[n]` and `φ → {x}`.
    C,
    /// Horn cells `UV[n,k] → UΔ[n]`.
    A1,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate documents of any kind.
    Validate { inputs: Vec<PathBuf> },
    /// Components of a simplicial set, or the category π₀ of a simplicial category.
    Pi0 { input: PathBuf },
    /// Integer homology below the dimension bound.
    Homology { input: PathBuf },
    /// Kan fibration check of a map of simplicial sets.
    Kan { input: PathBuf },
    /// Weak equivalence of a map, or weak contractibility of a set.
    WeqSset { input: PathBuf },
    /// Dwyer–Kan equivalence of a functor.
    DkCheck { input: PathBuf },
    /// Fibration check of a functor.
    FibCheck { input: PathBuf },
    /// Acyclic fibration check of a functor, by both routes.
    AfibCheck { input: PathBuf },
    /// Diagonal of a lifting problem.
    Lift { input: PathBuf },
    /// Right lifting property of a functor against a generator family or
    /// file, or of one map of simplicial sets against another.
    Rlp {
        input: PathBuf,
        /// A generator set, or for a map `p` the map `i` to lift against.
        against: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Family::A1)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Bounded cell-attachment factorization of a functor.
    Factor {
        input: PathBuf,
        generators: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Family::A1)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Checks a marked inclusion `{x} → H` as an A2 generator.
    A2Check { input: PathBuf },
    /// Grows `{x} → H → G` from a start category.
    BuildH { input: PathBuf },
    /// Emits a generator set.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim_bound: usize,
    },
    /// Writes a seeded corpus of categories and functors into `--out`.
    Corpus {
        #[arg(long, default_value_t = 220)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 2)]
        dim_bound: usize,
        #[arg(long, default_value_t = 6)]
        max_nondegenerate: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::INPUT_ERROR)
        }
    }
}
