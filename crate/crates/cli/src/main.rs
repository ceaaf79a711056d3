mod commands;
mod problem;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Precondition(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<monoalg::Error> for CliError {
    fn from(e: monoalg::Error) -> Self {
        use monoalg::Error::*;
        let msg = e.to_string();
        match e {
            EmptyGeneratingSet
            | DimensionMismatch { .. }
            | SizeMismatch(_)
            | NotLinearlyIndependent
            | NotFullDimensional
            | NotPointed
            | NotMinimallyEmbedded { .. }
            | NotSaturated { .. }
            | NotInSemigroup(_) => CliError::Input(msg),
            Internal(_) => CliError::Internal(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "monoalg", version, about = "Derivations and automorphisms of monomial algebras K[S]/I")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semigroup and ideal invariants.
    Analyze { file: PathBuf },
    /// Demazure roots and roots of the ideal, grouped by dual ray.
    Roots {
        file: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Degrees of homogeneous locally nilpotent derivations.
    Lnds {
        file: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Generators of the automorphism group of the quotient.
    Aut {
        file: PathBuf,
        /// Torus element, one rational per coordinate.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        torus: Vec<String>,
        /// Value for the unipotent parameters.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Brute-force derivations compared with the classification.
    Oracle { file: PathBuf },
    /// A derivation of the quotient that does not lift.
    Witness { file: PathBuf },
    /// Exponential of a homogeneous derivation.
    Exp {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        alpha: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Oracle comparison on random full cofinite ideals of a first octant.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 60)]
        max_complement: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, cli.format) {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
