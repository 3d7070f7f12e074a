use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod weights;

/// Congruences between automorphic eigensystems: lattices, Hecke modules,
/// modular symbols and archimedean criticality.
#[derive(Parser, Debug)]
#[command(name = "congruence", version, about)]
pub struct Cli {
    /// Write the result record here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form U·A·V = D of an integer matrix.
    Snf(SnfArgs),
    /// Dual of the instance lattice under its pairing.
    LatticeDual(LatticeDualArgs),
    /// Congruence modules C and Q for a split of the isotypic components.
    CongruenceModule(SplitArgs),
    /// Discriminant criterion for a split at a prime.
    DiscEquiv(DiscArgs),
    /// Search for congruences between isotypic components modulo p.
    Detect(DetectArgs),
    /// Cuspidal weight-2 modular symbols for Γ₀(N) with Hecke operators.
    Modsym(ModsymArgs),
    /// Compare two eigenvalue tables modulo p.
    Satake(SatakeArgs),
    /// Decide whether s = 1 is critical for the adjoint L-function.
    Criticality(CriticalityArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
pub struct SnfArgs {
    /// Matrix as JSON text, e.g. [[2,4],[6,8]].
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub matrix: Option<String>,
    /// File holding the matrix as JSON.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LatticeDualArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// `right`: {w : ⟨v,w⟩ ∈ ℤ for v ∈ L}; `left`: {v : ⟨v,w⟩ ∈ ℤ for w ∈ L}.
    #[arg(long, default_value = "right", value_parser = ["left", "right"])]
    pub side: String,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Isotypic components (as numbered by `detect`) spanning V₁.
    #[arg(long, value_delimiter = ',', required = true)]
    pub split: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct DiscArgs {
    #[command(flatten)]
    pub split: SplitArgs,
    #[arg(long)]
    pub prime: u64,
}

#[derive(Args, Debug)]
pub struct DetectArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value = "galois", value_parser = ["none", "galois"])]
    pub orbit_grouping: String,
    /// Largest residue field degree to consider.
    #[arg(long)]
    pub ext_degree: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ModsymArgs {
    #[arg(long)]
    pub level: u64,
    /// Primes l for the operators T_l; default: primes l ∤ N up to [SL₂(ℤ):Γ₀(N)]/6.
    #[arg(long, value_delimiter = ',')]
    pub hecke: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct SatakeArgs {
    #[arg(long)]
    pub table_a: PathBuf,
    #[arg(long)]
    pub table_b: PathBuf,
    #[arg(long)]
    pub prime: u64,
    #[arg(long, default_value_t = 1)]
    pub ext_degree: usize,
    /// Extra tags to skip, on top of both tables' ramified sets.
    #[arg(long, value_delimiter = ',')]
    pub exclude: Vec<u64>,
    /// Accept non-prime-power q with a warning.
    #[arg(long)]
    pub trusted: bool,
}

#[derive(Args, Debug)]
pub struct CriticalityArgs {
    #[arg(long)]
    pub n: usize,
    /// r1,r2
    #[arg(long, value_parser = weights::parse_signature)]
    pub signature: (usize, usize),
    /// Per place, separated by ';': `l1=4,l2=6,w=0,eps=sgn` (real) or
    /// `a=1/2:-1/2,b=-1/2:1/2` (complex). One entry is reused for every
    /// place of the same kind. Default: generic regular weights.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub ops: usize,
    /// Plant a congruence modulo this prime.
    #[arg(long)]
    pub plant: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    // a panic is a bug, but it must still end as a domain failure
    let outcome = std::panic::catch_unwind(|| commands::run(&cli));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(1)
        }
    }
}
