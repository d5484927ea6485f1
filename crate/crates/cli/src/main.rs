use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod certify;
mod generate;
mod solve;

#[derive(Parser)]
#[command(name = "swapshop", version, about = "Local search for k-median, k-means and facility location")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run local search and report the result.
    Solve(SolveArgs),
    /// Compare a local and a global solution.
    Certify(CertifyArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Kmed,
    Kmeans,
    Ufl,
}

#[derive(clap::Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long)]
    pub k: Option<usize>,
    /// Opening cost; overrides the instance header.
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub epsilon: f64,
    /// Start from a seeded random solution instead of the lowest ids.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Start from this solution file.
    #[arg(long, conflicts_with = "seed")]
    pub init: Option<PathBuf>,
    /// Also run the exact oracle and report the ratio.
    #[arg(long)]
    pub oracle: bool,
    /// Write the final solution here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the step trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Distance exponent; defaults to 1 for kmed and 2 for kmeans.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    UflChain,
    Isolation,
    Deletion,
    All,
}

#[derive(clap::Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub local: PathBuf,
    #[arg(long)]
    pub global: PathBuf,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, value_enum)]
    pub check: CheckArg,
    /// Opening cost for the ufl-chain check; overrides the instance header.
    #[arg(long)]
    pub f: Option<f64>,
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Grid,
    Tightness,
    RandomEuclid,
}

#[derive(clap::Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// `key=value` pairs or positional values: grid `w h`, tightness `m [eps]`,
    /// random-euclid `n d`.
    #[arg(long, num_args = 1.., required = true)]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Pass,
    /// An assertion failed; the string names it.
    Fail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Certify(a) => certify::run(&a),
        Command::Generate(a) => generate::run(&a),
    };
    match res {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail(what)) => {
            eprintln!("assertion failed: {what}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Hex SHA-256 of the canonical instance text.
pub fn digest(instance: &swapshop::Instance) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(instance.to_text().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn ids(s: &swapshop::Solution) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
