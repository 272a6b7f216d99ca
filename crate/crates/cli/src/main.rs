use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod demo;
mod field;
mod output;
mod scheme;
mod sweep;
mod verify;

use output::CliError;

#[derive(Parser, Debug)]
#[command(name = "rs-repair", version, about = "Reed-Solomon repair schemes with exact bandwidth accounting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a field given as gf(q,ell[,poly=HEX]).
    Field(FieldArgs),
    /// Partition the multiplicative group into cosets of a subfield's group.
    Cosets(CosetArgs),
    /// Build schemes from a spec.
    Scheme {
        #[command(subcommand)]
        command: SchemeCommand,
    },
    /// Check full rank, bandwidth and seeded repair round trips.
    Verify(VerifyArgs),
    /// Print one repair step by step.
    Demo(DemoArgs),
    /// Tabulate closed-form bandwidths over a range of ell.
    Sweep(SweepArgs),
}

#[derive(Subcommand, Debug)]
enum SchemeCommand {
    /// Construct the schemes of a spec and report their bandwidth.
    Build(BuildArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[arg(long)]
    pub spec: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CosetArgs {
    #[arg(long)]
    pub spec: String,
    /// Degree of the subfield E.
    #[arg(long)]
    pub a: usize,
    /// Number of coset leaders to list.
    #[arg(long, default_value_t = 16)]
    pub limit: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Scheme spec: a JSON file or inline JSON.
    #[arg(long)]
    pub spec: String,
    /// Comma-separated failed indices; default all single failures or the
    /// first failure sets.
    #[arg(long, value_delimiter = ',')]
    pub failed: Option<Vec<usize>>,
    /// Also emit each scheme as an explicit custom spec.
    #[arg(long)]
    pub explicit: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Round trips per failure set.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',')]
    pub failed: Option<Vec<usize>>,
    /// Worker threads; the report does not depend on this.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(long)]
    pub spec: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',')]
    pub failed: Option<Vec<usize>>,
    /// Comma-separated hex message symbols; random when absent.
    #[arg(long, value_delimiter = ',', conflicts_with = "zero")]
    pub message: Option<Vec<String>>,
    /// Use the all-zero message.
    #[arg(long)]
    pub zero: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u64,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    /// Smallest ell; accepts integers and powers such as 2^40.
    #[arg(long, default_value = "2")]
    pub ell_min: String,
    #[arg(long, default_value = "64")]
    pub ell_max: String,
    /// Per-ell rows stop at this ell.
    #[arg(long, default_value_t = rs_repair::bandwidth_models::PER_ELL_LIMIT)]
    pub per_ell_limit: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for symmetry with verify; sweeps are cheap.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Field(a) => field::field(&a),
        Command::Cosets(a) => field::cosets(&a),
        Command::Scheme { command: SchemeCommand::Build(a) } => scheme::build(&a),
        Command::Verify(a) => verify::verify(&a),
        Command::Demo(a) => demo::demo(&a),
        Command::Sweep(a) => sweep::sweep(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
