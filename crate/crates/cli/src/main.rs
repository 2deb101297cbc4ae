//! `kgq`: statement ingestion, sort-value triples, rule inference, rule
//! compilation and checking.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "kgq",
    version,
    about = "Many-sorted rule inference over qualified statements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a Turtle or NDJSON graph and write it as native NDJSON.
    Ingest(IngestArgs),
    /// Write the five sort-value triples of every statement.
    Sorts(SortsArgs),
    /// Saturate a graph under rules.
    Infer(InferArgs),
    /// Translate rules into SPARQL queries, one file per rule.
    Compile(CompileArgs),
    /// Parse and typecheck rule files.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Turtle,
    Ndjson,
}

#[derive(Args)]
pub struct IngestArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Defaults to ndjson for `.ndjson`/`.jsonl` files, turtle otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    /// CSV `inner,outer` region containment; spaces are normalized against it.
    #[arg(long, value_name = "FILE")]
    pub containment: Option<PathBuf>,
    /// CSV `property,category,role` overrides of the qualifier categories.
    #[arg(long = "category-map", value_name = "FILE")]
    pub category_map: Option<PathBuf>,
}

#[derive(Args)]
pub struct SortsArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct InferArgs {
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    #[arg(long, value_name = "FILE", num_args = 1..)]
    pub rules: Vec<PathBuf>,
    /// `all` or a comma-separated list of shipped rule names.
    #[arg(long, value_name = "all|NAMES")]
    pub builtin: Option<String>,
    #[arg(long = "max-rounds", default_value_t = 100)]
    pub max_rounds: usize,
    #[arg(long = "max-new", default_value_t = 1_000_000)]
    pub max_new: usize,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, value_name = "FILE")]
    pub containment: Option<PathBuf>,
    /// CSV `entity,inverse` causality inverses; `!drop` removes the entity.
    #[arg(long = "inverse-map", value_name = "FILE")]
    pub inverse_map: Option<PathBuf>,
    /// Record the rule and premises of each inferred statement in the report.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Args)]
pub struct CompileArgs {
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long, value_name = "FILE", num_args = 1.., required = true)]
    pub rules: Vec<PathBuf>,
}

/// Why a command stopped; each maps to one exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    LimitHit,
    Rules(Vec<String>),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::LimitHit => 3,
            Failure::Rules(_) => 4,
        }
    }
}

impl From<kgq_core::IoError> for Failure {
    fn from(e: kgq_core::IoError) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Ingest(a) => commands::ingest(a),
        Command::Sorts(a) => commands::sorts(a),
        Command::Infer(a) => commands::infer(a),
        Command::Compile(a) => commands::compile(a),
        Command::Check(a) => commands::check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Io(m) => eprintln!("kgq: error: {m}"),
                Failure::LimitHit => {
                    eprintln!("kgq: stopped at a resource limit before saturation")
                }
                Failure::Rules(diags) => {
                    for d in diags {
                        eprintln!("{d}");
                    }
                }
            }
            ExitCode::from(f.code())
        }
    }
}
