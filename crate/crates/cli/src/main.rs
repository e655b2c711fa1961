//! `prym`: check Prym data, search for families and reproduce the reference
//! table.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "prym",
    version,
    about = "Prym data of Galois covers of the projective line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate conditions A, B1 and B for one datum file.
    Check(CheckArgs),
    /// Enumerate families up to Hurwitz equivalence.
    Search(SearchArgs),
    /// Search and diff the result against the reference table.
    Table(TableArgs),
    /// Print intermediate data of one datum.
    Dump(DumpArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    datum: PathBuf,
    /// Fall back to symbolic elimination when sampled ranks are deficient.
    #[arg(long)]
    allow_symbolic: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivalenceArg {
    FullAut,
    SigmaFixing,
}

#[derive(Args)]
struct ScopeArgs {
    /// Number of branch points; repeat for several values.
    #[arg(long = "r", required = true)]
    r: Vec<usize>,
    /// Restrict to abelian groups.
    #[arg(long, conflicts_with = "cayley")]
    abelian_only: bool,
    /// Largest abelian group order to enumerate.
    #[arg(long)]
    max_order: Option<usize>,
    /// Largest genus of the top curve.
    #[arg(long = "max-gtilde")]
    max_gtilde: Option<u64>,
    /// Cayley-table file of a group to search in addition to the abelian
    /// groups; repeatable.
    #[arg(long)]
    cayley: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "full-aut")]
    equivalence: EquivalenceArg,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    scope: ScopeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    scope: ScopeArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Where to write the rows; only the diff summary is printed otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reference table CSV replacing the built-in one.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpWhat {
    Eigendims,
    Basis,
    Products,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    datum: PathBuf,
    #[arg(long, value_enum)]
    what: DumpWhat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    commands::configure_cache();
    let result = match cli.command {
        Command::Check(a) => commands::check(&a),
        Command::Search(a) => commands::search(&a),
        Command::Table(a) => commands::table(&a),
        Command::Dump(a) => commands::dump(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
