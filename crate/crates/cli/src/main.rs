//! `pentagram-atlas`: enumerate, classify, verify, and draw the Mermin
//! pentagrams of the three-qubit Pauli group.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "pentagram-atlas", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args)]
pub struct Common {
    /// Directory holding the pentagram enumeration cache.
    #[arg(
        long,
        global = true,
        env = "PENTAGRAM_ATLAS_CACHE",
        default_value = "./cache",
        value_name = "PATH"
    )]
    pub cache_dir: PathBuf,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for enumeration and classification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub threads: usize,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the exhaustive pentagram search and persist the cache.
    Enumerate,
    /// Emit the 45-row type atlas.
    Table(TableArgs),
    /// Classify an explicit five-context configuration.
    Classify(ClassifyArgs),
    /// Report the restriction of the atlas to the Klein quadric.
    Klein(TableArgs),
    /// List the two-edge neighbors of a pentagram.
    Neighbors(NeighborsArgs),
    /// Draw a pentagram with its five Fano planes (DOT, or SVG with --svg).
    Render(RenderArgs),
    /// Run every verification suite and report pass/fail per check.
    Verify(TableArgs),
}

#[derive(Args)]
pub struct TableArgs {
    /// Replacement reference table (CSV, same layout as the embedded one).
    #[arg(long, value_name = "FILE")]
    pub golden: Option<PathBuf>,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Five contexts, each four comma-separated observable labels,
    /// e.g. "XII,IXI,IIX,XXX".
    #[arg(num_args = 5, value_name = "CONTEXT")]
    pub contexts: Vec<String>,
}

#[derive(Args)]
pub struct NeighborsArgs {
    /// Pentagram index in the canonical enumeration (0-based).
    pub index: usize,
}

#[derive(Args)]
pub struct RenderArgs {
    /// Pentagram index in the canonical enumeration (0-based).
    #[arg(long, value_name = "N", conflicts_with = "contexts")]
    pub index: Option<usize>,

    /// Five explicit contexts, four comma-separated labels each.
    #[arg(num_args = 5, value_name = "CONTEXT")]
    pub contexts: Option<Vec<String>>,

    /// Emit SVG instead of DOT.
    #[arg(long)]
    pub svg: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
