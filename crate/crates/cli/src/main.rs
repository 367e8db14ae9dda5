//! `qkdv`: flows, Hamiltonians and loop-equation solutions of the extended
//! q-deformed KdV hierarchy from the command line.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cache::{Cache, CACHE_ENV};

#[derive(Debug, Parser)]
#[command(name = "qkdv", version, about = "Exact computations for the extended q-deformed KdV hierarchy")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory of cached genus solutions.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Solve from scratch without reading or writing the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

impl Global {
    pub fn cache(&self) -> Cache {
        if self.no_cache {
            Cache::disabled()
        } else {
            Cache::at(self.cache_dir.clone().unwrap_or_else(Cache::default_dir))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `t^{1,p}`, p >= 0.
    T1,
    /// `t^{0,-p}`, p >= 1.
    T0neg,
    /// `t^{0,p}`, p >= 0 (logarithmic flows).
    T0,
    /// Dispersionless principal hierarchy `t^{α,p}`.
    Principal,
    /// Fractional Volterra time `T_s`; set `--s`.
    Fvh,
    /// Volterra time `T̃_p`, p >= 1.
    Volterra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// The exact formula checks (criteria 1 to 11).
    Paper,
    /// The randomized invariant suites (criterion 12).
    Properties,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a flow as an ε-series.
    Flow(FlowArgs),
    /// Print the density and gradient of a Hamiltonian.
    Hamiltonian(HamiltonianArgs),
    /// Solve the loop equation genus by genus.
    Loopsolve(LoopsolveArgs),
    /// Run the verification catalogue; exits nonzero on any failure.
    Verify(VerifyArgs),
    /// Write flows and genus solutions as JSON files.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub p: i64,
    /// Principal-hierarchy index α (0 or 1).
    #[arg(long, default_value_t = 1)]
    pub alpha: u8,
    /// FVH time `s`: an integer `p >= 1` or `-p-1/2` written as a fraction.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// ε-order of the truncation.
    #[arg(long, default_value_t = 8)]
    pub eps: usize,
    /// Also run the cross-checks available for this flow.
    #[arg(long)]
    pub check: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HamiltonianArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub p: i64,
    #[arg(long, value_enum, default_value_t = Kind::First)]
    pub kind: Kind,
    #[arg(long, default_value_t = 6)]
    pub eps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LoopsolveArgs {
    /// `gfm-v4` or `fvh`.
    #[arg(long, default_value = "gfm-v4")]
    pub model: String,
    #[arg(long, default_value_t = 3)]
    pub genus: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// ε-order; deeper checks are capped at their acceptance depth.
    #[arg(long, default_value_t = 8)]
    pub eps: usize,
    #[arg(long, default_value_t = 3)]
    pub genus: u32,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub eps: usize,
    #[arg(long, default_value_t = 3)]
    pub genus: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Flow(a) => commands::flow(g, a),
        Command::Hamiltonian(a) => commands::hamiltonian(g, a),
        Command::Loopsolve(a) => commands::loopsolve(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Export(a) => commands::export(g, a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
