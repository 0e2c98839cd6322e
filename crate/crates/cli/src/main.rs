//! Command-line front end: nilpotent orbits, reachability, sheets and the
//! null-cone strata of a highest-weight module.

mod campaigns;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liecore::cache::{Cache, CACHE_DIR_ENV};
use liecore::rootsys::SimpleType;
use liecore::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "liecore", version, about = "Exact computations with simple Lie algebras")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    campaign: Campaign,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Simple type, e.g. `E7`, or a letter combined with `--rank`.
    #[arg(long = "type", global = true, default_value = "B6")]
    pub type_name: String,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Highest weight as comma-separated fundamental coordinates.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub hw: Option<Vec<i64>>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Allow campaigns that take many minutes (anything on E8).
    #[arg(long, global = true)]
    pub slow: bool,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest module dimension that will be built.
    #[arg(long, global = true, default_value_t = 1000)]
    pub max_dim: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Campaign {
    /// Nilpotent orbits by weighted Dynkin diagram.
    Orbits,
    /// Reachable, strongly reachable and Panyushev flags for every orbit.
    Reachable,
    /// Sheets with their Levi data and induced orbits.
    Sheets,
    /// Sheet rank against the dimension of the abelianized centralizer.
    Props,
    /// Characteristics of the null-cone strata.
    Strata,
    /// Whether stratum I lies in the closure of stratum J (1-based, sorted order).
    Closure {
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        pair: Vec<usize>,
    },
    /// Closure order of the strata.
    Hasse {
        /// Write Graphviz output; to standard output when no file is given.
        #[arg(long, num_args = 0..=1)]
        dot: Option<Option<PathBuf>>,
    },
    /// Representatives and stabilizer types of the strata.
    Stabilizers,
}

impl Campaign {
    pub fn name(&self) -> &'static str {
        match self {
            Campaign::Orbits => "orbits",
            Campaign::Reachable => "reachable",
            Campaign::Sheets => "sheets",
            Campaign::Props => "props",
            Campaign::Strata => "strata",
            Campaign::Closure { .. } => "closure",
            Campaign::Hasse { .. } => "hasse",
            Campaign::Stabilizers => "stabilizers",
        }
    }
}

impl RunConfig {
    pub fn simple_type(&self) -> Result<SimpleType> {
        match self.rank {
            Some(r) => {
                let letter = self.type_name.trim().chars().next().ok_or_else(|| Error::InvalidType("empty type".into()))?;
                SimpleType::new(letter, r)
            }
            None => SimpleType::parse(&self.type_name),
        }
    }

    pub fn cache(&self) -> Result<Option<Cache>> {
        self.cache_dir.as_ref().map(Cache::new).transpose()
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.config.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match campaigns::run(&cli.config, &cli.campaign) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {} failed: {e}", cli.campaign.name());
            ExitCode::FAILURE
        }
    }
}
