use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "chardeg",
    version,
    about = "Smallest groups with an irreducible character of a given degree"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format [env: CHARDEG_FORMAT] [default: pretty]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Config file of `key = value` lines
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Directory holding the degree cache [env: CHARDEG_CACHE_DIR]
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Read and update the degree cache
    #[arg(long, global = true)]
    pub cache: bool,

    /// Leave the generation timestamp out of the output
    #[arg(long, global = true)]
    pub no_timestamp: bool,

    /// Largest group realized element by element [env: CHARDEG_ELEMENT_CAP]
    #[arg(long, global = true, value_name = "N")]
    pub element_cap: Option<u64>,

    /// More diagnostics on stderr (repeatable)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Least group order with a character of degree N (prime, prime squared, 6 or 8)
    Gvalue {
        #[arg(long)]
        degree: u64,
        /// Skip realizing the witnesses
        #[arg(long)]
        no_verify: bool,
    },
    /// g(p) for every prime p <= P
    ScanA {
        #[arg(long)]
        max_p: u64,
    },
    /// g(p^2) for every prime p <= P
    ScanB {
        #[arg(long)]
        max_p: u64,
    },
    /// Least prime q = 1 (mod p) against p^2 for every prime p <= P
    Kanold {
        #[arg(long)]
        max_p: u64,
    },
    /// Character degrees of a group spec
    Degrees {
        #[arg(long)]
        spec: String,
    },
    /// Witness groups for degree N with their generators
    Witness {
        #[arg(long)]
        degree: u64,
    },
    /// Minimality evidence for the witness order of degree N
    Verify {
        #[arg(long)]
        degree: u64,
        /// Largest order handed to the enumerator [env: CHARDEG_ORACLE_CAP]
        #[arg(long)]
        oracle_cap: Option<u32>,
        /// Enumerator node budget [env: CHARDEG_BUDGET]
        #[arg(long)]
        budget: Option<u64>,
    },
    /// All groups of order N up to isomorphism
    Enumerate {
        #[arg(long)]
        order: u32,
        /// Enumerator node budget [env: CHARDEG_BUDGET]
        #[arg(long)]
        budget: Option<u64>,
        /// Largest order accepted [env: CHARDEG_ORACLE_CAP]
        #[arg(long)]
        order_cap: Option<u32>,
    },
    /// Inspect or clear the degree cache
    Cache {
        #[arg(long, conflicts_with = "stats", required_unless_present = "stats")]
        clear: bool,
        #[arg(long)]
        stats: bool,
    },
}
