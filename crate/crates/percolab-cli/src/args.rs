//! Command-line surface: one binary, five subcommands, and a small set
//! of global flags shared by all of them.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Accepts decimal ("51966") or hex ("0xCAFE") seeds.
pub fn parse_seed(text: &str) -> Result<u64, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("seed {text:?} is not a 64-bit integer: {e}"))
}

#[derive(Parser, Debug)]
#[command(
    name = "percolab",
    version,
    about = "Percolation and random graph process laboratory",
    long_about = "Generates regular graphs, certifies their edge expansion, simulates \
                  random edge arrivals and percolation, and runs deterministic Monte \
                  Carlo experiment suites. Identical flags (including --seed) always \
                  reproduce identical output bytes, regardless of --threads."
)]
pub struct Cli {
    /// Base seed for all randomness (decimal or 0x-prefixed hex)
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,

    /// Write primary output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output encoding for tabular results
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker thread cap (default: one per CPU)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph and write it in the canonical text format
    Gen(GenArgs),
    /// Certify or refute an edge-expansion property of a graph
    Certify(CertifyArgs),
    /// Estimate hitting-time statistics of the random edge-arrival process
    Sim(SimArgs),
    /// Run a prepackaged experiment suite
    #[command(subcommand)]
    Exp(ExpCommand),
    /// Sweep a retention-probability grid and tabulate a monotone property
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Graph family
    #[arg(long = "type", value_enum)]
    pub family: Family,

    /// Hypercube dimension (type hypercube)
    #[arg(long)]
    pub dim: Option<u32>,

    /// Vertex count (types complete, cycle, rrg, tightness)
    #[arg(long)]
    pub n: Option<usize>,

    /// Uniform degree (types rrg, tightness)
    #[arg(long)]
    pub d: Option<u32>,

    /// Comma-separated factors for type product, e.g. "hypercube:3,cycle:5";
    /// factor forms: hypercube:DIM, complete:N, cycle:N, rrg:N:D[:SEED]
    #[arg(long)]
    pub factors: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hypercube,
    Complete,
    Cycle,
    Product,
    Rrg,
    Tightness,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Graph file to certify
    #[arg(long)]
    pub graph: PathBuf,

    /// p1: every set of at most n/2 vertices has edge boundary at least
    /// c times its size. p2: every set of at most c*d*ln(n) vertices has
    /// edge boundary at least (1-epsilon)*d times its size.
    #[arg(long, value_enum)]
    pub property: PropertyArg,

    /// Expansion rate for p1; size-bound constant for p2 (default 1)
    #[arg(long)]
    pub c: Option<f64>,

    /// Allowed boundary deficit fraction for p2
    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Set-size cap for brute-force enumeration
    #[arg(long, default_value_t = 12)]
    pub max_size: usize,

    /// Certification route
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    P1,
    P2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Harper, then spectral, then brute force; first conclusive answer wins
    Auto,
    Harper,
    Spectral,
    Brute,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    /// Graph file to simulate on
    #[arg(long)]
    pub graph: PathBuf,

    /// Connectivity order whose hitting time is compared against the
    /// minimum-degree hitting time
    #[arg(long, default_value_t = 1)]
    pub k: u32,

    /// Monte Carlo trial count (ignored when all orderings are enumerated)
    #[arg(long, default_value_t = 100)]
    pub trials: usize,

    /// Enumerate all edge orderings instead of sampling (small graphs only)
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand, Debug)]
pub enum ExpCommand {
    /// Percolate at the minimum-degree threshold and grade core,
    /// distance, and component-gap checks per trial
    Structure(StructureArgs),
    /// Percolation and process statistics on the threshold-separation
    /// construction
    Tightness(TightnessArgs),
}

#[derive(Args, Debug)]
pub struct StructureArgs {
    /// Graph file (must be regular)
    #[arg(long)]
    pub graph: PathBuf,

    /// Connectivity order graded by the checks
    #[arg(long, default_value_t = 1)]
    pub k: u32,

    /// Trial count
    #[arg(long, default_value_t = 200)]
    pub trials: usize,

    /// Isolated-vertex expectation target (default: ln n)
    #[arg(long)]
    pub phi: Option<f64>,

    /// Component-size bound constant: components above c*d*ln(n) are large
    #[arg(long = "big-c", default_value_t = 1.0)]
    pub big_c: f64,

    /// Override the retention probability instead of deriving it
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Args, Debug)]
pub struct TightnessArgs {
    /// Construction graph file; alternative to --d/--n
    #[arg(long, conflicts_with_all = ["d", "n"])]
    pub graph: Option<PathBuf>,

    /// Uniform degree of a freshly generated construction
    #[arg(long, requires = "n")]
    pub d: Option<u32>,

    /// Vertex count of a freshly generated construction
    #[arg(long, requires = "d")]
    pub n: Option<usize>,

    /// Percolation trial count
    #[arg(long, default_value_t = 500)]
    pub trials: usize,

    /// Edge-arrival process trial count (default: same as --trials)
    #[arg(long)]
    pub process_trials: Option<usize>,

    /// Override the retention probability instead of deriving it
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Graph file to sweep on
    #[arg(long)]
    pub graph: PathBuf,

    /// Property graded at each grid point
    #[arg(long, value_enum)]
    pub property: SweepPropertyArg,

    /// Connectivity / degree order for the property
    #[arg(long, default_value_t = 1)]
    pub k: u32,

    /// Lowest retention probability
    #[arg(long)]
    pub pmin: f64,

    /// Highest retention probability
    #[arg(long)]
    pub pmax: f64,

    /// Grid spacing
    #[arg(long)]
    pub step: f64,

    /// Trials per grid point
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepPropertyArg {
    /// Minimum sampled degree at least k
    MinDegreeGeK,
    /// Sampled subgraph connected
    Connected,
    /// Sampled subgraph k-connected
    KConnected,
}
