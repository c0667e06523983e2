//! Deterministic Monte Carlo experiment harness.
//!
//! Each experiment takes an [`ExperimentConfig`], resolves its graph,
//! runs seeded trials, and produces a versioned [`Report`]. Trials run
//! concurrently, but every random decision flows from a seed derived
//! ahead of time — trial `i` of a family draws from
//! `split_seed(family_base, i)`, and multi-family experiments derive
//! each family base as `split_seed(base_seed, family_index)` — so the
//! serialized report is byte-identical across runs and worker counts.

mod hitting;
mod structure_run;
mod sweep;
mod tightness_run;

pub use hitting::run_hitting_experiment;
pub use structure_run::run_structure_experiment;
pub use sweep::{
    estimate_half_threshold, sweep_probability, SweepProperty, SweepRow, SweepTable,
};
pub use tightness_run::run_tightness_experiment;

use crate::error::{Error, Result};
use crate::graph::{generate, read_graph_file, GeneratorSpec, Graph};
use crate::rng::{split_seed, DEFAULT_SEED};
use crate::stats::wilson_interval;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Version stamp carried by every serialized report and sweep table.
pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Where an experiment's host graph comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum GraphSource {
    Generator { spec: GeneratorSpec },
    File { path: PathBuf },
}

impl GraphSource {
    pub fn resolve(&self) -> Result<Graph> {
        match self {
            GraphSource::Generator { spec } => generate(spec),
            GraphSource::File { path } => read_graph_file(path),
        }
    }
}

/// How a hitting-time experiment chooses between exact enumeration and
/// sampling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunMode {
    /// Enumerate all edge orderings when `m <= 8`, else Monte Carlo.
    #[default]
    Auto,
    Exhaustive,
    MonteCarlo,
}

/// Largest edge count for which [`RunMode::Auto`] enumerates all
/// orderings exactly.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 8;

fn default_k() -> u32 {
    1
}

fn default_big_c() -> f64 {
    1.0
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Everything needed to reproduce one experiment run.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub source: GraphSource,
    #[serde(default = "default_k")]
    pub k: u32,
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub base_seed: u64,
    /// Target low-degree vertex count at the minimum-degree threshold;
    /// `None` means `ln n`.
    #[serde(default)]
    pub phi: Option<f64>,
    /// Band constant for the component-gap check.
    #[serde(default = "default_big_c")]
    pub big_c: f64,
    /// Local-expansion defect parameter, carried for certification
    /// configs; unused by the experiment runners.
    #[serde(default)]
    pub epsilon: Option<f64>,
    /// Retention probabilities for sweeps, strictly increasing in [0, 1].
    #[serde(default)]
    pub p_grid: Vec<f64>,
    /// Evaluate at this retention probability instead of the derived
    /// threshold.
    #[serde(default)]
    pub p_override: Option<f64>,
    /// Trial count for the process half of the tightness experiment;
    /// `None` reuses `trials`.
    #[serde(default)]
    pub process_trials: Option<usize>,
    /// Worker-count hint for the caller. Execution advice only: it is
    /// never serialized and does not participate in equality, because
    /// the same experiment must yield byte-identical reports at any
    /// parallelism.
    #[serde(skip)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub mode: RunMode,
}

impl PartialEq for ExperimentConfig {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.k == other.k
            && self.trials == other.trials
            && self.base_seed == other.base_seed
            && self.phi == other.phi
            && self.big_c == other.big_c
            && self.epsilon == other.epsilon
            && self.p_grid == other.p_grid
            && self.p_override == other.p_override
            && self.process_trials == other.process_trials
            && self.mode == other.mode
    }
}

impl ExperimentConfig {
    /// Minimal config: everything else takes defaults.
    pub fn new(source: GraphSource, k: u32, trials: usize, base_seed: u64) -> Self {
        ExperimentConfig {
            source,
            k,
            trials,
            base_seed,
            phi: None,
            big_c: default_big_c(),
            epsilon: None,
            p_grid: Vec::new(),
            p_override: None,
            process_trials: None,
            workers: None,
            mode: RunMode::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if let Some(phi) = self.phi {
            if !(phi > 0.0) {
                return Err(Error::InvalidParameter(format!("phi must be positive, got {phi}")));
            }
        }
        if !(self.big_c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "band constant must be positive, got {}",
                self.big_c
            )));
        }
        if let Some(eps) = self.epsilon {
            if !(0.0..1.0).contains(&eps) {
                return Err(Error::InvalidParameter(format!(
                    "epsilon must lie in [0, 1), got {eps}"
                )));
            }
        }
        if let Some(p) = self.p_override {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "p override must lie in [0, 1], got {p}"
                )));
            }
        }
        if self.process_trials == Some(0) {
            return Err(Error::InvalidParameter("process trials must be at least 1".into()));
        }
        for pair in self.p_grid.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(Error::InvalidParameter(
                    "p grid must be strictly increasing".into(),
                ));
            }
        }
        if let (Some(first), Some(last)) = (self.p_grid.first(), self.p_grid.last()) {
            if !(0.0..=1.0).contains(first) || !(0.0..=1.0).contains(last) {
                return Err(Error::InvalidParameter("p grid must lie within [0, 1]".into()));
            }
        }
        Ok(())
    }
}

/// One trial's outcome inside a [`Report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum TrialRecord {
    Hitting {
        tau_k: usize,
        tau_kc: usize,
    },
    Structure {
        core_pass: bool,
        distance_pass: bool,
        gap_pass: bool,
        outsiders: usize,
        gap_violations: usize,
    },
    TightnessPercolation {
        min_degree: u32,
        isolated: usize,
        connected: bool,
        /// Hubs whose bridge edges were all absent.
        cut_gadgets: usize,
    },
    TightnessProcess {
        tau_1: usize,
        tau_conn: usize,
    },
}

/// A named summary statistic inside a [`Report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "stat", rename_all = "snake_case")]
pub enum Aggregate {
    /// Bernoulli success rate with a Wilson 95% interval.
    Fraction { successes: u64, trials: u64, phat: f64, ci_lo: f64, ci_hi: f64 },
    Scalar { value: f64 },
    /// Nearest-rank quantiles of an integer sample.
    IntQuantiles { q01: usize, q05: usize, q25: usize, q50: usize, q75: usize, q95: usize },
}

impl Aggregate {
    pub fn fraction(successes: u64, trials: u64) -> Aggregate {
        let (ci_lo, ci_hi) = wilson_interval(successes, trials);
        Aggregate::Fraction {
            successes,
            trials,
            phat: successes as f64 / trials as f64,
            ci_lo,
            ci_hi,
        }
    }

    pub fn quantiles_of(samples: &mut [usize]) -> Aggregate {
        use crate::stats::quantile_nearest_rank as q;
        samples.sort_unstable();
        Aggregate::IntQuantiles {
            q01: q(samples, 0.01),
            q05: q(samples, 0.05),
            q25: q(samples, 0.25),
            q50: q(samples, 0.50),
            q75: q(samples, 0.75),
            q95: q(samples, 0.95),
        }
    }

    /// Headline number: the rate, the value, or the median.
    pub fn value(&self) -> f64 {
        match *self {
            Aggregate::Fraction { phat, .. } => phat,
            Aggregate::Scalar { value } => value,
            Aggregate::IntQuantiles { q50, .. } => q50 as f64,
        }
    }
}

/// Outcome of one experiment run. Serialization is canonical: rerunning
/// the same config yields the same bytes, whatever the thread count.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    /// Which runner produced this: `hitting`, `structure`, `tightness`.
    pub experiment: String,
    pub config: ExperimentConfig,
    /// Per-trial outcomes, ordered by trial index. Empty in exhaustive
    /// mode, where the aggregates are exact.
    pub records: Vec<TrialRecord>,
    pub aggregates: BTreeMap<String, Aggregate>,
    /// Seconds spent running; informational only and excluded from
    /// serialization and equality.
    #[serde(skip)]
    pub wall_clock_seconds: f64,
}

impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        self.format_version == other.format_version
            && self.experiment == other.experiment
            && self.config == other.config
            && self.records == other.records
            && self.aggregates == other.aggregates
    }
}

impl Report {
    pub fn aggregate(&self, name: &str) -> Option<&Aggregate> {
        self.aggregates.get(name)
    }
}

/// Canonical serialization of a report: pretty JSON with sorted
/// aggregate keys and a trailing newline.
pub fn write_report(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Parses a report and enforces the format version.
pub fn read_report(text: &str) -> Result<Report> {
    let report: Report = serde_json::from_str(text)?;
    if report.format_version != REPORT_FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported report format version {} (expected {REPORT_FORMAT_VERSION})",
            report.format_version
        )));
    }
    Ok(report)
}

pub fn write_report_file(path: impl AsRef<std::path::Path>, report: &Report) -> Result<()> {
    Ok(std::fs::write(path, write_report(report))?)
}

pub fn read_report_file(path: impl AsRef<std::path::Path>) -> Result<Report> {
    read_report(&std::fs::read_to_string(path)?)
}

/// Runs `trials` independent jobs in parallel. Job `i` receives
/// `split_seed(family_base, i)`; results come back in trial order, so
/// output does not depend on scheduling.
pub(crate) fn run_trials<T: Send>(
    trials: usize,
    family_base: u64,
    job: impl Fn(usize, u64) -> T + Sync,
) -> Vec<T> {
    use rayon::prelude::*;
    (0..trials)
        .into_par_iter()
        .map(|i| job(i, split_seed(family_base, i as u64)))
        .collect()
}
