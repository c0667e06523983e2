//! Probability sweeps: empirical monotone curves of a property's
//! probability as the retention probability climbs a grid.

use super::{run_trials, ExperimentConfig, REPORT_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::process::{percolate, sample_connected, sample_is_k_connected, sample_min_degree};
use crate::rng::split_seed;
use crate::stats::{isotonic_nondecreasing, wilson_interval};
use serde::{Deserialize, Serialize};

/// Monotone (in p) property a sweep can grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepProperty {
    MinDegreeGeK,
    Connected,
    KConnected,
}

impl SweepProperty {
    pub fn name(&self) -> &'static str {
        match self {
            SweepProperty::MinDegreeGeK => "min_degree_ge_k",
            SweepProperty::Connected => "connected",
            SweepProperty::KConnected => "k_connected",
        }
    }

    fn evaluate(&self, g: &Graph, sample: &crate::process::PercolationSample, k: u32) -> bool {
        match self {
            SweepProperty::MinDegreeGeK => sample_min_degree(g, sample) >= k,
            SweepProperty::Connected => sample_connected(g, sample),
            SweepProperty::KConnected => sample_is_k_connected(g, sample, k),
        }
    }
}

impl std::str::FromStr for SweepProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_degree_ge_k" => Ok(SweepProperty::MinDegreeGeK),
            "connected" => Ok(SweepProperty::Connected),
            "k_connected" => Ok(SweepProperty::KConnected),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep property {other:?}; expected min_degree_ge_k, connected, or k_connected"
            ))),
        }
    }
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub property: SweepProperty,
    pub successes: u64,
    pub trials: u64,
    pub phat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Monotone regression of `phat` across the grid.
    pub isotonic: f64,
}

/// Sweep outcome: rows ascend the probability grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub format_version: u32,
    pub property: SweepProperty,
    pub k: u32,
    pub base_seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// CSV projection, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,property,successes,trials,phat,ci_lo,ci_hi,isotonic\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.p,
                row.property.name(),
                row.successes,
                row.trials,
                row.phat,
                row.ci_lo,
                row.ci_hi,
                row.isotonic
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<SweepTable> {
        let table: SweepTable = serde_json::from_str(text)?;
        if table.format_version != REPORT_FORMAT_VERSION {
            return Err(Error::Schema(format!(
                "unsupported sweep format version {} (expected {REPORT_FORMAT_VERSION})",
                table.format_version
            )));
        }
        Ok(table)
    }
}

/// Evaluates `property` on `trials` percolation samples at every grid
/// probability. Grid point `j` seeds trial `i` from
/// `split_seed(split_seed(base_seed, j), i)`. The isotonic column is
/// the trial-weighted nondecreasing regression of the empirical rates.
pub fn sweep_probability(config: &ExperimentConfig, property: SweepProperty) -> Result<SweepTable> {
    config.validate()?;
    if config.p_grid.is_empty() {
        return Err(Error::InvalidParameter("sweep needs a nonempty p grid".into()));
    }
    let g = config.source.resolve()?;
    let k = config.k;
    let mut rows = Vec::with_capacity(config.p_grid.len());
    for (j, &p) in config.p_grid.iter().enumerate() {
        let outcomes = run_trials(
            config.trials,
            split_seed(config.base_seed, j as u64),
            |_, seed| {
                let sample = percolate(&g, p, seed).expect("grid validated");
                property.evaluate(&g, &sample, k)
            },
        );
        let successes = outcomes.iter().filter(|&&ok| ok).count() as u64;
        let trials = outcomes.len() as u64;
        let (ci_lo, ci_hi) = wilson_interval(successes, trials);
        rows.push(SweepRow {
            p,
            property,
            successes,
            trials,
            phat: successes as f64 / trials as f64,
            ci_lo,
            ci_hi,
            isotonic: 0.0,
        });
    }
    let phats: Vec<f64> = rows.iter().map(|r| r.phat).collect();
    let weights: Vec<f64> = rows.iter().map(|r| r.trials as f64).collect();
    for (row, iso) in rows.iter_mut().zip(isotonic_nondecreasing(&phats, &weights)) {
        row.isotonic = iso;
    }
    Ok(SweepTable {
        format_version: REPORT_FORMAT_VERSION,
        property,
        k,
        base_seed: config.base_seed,
        rows,
    })
}

/// Probability at which the isotonic curve crosses one half, by linear
/// interpolation between neighboring grid points. Needs a row strictly
/// below 1/2 followed by a row at or above it.
pub fn estimate_half_threshold(table: &SweepTable) -> Result<f64> {
    let rows = &table.rows;
    let Some(j) = rows.iter().position(|r| r.isotonic >= 0.5) else {
        return Err(Error::InvalidParameter(
            "isotonic column never reaches 1/2; cannot interpolate".into(),
        ));
    };
    if j == 0 {
        return Err(Error::InvalidParameter(
            "isotonic column starts at or above 1/2; threshold not bracketed".into(),
        ));
    }
    let hi = &rows[j];
    if hi.isotonic == 0.5 {
        return Ok(hi.p);
    }
    let lo = &rows[j - 1];
    Ok(lo.p + (0.5 - lo.isotonic) * (hi.p - lo.p) / (hi.isotonic - lo.isotonic))
}
