//! Structure experiment: percolate at the minimum-degree threshold and
//! grade the core, distance, and component-gap checks.

use super::{run_trials, Aggregate, ExperimentConfig, Report, TrialRecord, REPORT_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::process::{mindeg_threshold_p, percolate};
use crate::rng::{split_seed, stream};
use crate::structure::{component_gap_check, core_structure_check, low_degree_distance_check};
use rand::Rng;
use std::collections::BTreeMap;
use std::time::Instant;

/// Per trial: one percolation sample at `p = mindeg_threshold_p(n, d,
/// phi)` (or the configured override), one uniformly drawn removal set
/// of exactly `k` vertices, then all three structural checks.
///
/// Trial `i` derives two streams from `split_seed(base_seed, i)`:
/// family 0 percolates, family 1 draws the removal set.
pub fn run_structure_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let g = config.source.resolve()?;
    let started = Instant::now();
    let d = g.degree_uniform().ok_or(Error::NotRegular)?;
    if g.n() <= config.k as usize {
        return Err(Error::InvalidParameter(format!(
            "cannot remove {} vertices from a host with {}",
            config.k,
            g.n()
        )));
    }
    let phi = config.phi.unwrap_or_else(|| (g.n() as f64).ln());
    let p = match config.p_override {
        Some(p) => p,
        None => mindeg_threshold_p(g.n(), d, phi)?.p,
    };

    let k = config.k;
    let big_c = config.big_c;
    let records: Vec<TrialRecord> = run_trials(config.trials, config.base_seed, |_, seed| {
        let sample = percolate(&g, p, split_seed(seed, 0)).expect("p validated");
        let removed = draw_removal_set(&g, k as usize, split_seed(seed, 1));
        let core = core_structure_check(&g, &sample, k);
        let distance = low_degree_distance_check(&g, &sample, k);
        let gap = component_gap_check(&g, &sample, &removed, big_c);
        TrialRecord::Structure {
            core_pass: core.pass,
            distance_pass: distance.pass,
            gap_pass: gap.pass(),
            outsiders: core.outsiders.len(),
            gap_violations: gap.violations.len(),
        }
    });

    let trials = records.len() as u64;
    let mut core_pass = 0u64;
    let mut distance_pass = 0u64;
    let mut gap_pass = 0u64;
    let mut outsider_sum = 0u64;
    for record in &records {
        let TrialRecord::Structure { core_pass: c, distance_pass: d, gap_pass: gp, outsiders, .. } =
            record
        else {
            unreachable!("structure runner emits structure records")
        };
        core_pass += u64::from(*c);
        distance_pass += u64::from(*d);
        gap_pass += u64::from(*gp);
        outsider_sum += *outsiders as u64;
    }
    let mut aggregates = BTreeMap::new();
    aggregates.insert("core_pass_rate".into(), Aggregate::fraction(core_pass, trials));
    aggregates.insert("distance_pass_rate".into(), Aggregate::fraction(distance_pass, trials));
    aggregates.insert("gap_pass_rate".into(), Aggregate::fraction(gap_pass, trials));
    aggregates.insert(
        "outsider_mean".into(),
        Aggregate::Scalar { value: outsider_sum as f64 / trials as f64 },
    );
    aggregates.insert("threshold_p".into(), Aggregate::Scalar { value: p });
    aggregates.insert("phi".into(), Aggregate::Scalar { value: phi });
    Ok(Report {
        format_version: REPORT_FORMAT_VERSION,
        experiment: "structure".into(),
        config: config.clone(),
        records,
        aggregates,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Uniform random set of exactly `size` distinct vertices: a partial
/// Fisher–Yates pass over the identity array, pinned here so the drawn
/// set depends only on the seed.
fn draw_removal_set(g: &Graph, size: usize, seed: u64) -> VertexSet {
    let mut rng = stream(seed);
    let mut ids: Vec<Vertex> = (0..g.n() as Vertex).collect();
    for i in 0..size {
        let j = rng.random_range(i..ids.len());
        ids.swap(i, j);
    }
    ids.truncate(size);
    VertexSet::new(ids, g.n()).expect("drawn ids are in range")
}
