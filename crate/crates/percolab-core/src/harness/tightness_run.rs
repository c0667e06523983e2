//! Tightness experiment: measure, on the hub-and-gadget construction,
//! how far apart "minimum degree one" and "connected" actually sit.

use super::{run_trials, Aggregate, ExperimentConfig, GraphSource, Report, TrialRecord, REPORT_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::graph::{ConstructionSpec, GeneratorSpec, TightnessGraph};
use crate::process::{
    connectivity_hitting_time, construction_threshold_p, min_degree_hitting_time, percolate,
    process_permutation, sample_connected, sample_isolated_count, sample_min_degree,
};
use crate::rng::split_seed;
use std::collections::BTreeMap;
use std::time::Instant;

/// Two sub-suites over the configured construction.
///
/// Percolation (family 0, `trials` samples at the construction
/// threshold or the override): minimum degree, isolated count,
/// connectivity, and the number of gadgets cut clean off their hub.
/// Process (family 1, `process_trials` edge orderings): the gap between
/// the minimum-degree-one time and the connectivity time.
///
/// The source must carry construction metadata: either the tightness
/// generator, or a file whose contents validate as such a construction.
pub fn run_tightness_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let tg = resolve_construction(&config.source)?;
    let started = Instant::now();
    let g = &tg.graph;
    let n = g.n();
    let d = tg.spec.d;
    let p = match config.p_override {
        Some(p) => p,
        None => construction_threshold_p(n, d)?,
    };
    let bridge_count = tg.spec.bridge_count() as i32;
    let hub_count = tg.spec.hub_count();

    // Percolation half.
    let bridges: Vec<Vec<usize>> = tg.hubs().map(|h| tg.bridge_edges(h)).collect();
    let perc_records: Vec<TrialRecord> =
        run_trials(config.trials, split_seed(config.base_seed, 0), |_, seed| {
            let sample = percolate(g, p, seed).expect("p validated");
            let cut_gadgets = bridges
                .iter()
                .filter(|ids| ids.iter().all(|&e| !sample.is_present(e)))
                .count();
            TrialRecord::TightnessPercolation {
                min_degree: sample_min_degree(g, &sample),
                isolated: sample_isolated_count(g, &sample),
                connected: sample_connected(g, &sample),
                cut_gadgets,
            }
        });

    // Process half.
    let process_trials = config.process_trials.unwrap_or(config.trials);
    let proc_records: Vec<TrialRecord> =
        run_trials(process_trials, split_seed(config.base_seed, 1), |_, seed| {
            let trace = process_permutation(g, seed);
            let tau_1 = min_degree_hitting_time(g, &trace, 1).expect("host has min degree >= 1");
            let tau_conn = connectivity_hitting_time(g, &trace).expect("host is connected");
            assert!(tau_1 <= tau_conn, "hitting-time order violated");
            TrialRecord::TightnessProcess { tau_1, tau_conn }
        });

    let mut aggregates = BTreeMap::new();
    let perc_trials = perc_records.len() as u64;
    let mut mindeg_ge_1 = 0u64;
    let mut connected_count = 0u64;
    let mut some_cut = 0u64;
    let mut isolated_sum = 0u64;
    for record in &perc_records {
        let TrialRecord::TightnessPercolation { min_degree, isolated, connected, cut_gadgets } =
            record
        else {
            unreachable!()
        };
        mindeg_ge_1 += u64::from(*min_degree >= 1);
        connected_count += u64::from(*connected);
        some_cut += u64::from(*cut_gadgets >= 1);
        isolated_sum += *isolated as u64;
    }
    aggregates.insert("min_degree_ge_1_rate".into(), Aggregate::fraction(mindeg_ge_1, perc_trials));
    aggregates.insert("connected_rate".into(), Aggregate::fraction(connected_count, perc_trials));
    aggregates.insert("some_gadget_cut_rate".into(), Aggregate::fraction(some_cut, perc_trials));
    aggregates.insert(
        "isolated_mean".into(),
        Aggregate::Scalar { value: isolated_sum as f64 / perc_trials as f64 },
    );
    // At the construction threshold the isolated-vertex expectation
    // n(1-p)^d collapses to 1/ln d.
    aggregates.insert(
        "isolated_expectation".into(),
        Aggregate::Scalar { value: n as f64 * (1.0 - p).powi(d as i32) },
    );
    // Bridge sets are disjoint, so gadget cuts are independent: the
    // probability that no gadget is cut factorizes exactly.
    let keep_one_gadget = 1.0 - (1.0 - p).powi(bridge_count);
    aggregates.insert(
        "no_gadget_cut_probability".into(),
        Aggregate::Scalar { value: keep_one_gadget.powi(hub_count as i32) },
    );
    aggregates.insert("threshold_p".into(), Aggregate::Scalar { value: p });

    let proc_count = proc_records.len() as u64;
    let mut strict = 0u64;
    let mut gaps = Vec::with_capacity(proc_records.len());
    for record in &proc_records {
        let TrialRecord::TightnessProcess { tau_1, tau_conn } = record else { unreachable!() };
        strict += u64::from(tau_1 < tau_conn);
        gaps.push(tau_conn - tau_1);
    }
    aggregates.insert("tau_1_lt_tau_conn_rate".into(), Aggregate::fraction(strict, proc_count));
    aggregates.insert("gap_quantiles".into(), Aggregate::quantiles_of(&mut gaps));

    let mut records = perc_records;
    records.extend(proc_records);
    Ok(Report {
        format_version: REPORT_FORMAT_VERSION,
        experiment: "tightness".into(),
        config: config.clone(),
        records,
        aggregates,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Rebuilds construction metadata from the source: directly for the
/// tightness generator, by layout validation for files.
fn resolve_construction(source: &GraphSource) -> Result<TightnessGraph> {
    match source {
        GraphSource::Generator { spec: GeneratorSpec::Tightness { d, n, seed } } => {
            tightness_from_params(*d, *n, *seed)
        }
        GraphSource::Generator { spec } => Err(Error::InvalidParameter(format!(
            "tightness experiment needs construction metadata; generator {spec:?} has none"
        ))),
        GraphSource::File { path } => {
            let g = crate::graph::read_graph_file(path)?;
            let d = g.degree_uniform().ok_or(Error::NotRegular)?;
            let spec = ConstructionSpec::new(d, g.n())?;
            TightnessGraph::from_graph(g, spec)
        }
    }
}

fn tightness_from_params(d: u32, n: usize, seed: u64) -> Result<TightnessGraph> {
    let spec = ConstructionSpec::new(d, n)?;
    crate::graph::tightness_construction(&spec, seed)
}
