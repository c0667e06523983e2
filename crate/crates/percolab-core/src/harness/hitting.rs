//! Hitting-time experiment: does minimum degree k arrive together with
//! k-connectivity?

use super::{
    run_trials, Aggregate, ExperimentConfig, Report, RunMode, TrialRecord,
    EXHAUSTIVE_EDGE_LIMIT, REPORT_FORMAT_VERSION,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::process::{
    connectivity_hitting_time, for_each_permutation, is_k_connected,
    k_connectivity_hitting_time, min_degree_hitting_time, process_permutation, ProcessTrace,
};
use std::collections::BTreeMap;
use std::time::Instant;

/// Runs the edge-arrival process on the configured host and records,
/// per trial, the first prefix length with minimum degree >= k (tau_k)
/// and the first with k-connectivity (tau_kc).
///
/// In exhaustive mode — forced, or automatic when the host has at most
/// [`EXHAUSTIVE_EDGE_LIMIT`] edges — every edge ordering is evaluated
/// once, records are omitted, and the aggregates are exact; `trials`
/// and `base_seed` are ignored. The host must itself be k-connected,
/// else no ordering ever reaches the target.
pub fn run_hitting_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let g = config.source.resolve()?;
    let started = Instant::now();
    if !is_k_connected(&g, config.k) {
        return Err(Error::InvalidParameter(format!(
            "host is not {}-connected; hitting times would never arrive",
            config.k
        )));
    }
    let exhaustive = match config.mode {
        RunMode::Exhaustive => true,
        RunMode::MonteCarlo => false,
        RunMode::Auto => g.m() <= EXHAUSTIVE_EDGE_LIMIT,
    };
    let (records, aggregates) = if exhaustive {
        (Vec::new(), exhaustive_aggregates(&g, config.k)?)
    } else {
        monte_carlo(&g, config)?
    };
    Ok(Report {
        format_version: REPORT_FORMAT_VERSION,
        experiment: "hitting".into(),
        config: config.clone(),
        records,
        aggregates,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}

fn hitting_pair(g: &Graph, trace: &ProcessTrace, k: u32) -> Result<(usize, usize)> {
    let tau_k = min_degree_hitting_time(g, trace, k)?;
    let tau_kc = if k == 1 {
        connectivity_hitting_time(g, trace)?
    } else {
        k_connectivity_hitting_time(g, trace, k)?
    };
    // Degree k is necessary for k-connectivity, so arrival order is
    // forced; a violation means a solver bug, not an unlucky sample.
    assert!(tau_k <= tau_kc, "hitting-time order violated: {tau_k} > {tau_kc}");
    Ok((tau_k, tau_kc))
}

fn exhaustive_aggregates(g: &Graph, k: u32) -> Result<BTreeMap<String, Aggregate>> {
    let mut orderings: u64 = 0;
    let mut equal: u64 = 0;
    let mut sum_tau_k: u64 = 0;
    let mut sum_tau_kc: u64 = 0;
    let mut failure: Option<Error> = None;
    for_each_permutation(g.m(), |perm| {
        if failure.is_some() {
            return;
        }
        let trace = ProcessTrace::from_order(g.m(), perm.to_vec()).expect("permutation is valid");
        match hitting_pair(g, &trace, k) {
            Ok((tau_k, tau_kc)) => {
                orderings += 1;
                equal += u64::from(tau_k == tau_kc);
                sum_tau_k += tau_k as u64;
                sum_tau_kc += tau_kc as u64;
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut aggregates = BTreeMap::new();
    aggregates.insert("equality_fraction".into(), Aggregate::fraction(equal, orderings));
    aggregates.insert("orderings".into(), Aggregate::Scalar { value: orderings as f64 });
    aggregates.insert(
        "tau_k_mean".into(),
        Aggregate::Scalar { value: sum_tau_k as f64 / orderings as f64 },
    );
    aggregates.insert(
        "tau_kc_mean".into(),
        Aggregate::Scalar { value: sum_tau_kc as f64 / orderings as f64 },
    );
    Ok(aggregates)
}

fn monte_carlo(
    g: &Graph,
    config: &ExperimentConfig,
) -> Result<(Vec<TrialRecord>, BTreeMap<String, Aggregate>)> {
    let k = config.k;
    let outcomes = run_trials(config.trials, config.base_seed, |_, seed| {
        let trace = process_permutation(g, seed);
        hitting_pair(g, &trace, k)
    });
    let mut records = Vec::with_capacity(outcomes.len());
    let mut equal: u64 = 0;
    let mut sum_tau_k: u64 = 0;
    let mut sum_tau_kc: u64 = 0;
    let mut gaps = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        let (tau_k, tau_kc) = outcome?;
        equal += u64::from(tau_k == tau_kc);
        sum_tau_k += tau_k as u64;
        sum_tau_kc += tau_kc as u64;
        gaps.push(tau_kc - tau_k);
        records.push(TrialRecord::Hitting { tau_k, tau_kc });
    }
    let trials = records.len() as u64;
    let mut aggregates = BTreeMap::new();
    aggregates.insert("equality_fraction".into(), Aggregate::fraction(equal, trials));
    aggregates.insert(
        "tau_k_mean".into(),
        Aggregate::Scalar { value: sum_tau_k as f64 / trials as f64 },
    );
    aggregates.insert(
        "tau_kc_mean".into(),
        Aggregate::Scalar { value: sum_tau_kc as f64 / trials as f64 },
    );
    aggregates.insert("gap_quantiles".into(), Aggregate::quantiles_of(&mut gaps));
    Ok((records, aggregates))
}
