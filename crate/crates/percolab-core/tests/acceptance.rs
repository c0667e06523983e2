//! Acceptance suite: ten numbered end-to-end checks, each printing a
//! single `PASS criterion N: ...` or `FAIL criterion N: ...` line with
//! the measured quantities before asserting.
//!
//! Every check runs from fixed seeds, so the printed numbers reproduce
//! run to run and machine to machine. Rate gates marked "calibrated"
//! were fixed from pilot runs whose reports are kept under
//! `calibration/` at the repository root.

use percolab_core::graph::{complete, hypercube, GeneratorSpec, Graph};
use percolab_core::harness::{
    estimate_half_threshold, run_hitting_experiment, run_structure_experiment,
    run_tightness_experiment, sweep_probability, write_report, Aggregate, ExperimentConfig,
    GraphSource, Report, RunMode, SweepProperty, TrialRecord,
};
use percolab_core::process::{is_k_connected, percolate, union_sample};
use percolab_core::rng::{split_seed, stream, DEFAULT_SEED};
use percolab_core::spectral::{for_each_connected_set, harper_lower_bound};
use percolab_core::stats::chi_square_two_sample;
use percolab_core::structure::{count_rooted_trees, matching_percolation_stats};
use rand::Rng;
use std::ops::ControlFlow;
use std::time::Instant;

const SEED: u64 = DEFAULT_SEED;

/// Prints the one-line outcome for a criterion, then enforces it.
fn verdict(number: u32, ok: bool, detail: &str) {
    println!("{} criterion {number}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number}: {detail}");
}

fn generated(spec: GeneratorSpec) -> GraphSource {
    GraphSource::Generator { spec }
}

fn fraction(report: &Report, name: &str) -> (u64, u64, f64) {
    match report.aggregate(name) {
        Some(&Aggregate::Fraction { successes, trials, phat, .. }) => (successes, trials, phat),
        other => panic!("aggregate {name} missing or not a fraction: {other:?}"),
    }
}

fn scalar(report: &Report, name: &str) -> f64 {
    report.aggregate(name).unwrap_or_else(|| panic!("aggregate {name} missing")).value()
}

/// On the 4-cycle, enumerating all 24 edge orderings shows the
/// minimum-degree-one time equals the connectivity time in exactly 2/3
/// of them; a 100 000-trial Monte Carlo run lands within 0.01 of that,
/// and both finish inside one second.
#[test]
fn criterion_01_cycle_hitting_equality_exact_then_sampled() {
    let started = Instant::now();
    let mut exhaustive =
        ExperimentConfig::new(generated(GeneratorSpec::Cycle { n: 4 }), 1, 1, SEED);
    exhaustive.mode = RunMode::Exhaustive;
    let report = run_hitting_experiment(&exhaustive).unwrap();
    let (successes, trials, exact) = fraction(&report, "equality_fraction");

    let mut sampled =
        ExperimentConfig::new(generated(GeneratorSpec::Cycle { n: 4 }), 1, 100_000, SEED);
    sampled.mode = RunMode::MonteCarlo;
    let (_, _, estimate) = fraction(&run_hitting_experiment(&sampled).unwrap(), "equality_fraction");

    let elapsed = started.elapsed().as_secs_f64();
    let ok = successes == 16
        && trials == 24
        && exact == 16.0 / 24.0
        && (estimate - 2.0 / 3.0).abs() <= 0.01
        && elapsed < 1.0;
    verdict(
        1,
        ok,
        &format!(
            "exhaustive equality {successes}/{trials} = 2/3 exactly; \
             monte carlo estimate {estimate:.5} within 0.01; {elapsed:.3}s (< 1s)"
        ),
    );
}

/// Equality rates of the degree-k and k-connectivity times on larger
/// hosts: the 10-cube at k = 1 (200 orderings, calibrated gate 0.9) and
/// k = 2 (gate 0.85), and a random 12-regular graph on 2000 vertices at
/// k = 2 (100 orderings, gate 0.85).
#[test]
fn criterion_02_equality_rates_on_large_hosts() {
    let q10 = GeneratorSpec::Hypercube { dim: 10 };
    let (_, _, rate_k1) = fraction(
        &run_hitting_experiment(&ExperimentConfig::new(generated(q10.clone()), 1, 200, SEED))
            .unwrap(),
        "equality_fraction",
    );
    let (_, _, rate_k2) = fraction(
        &run_hitting_experiment(&ExperimentConfig::new(generated(q10), 2, 200, SEED)).unwrap(),
        "equality_fraction",
    );
    let regular = GeneratorSpec::RandomRegular { n: 2000, d: 12, seed: SEED };
    let (_, _, rate_reg) = fraction(
        &run_hitting_experiment(&ExperimentConfig::new(generated(regular), 2, 100, SEED)).unwrap(),
        "equality_fraction",
    );
    let ok = rate_k1 >= 0.9 && rate_k2 >= 0.85 && rate_reg >= 0.85;
    verdict(
        2,
        ok,
        &format!(
            "equality rates: 10-cube k=1 {rate_k1:.3} (>= 0.9), k=2 {rate_k2:.3} (>= 0.85), \
             random 12-regular n=2000 k=2 {rate_reg:.3} (>= 0.85)"
        ),
    );
}

/// The hub-and-gadget construction separates the minimum-degree-one
/// time from the connectivity time, while a plain random regular graph
/// of the same degree does not; percolation sweeps show the same split
/// as a gap between the half-thresholds of "min degree >= 1" and
/// "connected" on the construction but not on the 12-cube.
#[test]
fn criterion_03_construction_separates_thresholds() {
    let construction = GeneratorSpec::Tightness { d: 38, n: 4000, seed: SEED };

    let mut process = ExperimentConfig::new(generated(construction.clone()), 1, 10, SEED);
    process.process_trials = Some(300);
    let (_, _, strict_gap) =
        fraction(&run_tightness_experiment(&process).unwrap(), "tau_1_lt_tau_conn_rate");

    let regular = GeneratorSpec::RandomRegular { n: 4000, d: 38, seed: SEED };
    let (_, _, equality) = fraction(
        &run_hitting_experiment(&ExperimentConfig::new(generated(regular), 1, 300, SEED)).unwrap(),
        "equality_fraction",
    );
    let regular_gap = 1.0 - equality;

    let mut sweep_c = ExperimentConfig::new(generated(construction), 1, 300, SEED);
    sweep_c.p_grid = (0..10).map(|j| 0.16 + j as f64 * 0.02).collect();
    let half_deg_c = estimate_half_threshold(
        &sweep_probability(&sweep_c, SweepProperty::MinDegreeGeK).unwrap(),
    )
    .unwrap();
    let half_conn_c =
        estimate_half_threshold(&sweep_probability(&sweep_c, SweepProperty::Connected).unwrap())
            .unwrap();
    let ratio_construction = half_conn_c / half_deg_c;

    let mut sweep_q = ExperimentConfig::new(
        generated(GeneratorSpec::Hypercube { dim: 12 }),
        1,
        300,
        SEED,
    );
    sweep_q.p_grid = (0..12).map(|j| 0.40 + j as f64 * 0.02).collect();
    let half_deg_q = estimate_half_threshold(
        &sweep_probability(&sweep_q, SweepProperty::MinDegreeGeK).unwrap(),
    )
    .unwrap();
    let half_conn_q =
        estimate_half_threshold(&sweep_probability(&sweep_q, SweepProperty::Connected).unwrap())
            .unwrap();
    let ratio_cube = half_conn_q / half_deg_q;

    let ok = strict_gap >= 0.5 && regular_gap <= 0.1 && ratio_construction >= 1.1 && ratio_cube <= 1.03;
    verdict(
        3,
        ok,
        &format!(
            "strict-gap rate {strict_gap:.3} on the construction (>= 0.5) vs {regular_gap:.3} \
             on random 38-regular (<= 0.1); half-threshold ratio {ratio_construction:.3} \
             (>= 1.1) vs {ratio_cube:.3} on the 12-cube (<= 1.03)"
        ),
    );
}

/// At the construction's threshold retention probability the expected
/// isolated-vertex count collapses to 1/ln d; a 10 000-sample empirical
/// mean confirms it within three standard errors, and the empirical
/// probability that no gadget is cut off stays within 3 sigma of the
/// exact product bound.
#[test]
fn criterion_04_isolated_vertex_identity_and_gadget_cut_bound() {
    let mut config = ExperimentConfig::new(
        generated(GeneratorSpec::Tightness { d: 38, n: 4000, seed: SEED }),
        1,
        10_000,
        SEED,
    );
    config.process_trials = Some(1);
    let report = run_tightness_experiment(&config).unwrap();

    let expectation = scalar(&report, "isolated_expectation");
    let target = (38f64).ln().recip();
    let identity_ok = (expectation - target).abs() <= 1e-9;

    let isolated: Vec<f64> = report
        .records
        .iter()
        .filter_map(|r| match r {
            TrialRecord::TightnessPercolation { isolated, .. } => Some(*isolated as f64),
            _ => None,
        })
        .collect();
    let count = isolated.len() as f64;
    let mean = isolated.iter().sum::<f64>() / count;
    let variance = isolated.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let standard_error = (variance / count).sqrt();
    let mean_ok = (mean - target).abs() <= 3.0 * standard_error;

    let bound = scalar(&report, "no_gadget_cut_probability");
    let no_cut = report
        .records
        .iter()
        .filter(|r| matches!(r, TrialRecord::TightnessPercolation { cut_gadgets: 0, .. }))
        .count() as f64
        / count;
    let sigma = (bound * (1.0 - bound) / count).sqrt();
    let cut_ok = no_cut <= bound + 3.0 * sigma;

    let ok = identity_ok && mean_ok && cut_ok;
    verdict(
        4,
        ok,
        &format!(
            "isolated expectation {expectation:.6} = 1/ln 38 = {target:.6}; empirical mean \
             {mean:.4} within 3 SE ({:.4}); no-cut probability {no_cut:.4} <= {bound:.4} + 3 \
             sigma ({:.4})",
            3.0 * standard_error,
            bound + 3.0 * sigma,
        ),
    );
}

/// Structure-check pass rates on the 10-cube at the degree-k threshold:
/// the unique-core, outsider-distance, and outsider-gap checks over 200
/// percolation samples, gated at 0.9 each for k = 1 and 0.85 each for
/// k = 2.
///
/// This gate is currently not met. The checks describe the shape the
/// percolated graph settles into as hosts grow; at 1024 vertices that
/// regime has not set in, and the measured rates (roughly
/// 0.54/0.67/0.80 at k = 1 and 0.00/0.00/0.79 at k = 2) sit far below
/// the gate. The suite states the gate faithfully and this test fails
/// until the gap is closed.
#[test]
fn criterion_05_structure_check_rates_on_the_ten_cube() {
    let q10 = GeneratorSpec::Hypercube { dim: 10 };
    let mut rates = Vec::new();
    for k in [1u32, 2] {
        let report =
            run_structure_experiment(&ExperimentConfig::new(generated(q10.clone()), k, 200, SEED))
                .unwrap();
        rates.push((
            k,
            scalar(&report, "core_pass_rate"),
            scalar(&report, "distance_pass_rate"),
            scalar(&report, "gap_pass_rate"),
        ));
    }
    let ok = rates.iter().all(|&(k, core, distance, gap)| {
        let gate = if k == 1 { 0.9 } else { 0.85 };
        core >= gate && distance >= gate && gap >= gate
    });
    let detail = rates
        .iter()
        .map(|&(k, core, distance, gap)| {
            let gate = if k == 1 { 0.9 } else { 0.85 };
            format!("k={k}: core {core:.3}, distance {distance:.3}, gap {gap:.3} (each >= {gate})")
        })
        .collect::<Vec<_>>()
        .join("; ");
    verdict(5, ok, &detail);
}

/// Exact rooted-tree counts on the 4-cube: for every vertex and every
/// order m <= 5 the count stays within the degree ceiling (e d)^(m-1),
/// with zero violations, in under a minute.
#[test]
fn criterion_06_rooted_tree_counts_within_degree_bound() {
    let started = Instant::now();
    let q4 = hypercube(4).unwrap();
    let mut checked = 0u32;
    let mut violations = 0u32;
    for v in 0..q4.n() as u32 {
        for m in 1..=5 {
            checked += 1;
            if !count_rooted_trees(&q4, v, m).unwrap().within_bound() {
                violations += 1;
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let ok = violations == 0 && elapsed < 60.0;
    verdict(
        6,
        ok,
        &format!(
            "{checked} exact rooted-tree counts on the 4-cube, {violations} above the degree \
             ceiling; {elapsed:.3}s (< 60s)"
        ),
    );
}

/// Percolated-matching statistics. On a host of 100 disjoint edges the
/// surviving matching size is binomial, and 10 000 trials reproduce the
/// binomial mean and variance within three standard deviations of each
/// estimator. On the 10-cube with every edge as a candidate, the
/// reported guaranteed-rate constant replays bit-exactly per seed.
#[test]
fn criterion_07_matching_percolation_moments_and_replay() {
    // 100 disjoint edges: retention 0.35, so the matching size is
    // Binomial(100, 0.35) with mean 35 and variance 22.75.
    let host =
        Graph::from_edges(200, (0..100u32).map(|i| (2 * i, 2 * i + 1))).unwrap();
    let candidates: Vec<usize> = (0..100).collect();
    let stats = matching_percolation_stats(&host, &candidates, 0.35, 10_000, SEED).unwrap();
    let (s, p) = (100.0f64, 0.35f64);
    let q = 1.0 - p;
    let true_mean = s * p;
    let true_var = s * p * q;
    let draws = stats.trials as f64;
    let mean_band = 3.0 * (true_var / draws).sqrt();
    // Spread of the sample variance, from the binomial fourth moment.
    let fourth = true_var.powi(2) * (3.0 + (1.0 - 6.0 * p * q) / true_var);
    let var_band =
        3.0 * ((fourth - true_var.powi(2) * (draws - 3.0) / (draws - 1.0)) / draws).sqrt();
    let sample_mean = stats.empirical_mean;
    let sample_var = stats
        .matching_size_samples
        .iter()
        .map(|&x| (x as f64 - sample_mean).powi(2))
        .sum::<f64>()
        / (draws - 1.0);
    let moments_ok =
        (sample_mean - true_mean).abs() <= mean_band && (sample_var - true_var).abs() <= var_band;

    // 10-cube, all 5120 edges as candidates: identical calls agree
    // field for field, and the reported constant matches the frozen
    // pilot value exactly.
    let q10 = hypercube(10).unwrap();
    let every_edge: Vec<usize> = (0..q10.m()).collect();
    let first = matching_percolation_stats(&q10, &every_edge, 3.0, 50, SEED).unwrap();
    let second = matching_percolation_stats(&q10, &every_edge, 3.0, 50, SEED).unwrap();
    let replay_ok = first == second
        && first.empirical_quantiles.q01 == 475
        && first.delta2_candidate == 0.927734375
        && first.delta2_candidate == 10.0 * 475.0 / 5120.0;

    let ok = moments_ok && replay_ok;
    verdict(
        7,
        ok,
        &format!(
            "disjoint-matching mean {sample_mean:.4} vs {true_mean} (band {mean_band:.4}), \
             variance {sample_var:.4} vs {true_var} (band {var_band:.4}); 10-cube replay \
             bit-exact with rate constant {}",
            first.delta2_candidate
        ),
    );
}

/// Two independent retention rounds at p1 = 1/4 and p2 = 1/3 union to
/// the same distribution as one round at p = 1/2. A chi-square
/// homogeneity test over all 64 edge subsets of the complete graph on
/// four vertices, one million draws per arm, must not reject at
/// alpha = 0.001.
#[test]
fn criterion_08_two_round_union_matches_single_round() {
    let k4 = complete(4).unwrap();
    let cells = 1usize << k4.m();
    let mut union_counts = vec![0u64; cells];
    let mut single_counts = vec![0u64; cells];
    for i in 0..1_000_000u64 {
        let union = union_sample(&k4, 0.25, 1.0 / 3.0, split_seed(7, i)).unwrap();
        let mut cell = 0usize;
        for e in union.present_edges() {
            cell |= 1 << e;
        }
        union_counts[cell] += 1;

        let single = percolate(&k4, 0.5, split_seed(8, i)).unwrap();
        let mut cell = 0usize;
        for e in single.present_edges() {
            cell |= 1 << e;
        }
        single_counts[cell] += 1;
    }
    let outcome = chi_square_two_sample(&union_counts, &single_counts, 1e-3).unwrap();
    let ok = !outcome.reject;
    verdict(
        8,
        ok,
        &format!(
            "chi-square statistic {:.2} on {} degrees of freedom, critical value {:.2} at \
             alpha 0.001, 10^6 draws per arm",
            outcome.statistic, outcome.degrees_of_freedom, outcome.critical_value
        ),
    );
}

/// Counts connected components left after deleting the vertices in
/// `removed` (a bitmask), by breadth-first search.
fn components_after_removal(n: usize, edges: &[(u32, u32)], removed: u32) -> usize {
    let mut seen = removed;
    let mut components = 0;
    let mut queue = Vec::new();
    for start in 0..n as u32 {
        if seen & (1 << start) != 0 {
            continue;
        }
        components += 1;
        seen |= 1 << start;
        queue.push(start);
        while let Some(v) = queue.pop() {
            for &(a, b) in edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if seen & (1 << w) == 0 {
                    seen |= 1 << w;
                    queue.push(w);
                }
            }
        }
    }
    components
}

/// Definitional k-connectivity for tiny graphs: more than k vertices,
/// and no deletion of fewer than k vertices leaves several components.
fn definitional_k_connected(n: usize, edges: &[(u32, u32)], k: u32) -> bool {
    if k == 0 {
        return n >= 1;
    }
    if n <= k as usize {
        return false;
    }
    for removed in 0..(1u32 << n) {
        if removed.count_ones() < k && components_after_removal(n, edges, removed) != 1 {
            return false;
        }
    }
    true
}

/// The fast k-connectivity test agrees with the definition on 200
/// random graphs (n <= 10) for every k <= 5, and the exhaustive
/// boundary census of the 6-cube up to size 8 never undercuts the
/// isoperimetric floor, meeting it exactly at sizes 1, 2, 4, and 8.
#[test]
fn criterion_09_connectivity_oracle_and_boundary_floor() {
    let densities = [0.15, 0.35, 0.55, 0.8];
    let mut agreements = 0u32;
    let mut checks = 0u32;
    for i in 0..200u64 {
        let mut rng = stream(split_seed(SEED, 1000 + i));
        let n = 4 + (rng.random::<u32>() % 7) as usize;
        let density = densities[(i % 4) as usize];
        let mut edges = Vec::new();
        for a in 0..n as u32 {
            for b in (a + 1)..n as u32 {
                if rng.random::<f64>() < density {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        for k in 0..=5u32 {
            checks += 1;
            if is_k_connected(&g, k) == definitional_k_connected(n, &edges, k) {
                agreements += 1;
            }
        }
    }
    let agreement_ok = agreements == checks;

    let q6 = hypercube(6).unwrap();
    let expected_census: [u64; 9] = [0, 64, 192, 960, 5360, 31680, 191104, 1161984, 7025920];
    let mut census = [0u64; 9];
    let mut min_boundary = [u64::MAX; 9];
    for_each_connected_set(&q6, 8, &mut |set, boundary| {
        census[set.len()] += 1;
        min_boundary[set.len()] = min_boundary[set.len()].min(boundary as u64);
        ControlFlow::<()>::Continue(())
    });
    let mut floor_ok = census == expected_census;
    for size in 1..=8usize {
        let floor = harper_lower_bound(6, size as u64).unwrap();
        floor_ok &= min_boundary[size] >= floor;
        if [1, 2, 4, 8].contains(&size) {
            floor_ok &= min_boundary[size] == floor;
        }
    }

    let ok = agreement_ok && floor_ok;
    verdict(
        9,
        ok,
        &format!(
            "{agreements}/{checks} k-connectivity agreements on 200 random graphs (n <= 10, \
             k <= 5); 6-cube census of {} connected sets meets the boundary floor, with \
             equality at sizes 1, 2, 4, 8",
            census.iter().sum::<u64>()
        ),
    );
}

/// Reports are byte-identical whatever the parallelism: each experiment
/// kind reruns under thread pools of 1, 2, and 5 workers and must
/// serialize to exactly the same bytes as the baseline run.
#[test]
fn criterion_10_reports_identical_across_thread_counts() {
    let hitting = ExperimentConfig::new(generated(GeneratorSpec::Hypercube { dim: 8 }), 1, 50, SEED);
    let structure =
        ExperimentConfig::new(generated(GeneratorSpec::Hypercube { dim: 8 }), 1, 40, SEED);
    let mut tightness = ExperimentConfig::new(
        generated(GeneratorSpec::Tightness { d: 38, n: 1480, seed: 5 }),
        1,
        20,
        SEED,
    );
    tightness.process_trials = Some(6);

    let runs: Vec<(&str, ExperimentConfig, fn(&ExperimentConfig) -> Report)> = vec![
        ("hitting", hitting, |c| run_hitting_experiment(c).unwrap()),
        ("structure", structure, |c| run_structure_experiment(c).unwrap()),
        ("tightness", tightness, |c| run_tightness_experiment(c).unwrap()),
    ];

    let mut compared = 0u32;
    let mut identical = 0u32;
    let mut mismatches = Vec::new();
    for (name, config, run) in &runs {
        let baseline = write_report(&run(config));
        for threads in [1usize, 2, 5] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let mut advised = config.clone();
            advised.workers = Some(threads);
            let rerun = pool.install(|| write_report(&run(&advised)));
            compared += 1;
            if rerun == baseline {
                identical += 1;
            } else {
                mismatches.push(format!("{name}@{threads}"));
            }
        }
    }

    let mut sweep = ExperimentConfig::new(generated(GeneratorSpec::Hypercube { dim: 6 }), 1, 30, SEED);
    sweep.p_grid = vec![0.3, 0.5, 0.7];
    let baseline = sweep_probability(&sweep, SweepProperty::Connected).unwrap().to_json();
    for threads in [1usize, 2, 5] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let mut advised = sweep.clone();
        advised.workers = Some(threads);
        let rerun = pool.install(|| sweep_probability(&advised, SweepProperty::Connected).unwrap());
        compared += 1;
        if rerun.to_json() == baseline {
            identical += 1;
        } else {
            mismatches.push(format!("sweep@{threads}"));
        }
    }

    let ok = identical == compared;
    let detail = if mismatches.is_empty() {
        format!(
            "{identical}/{compared} reruns byte-identical across thread pools of 1, 2, and 5 \
             for hitting, structure, tightness, and sweep outputs"
        )
    } else {
        format!("{identical}/{compared} reruns byte-identical; drift in {}", mismatches.join(", "))
    };
    verdict(10, ok, &detail);
}
