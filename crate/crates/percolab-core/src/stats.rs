//! Statistical helpers shared by the structural checks and the
//! experiment harness: binomial confidence intervals, a two-sample
//! chi-square homogeneity test, isotonic regression, and nearest-rank
//! quantiles.

use crate::error::{Error, Result};
use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};

/// z-score for a two-sided 95% normal interval.
const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% confidence for `successes` out of
/// `trials` Bernoulli draws. Clamped to `[0, 1]`.
///
/// # Panics
/// If `trials == 0` or `successes > trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "Wilson interval needs at least one trial");
    assert!(successes <= trials, "more successes than trials");
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Widen through the point estimate so roundoff can never push an
    // endpoint past `phat` (at s = 0 or s = n the exact bound *is* phat).
    ((center - half).min(phat).max(0.0), (center + half).max(phat).min(1.0))
}

/// Exact (conservative) Clopper–Pearson interval at 95% confidence,
/// via Beta quantiles. Used as a cross-check on [`wilson_interval`].
///
/// # Panics
/// If `trials == 0` or `successes > trials`.
pub fn clopper_pearson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "interval needs at least one trial");
    assert!(successes <= trials, "more successes than trials");
    let alpha = 0.05;
    let s = successes as f64;
    let n = trials as f64;
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(s, n - s + 1.0).expect("valid Beta shape").inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        Beta::new(s + 1.0, n - s).expect("valid Beta shape").inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Outcome of a two-sample chi-square homogeneity test.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub critical_value: f64,
    pub alpha: f64,
    pub reject: bool,
}

/// Two-sample chi-square test that histograms `a` and `b` were drawn
/// from the same distribution. Cells where both counts are zero are
/// skipped; the degrees of freedom are the number of remaining cells
/// minus one. Sample sizes may differ; the statistic uses the usual
/// rescaling by the square roots of the totals.
pub fn chi_square_two_sample(a: &[u64], b: &[u64], alpha: f64) -> Result<ChiSquareOutcome> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "histograms have different cell counts ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha {alpha} outside (0, 1)")));
    }
    let total_a: u64 = a.iter().sum();
    let total_b: u64 = b.iter().sum();
    if total_a == 0 || total_b == 0 {
        return Err(Error::InvalidParameter("empty histogram".into()));
    }
    let ka = (total_b as f64 / total_a as f64).sqrt();
    let kb = (total_a as f64 / total_b as f64).sqrt();
    let mut statistic = 0.0;
    let mut live_cells = 0usize;
    for (&ca, &cb) in a.iter().zip(b) {
        if ca == 0 && cb == 0 {
            continue;
        }
        live_cells += 1;
        let diff = ka * ca as f64 - kb * cb as f64;
        statistic += diff * diff / (ca + cb) as f64;
    }
    if live_cells < 2 {
        return Err(Error::InvalidParameter(
            "need at least two non-empty cells for a chi-square test".into(),
        ));
    }
    let degrees_of_freedom = live_cells - 1;
    let critical_value = ChiSquared::new(degrees_of_freedom as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - alpha);
    Ok(ChiSquareOutcome {
        statistic,
        degrees_of_freedom,
        critical_value,
        alpha,
        reject: statistic > critical_value,
    })
}

/// Weighted isotonic regression (pool-adjacent-violators): returns the
/// nondecreasing sequence minimizing the weighted squared error to `y`.
///
/// # Panics
/// If lengths differ, `y` is empty, or any weight is not positive.
pub fn isotonic_nondecreasing(y: &[f64], w: &[f64]) -> Vec<f64> {
    assert_eq!(y.len(), w.len(), "value/weight length mismatch");
    assert!(!y.is_empty(), "empty input");
    assert!(w.iter().all(|&x| x > 0.0), "weights must be positive");
    // Stack of blocks (weight, mean, member count).
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(y.len());
    for (&yi, &wi) in y.iter().zip(w) {
        let mut block = (wi, yi, 1usize);
        while let Some(&(pw, pm, pc)) = blocks.last() {
            if pm <= block.1 {
                break;
            }
            blocks.pop();
            let tw = pw + block.0;
            block = (tw, (pw * pm + block.0 * block.1) / tw, pc + block.2);
        }
        blocks.push(block);
    }
    let mut out = Vec::with_capacity(y.len());
    for (_, mean, count) in blocks {
        out.extend(std::iter::repeat_n(mean, count));
    }
    out
}

/// Nearest-rank quantile of an ascending-sorted sample: the element at
/// rank `ceil(level * len)` (1-based), clamped to the valid range, so
/// `level = 0` gives the minimum and `level = 1` the maximum.
///
/// # Panics
/// If the sample is empty or `level` is outside `[0, 1]`.
pub fn quantile_nearest_rank<T: Copy>(sorted: &[T], level: f64) -> T {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    assert!((0.0..=1.0).contains(&level), "level {level} outside [0, 1]");
    let rank = (level * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}
