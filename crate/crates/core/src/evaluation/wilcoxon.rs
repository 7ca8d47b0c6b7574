//! Two-sided Wilcoxon signed-rank test for paired samples.
//!
//! Zero differences are dropped; tied absolute differences share averaged
//! ranks. Up to 25 effective observations the p-value comes from the exact
//! null distribution (a subset-sum count over doubled ranks, identical to
//! enumerating all sign assignments); beyond that, a normal approximation
//! with continuity correction and tie-corrected variance is used. The
//! reported statistic is `min(W+, W-)`, the smaller signed-rank sum.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest effective sample size handled by the exact branch under
/// [`WilcoxonMethod::Auto`].
pub const EXACT_CUTOFF: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WilcoxonMethod {
    /// Exact for `n <= EXACT_CUTOFF`, normal approximation beyond.
    #[default]
    Auto,
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// `min(W+, W-)`.
    pub statistic: f64,
    /// Two-sided p-value in `(0, 1]`.
    pub p_value: f64,
    /// Pairs remaining after zero differences are dropped.
    pub n_effective: usize,
    pub used_exact: bool,
}

/// Two-sided test with automatic exact/approximate dispatch.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    wilcoxon_signed_rank_with(a, b, WilcoxonMethod::Auto)
}

pub fn wilcoxon_signed_rank_with(
    a: &[f64],
    b: &[f64],
    method: WilcoxonMethod,
) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "paired samples differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let differences: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n = differences.len();
    if n < 5 {
        return Err(Error::InsufficientData(format!(
            "{n} nonzero differences; the signed-rank test needs at least 5"
        )));
    }

    let ranks = average_ranks(&differences);
    let w_plus: f64 = differences
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| *r)
        .sum();
    let rank_total = n as f64 * (n + 1) as f64 / 2.0;
    let w_minus = rank_total - w_plus;
    let statistic = w_plus.min(w_minus);

    let use_exact = match method {
        WilcoxonMethod::Auto => n <= EXACT_CUTOFF,
        WilcoxonMethod::Exact => true,
        WilcoxonMethod::NormalApprox => false,
    };
    let p_value = if use_exact {
        exact_p(&ranks, w_plus)
    } else {
        approximate_p(&differences, &ranks, w_plus)
    };
    Ok(WilcoxonResult {
        statistic,
        p_value: p_value.clamp(f64::MIN_POSITIVE, 1.0),
        n_effective: n,
        used_exact: use_exact,
    })
}

/// Ascending ranks of `|d|` with ties averaged. Averaged ranks are always
/// multiples of 1/2.
fn average_ranks(differences: &[f64]) -> Vec<f64> {
    let n = differences.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        differences[i]
            .abs()
            .partial_cmp(&differences[j].abs())
            .expect("differences are finite")
    });
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && differences[order[end]].abs() == differences[order[start]].abs()
        {
            end += 1;
        }
        // positions start..end (0-based) share the mean of ranks start+1..end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = shared;
        }
        start = end;
    }
    ranks
}

/// Exact two-sided p-value: distribution of `W+` over all 2^n sign
/// assignments, computed as a subset-sum count over doubled ranks.
/// `p = min(1, 2 * min(P(W+ <= w), P(W+ >= w)))`.
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; max_sum + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=max_sum).rev() {
            counts[s] += counts[s - r];
        }
    }
    let total: f64 = counts.iter().sum();
    let t = (2.0 * w_plus).round() as usize;
    let cdf: f64 = counts[..=t].iter().sum::<f64>() / total;
    let upper: f64 = counts[t..].iter().sum::<f64>() / total;
    (2.0 * cdf.min(upper)).min(1.0)
}

/// Normal approximation with continuity correction; the variance carries the
/// standard tie correction `sum(t^3 - t) / 48`.
fn approximate_p(differences: &[f64], ranks: &[f64], w_plus: f64) -> f64 {
    let n = differences.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    variance -= tie_correction(differences) / 48.0;
    debug_assert!(variance > 0.0);
    let _ = ranks;
    let deviation = ((w_plus - mean).abs() - 0.5).max(0.0);
    let z = deviation / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

/// `sum(t^3 - t)` over groups of tied absolute differences.
fn tie_correction(differences: &[f64]) -> f64 {
    let mut magnitudes: Vec<f64> = differences.iter().map(|d| d.abs()).collect();
    magnitudes.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut total = 0.0;
    let mut start = 0;
    while start < magnitudes.len() {
        let mut end = start + 1;
        while end < magnitudes.len() && magnitudes[end] == magnitudes[start] {
            end += 1;
        }
        let t = (end - start) as f64;
        total += t * t * t - t;
        start = end;
    }
    total
}
