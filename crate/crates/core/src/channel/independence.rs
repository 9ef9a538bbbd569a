use nalgebra::SymmetricEigen;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::sample::{chunk_rng, sample_channel, CMatrix};
use super::outage::{CHUNK_SIZE, MIN_SAMPLES};
use crate::config::AntennaConfig;
use crate::error::{DmtError, Result};

const NEIGHBOURS: usize = 100;
const MIN_PER_BIN: usize = 50;
const SHUFFLE_STREAM: u64 = u64::MAX;

/// Within-bin correlations of the two relay-link eigenvalues given the direct-link eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub bins_requested: usize,
    pub bins_used: usize,
    /// Correlation after dividing each variable by its local conditional mean.
    pub per_bin: Vec<f64>,
    pub max_abs_corr: f64,
    /// Same statistic on the unnormalized values.
    pub max_abs_corr_raw: f64,
    /// Same statistic after shuffling one variable within each bin.
    pub max_abs_corr_shuffled: f64,
    pub note: Option<String>,
}

fn largest_eig(w: CMatrix) -> f64 {
    let w = (&w + w.adjoint()).scale(0.5);
    SymmetricEigen::new(w).eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    }
}

/// Leave-one-out mean over a window of `NEIGHBOURS` entries on each side, shifted at the ends.
fn local_mean(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut prefix = vec![0.0; n + 1];
    for (i, x) in v.iter().enumerate() {
        prefix[i + 1] = prefix[i] + x;
    }
    let width = (2 * NEIGHBOURS + 1).min(n);
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(NEIGHBOURS).min(n - width);
            let hi = lo + width;
            (prefix[hi] - prefix[lo] - v[i]) / (width - 1) as f64
        })
        .collect()
}

fn max_abs_bin_corr(x: &[f64], y: &[f64], bins: &[(usize, usize)]) -> (Vec<f64>, f64) {
    let per: Vec<f64> = bins.iter().map(|&(lo, hi)| pearson(&x[lo..hi], &y[lo..hi])).collect();
    let max = per.iter().map(|c| c.abs()).fold(0.0, f64::max);
    (per, max)
}

/// Tests whether the largest eigenvalues of `H_SR (I + ρ H_SD†H_SD)⁻¹ H_SR†` and
/// `H_RD† (I + ρ H_SD H_SD†)⁻¹ H_RD` are uncorrelated given the largest eigenvalue of `H_SD H_SD†`.
///
/// Samples are sorted by the conditioning eigenvalue and cut into equal-count bins.
/// Within a bin both variables are first divided by a smoothed conditional mean so that
/// their shared dependence on the conditioning value does not register as correlation.
pub fn conditional_independence_check(
    config: &AntennaConfig,
    rho: f64,
    n_samples: usize,
    n_bins: usize,
    seed: u64,
) -> Result<IndependenceReport> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(DmtError::Domain { what: "rho", value: rho, lo: 0.0, hi: f64::INFINITY });
    }
    if n_samples < MIN_SAMPLES {
        return Err(DmtError::Input(format!("need at least {MIN_SAMPLES} samples, got {n_samples}")));
    }
    if n_bins == 0 {
        return Err(DmtError::Input("bin count must be positive".into()));
    }
    let bins_used = n_bins.min(n_samples / MIN_PER_BIN).max(1);
    let note = (bins_used < n_bins)
        .then(|| format!("reduced to {bins_used} bins to keep at least {MIN_PER_BIN} samples per bin"));

    let (m, n) = (config.m(), config.n());
    let mut triples = Vec::with_capacity(n_samples);
    for chunk in 0..n_samples.div_ceil(CHUNK_SIZE) {
        let mut rng = chunk_rng(seed, chunk as u64);
        for _ in 0..CHUNK_SIZE.min(n_samples - chunk * CHUNK_SIZE) {
            let s = sample_channel(config, &mut rng);
            let sd = &s.h_sd;
            let w1 = sd * sd.adjoint();
            let inv = |g: CMatrix, dim: usize| {
                let a = CMatrix::identity(dim, dim) + g.scale(rho);
                a.cholesky().map(|c| c.inverse()).unwrap_or_else(|| CMatrix::identity(dim, dim))
            };
            let w2 = &s.h_sr * inv(sd.adjoint() * sd, m) * s.h_sr.adjoint();
            let w3 = s.h_rd.adjoint() * inv(w1.clone(), n) * &s.h_rd;
            triples.push((largest_eig(w1), largest_eig(w2), largest_eig(w3)));
        }
    }
    triples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mu: Vec<f64> = triples.iter().map(|t| t.1).collect();
    let gamma: Vec<f64> = triples.iter().map(|t| t.2).collect();

    let bins: Vec<(usize, usize)> =
        (0..bins_used).map(|b| (b * n_samples / bins_used, (b + 1) * n_samples / bins_used)).collect();

    let norm = |v: &[f64]| {
        local_mean(v).iter().zip(v).map(|(mean, x)| if *mean > 0.0 { x / mean } else { 0.0 }).collect::<Vec<_>>()
    };
    let mu_n = norm(&mu);
    let mut gamma_n = norm(&gamma);

    let (per_bin, max_abs_corr) = max_abs_bin_corr(&mu_n, &gamma_n, &bins);
    let (_, max_abs_corr_raw) = max_abs_bin_corr(&mu, &gamma, &bins);

    let mut rng = chunk_rng(seed, SHUFFLE_STREAM);
    for &(lo, hi) in &bins {
        gamma_n[lo..hi].shuffle(&mut rng);
    }
    let (_, max_abs_corr_shuffled) = max_abs_bin_corr(&mu_n, &gamma_n, &bins);

    Ok(IndependenceReport {
        bins_requested: n_bins,
        bins_used,
        per_bin,
        max_abs_corr,
        max_abs_corr_raw,
        max_abs_corr_shuffled,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pearson_basics() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
        assert_eq!(pearson(&[1.0, 1.0], &[1.0, 2.0]), 0.0);
    }

    #[test]
    fn local_mean_is_leave_one_out() {
        let v: Vec<f64> = (0..500).map(|i| i as f64).collect();
        let lm = local_mean(&v);
        // interior: symmetric window, own value removed
        assert!((lm[250] - 250.0).abs() < 1e-9);
        // edge: window shifted to [0, 201)
        assert!((lm[0] - (200.0 * 201.0 / 2.0) / 200.0).abs() < 1e-9);
        let c = vec![3.0; 50];
        assert!(local_mean(&c).iter().all(|x| (x - 3.0).abs() < 1e-12));
    }

    #[test]
    fn reduces_bins_for_small_samples() {
        let c = AntennaConfig::new(1, 1, 1).unwrap();
        let r = conditional_independence_check(&c, 10.0, 1000, 40, 1).unwrap();
        assert_eq!(r.bins_used, 20);
        assert!(r.note.is_some());
        assert_eq!(r.per_bin.len(), 20);
    }

    #[test]
    fn rejects_bad_arguments() {
        let c = AntennaConfig::new(1, 1, 1).unwrap();
        assert!(conditional_independence_check(&c, 10.0, 10, 4, 1).is_err());
        assert!(conditional_independence_check(&c, 10.0, 1000, 0, 1).is_err());
        assert!(conditional_independence_check(&c, -1.0, 1000, 4, 1).is_err());
    }
}
