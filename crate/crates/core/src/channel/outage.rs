use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cutset::{rate_upper, SampleGrams};
use super::sample::{chunk_rng, sample_channel};
use crate::config::AntennaConfig;
use crate::error::{DmtError, Result};

/// Samples drawn from one generator stream.
pub const CHUNK_SIZE: usize = 4096;
/// Smallest sample count accepted by the estimators.
pub const MIN_SAMPLES: usize = 1000;
const MIN_EVENTS_FOR_FIT: u64 = 20;

/// Outage frequency at one SNR and rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub rho: f64,
    pub r: f64,
    pub outages: u64,
    pub n_samples: u64,
    pub p_out: f64,
    /// Half-width of the 95% normal-approximation interval.
    pub ci_half_width: f64,
}

impl OutageEstimate {
    fn new(rho: f64, r: f64, outages: u64, n_samples: u64) -> Self {
        let p = outages as f64 / n_samples as f64;
        Self {
            rho,
            r,
            outages,
            n_samples,
            p_out: p,
            ci_half_width: 1.96 * (p * (1.0 - p) / n_samples as f64).sqrt(),
        }
    }
}

/// Least-squares fit of `−log₁₀ p_out` against `log₁₀ ρ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
    pub points_used: usize,
}

fn validate(config: &AntennaConfig, rhos: &[f64], rates: &[f64], n_samples: usize, workers: usize) -> Result<()> {
    let r_max = config.m().min(config.n()) as f64;
    if rhos.is_empty() || rates.is_empty() {
        return Err(DmtError::Input("at least one SNR and one rate are required".into()));
    }
    for &rho in rhos {
        if !(rho.is_finite() && rho > 1.0) {
            return Err(DmtError::Domain { what: "rho", value: rho, lo: 1.0, hi: f64::INFINITY });
        }
    }
    for &r in rates {
        if !(r.is_finite() && r > 0.0 && r < r_max) {
            return Err(DmtError::Domain { what: "r", value: r, lo: 0.0, hi: r_max });
        }
    }
    if n_samples < MIN_SAMPLES {
        return Err(DmtError::Input(format!("need at least {MIN_SAMPLES} samples, got {n_samples}")));
    }
    if workers == 0 {
        return Err(DmtError::Input("worker count must be positive".into()));
    }
    Ok(())
}

/// Outage counts `counts[i][j]` for `rhos[i]` and `rates[j]`.
///
/// Every SNR and rate sees the same channel draws. Sample `t` comes from stream
/// `t / CHUNK_SIZE` of `seed`, so results do not depend on `workers`.
pub fn outage_counts(
    config: &AntennaConfig,
    rhos: &[f64],
    rates: &[f64],
    n_samples: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<Vec<u64>>> {
    validate(config, rhos, rates, n_samples, workers)?;
    let thresholds: Vec<Vec<f64>> = rhos.iter().map(|rho| rates.iter().map(|r| r * rho.log2()).collect()).collect();
    let n_chunks = n_samples.div_ceil(CHUNK_SIZE);
    let zero = || vec![vec![0u64; rates.len()]; rhos.len()];

    let run_chunk = |chunk: usize| {
        let mut counts = zero();
        let mut rng = chunk_rng(seed, chunk as u64);
        let len = CHUNK_SIZE.min(n_samples - chunk * CHUNK_SIZE);
        for _ in 0..len {
            let grams = SampleGrams::new(&sample_channel(config, &mut rng));
            for (i, &rho) in rhos.iter().enumerate() {
                let rate = rate_upper(&grams.terms(rho));
                for (j, &th) in thresholds[i].iter().enumerate() {
                    if rate < th {
                        counts[i][j] += 1;
                    }
                }
            }
        }
        counts
    };
    let add = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += y;
            }
        }
        a
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| DmtError::Internal(format!("worker pool: {e}")))?;
    Ok(pool.install(|| (0..n_chunks).into_par_iter().map(run_chunk).reduce(zero, add)))
}

/// Outage estimates at rate `r` over several SNRs with common random numbers.
pub fn outage_sweep(
    config: &AntennaConfig,
    rhos: &[f64],
    r: f64,
    n_samples: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<OutageEstimate>> {
    let counts = outage_counts(config, rhos, &[r], n_samples, seed, workers)?;
    Ok(rhos
        .iter()
        .zip(counts)
        .map(|(&rho, c)| OutageEstimate::new(rho, r, c[0], n_samples as u64))
        .collect())
}

pub fn outage_probability(
    config: &AntennaConfig,
    rho: f64,
    r: f64,
    n_samples: usize,
    seed: u64,
    workers: usize,
) -> Result<OutageEstimate> {
    Ok(outage_sweep(config, &[rho], r, n_samples, seed, workers)?.remove(0))
}

/// Slope of `−log₁₀ p_out` versus `log₁₀ ρ` over points with at least 20 outage events.
pub fn diversity_fit(estimates: &[OutageEstimate]) -> Result<SlopeFit> {
    let pts: Vec<(f64, f64)> = estimates
        .iter()
        .filter(|e| e.p_out > 0.0 && e.outages >= MIN_EVENTS_FOR_FIT && e.rho > 0.0)
        .map(|e| (e.rho.log10(), -e.p_out.log10()))
        .collect();
    if pts.len() < 3 {
        return Err(DmtError::InsufficientData { usable: pts.len(), required: 3 });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(DmtError::Input("SNR values must differ".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, stderr, intercept, points_used: pts.len() })
}
