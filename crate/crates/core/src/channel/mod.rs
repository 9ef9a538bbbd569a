//! Monte Carlo outage simulation over i.i.d. Rayleigh fading.

mod cutset;
mod eigen;
mod independence;
mod outage;
mod sample;

pub use cutset::{cutset_terms, log2_det_identity_plus, optimal_switch_time, rate_upper, CutsetTerms};
pub use eigen::eigen_exponents;
pub use independence::{conditional_independence_check, IndependenceReport};
pub use outage::{
    diversity_fit, outage_counts, outage_probability, outage_sweep, OutageEstimate, SlopeFit, CHUNK_SIZE,
    MIN_SAMPLES,
};
pub use sample::{chunk_rng, sample_channel, CMatrix, ChannelSample};

/// Linear SNR from decibels.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
