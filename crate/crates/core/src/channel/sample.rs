use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::config::AntennaConfig;

pub type CMatrix = DMatrix<Complex<f64>>;

/// One realization of the three link matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    /// Source to destination, `n × m`.
    pub h_sd: CMatrix,
    /// Source to relay, `k × m`.
    pub h_sr: CMatrix,
    /// Relay to destination, `n × k`.
    pub h_rd: CMatrix,
}

impl ChannelSample {
    pub fn is_finite(&self) -> bool {
        [&self.h_sd, &self.h_sr, &self.h_rd]
            .iter()
            .all(|h| h.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }
}

fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re * scale, im * scale)
    })
}

/// Draws i.i.d. `CN(0,1)` entries for all three links.
pub fn sample_channel<R: Rng + ?Sized>(config: &AntennaConfig, rng: &mut R) -> ChannelSample {
    let (m, k, n) = (config.m(), config.k(), config.n());
    let h_sd = gaussian_matrix(n, m, rng);
    let h_sr = gaussian_matrix(k, m, rng);
    let h_rd = gaussian_matrix(n, k, rng);
    ChannelSample { h_sd, h_sr, h_rd }
}

/// Generator for chunk `chunk` of the sample index space under `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = AntennaConfig::new(1, 4, 1).unwrap();
        let s = sample_channel(&c, &mut chunk_rng(1, 0));
        assert_eq!(s.h_sr.shape(), (4, 1));
        assert_eq!(s.h_sd.shape(), (1, 1));
        assert_eq!(s.h_rd.shape(), (1, 4));
        let c = AntennaConfig::new(3, 2, 1).unwrap();
        let s = sample_channel(&c, &mut chunk_rng(1, 0));
        assert_eq!((s.h_sd.shape(), s.h_sr.shape(), s.h_rd.shape()), ((1, 3), (2, 3), (1, 2)));
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        let c = AntennaConfig::new(1, 1, 1).unwrap();
        let a = sample_channel(&c, &mut chunk_rng(7, 0));
        let b = sample_channel(&c, &mut chunk_rng(7, 0));
        let other = sample_channel(&c, &mut chunk_rng(7, 1));
        assert_eq!(a, b);
        assert_ne!(a, other);
    }

    #[test]
    fn unit_second_moment() {
        let c = AntennaConfig::new(2, 2, 2).unwrap();
        let mut rng = chunk_rng(3, 0);
        let n = 100_000;
        let mut acc = [0.0f64; 3];
        let mut re_sq = 0.0;
        for _ in 0..n {
            let s = sample_channel(&c, &mut rng);
            acc[0] += s.h_sd.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
            acc[1] += s.h_sr.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
            acc[2] += s.h_rd.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
            re_sq += s.h_sd[(0, 0)].re.powi(2);
        }
        for a in acc {
            assert!((a / n as f64 - 1.0).abs() < 0.02, "{}", a / n as f64);
        }
        // circular symmetry: half the power in the real part
        assert!((re_sq / n as f64 - 0.5).abs() < 0.02);
    }
}
