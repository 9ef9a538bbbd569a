use nalgebra::{Complex, DMatrix, SymmetricEigen};

use super::sample::{CMatrix, ChannelSample};
use crate::error::{DmtError, Result};
use crate::exponents::ExponentTriple;

const EIG_FLOOR: f64 = 1e-300;

fn identity_plus(g: &CMatrix, rho: f64) -> CMatrix {
    let mut a = g.scale(rho);
    for i in 0..a.nrows() {
        a[(i, i)] += Complex::new(1.0, 0.0);
    }
    a
}

/// `−log λ / log ρ` for the `count` largest eigenvalues, smallest exponent first.
fn top_exponents(w: CMatrix, count: usize, log_rho: f64) -> Vec<f64> {
    let w = (&w + w.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(w).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev.truncate(count);
    ev.into_iter().map(|l| -l.max(EIG_FLOOR).ln() / log_rho).collect()
}

/// SNR exponents of the eigenvalues of `H_SD H_SD†`,
/// `H_SR (I + ρ H_SD† H_SD)⁻¹ H_SR†` and `H_RD† (I + ρ H_SD H_SD†)⁻¹ H_RD`.
pub fn eigen_exponents(sample: &ChannelSample, rho: f64) -> Result<ExponentTriple> {
    if !(rho.is_finite() && rho > 1.0) {
        return Err(DmtError::Domain { what: "rho", value: rho, lo: 1.0, hi: f64::INFINITY });
    }
    if !sample.is_finite() {
        return Err(DmtError::Input("non-finite channel entry".into()));
    }
    let (n, m) = sample.h_sd.shape();
    let k = sample.h_sr.nrows();
    let (u, p, q) = (m.min(n), m.min(k), n.min(k));
    let log_rho = rho.ln();
    let sd = &sample.h_sd;

    let w1 = sd * sd.adjoint();
    let inv_src = identity_plus(&(sd.adjoint() * sd), rho)
        .cholesky()
        .map(|c| c.inverse())
        .unwrap_or_else(|| DMatrix::identity(m, m));
    let inv_dst = identity_plus(&w1, rho)
        .cholesky()
        .map(|c| c.inverse())
        .unwrap_or_else(|| DMatrix::identity(n, n));
    let w2 = &sample.h_sr * inv_src * sample.h_sr.adjoint();
    let w3 = sample.h_rd.adjoint() * inv_dst * &sample.h_rd;

    Ok(ExponentTriple::new(
        top_exponents(w1, u, log_rho),
        top_exponents(w2, p, log_rho),
        top_exponents(w3, q, log_rho),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::cutset::{cutset_terms, rate_upper};
    use crate::channel::sample::{chunk_rng, sample_channel};
    use crate::config::AntennaConfig;
    use crate::exponents::rate_exponent;

    fn scalar(x: f64) -> CMatrix {
        DMatrix::from_element(1, 1, Complex::new(x, 0.0))
    }

    #[test]
    fn unit_gain_has_zero_exponent() {
        let s = ChannelSample { h_sd: scalar(1.0), h_sr: scalar(1.0), h_rd: scalar(1.0) };
        let t = eigen_exponents(&s, 100.0).unwrap();
        assert!(t.alpha[0].abs() < 1e-12);
        // W2 = 1/(1+ρ) → exponent log(101)/log(100)
        assert!((t.beta[0] - 101f64.ln() / 100f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_low_snr() {
        let s = ChannelSample { h_sd: scalar(1.0), h_sr: scalar(1.0), h_rd: scalar(1.0) };
        assert!(matches!(eigen_exponents(&s, 1.0), Err(DmtError::Domain { .. })));
    }

    #[test]
    fn shapes_and_order() {
        let c = AntennaConfig::new(3, 2, 2).unwrap();
        let s = sample_channel(&c, &mut chunk_rng(2, 0));
        let t = eigen_exponents(&s, 1e3).unwrap();
        t.check_shape(&c).unwrap();
        for v in [&t.alpha, &t.beta, &t.delta] {
            assert!(v.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn exact_product_identity() {
        // log₂ of the relay gains equals Σ log₂(1 + ρ·eig) of W₂ and W₃
        let c = AntennaConfig::new(2, 2, 2).unwrap();
        let mut rng = chunk_rng(9, 0);
        let rho: f64 = 50.0;
        for _ in 0..20 {
            let s = sample_channel(&c, &mut rng);
            let t = eigen_exponents(&s, rho).unwrap();
            let ct = cutset_terms(&s, rho).unwrap();
            let sum = |v: &[f64]| v.iter().map(|e| (1.0 + rho * rho.powf(-e)).log2()).sum::<f64>();
            assert!((sum(&t.alpha) - ct.log_l_sd).abs() < 1e-8);
            assert!((sum(&t.delta) - (ct.log_l_srd - ct.log_l_sd)).abs() < 1e-8);
            assert!((sum(&t.beta) - (ct.log_l_s_rd - ct.log_l_sd)).abs() < 1e-8);
        }
    }

    #[test]
    fn support_violations_become_rarer() {
        use crate::exponents::support_contains_with_slack;
        let c = AntennaConfig::new(2, 1, 2).unwrap();
        let mut rng = chunk_rng(6, 0);
        let samples: Vec<_> = (0..4000).map(|_| sample_channel(&c, &mut rng)).collect();
        let violations = |rho: f64| {
            samples
                .iter()
                .filter(|s| !support_contains_with_slack(&c, &eigen_exponents(s, rho).unwrap(), 0.1).unwrap())
                .count()
        };
        let (lo, hi) = (violations(1e2), violations(1e8));
        assert!(hi < lo, "{hi} !< {lo}");
    }

    #[test]
    fn rate_consistency_improves_with_snr() {
        let c = AntennaConfig::new(1, 1, 1).unwrap();
        let mut rng = chunk_rng(4, 0);
        let samples: Vec<_> = (0..2000).map(|_| sample_channel(&c, &mut rng)).collect();
        let median_gap = |rho: f64| {
            let mut g: Vec<f64> = samples
                .iter()
                .map(|s| {
                    let r = rate_upper(&cutset_terms(s, rho).unwrap()) / rho.log2();
                    (r - rate_exponent(&eigen_exponents(s, rho).unwrap())).abs()
                })
                .collect();
            g.sort_by(f64::total_cmp);
            g[g.len() / 2]
        };
        assert!(median_gap(1e8) < median_gap(1e4));
    }
}
