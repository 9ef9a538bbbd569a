//! Log-determinants of the cut-set bounds and the switching-time optimum.

use nalgebra::{Cholesky, Complex, DMatrix};

use super::sample::{CMatrix, ChannelSample};
use crate::error::{DmtError, Result};

/// Base-2 log-determinants of the three cut-set matrices at SNR `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutsetTerms {
    /// `log₂ det(I + ρ H_SD H_SD†)`.
    pub log_l_sd: f64,
    /// `log₂ det(I + ρ [H_SD H_RD][H_SD H_RD]†)`: the destination-side cut.
    pub log_l_srd: f64,
    /// `log₂ det(I + ρ [H_SR; H_SD]†[H_SR; H_SD])`: the source-side cut.
    pub log_l_s_rd: f64,
    pub rho: f64,
}

/// Gram matrix `X X†` or `X† X`, whichever is smaller.
pub(crate) fn small_gram(x: &CMatrix) -> CMatrix {
    if x.nrows() <= x.ncols() {
        x * x.adjoint()
    } else {
        x.adjoint() * x
    }
}

/// `log₂ det(I + ρ G)` for a Hermitian positive semidefinite `G`, via Cholesky.
pub fn log2_det_identity_plus(gram: &CMatrix, rho: f64) -> f64 {
    let dim = gram.nrows();
    if dim == 1 {
        return (rho * gram[(0, 0)].re).ln_1p() / std::f64::consts::LN_2;
    }
    let mut a = gram.scale(rho);
    for i in 0..dim {
        a[(i, i)] += Complex::new(1.0, 0.0);
    }
    match Cholesky::new(a.clone()) {
        Some(ch) => {
            let l = ch.l_dirty();
            2.0 * (0..dim).map(|i| l[(i, i)].re.ln()).sum::<f64>() / std::f64::consts::LN_2
        }
        // fallback for rounding at extreme rho
        None => {
            let eig = nalgebra::SymmetricEigen::new(a);
            eig.eigenvalues.iter().map(|v| v.max(f64::MIN_POSITIVE).log2()).sum()
        }
    }
}

/// Per-sample Gram matrices reused across SNR values.
pub(crate) struct SampleGrams {
    pub sd: CMatrix,
    pub srd: CMatrix,
    pub s_rd: CMatrix,
}

impl SampleGrams {
    pub fn new(s: &ChannelSample) -> Self {
        let n = s.h_sd.nrows();
        let m = s.h_sd.ncols();
        let k = s.h_sr.nrows();
        let mut dest = DMatrix::zeros(n, m + k);
        dest.columns_mut(0, m).copy_from(&s.h_sd);
        dest.columns_mut(m, k).copy_from(&s.h_rd);
        let mut src = DMatrix::zeros(k + n, m);
        src.rows_mut(0, k).copy_from(&s.h_sr);
        src.rows_mut(k, n).copy_from(&s.h_sd);
        Self {
            sd: small_gram(&s.h_sd),
            srd: small_gram(&dest),
            s_rd: small_gram(&src),
        }
    }

    pub fn terms(&self, rho: f64) -> CutsetTerms {
        CutsetTerms {
            log_l_sd: log2_det_identity_plus(&self.sd, rho),
            log_l_srd: log2_det_identity_plus(&self.srd, rho),
            log_l_s_rd: log2_det_identity_plus(&self.s_rd, rho),
            rho,
        }
    }
}

/// Cut-set log-determinants of one channel sample at SNR `rho`.
pub fn cutset_terms(sample: &ChannelSample, rho: f64) -> Result<CutsetTerms> {
    if !sample.is_finite() {
        return Err(DmtError::Input("non-finite channel entry".into()));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(DmtError::Input(format!("SNR must be finite and non-negative, got {rho}")));
    }
    Ok(SampleGrams::new(sample).terms(rho))
}

fn gains(t: &CutsetTerms) -> (f64, f64) {
    ((t.log_l_srd - t.log_l_sd).max(0.0), (t.log_l_s_rd - t.log_l_sd).max(0.0))
}

/// Listening fraction that equalizes the two cut-set bounds; `1/2` when both relay gains vanish.
pub fn optimal_switch_time(t: &CutsetTerms) -> f64 {
    let (a, b) = gains(t);
    if a + b < 1e-12 {
        0.5
    } else {
        (a / (a + b)).clamp(0.0, 1.0)
    }
}

/// Cut-set rate bound at the optimal switching time, in bits per channel use.
pub fn rate_upper(t: &CutsetTerms) -> f64 {
    let (a, b) = gains(t);
    let relay = if a + b < 1e-12 { 0.0 } else { a * b / (a + b) };
    relay + t.log_l_sd
}
