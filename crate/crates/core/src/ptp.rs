//! Point-to-point and full-duplex relay DMT curves.

use crate::config::AntennaConfig;
use crate::error::{check_domain, Result};

/// DMT of an `nt × nr` point-to-point MIMO channel: the piecewise-linear
/// curve through the corners `(j, (nt−j)(nr−j))`.
pub fn ptp_dmt(nt: usize, nr: usize, r: f64) -> Result<f64> {
    let r = check_domain("r", r, 0.0, nt.min(nr) as f64)?;
    Ok(ptp_unchecked(nt, nr, r))
}

/// Same curve without the domain check; `r` must lie in `[0, min(nt, nr)]`.
/// Zero antennas are allowed and give the degenerate curve `d(0) = 0`.
pub(crate) fn ptp_unchecked(nt: usize, nr: usize, r: f64) -> f64 {
    let top = nt.min(nr);
    if top == 0 {
        return 0.0;
    }
    let r = r.clamp(0.0, top as f64);
    let j = (r.floor() as usize).min(top - 1);
    let corner = |j: usize| ((nt - j) * (nr - j)) as f64;
    let w = r - j as f64;
    (1.0 - w) * corner(j) + w * corner(j + 1)
}

/// DMT of the full-duplex relay channel: the smaller of the two cut-set curves.
pub fn fd_dmt(config: &AntennaConfig, r: f64) -> Result<f64> {
    let r = check_domain("r", r, 0.0, config.max_rate())?;
    let (m, k, n) = (config.m(), config.k(), config.n());
    Ok(ptp_unchecked(m + k, n, r).min(ptp_unchecked(m, n + k, r)))
}
