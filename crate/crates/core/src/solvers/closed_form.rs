//! Closed-form DMT curves for special antenna configurations.

use crate::error::{check_domain, DmtError, Result};
use crate::exponents::pos;
use crate::ptp::ptp_unchecked;

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(DmtError::Config("relay antenna count must be positive".into()));
    }
    Ok(())
}

/// DMT of the half-duplex `(1,k,1)` relay channel.
pub fn dmt_1k1(k: usize, r: f64) -> Result<f64> {
    check_k(k)?;
    let r = check_domain("r", r, 0.0, 1.0)?;
    let kf = k as f64;
    Ok(if r <= 1.0 / (kf + 1.0) {
        (kf + 1.0) * (1.0 - r)
    } else if r <= 0.5 {
        1.0 + kf * (1.0 - 2.0 * r) / (1.0 - r)
    } else {
        2.0 * (1.0 - r)
    })
}

/// DMT of dynamic decode-and-forward on the `(1,k,1)` channel.
pub fn dmt_ddf_1k1(k: usize, r: f64) -> Result<f64> {
    check_k(k)?;
    let r = check_domain("r", r, 0.0, 1.0)?;
    let kf = k as f64;
    Ok(if r <= 1.0 / (kf + 1.0) {
        (kf + 1.0) * (1.0 - r)
    } else if r <= 0.5 {
        1.0 + kf * (1.0 - 2.0 * r) / (1.0 - r)
    } else {
        (1.0 - r) / r
    })
}

/// DMT of the static `(1,k,1)` channel, known in closed form only for `r ≥ 1/2`.
pub fn dmt_static_1k1(k: usize, r: f64) -> Result<f64> {
    check_k(k)?;
    let r = check_domain("r", r, 0.0, 1.0)?;
    if r < 0.5 {
        return Err(DmtError::Domain { what: "r", value: r, lo: 0.5, hi: 1.0 });
    }
    Ok(2.0 * (1.0 - r))
}

/// DMT of the `(n,1,n)` channel: the `(n+1) × n` point-to-point curve.
pub fn dmt_n1n(n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(DmtError::Config("antenna count must be positive".into()));
    }
    let r = check_domain("r", r, 0.0, n as f64)?;
    Ok(ptp_unchecked(n + 1, n, r))
}

/// Each bound of the symmetric family at `r`, `None` where the bound is not defined.
///
/// Order: the direct-link bound, the equal-split bound, the zero-direct bound,
/// `p` bounds with `b = s = N`, then (for `k ≥ n`) `p` bounds with `b = n − a, s = N`.
pub fn symmetric_upper_bounds(n: usize, k: usize, r: f64) -> Result<Vec<Option<f64>>> {
    if n == 0 || k == 0 {
        return Err(DmtError::Config("antenna counts must be positive".into()));
    }
    let r = check_domain("r", r, 0.0, n as f64)?;
    let nf = n as f64;
    let kf = k as f64;
    let p = n.min(k);
    let pf = p as f64;
    let within = |lo: f64, hi: f64| lo <= hi && r >= lo - 1e-12 && r <= hi + 1e-12;
    let mut out = Vec::with_capacity(3 + 2 * p);

    out.push(Some(ptp_unchecked(n, n + k, r)));

    out.push(within(nf - pf / 2.0, nf).then(|| ptp_unchecked(2 * n, 2 * n, 2.0 * r)));

    out.push(within(0.0, pf / 2.0).then(|| {
        let level = pf * r / (pf - r);
        let mut d = nf * nf;
        for l in 1..=p {
            let lf = l as f64;
            d += (nf + kf - 2.0 * lf + 1.0) * pos(1.0 - pos(level - lf + 1.0));
        }
        d
    }));

    for big_n in 1..=p {
        let nn = big_n as f64;
        let hi = (nf - nn / 2.0).min(nf - nn * nn / (2.0 * pf - nn));
        out.push(within(nn / 2.0, hi).then(|| {
            let shifted = (r - nn / 2.0).clamp(0.0, (n - big_n) as f64);
            nn * nn + ptp_unchecked(n - big_n, n + 2 * k - big_n, shifted)
        }));
    }

    if k >= n {
        for big_n in 1..=p {
            let nn = big_n as f64;
            let lo = (nn * nf / (nn + nf)).max(nf - pf);
            out.push(within(lo, nf - nn / 2.0).then(|| {
                let half = (nf - r) / 2.0;
                let a_n = (nf + r) / 2.0 - (half * half + nn * (nf - r)).sqrt();
                let mut d = nn * nn;
                for i in 1..=(n - big_n) {
                    let fi = i as f64;
                    d += (2.0 * nf + kf - nn - 2.0 * fi + 1.0) * pos(1.0 - pos(a_n - fi + 1.0));
                }
                d
            }));
        }
    }
    Ok(out)
}

/// Upper bound on the DMT of the symmetric `(n,k,n)` channel: the smallest active bound.
pub fn dmt_symmetric_upper(n: usize, k: usize, r: f64) -> Result<f64> {
    let bounds = symmetric_upper_bounds(n, k, r)?;
    Ok(bounds.into_iter().flatten().fold(f64::INFINITY, f64::min))
}
