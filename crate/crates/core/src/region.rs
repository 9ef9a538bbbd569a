//! Feasible ranges of the aggregate levels `(a, b, s)` at a target rate `r`.
//!
//! At fixed `r`, a level `a` is usable iff the relay branch can still carry
//! `r − a`, i.e. `h(b_m, s_m) ≥ r − a` with `h(b, s) = bs/(b+s)`,
//! `b_m = min(p, m−a)` and `s_m = min(q, n−a)`. Given `a` and `b`, the rate
//! constraint is met with equality by `s = b(r−a)/(b−r+a)`.

use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{check_domain, DmtError, Result, EPS};
use crate::exponents::harmonic_part;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo - EPS && x <= self.hi + EPS
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Largest `b` usable with level `a`.
pub fn b_max(config: &AntennaConfig, a: f64) -> f64 {
    (config.p() as f64).min(config.m() as f64 - a).max(0.0)
}

/// Largest `s` usable with level `a`.
pub fn s_max(config: &AntennaConfig, a: f64) -> f64 {
    (config.q() as f64).min(config.n() as f64 - a).max(0.0)
}

/// Smallest `a` for which `min(d, m−a)`/`min(e, n−a)` style caps still carry
/// the rate: root of `(x+r)/2 − sqrt(((x−r)/2)² + c(x−r))` form.
fn mixed_root(x: f64, c: f64, r: f64) -> f64 {
    let half = (x - r) / 2.0;
    (x + r) / 2.0 - (half * half + c * (x - r)).max(0.0).sqrt()
}

/// Interval `ℛ` of admissible `a` at rate `r`.
pub fn region_r(config: &AntennaConfig, r: f64) -> Result<Interval> {
    let r = check_domain("r", r, 0.0, config.max_rate())?;
    let (m, n) = (config.m() as f64, config.n() as f64);
    let (p, q) = (config.p() as f64, config.q() as f64);
    let candidates = [
        r - p * q / (p + q),
        r - ((m - r) * (n - r)).max(0.0).sqrt(),
        // b capped by p, s capped by n − a
        mixed_root(n, p, r),
        // b capped by m − a, s capped by q
        mixed_root(m, q, r),
    ];
    let lo = candidates.iter().copied().fold(0.0, f64::max);
    let hi = (config.u() as f64).min(r);
    if lo > hi + EPS {
        return Err(DmtError::Internal(format!(
            "empty level region at r = {r} for {config}: [{lo}, {hi}]"
        )));
    }
    Ok(Interval { lo: lo.min(hi), hi })
}

/// Interval `ℬ(a)` of admissible `b` at rate `r` and level `a`.
pub fn b_interval(config: &AntennaConfig, r: f64, a: f64) -> Result<Interval> {
    let region = region_r(config, r)?;
    if !region.contains(a) || !a.is_finite() {
        return Err(DmtError::Domain {
            what: "a",
            value: a,
            lo: region.lo,
            hi: region.hi,
        });
    }
    let a = a.clamp(region.lo, region.hi);
    b_interval_unchecked(config, r, a)
}

pub(crate) fn b_interval_unchecked(config: &AntennaConfig, r: f64, a: f64) -> Result<Interval> {
    let bm = b_max(config, a);
    let sm = s_max(config, a);
    let x = (r - a).max(0.0);
    if x == 0.0 {
        return Ok(Interval { lo: 0.0, hi: bm });
    }
    if sm - x <= 0.0 {
        return Err(DmtError::Internal(format!(
            "relay cap s_m = {sm} cannot carry rate {x} at a = {a}, r = {r} for {config}"
        )));
    }
    let lo = sm * x / (sm - x);
    Ok(Interval { lo: lo.min(bm), hi: bm })
}

/// `s` meeting the rate constraint with equality, clamped to `[0, s_m]`.
///
/// At `a = r` the relay branch carries nothing: `s = 0` for `b > 0` and
/// `s = s_m` for `b = 0`.
#[inline]
pub fn s_of_b(config: &AntennaConfig, r: f64, a: f64, b: f64) -> f64 {
    let sm = s_max(config, a);
    let x = (r - a).max(0.0);
    if x == 0.0 {
        return if b > 0.0 { 0.0 } else { sm };
    }
    let den = b - x;
    if den <= 0.0 {
        return sm;
    }
    (b * x / den).min(sm)
}

/// Whether `(a, b, s)` lies in the level set at rate `r` (tolerance `1e-9`).
pub fn levels_feasible(config: &AntennaConfig, r: f64, a: f64, b: f64, s: f64) -> bool {
    let (m, n) = (config.m() as f64, config.n() as f64);
    a >= -EPS
        && b >= -EPS
        && s >= -EPS
        && a <= config.u() as f64 + EPS
        && b <= config.p() as f64 + EPS
        && s <= config.q() as f64 + EPS
        && a + b <= m + EPS
        && a + s <= n + EPS
        && a + harmonic_part(b.max(0.0), s.max(0.0)) <= r + EPS
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn cfg(m: usize, k: usize, n: usize) -> AntennaConfig {
        AntennaConfig::new(m, k, n).unwrap()
    }

    /// Smallest usable `a` found by bisection on the defining predicate.
    fn a_lo_bisect(c: &AntennaConfig, r: f64) -> f64 {
        let ok = |a: f64| harmonic_part(b_max(c, a), s_max(c, a)) >= r - a - 1e-15;
        let hi = (c.u() as f64).min(r);
        if ok(0.0) {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    #[test]
    fn region_examples() {
        let iv = region_r(&cfg(1, 1, 1), 1.0).unwrap();
        assert_abs_diff_eq!(iv.lo, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(iv.hi, 1.0, epsilon = 1e-12);
        let iv = region_r(&cfg(1, 2, 1), 0.0).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.0, 0.0));
        let c = cfg(2, 2, 2);
        let iv = region_r(&c, 1.0).unwrap();
        assert_abs_diff_eq!(iv.lo, a_lo_bisect(&c, 1.0), epsilon = 1e-9);
        assert_abs_diff_eq!(iv.hi, 1.0);
        assert!(region_r(&c, 2.5).is_err());
    }

    #[test]
    fn b_interval_examples() {
        let iv = b_interval(&cfg(1, 1, 1), 0.5, 0.5).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.0, 0.5));
        let iv = b_interval(&cfg(1, 2, 1), 0.25, 0.0).unwrap();
        assert_abs_diff_eq!(iv.lo, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(iv.hi, 1.0);
        let iv = b_interval(&cfg(3, 2, 2), 0.0, 0.0).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.0, 2.0));
        assert!(matches!(
            b_interval(&cfg(1, 2, 1), 0.25, 0.5),
            Err(DmtError::Domain { .. })
        ));
    }

    #[test]
    fn s_conventions_at_full_direct_rate() {
        let c = cfg(2, 2, 2);
        assert_eq!(s_of_b(&c, 1.0, 1.0, 0.0), 1.0);
        assert_eq!(s_of_b(&c, 1.0, 1.0, 0.3), 0.0);
    }

    fn config_and_rate() -> impl Strategy<Value = (AntennaConfig, f64)> {
        (1usize..=5, 1usize..=5, 1usize..=5, 0.0..=1.0f64).prop_map(|(m, k, n, x)| {
            let c = cfg(m, k, n);
            (c, x * c.max_rate())
        })
    }

    proptest! {
        #[test]
        fn region_lower_end_matches_bisection((c, r) in config_and_rate()) {
            let iv = region_r(&c, r).unwrap();
            prop_assert!((iv.lo - a_lo_bisect(&c, r)).abs() < 1e-9);
        }

        #[test]
        fn interval_points_are_feasible((c, r) in config_and_rate(), x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
            let ra = region_r(&c, r).unwrap();
            let a = ra.lo + x * ra.width();
            let rb = b_interval(&c, r, a).unwrap();
            let b = rb.lo + y * rb.width();
            let s = s_of_b(&c, r, a, b);
            prop_assert!(levels_feasible(&c, r, a, b, s));
            // tight unless the relay branch is idle
            if r - a > 1e-9 {
                prop_assert!((a + harmonic_part(b, s) - r).abs() < 1e-7);
            }
        }
    }
}
