use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{DmtError, Result, EPS};
use crate::ptp::{fd_dmt, ptp_dmt};

use super::{dmt_1k1, dmt_ddf_1k1, dmt_n1n, dmt_static_1k1, dmt_symmetric_upper, solve_general_grid, solve_static_n1n, solve_two_var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    HdDynamic,
    Fd,
    #[serde(rename = "hd-static-n1n")]
    HdStaticN1n,
    #[serde(rename = "closed-1k1")]
    Closed1k1,
    #[serde(rename = "closed-n1n")]
    ClosedN1n,
    SymmetricUpper,
    #[serde(rename = "ddf-1k1")]
    Ddf1k1,
    #[serde(rename = "static-1k1")]
    Static1k1,
    Ptp,
    /// Brute-force grid search over the full exponent space with step 0.05.
    GridOracle,
}

/// Grid step used by [`Variant::GridOracle`].
pub const ORACLE_STEP: f64 = 0.05;

impl Variant {
    pub const ALL: [Variant; 10] = [
        Variant::HdDynamic,
        Variant::Fd,
        Variant::HdStaticN1n,
        Variant::Closed1k1,
        Variant::ClosedN1n,
        Variant::SymmetricUpper,
        Variant::Ddf1k1,
        Variant::Static1k1,
        Variant::Ptp,
        Variant::GridOracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::HdDynamic => "hd-dynamic",
            Variant::Fd => "fd",
            Variant::HdStaticN1n => "hd-static-n1n",
            Variant::Closed1k1 => "closed-1k1",
            Variant::ClosedN1n => "closed-n1n",
            Variant::SymmetricUpper => "symmetric-upper",
            Variant::Ddf1k1 => "ddf-1k1",
            Variant::Static1k1 => "static-1k1",
            Variant::Ptp => "ptp",
            Variant::GridOracle => "grid-oracle",
        }
    }

    /// Checks that the variant is defined for `config`.
    pub fn check_config(&self, c: &AntennaConfig) -> Result<()> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(DmtError::Config(format!("variant {} needs {what}, got {c}", self.name())))
            }
        };
        match self {
            Variant::HdDynamic | Variant::Fd | Variant::Ptp | Variant::GridOracle => Ok(()),
            Variant::Closed1k1 | Variant::Ddf1k1 | Variant::Static1k1 => need(c.m() == 1 && c.n() == 1, "m = n = 1"),
            Variant::HdStaticN1n | Variant::ClosedN1n => need(c.m() == c.n() && c.k() == 1, "m = n and k = 1"),
            Variant::SymmetricUpper => need(c.m() == c.n(), "m = n"),
        }
    }

    /// Diversity at `r`; the config must already have passed [`Variant::check_config`].
    pub fn evaluate(&self, c: &AntennaConfig, r: f64) -> Result<f64> {
        match self {
            Variant::HdDynamic => Ok(solve_two_var(c, r)?.d),
            Variant::Fd => fd_dmt(c, r),
            Variant::HdStaticN1n => Ok(solve_static_n1n(c.n(), r)?.d),
            Variant::Closed1k1 => dmt_1k1(c.k(), r),
            Variant::ClosedN1n => dmt_n1n(c.n(), r),
            Variant::SymmetricUpper => dmt_symmetric_upper(c.n(), c.k(), r),
            Variant::Ddf1k1 => dmt_ddf_1k1(c.k(), r),
            Variant::Static1k1 => dmt_static_1k1(c.k(), r),
            Variant::Ptp => ptp_dmt(c.m(), c.n(), r),
            Variant::GridOracle => Ok(solve_general_grid(c, r, ORACLE_STEP)?.d),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = DmtError;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s.trim())
            .ok_or_else(|| DmtError::Config(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DmtPoint {
    pub r: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmtCurve {
    pub config: AntennaConfig,
    pub variant: Variant,
    pub points: Vec<DmtPoint>,
}

/// `count` evenly spaced rates covering `[lo, hi]` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => (0..count)
            .map(|i| if i + 1 == count { hi } else { lo + (hi - lo) * i as f64 / (count - 1) as f64 })
            .collect(),
    }
}

/// Samples one DMT variant on `r_grid`. Points are computed independently, in parallel.
pub fn dmt_curve(config: &AntennaConfig, variant: Variant, r_grid: &[f64]) -> Result<DmtCurve> {
    variant.check_config(config)?;
    if r_grid.is_empty() {
        return Err(DmtError::Config("empty rate grid".into()));
    }
    if r_grid.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(DmtError::Config("rate grid must be strictly increasing".into()));
    }
    let top = config.max_rate();
    if let Some(&bad) = r_grid.iter().find(|r| !(**r >= -EPS && **r <= top + EPS)) {
        return Err(DmtError::Config(format!("rate {bad} outside [0, {top}] for {config}")));
    }
    let points = r_grid
        .par_iter()
        .map(|&r| Ok(DmtPoint { r, d: variant.evaluate(config, r)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(DmtCurve { config: *config, variant, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: usize, k: usize, n: usize) -> AntennaConfig {
        AntennaConfig::new(m, k, n).unwrap()
    }

    fn ds(c: &DmtCurve) -> Vec<f64> {
        c.points.iter().map(|p| p.d).collect()
    }

    #[test]
    fn examples() {
        let c = dmt_curve(&cfg(1, 2, 1), Variant::HdDynamic, &[0.0, 0.5, 1.0]).unwrap();
        for (got, want) in ds(&c).iter().zip([3.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        let c = dmt_curve(&cfg(2, 1, 2), Variant::Fd, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(ds(&c), vec![6.0, 2.0, 0.0]);
        let c = dmt_curve(&cfg(3, 2, 2), Variant::Ptp, &[2.0]).unwrap();
        assert_eq!(ds(&c), vec![0.0]);
    }

    #[test]
    fn rejects_mismatch_and_bad_grids() {
        let c = cfg(2, 2, 2);
        assert!(matches!(dmt_curve(&c, Variant::Closed1k1, &[0.5]), Err(DmtError::Config(_))));
        assert!(matches!(dmt_curve(&c, Variant::ClosedN1n, &[0.5]), Err(DmtError::Config(_))));
        assert!(matches!(dmt_curve(&cfg(2, 1, 3), Variant::SymmetricUpper, &[0.5]), Err(DmtError::Config(_))));
        assert!(dmt_curve(&c, Variant::Fd, &[]).is_err());
        assert!(dmt_curve(&c, Variant::Fd, &[0.5, 0.5]).is_err());
        assert!(dmt_curve(&c, Variant::Fd, &[0.5, 2.5]).is_err());
        assert!(matches!(
            dmt_curve(&cfg(1, 2, 1), Variant::Static1k1, &[0.2]),
            Err(DmtError::Domain { .. })
        ));
        assert!(matches!(
            dmt_curve(&cfg(3, 3, 3), Variant::GridOracle, &[1.0]),
            Err(DmtError::Refused(_))
        ));
    }

    #[test]
    fn oracle_variant_tracks_solver() {
        let c = cfg(1, 2, 1);
        let grid = [0.0, 0.25, 0.5, 0.75];
        let o = ds(&dmt_curve(&c, Variant::GridOracle, &grid).unwrap());
        let h = ds(&dmt_curve(&c, Variant::HdDynamic, &grid).unwrap());
        for (a, b) in o.iter().zip(&h) {
            assert!((a - b).abs() <= 0.15);
        }
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.name()));
        }
        assert!("bogus".parse::<Variant>().is_err());
    }

    #[test]
    fn curves_are_non_increasing() {
        for (m, k, n) in [(1, 2, 1), (2, 2, 2), (3, 1, 2), (2, 4, 2)] {
            let c = cfg(m, k, n);
            let grid = uniform_grid(0.0, c.max_rate(), 21);
            for v in [Variant::HdDynamic, Variant::Fd, Variant::Ptp] {
                let d = ds(&dmt_curve(&c, v, &grid).unwrap());
                assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{c} {v}: {d:?}");
                assert!(d.last().unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn grid_endpoints_exact() {
        let g = uniform_grid(0.0, 2.0, 7);
        assert_eq!((g[0], g[6]), (0.0, 2.0));
        assert!(uniform_grid(0.0, 1.0, 0).is_empty());
    }
}
