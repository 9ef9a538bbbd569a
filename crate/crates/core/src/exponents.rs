//! SNR-exponent vectors and the functions defined on them: the objective `F`,
//! the pdf exponent `E`, the support test, the asymptotic rate `r*` and the
//! level-to-vector maps `φ`.

use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{check_domain, DmtError, Result, EPS};

#[inline]
pub(crate) fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Negative SNR exponents of the ordered eigenvalues of the three channel
/// Gram matrices: `alpha` (length `u`), `beta` (length `p`), `delta` (length `q`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub delta: Vec<f64>,
}

impl ExponentTriple {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>, delta: Vec<f64>) -> Self {
        Self { alpha, beta, delta }
    }

    /// Triple obtained by mapping the levels `(a, b, s)` through `φ`.
    pub fn from_levels(config: &AntennaConfig, levels: &LevelTriple) -> Result<Self> {
        Ok(Self {
            alpha: phi_map(levels.a, config.u())?,
            beta: phi_map(levels.b, config.p())?,
            delta: phi_map(levels.s, config.q())?,
        })
    }

    pub fn check_shape(&self, config: &AntennaConfig) -> Result<()> {
        let want = (config.u(), config.p(), config.q());
        let got = (self.alpha.len(), self.beta.len(), self.delta.len());
        if want != got {
            return Err(DmtError::Contract(format!(
                "config {config} needs lengths (u,p,q) = {want:?}, got {got:?}"
            )));
        }
        Ok(())
    }

    fn is_finite(&self) -> bool {
        self.alpha
            .iter()
            .chain(&self.beta)
            .chain(&self.delta)
            .all(|x| x.is_finite())
    }
}

/// Aggregate multiplexing levels `a ∈ [0,u]`, `b ∈ [0,p]`, `s ∈ [0,q]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelTriple {
    pub a: f64,
    pub b: f64,
    pub s: f64,
}

/// `F` on raw slices; shapes are assumed to match `config`.
pub(crate) fn objective_f_slices(c: &AntennaConfig, alpha: &[f64], beta: &[f64], delta: &[f64]) -> f64 {
    let (m, k, n) = (c.m() as f64, c.k() as f64, c.n() as f64);
    let mut f = -2.0 * k * c.u() as f64;
    for (i, &a) in alpha.iter().enumerate() {
        f += (n + m + 2.0 * k - 2.0 * i as f64 - 1.0) * a;
    }
    f + linear_bd_and_pairs(c, alpha, beta, delta)
}

/// `E` on raw slices; shapes are assumed to match `config`.
pub(crate) fn exponent_e_slices(c: &AntennaConfig, alpha: &[f64], beta: &[f64], delta: &[f64]) -> f64 {
    let (m, k, n) = (c.m() as f64, c.k() as f64, c.n() as f64);
    let mut e = 0.0;
    for (i, &a) in alpha.iter().enumerate() {
        e += (n + m - 2.0 * i as f64 - 1.0) * a - 2.0 * k * pos(1.0 - a);
    }
    e + linear_bd_and_pairs(c, alpha, beta, delta)
}

fn linear_bd_and_pairs(c: &AntennaConfig, alpha: &[f64], beta: &[f64], delta: &[f64]) -> f64 {
    let (m, k, n) = (c.m(), c.k() as f64, c.n());
    let mut acc = 0.0;
    for (j, &b) in beta.iter().enumerate() {
        acc += (k + m as f64 - 2.0 * j as f64 - 1.0) * b;
    }
    for (l, &d) in delta.iter().enumerate() {
        acc += (k + n as f64 - 2.0 * l as f64 - 1.0) * d;
    }
    // 1-based i + j ≤ m is 0-based i + j ≤ m - 2
    for (i, &a) in alpha.iter().enumerate() {
        for (j, &b) in beta.iter().enumerate() {
            if i + j + 2 > m {
                break;
            }
            acc += pos(1.0 - a - b);
        }
        for (l, &d) in delta.iter().enumerate() {
            if i + l + 2 > n {
                break;
            }
            acc += pos(1.0 - a - d);
        }
    }
    acc
}

/// Objective `F` of the exponent minimization problem.
pub fn objective_f(config: &AntennaConfig, t: &ExponentTriple) -> Result<f64> {
    t.check_shape(config)?;
    Ok(objective_f_slices(config, &t.alpha, &t.beta, &t.delta))
}

/// Negative SNR exponent `E` of the joint eigenvalue-exponent density.
pub fn exponent_e(config: &AntennaConfig, t: &ExponentTriple) -> Result<f64> {
    t.check_shape(config)?;
    Ok(exponent_e_slices(config, &t.alpha, &t.beta, &t.delta))
}

/// Membership in the support set with tolerance `1e-9`.
pub fn support_contains(config: &AntennaConfig, t: &ExponentTriple) -> Result<bool> {
    support_contains_with_slack(config, t, EPS)
}

/// Membership in the support set, allowing every inequality to be violated by `slack`.
pub fn support_contains_with_slack(config: &AntennaConfig, t: &ExponentTriple, slack: f64) -> Result<bool> {
    t.check_shape(config)?;
    if !t.is_finite() {
        return Ok(false);
    }
    let ordered = |v: &[f64]| v.first().is_none_or(|&x| x >= -slack) && v.windows(2).all(|w| w[0] <= w[1] + slack);
    if !(ordered(&t.alpha) && ordered(&t.beta) && ordered(&t.delta)) {
        return Ok(false);
    }
    let (m, n) = (config.m(), config.n());
    for (i, &a) in t.alpha.iter().enumerate() {
        for (j, &b) in t.beta.iter().enumerate() {
            if i + j + 1 >= m && a + b < 1.0 - slack {
                return Ok(false);
            }
        }
        for (l, &d) in t.delta.iter().enumerate() {
            if i + l + 1 >= n && a + d < 1.0 - slack {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn rate_exponent_slices(alpha: &[f64], beta: &[f64], delta: &[f64]) -> f64 {
    let sum = |v: &[f64]| v.iter().map(|&x| pos(1.0 - x)).sum::<f64>();
    let (a, b, s) = (sum(alpha), sum(beta), sum(delta));
    a + harmonic_part(b, s)
}

/// `bs/(b+s)`, with the `0/0` case taken as zero.
#[inline]
pub fn harmonic_part(b: f64, s: f64) -> f64 {
    if b + s > 0.0 {
        b * s / (b + s)
    } else {
        0.0
    }
}

/// Asymptotic normalized rate `r*` of an exponent triple.
pub fn rate_exponent(t: &ExponentTriple) -> f64 {
    rate_exponent_slices(&t.alpha, &t.beta, &t.delta)
}

/// Cheapest ordered exponent vector of length `len` whose entries sum to `len - level`.
pub fn phi_map(level: f64, len: usize) -> Result<Vec<f64>> {
    let level = check_domain("level", level, 0.0, len as f64)?;
    let mut v = vec![0.0; len];
    phi_fill(level, &mut v);
    Ok(v)
}

/// Allocation-free `φ`; `level` is assumed to lie in `[0, out.len()]`.
#[inline]
pub(crate) fn phi_fill(level: f64, out: &mut [f64]) {
    for (i, x) in out.iter_mut().enumerate() {
        *x = pos(1.0 - pos(level - i as f64));
    }
}
