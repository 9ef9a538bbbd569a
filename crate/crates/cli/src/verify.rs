//! Cross-check battery run by `hdrc verify`.

use dmt_core::exponents::harmonic_part;
use dmt_core::solvers::{
    dmt_1k1, dmt_n1n, dmt_symmetric_upper, solve_general_grid, solve_static_n1n, solve_two_var, uniform_grid,
};
use dmt_core::{
    exponent_e, fd_dmt, objective_f, phi_map, ptp_dmt, rate_exponent, support_contains, AntennaConfig, ExponentTriple,
    Result,
};
use serde::Serialize;

/// Deliberate defects for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Shifts the first entry of every `φ` image by 0.01.
    Phi,
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "phi" => Ok(Fault::Phi),
            _ => Err(format!("unknown fault {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub hard: bool,
    pub passed: bool,
    pub detail: String,
}

type Outcome = std::result::Result<String, String>;
type Check = (&'static str, bool, Box<dyn Fn() -> Outcome>);

fn cfg(m: usize, k: usize, n: usize) -> AntennaConfig {
    AntennaConfig::new(m, k, n).expect("positive antenna counts")
}

fn hd(c: &AntennaConfig, r: f64) -> Result<f64> {
    Ok(solve_two_var(c, r)?.d)
}

/// Largest `|f − g|` over `rs`, failing when it exceeds `tol`.
fn agree(
    label: &str,
    rs: &[f64],
    tol: f64,
    f: impl Fn(f64) -> Result<f64>,
    g: impl Fn(f64) -> Result<f64>,
) -> std::result::Result<f64, String> {
    let mut worst = 0.0f64;
    for &r in rs {
        let (a, b) = (f(r).map_err(|e| format!("{label} r={r}: {e}"))?, g(r).map_err(|e| format!("{label} r={r}: {e}"))?);
        if (a - b).abs() > tol {
            return Err(format!("{label} r={r}: {a} vs {b} (tolerance {tol})"));
        }
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

/// Deterministic points in `[0, 1)` from a Weyl sequence.
fn unit_points(count: usize, dim: usize) -> impl Iterator<Item = Vec<f64>> {
    let steps: Vec<f64> = (1..=dim).map(|d| ((d as f64 + 1.0).sqrt()).fract()).collect();
    (1..=count).map(move |i| steps.iter().map(|s| (i as f64 * s).fract()).collect())
}

const CONFIGS: [(usize, usize, usize); 6] = [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 3, 2), (3, 2, 1), (3, 3, 3)];

fn phi_consistency(fault: Option<Fault>) -> Outcome {
    let phi = |level: f64, len: usize| -> Result<Vec<f64>> {
        let mut v = phi_map(level, len)?;
        if fault == Some(Fault::Phi) {
            v[0] = if v[0] >= 0.01 { v[0] - 0.01 } else { v[0] + 0.01 };
        }
        Ok(v)
    };
    let mut count = 0;
    for &(m, k, n) in &CONFIGS {
        let c = cfg(m, k, n);
        for x in unit_points(500, 3) {
            let a = x[0] * c.u() as f64;
            let b = x[1] * (c.p() as f64).min(c.m() as f64 - a);
            let s = x[2] * (c.q() as f64).min(c.n() as f64 - a);
            let t = ExponentTriple::new(
                phi(a, c.u()).map_err(|e| e.to_string())?,
                phi(b, c.p()).map_err(|e| e.to_string())?,
                phi(s, c.q()).map_err(|e| e.to_string())?,
            );
            let (got, want) = (rate_exponent(&t), a + harmonic_part(b, s));
            if (got - want).abs() > 1e-12 {
                return Err(format!("{c} levels ({a:.4}, {b:.4}, {s:.4}): rate {got} vs {want}"));
            }
            if !support_contains(&c, &t).map_err(|e| e.to_string())? {
                return Err(format!("{c} levels ({a:.4}, {b:.4}, {s:.4}): image outside the support"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} level triples"))
}

fn objective_identity() -> Outcome {
    let mut count = 0;
    for &(m, k, n) in &CONFIGS {
        let c = cfg(m, k, n);
        for x in unit_points(500, c.u() + c.p() + c.q()) {
            let (a, rest) = x.split_at(c.u());
            let (b, d) = rest.split_at(c.p());
            let t = ExponentTriple::new(a.to_vec(), b.to_vec(), d.to_vec());
            let (f, e) = (objective_f(&c, &t).map_err(|e| e.to_string())?, exponent_e(&c, &t).map_err(|e| e.to_string())?);
            if (f - e).abs() > 1e-12 {
                return Err(format!("{c} {t:?}: F {f} vs E {e}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} cube points"))
}

fn one_k_one() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=4 {
        let c = cfg(1, k, 1);
        worst = worst.max(agree(&c.to_string(), &uniform_grid(0.0, 1.0, 41), 1e-3, |r| hd(&c, r), |r| dmt_1k1(k, r))?);
    }
    Ok(format!("max gap {worst:.2e}"))
}

fn n_one_n() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let c = cfg(n, 1, n);
        let rs = uniform_grid(0.0, n as f64, 41);
        worst = worst.max(agree(&c.to_string(), &rs, 1e-3, |r| hd(&c, r), |r| dmt_n1n(n, r))?);
    }
    Ok(format!("max gap {worst:.2e}"))
}

fn static_n1n() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let rs = uniform_grid(0.0, n as f64, 20);
        worst = worst.max(agree(&format!("n={n}"), &rs, 5e-3, |r| Ok(solve_static_n1n(n, r)?.d), |r| dmt_n1n(n, r))?);
    }
    Ok(format!("max gap {worst:.2e}"))
}

fn reciprocity() -> Outcome {
    let mut worst = 0.0f64;
    for (m, k, n) in [(1, 2, 3), (2, 1, 3), (1, 3, 2), (2, 2, 3)] {
        let a = cfg(m, k, n);
        let b = a.reciprocal();
        let rs = uniform_grid(0.0, a.max_rate(), 20);
        worst = worst.max(agree(&format!("{a} vs {b}"), &rs, 1e-6, |r| hd(&a, r), |r| hd(&b, r))?);
    }
    Ok(format!("max gap {worst:.2e}"))
}

fn sandwich() -> Outcome {
    for (m, k, n) in [(1, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 1, 3)] {
        let c = cfg(m, k, n);
        for r in uniform_grid(0.0, c.max_rate(), 20) {
            let lo = ptp_dmt(m, n, r).map_err(|e| e.to_string())?;
            let mid = hd(&c, r).map_err(|e| e.to_string())?;
            let hi = fd_dmt(&c, r).map_err(|e| e.to_string())?;
            if lo > mid + 1e-6 || mid > hi + 1e-6 {
                return Err(format!("{c} r={r}: ptp {lo}, hd {mid}, fd {hi}"));
            }
        }
    }
    Ok("ptp <= hd <= fd".into())
}

fn oracle_agreement() -> Outcome {
    let mut worst = 0.0f64;
    for (m, k, n) in [(1, 1, 1), (1, 2, 1), (2, 1, 2)] {
        let c = cfg(m, k, n);
        let rs: Vec<f64> = [0.0, 0.25, 0.5, 0.75, 1.0].iter().map(|f| f * c.max_rate()).collect();
        worst = worst.max(agree(&c.to_string(), &rs, 0.15, |r| Ok(solve_general_grid(&c, r, 0.05)?.d), |r| hd(&c, r))?);
    }
    Ok(format!("max gap {worst:.3}"))
}

fn symmetric_dominance() -> Outcome {
    for (n, k) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4), (3, 2)] {
        let c = cfg(n, k, n);
        for r in uniform_grid(0.0, n as f64, 40) {
            let u = dmt_symmetric_upper(n, k, r).map_err(|e| e.to_string())?;
            let d = hd(&c, r).map_err(|e| e.to_string())?;
            if u < d - 1e-3 {
                return Err(format!("{c} r={r}: bound {u} below solver {d}"));
            }
        }
    }
    Ok("bound never below solver".into())
}

fn symmetric_tightness() -> Outcome {
    let mut worst = (0.0f64, String::new());
    for n in 1..=2 {
        for k in 1..=3 {
            let c = cfg(n, k, n);
            for r in uniform_grid(0.0, n as f64, 40) {
                let gap = (dmt_symmetric_upper(n, k, r).map_err(|e| e.to_string())? - hd(&c, r).map_err(|e| e.to_string())?).abs();
                if gap > worst.0 {
                    worst = (gap, format!("{c} r={r}"));
                }
            }
        }
    }
    let text = format!("max |bound - solver| {:.2e} {}", worst.0, worst.1);
    if worst.0 <= 1e-2 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn hd_equals_fd() -> Outcome {
    let mut worst = 0.0f64;
    for (m, k, n) in [(3, 2, 2), (3, 1, 2)] {
        let c = cfg(m, k, n);
        for r in uniform_grid(0.0, c.max_rate(), 20) {
            let gap = (hd(&c, r).map_err(|e| e.to_string())? - fd_dmt(&c, r).map_err(|e| e.to_string())?).abs();
            worst = worst.max(gap);
        }
    }
    let text = format!("max |hd - fd| {worst:.2e}");
    if worst <= 1e-2 {
        Ok(text)
    } else {
        Err(text)
    }
}

/// Runs the hard checks, plus the soft conjecture checks when `conjectures` is set.
pub fn run_battery(conjectures: bool, fault: Option<Fault>) -> Vec<CheckResult> {
    let mut checks: Vec<Check> = vec![
        ("φ consistency", true, Box::new(move || phi_consistency(fault))),
        ("F/E agreement on the unit cube", true, Box::new(objective_identity)),
        ("(1,k,1) closed form vs solver", true, Box::new(one_k_one)),
        ("(n,1,n) closed form vs solver", true, Box::new(n_one_n)),
        ("static (n,1,n) equals dynamic", true, Box::new(static_n1n)),
        ("reciprocity", true, Box::new(reciprocity)),
        ("ptp <= hd <= fd sandwich", true, Box::new(sandwich)),
        ("grid oracle agreement", true, Box::new(oracle_agreement)),
        ("symmetric upper bound dominance", true, Box::new(symmetric_dominance)),
    ];
    if conjectures {
        checks.push(("conjecture: symmetric bound is tight", false, Box::new(symmetric_tightness)));
        checks.push(("conjecture: hd equals fd when m > n >= k", false, Box::new(hd_equals_fd)));
    }
    checks
        .into_iter()
        .map(|(name, hard, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name: name.to_string(), hard, passed, detail }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_battery_passes() {
        let results = run_battery(false, None);
        assert!(results.iter().all(|c| c.hard && c.passed), "{results:?}");
    }

    #[test]
    fn phi_fault_is_caught_by_name() {
        let results = run_battery(false, Some(Fault::Phi));
        let failed: Vec<_> = results.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["φ consistency"]);
    }

    #[test]
    fn conjectures_are_soft() {
        let results = run_battery(true, None);
        assert_eq!(results.iter().filter(|c| !c.hard).count(), 2);
    }

    #[test]
    fn unit_points_in_range() {
        for p in unit_points(100, 4) {
            assert!(p.iter().all(|x| (0.0..1.0).contains(x)));
        }
    }
}
