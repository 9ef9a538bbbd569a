//! Exhaustive search over sorted exponent tuples on a uniform grid in `[0,1]`.
//!
//! Every grid point that passes the support and rate tests is feasible, so
//! the result is an upper bound on the exact DMT that tightens with `step`.

use crate::config::AntennaConfig;
use crate::error::{check_domain, DmtError, Result, EPS};
use crate::exponents::{objective_f_slices, rate_exponent_slices, support_contains_with_slack, ExponentTriple};

use super::{Argmin, Method, SolveResult};

/// Largest `u + p + q` the oracle accepts.
pub const GRID_MAX_DIM: usize = 6;
const MAX_STEP: f64 = 0.25;

fn grid_values(step: f64) -> Vec<f64> {
    let count = (1.0 / step - 1e-9).ceil() as usize;
    let mut v: Vec<f64> = (0..count).map(|i| i as f64 * step).collect();
    v.push(1.0);
    v
}

/// All non-decreasing tuples of length `len` drawn from `values`.
fn sorted_tuples(values: &[f64], len: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        out.push(idx.iter().map(|&i| values[i]).collect());
        // advance like an odometer that keeps indices non-decreasing
        let mut pos = len;
        while pos > 0 && idx[pos - 1] == values.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        let next = idx[pos - 1] + 1;
        for slot in &mut idx[pos - 1..] {
            *slot = next;
        }
    }
}

/// Brute-force minimum of `F` over sorted exponent triples on a grid of spacing `step`.
pub fn solve_general_grid(config: &AntennaConfig, r: f64, step: f64) -> Result<SolveResult> {
    let r = check_domain("r", r, 0.0, config.max_rate())?;
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(DmtError::Domain { what: "step", value: step, lo: 0.0, hi: MAX_STEP });
    }
    let dim = config.u() + config.p() + config.q();
    if dim > GRID_MAX_DIM {
        return Err(DmtError::Refused(format!(
            "grid oracle over {dim} exponents for {config} exceeds the cap of {GRID_MAX_DIM}"
        )));
    }
    let values = grid_values(step);
    let alphas = sorted_tuples(&values, config.u());
    let betas = sorted_tuples(&values, config.p());
    let deltas = sorted_tuples(&values, config.q());

    let mut best = f64::INFINITY;
    let mut arg = None;
    let mut evals = 0u64;
    for al in &alphas {
        for be in &betas {
            for de in &deltas {
                if rate_exponent_slices(al, be, de) > r + EPS {
                    continue;
                }
                let t = ExponentTriple::new(al.clone(), be.clone(), de.clone());
                if !support_contains_with_slack(config, &t, EPS)? {
                    continue;
                }
                evals += 1;
                let f = objective_f_slices(config, al, be, de);
                if f < best - EPS {
                    best = f;
                    arg = Some(t);
                }
            }
        }
    }
    let arg = arg.ok_or_else(|| DmtError::Internal(format!("no feasible grid point for {config} at r = {r}")))?;
    Ok(SolveResult {
        d: best,
        argmin: Argmin::Exponents(arg),
        method: Method::GridOracle,
        evaluations: evals,
    })
}
