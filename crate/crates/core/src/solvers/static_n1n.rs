//! DMT of the static `(n,1,n)` channel.
//!
//! The exponent program is piecewise linear in `(α, β)`, so each `(·)⁺`
//! pair term gets an epigraph variable and the whole problem becomes a
//! linear program.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{check_domain, DmtError, Result};
use crate::exponents::pos;

use super::{Argmin, Method, SolveResult};

/// Largest `n` accepted by [`solve_static_n1n`].
pub const STATIC_MAX_N: usize = 32;

/// Objective of the static `(n,1,n)` program at `(α, β)`.
pub fn static_n1n_objective(alpha: &[f64], beta: f64) -> f64 {
    let n = alpha.len();
    let nf = n as f64;
    let mut f = nf * beta - nf;
    for (i, &a) in alpha.iter().enumerate() {
        f += (2.0 * nf - 2.0 * i as f64) * a;
        if i + 1 < n {
            f += pos(1.0 - beta - a);
        }
    }
    f
}

/// Whether `(α, β)` meets the constraints of the static program at rate `r`.
pub fn static_n1n_feasible(alpha: &[f64], beta: f64, r: f64, tol: f64) -> bool {
    let in_unit = |x: f64| x >= -tol && x <= 1.0 + tol;
    let rate: f64 = alpha.iter().map(|a| 1.0 - a).sum::<f64>() + 0.5 * (1.0 - beta);
    in_unit(beta)
        && alpha.iter().all(|&a| in_unit(a))
        && alpha.windows(2).all(|w| w[0] <= w[1] + tol)
        && alpha.last().is_none_or(|&a| a + beta >= 1.0 - tol)
        && rate <= r + tol
}

/// Static `(n,1,n)` DMT at rate `r` via linear programming.
pub fn solve_static_n1n(n: usize, r: f64) -> Result<SolveResult> {
    if n == 0 {
        return Err(DmtError::Config("antenna count must be positive".into()));
    }
    if n > STATIC_MAX_N {
        return Err(DmtError::Refused(format!("static program with n = {n} exceeds the cap of {STATIC_MAX_N}")));
    }
    let r = check_domain("r", r, 0.0, n as f64)?;
    let nf = n as f64;

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let alpha: Vec<_> = (0..n)
        .map(|i| lp.add_var(2.0 * nf - 2.0 * i as f64, (0.0, 1.0)))
        .collect();
    let beta = lp.add_var(nf, (0.0, 1.0));
    for &a in alpha.iter().take(n.saturating_sub(1)) {
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        lp.add_constraint([(t, 1.0), (beta, 1.0), (a, 1.0)], ComparisonOp::Ge, 1.0);
    }
    // Σ(1 − αᵢ) + (1 − β)/2 ≤ r
    let mut rate: Vec<_> = alpha.iter().map(|&a| (a, 1.0)).collect();
    rate.push((beta, 0.5));
    lp.add_constraint(rate, ComparisonOp::Ge, nf + 0.5 - r);
    for w in alpha.windows(2) {
        lp.add_constraint([(w[1], 1.0), (w[0], -1.0)], ComparisonOp::Ge, 0.0);
    }
    lp.add_constraint([(beta, 1.0), (alpha[n - 1], 1.0)], ComparisonOp::Ge, 1.0);

    let sol = lp
        .solve()
        .map_err(|e| DmtError::Internal(format!("static program at n = {n}, r = {r}: {e}")))?;
    let a: Vec<f64> = alpha.iter().map(|&v| sol[v].clamp(0.0, 1.0)).collect();
    let b = sol[beta].clamp(0.0, 1.0);
    let d = static_n1n_objective(&a, b).max(0.0);
    Ok(SolveResult {
        d,
        argmin: Argmin::Static { alpha: a, beta: b },
        method: Method::LinearProgram,
        evaluations: 1,
    })
}
