//! Minimization over the level pair `(a, b)`.
//!
//! At fixed `a` the reduced objective strictly decreases in both `b` and `s`
//! and is concave in `b` between kinks, so its minimum over `ℬ(a)` sits at an
//! endpoint or a kink and is found exactly by enumeration. The outer problem
//! in `a` uses a dense grid followed by golden-section refinement around the
//! best local minima.

use crate::config::AntennaConfig;
use crate::error::{check_domain, Result};
use crate::exponents::{objective_f_slices, phi_fill, LevelTriple};
use crate::region::{b_interval_unchecked, region_r, s_of_b};

use super::{Argmin, Method, SolveResult};

const A_STEP: f64 = 1e-3;
const REFINE_TOP: usize = 8;
const GOLDEN_ITERS: usize = 40;
const TIE: f64 = 1e-9;

struct Reduced<'a> {
    c: &'a AntennaConfig,
    r: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    delta: Vec<f64>,
    cands: Vec<f64>,
    evals: u64,
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    a: f64,
    b: f64,
    s: f64,
}

impl<'a> Reduced<'a> {
    fn new(c: &'a AntennaConfig, r: f64) -> Self {
        Self {
            c,
            r,
            alpha: vec![0.0; c.u()],
            beta: vec![0.0; c.p()],
            delta: vec![0.0; c.q()],
            cands: Vec::with_capacity(64),
            evals: 0,
        }
    }

    /// `F` at levels `(a, b, s)`; `alpha` must already hold `φ(a)`.
    fn eval_bs(&mut self, b: f64, s: f64) -> f64 {
        self.evals += 1;
        phi_fill(b, &mut self.beta);
        phi_fill(s, &mut self.delta);
        objective_f_slices(self.c, &self.alpha, &self.beta, &self.delta)
    }

    /// Exact minimum over `b ∈ ℬ(a)`; ties resolved towards smaller `b`.
    fn min_over_b(&mut self, a: f64) -> Best {
        let worst = Best { value: f64::INFINITY, a, b: f64::NAN, s: f64::NAN };
        let Ok(iv) = b_interval_unchecked(self.c, self.r, a) else {
            return worst;
        };
        phi_fill(a, &mut self.alpha);
        let x = (self.r - a).max(0.0);
        let (m, n) = (self.c.m(), self.c.n());

        let mut cands = std::mem::take(&mut self.cands);
        cands.clear();
        cands.push(iv.lo);
        cands.push(iv.hi);
        for j in 1..=self.c.p() {
            cands.push(j as f64);
        }
        let s_to_b = |s: f64| if s > x && x > 0.0 { Some(s * x / (s - x)) } else { None };
        for l in 1..=self.c.q() {
            cands.extend(s_to_b(l as f64));
        }
        for (i, &ai) in self.alpha.iter().enumerate() {
            for j in 1..=self.c.p() {
                if i + 1 + j <= m {
                    cands.push(j as f64 - 1.0 + ai);
                }
            }
            for l in 1..=self.c.q() {
                if i + 1 + l <= n {
                    cands.extend(s_to_b(l as f64 - 1.0 + ai));
                }
            }
        }
        cands.retain(|&b| b >= iv.lo && b <= iv.hi);
        cands.sort_by(f64::total_cmp);
        cands.dedup();

        let mut best = worst;
        for &b in &cands {
            let s = s_of_b(self.c, self.r, a, b);
            let v = self.eval_bs(b, s);
            if v < best.value - TIE {
                best = Best { value: v, a, b, s };
            }
        }
        self.cands = cands;
        best
    }

    fn golden(&mut self, mut lo: f64, mut hi: f64) -> Best {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.min_over_b(x1);
        let mut f2 = self.min_over_b(x2);
        for _ in 0..GOLDEN_ITERS {
            if f1.value <= f2.value {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.min_over_b(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.min_over_b(x2);
            }
        }
        if f1.value <= f2.value { f1 } else { f2 }
    }
}

/// Half-duplex relay DMT at rate `r`, minimizing over `a ∈ ℛ`, `b ∈ ℬ(a)`.
pub fn solve_two_var(config: &AntennaConfig, r: f64) -> Result<SolveResult> {
    let r = check_domain("r", r, 0.0, config.max_rate())?;
    let region = region_r(config, r)?;
    let mut red = Reduced::new(config, r);

    let mut grid: Vec<f64> = Vec::new();
    let steps = (region.width() / A_STEP).ceil() as usize;
    for i in 0..=steps {
        grid.push((region.lo + i as f64 * A_STEP).min(region.hi));
    }
    let kinks = [(config.m() - config.p()) as f64, (config.n() - config.q()) as f64];
    for j in 0..=config.u() {
        grid.push(j as f64);
    }
    grid.extend(kinks);
    grid.retain(|&a| a >= region.lo && a <= region.hi);
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let values: Vec<Best> = grid.iter().map(|&a| red.min_over_b(a)).collect();
    let mut best = values[0];
    for v in &values[1..] {
        if v.value < best.value - TIE {
            best = *v;
        }
    }

    // local minima of the sampled profile, best first
    let mut local: Vec<usize> = (0..values.len())
        .filter(|&i| {
            let left = i == 0 || values[i].value <= values[i - 1].value;
            let right = i + 1 == values.len() || values[i].value <= values[i + 1].value;
            left && right
        })
        .collect();
    local.sort_by(|&i, &j| values[i].value.total_cmp(&values[j].value).then(i.cmp(&j)));
    local.truncate(REFINE_TOP);
    for i in local {
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(grid.len() - 1)];
        if hi - lo <= 0.0 {
            continue;
        }
        let cand = red.golden(lo, hi);
        if cand.value < best.value - TIE {
            best = cand;
        }
    }

    Ok(SolveResult {
        d: best.value.max(0.0),
        argmin: Argmin::Levels(LevelTriple { a: best.a, b: best.b, s: best.s }),
        method: Method::TwoVar,
        evaluations: red.evals,
    })
}
