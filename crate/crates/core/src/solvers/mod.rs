//! DMT solvers: the two-variable production solver, a brute-force grid
//! oracle over exponent triples, the static `(n,1,n)` program and closed forms.

mod closed_form;
mod curve;
mod grid_oracle;
mod static_n1n;
mod two_var;

use serde::{Deserialize, Serialize};

use crate::exponents::{ExponentTriple, LevelTriple};

pub use closed_form::{dmt_1k1, dmt_ddf_1k1, dmt_n1n, dmt_static_1k1, dmt_symmetric_upper, symmetric_upper_bounds};
pub use curve::{dmt_curve, uniform_grid, DmtCurve, DmtPoint, Variant, ORACLE_STEP};
pub use grid_oracle::{solve_general_grid, GRID_MAX_DIM};
pub use static_n1n::{solve_static_n1n, static_n1n_feasible, static_n1n_objective, STATIC_MAX_N};
pub use two_var::solve_two_var;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TwoVar,
    GridOracle,
    LinearProgram,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Argmin {
    Levels(LevelTriple),
    Exponents(ExponentTriple),
    /// Minimizer of the static `(n,1,n)` program.
    Static { alpha: Vec<f64>, beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub d: f64,
    pub argmin: Argmin,
    pub method: Method,
    pub evaluations: u64,
}
