use serde::Serialize;

use super::functionals::{cutoff, heat, partial_sum, zeta_with_constant};
use super::grid::ScaleGrid;
use super::limit::{LimitEstimate, LimitVerdict};
use crate::error::Result;
use crate::rearrange::SingularValueProfile;
use crate::weight::{c_zeta, WeightFunction};

pub const FUNCTIONAL_NAMES: [&str; 4] = ["partial_sum", "cutoff", "zeta", "heat"];

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    /// Exponents `r`; partial sums and cutoff at `t = e^r`, ζ at `r`, heat at `λ = e^r`.
    pub grid: ScaleGrid,
    pub partial_sum: LimitEstimate,
    pub cutoff: LimitEstimate,
    pub cutoff_precondition_ok: bool,
    pub zeta: LimitEstimate,
    pub heat: LimitEstimate,
    pub heat_cross_check_ok: bool,
    /// Relative gaps between the values at the largest scale, in the order
    /// of [`FUNCTIONAL_NAMES`].
    pub gaps: [[f64; 4]; 4],
    pub max_gap: f64,
    pub measurable: bool,
    /// Mean of the four values when measurable.
    pub value: Option<f64>,
}

impl CompareReport {
    pub fn estimates(&self) -> [&LimitEstimate; 4] {
        [&self.partial_sum, &self.cutoff, &self.zeta, &self.heat]
    }
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

/// Runs all four functionals on one exponent grid and compares them.
/// Measurable when every tail converges and all pairwise gaps are below 5%.
pub fn compare_all(p: &SingularValueProfile, w: &WeightFunction, g: &ScaleGrid, b: Option<&[f64]>) -> Result<CompareReport> {
    let c = c_zeta(w)?;
    let ps = partial_sum(p, w, g)?;
    let co = cutoff(p, w, g)?;
    let ze = zeta_with_constant(p, w, g, b, c)?;
    let he = heat(p, w, g, b)?;
    let vals = [ps.value, co.estimate.value, ze.value, he.estimate.value];
    let mut gaps = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            gaps[i][j] = relative_gap(vals[i], vals[j]);
        }
    }
    let max_gap = gaps.iter().flatten().cloned().fold(0.0, f64::max);
    let all_converged = [&ps, &co.estimate, &ze, &he.estimate].iter().all(|e| e.verdict == LimitVerdict::Converged);
    let measurable = all_converged && max_gap < 0.05;
    Ok(CompareReport {
        grid: g.clone(),
        cutoff_precondition_ok: co.precondition_ok(),
        heat_cross_check_ok: he.cross_check_ok(),
        partial_sum: ps,
        cutoff: co.estimate,
        zeta: ze,
        heat: he.estimate,
        gaps,
        max_gap,
        measurable,
        value: measurable.then(|| vals.iter().sum::<f64>() / 4.0),
    })
}
