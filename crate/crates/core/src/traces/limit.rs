use serde::{Deserialize, Serialize};

use super::grid::ScaleGrid;
use crate::error::{Error, Result};
use crate::numeric::lsq_slope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitVerdict {
    Converged,
    Oscillating,
    Diverging,
}

/// A sampled functional with a classification of its tail.
///
/// This stands in for an extended limit: a converged tail agrees with every
/// extended limit, anything else is reported as a band.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub scales: Vec<f64>,
    pub values: Vec<f64>,
    /// Value at the largest scale.
    pub value: f64,
    pub tail_mean: f64,
    pub tail_min: f64,
    pub tail_max: f64,
    /// Back-and-forth variation over the tail: `(total variation − |net change|) / 2`.
    pub tail_oscillation: f64,
    /// Least-squares slope of the tail against `ln t`.
    pub slope: f64,
    pub verdict: LimitVerdict,
}

impl LimitEstimate {
    pub fn converged(&self) -> bool {
        self.verdict == LimitVerdict::Converged
    }
}

/// Classifies `values` sampled at `ln_scales`.
///
/// The tail is the last third. It is converged when its oscillation is
/// below 0.5% of its mean (1e-9 absolute near zero) and its slope against
/// `ln t` is below 0.01; diverging when it drifts monotonically faster than that or holds a
/// non-finite value; oscillating otherwise.
pub fn limit_estimate(scales: &[f64], ln_scales: &[f64], values: &[f64]) -> Result<LimitEstimate> {
    let n = values.len();
    if n < 24 {
        return Err(Error::TooFewSamples { needed: 24, got: n });
    }
    if scales.len() != n || ln_scales.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: scales.len().min(ln_scales.len()) });
    }
    let start = n - n / 3;
    let tail = &values[start..];
    let m = tail.len() as f64;
    let tail_mean = tail.iter().sum::<f64>() / m;
    let tail_min = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let tail_max = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tv: f64 = tail.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let net = (tail[tail.len() - 1] - tail[0]).abs();
    let tail_oscillation = 0.5 * (tv - net).max(0.0);
    let slope = lsq_slope(&ln_scales[start..], tail);
    let monotone = tail.windows(2).all(|w| w[1] >= w[0]) || tail.windows(2).all(|w| w[1] <= w[0]);

    let osc_tol = (0.005 * tail_mean.abs()).max(1e-9);
    let slope_tol = 0.01;
    let verdict = if values.iter().any(|v| !v.is_finite()) {
        LimitVerdict::Diverging
    } else if tail_oscillation <= osc_tol && slope.abs() < slope_tol {
        LimitVerdict::Converged
    } else if monotone || tail_oscillation <= osc_tol {
        LimitVerdict::Diverging
    } else {
        LimitVerdict::Oscillating
    };
    Ok(LimitEstimate {
        scales: scales.to_vec(),
        values: values.to_vec(),
        value: values[n - 1],
        tail_mean,
        tail_min,
        tail_max,
        tail_oscillation,
        slope,
        verdict,
    })
}

pub(crate) fn estimate_on(grid: &ScaleGrid, values: Vec<f64>) -> Result<LimitEstimate> {
    limit_estimate(grid.values(), &grid.ln_scales(), &values)
}
