use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::geomspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    /// values are the scale `t` itself
    Direct,
    /// values are exponents `r` with `t = e^r`
    Exponent,
}

/// Increasing, geometrically spaced scales at which a functional is sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleGrid {
    kind: ScaleKind,
    values: Vec<f64>,
}

const MIN_POINTS: usize = 24;

impl ScaleGrid {
    /// `n` points from `t_min` to `t_max`; needs at least 24 points over 8 decades.
    pub fn direct(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        let g = Self::resolved(ScaleKind::Direct, t_min, t_max, n)?;
        if t_max / t_min < 1e8 * (1.0 - 1e-12) {
            return Err(Error::Domain(format!("direct scale grid spans only [{t_min}, {t_max}], need 8 decades")));
        }
        Ok(g)
    }

    /// Exponents `r ∈ [r_min, r_max]`; the span must cover 8 decades of `t`.
    pub fn exponent(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        let g = Self::resolved(ScaleKind::Exponent, r_min, r_max, n)?;
        if r_max - r_min < 8.0 * 10f64.ln() * (1.0 - 1e-12) {
            return Err(Error::Domain(format!("exponent grid [{r_min}, {r_max}] spans fewer than 8 decades")));
        }
        Ok(g)
    }

    /// Grid without the span requirement, for spectra that are only resolved
    /// over a short range.
    pub fn resolved(kind: ScaleKind, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(Error::TooFewSamples { needed: MIN_POINTS, got: n });
        }
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::Domain(format!("scale grid needs 0 < lo < hi, got [{lo}, {hi}]")));
        }
        Ok(ScaleGrid { kind, values: geomspace(lo, hi, n) })
    }

    /// Exponent grid `r ∈ [2, r_max]` with 36 points.
    pub fn standard_exponent(r_max: f64) -> Result<Self> {
        Self::exponent(2.0, r_max, 36)
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ln t` at every grid point.
    pub fn ln_scales(&self) -> Vec<f64> {
        match self.kind {
            ScaleKind::Direct => self.values.iter().map(|t| t.ln()).collect(),
            ScaleKind::Exponent => self.values.clone(),
        }
    }

    /// `t` at every grid point (may overflow to `+∞` for huge exponents).
    pub fn scales(&self) -> Vec<f64> {
        match self.kind {
            ScaleKind::Direct => self.values.clone(),
            ScaleKind::Exponent => self.values.iter().map(|r| r.exp()).collect(),
        }
    }
}
