//! Decreasing rearrangements: finite step profiles and analytic models.

mod analytic;
pub mod models;

pub use analytic::{AnalyticProfile, ModelKind, SpectralModel};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::golden_max;
use crate::weight::WeightFunction;

/// Functions of the spectrum that the trace functionals need.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralFn {
    /// `x^p`
    Power(f64),
    /// `e^{-1/(u x)}`
    Heat { u: f64 },
    /// `x e^{-1/(u x)}`
    WeightedHeat { u: f64 },
}

impl SpectralFn {
    pub fn apply(self, x: f64) -> f64 {
        if x <= 0.0 {
            return match self {
                SpectralFn::Power(p) if p == 0.0 => 1.0,
                _ => 0.0,
            };
        }
        match self {
            SpectralFn::Power(p) => x.powf(p),
            SpectralFn::Heat { u } => (-1.0 / (u * x)).exp(),
            SpectralFn::WeightedHeat { u } => x * (-1.0 / (u * x)).exp(),
        }
    }

    /// `ln F(e^{ln_x})`.
    pub fn ln_apply(self, ln_x: f64) -> f64 {
        match self {
            SpectralFn::Power(p) => p * ln_x,
            SpectralFn::Heat { u } => -(-ln_x).exp() / u,
            SpectralFn::WeightedHeat { u } => ln_x - (-ln_x).exp() / u,
        }
    }

    /// `F(c x)` expressed as `c^m G(x)`; returns `(m, G)`.
    pub(crate) fn rescaled(self, c: f64) -> (f64, SpectralFn) {
        match self {
            SpectralFn::Power(p) => (p, self),
            SpectralFn::Heat { u } => (0.0, SpectralFn::Heat { u: u * c }),
            SpectralFn::WeightedHeat { u } => (1.0, SpectralFn::WeightedHeat { u: u * c }),
        }
    }
}

/// A step function `μ` that equals `values[i]` on `[knots[i], knots[i+1])`
/// and vanishes past the last knot.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteProfile {
    knots: Vec<f64>,
    values: Vec<f64>,
    #[serde(skip)]
    prefix: Vec<f64>,
}

impl FiniteProfile {
    /// Builds from cell boundaries and cell values, already in decreasing order.
    pub fn from_steps(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() != values.len() + 1 {
            return Err(Error::LengthMismatch { expected: values.len() + 1, got: knots.len() });
        }
        if knots[0] != 0.0 {
            return Err(Error::Domain("profile knots must start at 0".into()));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) || knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::Domain("profile knots must be finite and strictly increasing".into()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Domain("profile values must be finite and nonnegative".into()));
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Invariant("profile values must be nonincreasing".into()));
        }
        let mut p = FiniteProfile { knots, values, prefix: Vec::new() };
        p.trim_and_index();
        Ok(p)
    }

    fn trim_and_index(&mut self) {
        while self.values.last() == Some(&0.0) {
            self.values.pop();
            self.knots.pop();
        }
        let mut prefix = Vec::with_capacity(self.knots.len());
        prefix.push(0.0);
        for i in 0..self.values.len() {
            prefix.push(prefix[i] + self.values[i] * (self.knots[i + 1] - self.knots[i]));
        }
        self.prefix = prefix;
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// End of the support.
    pub fn support(&self) -> f64 {
        *self.knots.last().expect("knots start at 0")
    }

    fn cell(&self, t: f64) -> Option<usize> {
        if t >= self.support() {
            return None;
        }
        Some(self.knots.partition_point(|&k| k <= t) - 1)
    }

    pub fn mu(&self, t: f64) -> f64 {
        self.cell(t).map_or(0.0, |i| self.values[i])
    }

    pub fn cumulative(&self, t: f64) -> f64 {
        match self.cell(t) {
            None => *self.prefix.last().expect("nonempty"),
            Some(i) => self.prefix[i] + self.values[i] * (t - self.knots[i]),
        }
    }

    pub fn distribution(&self, s: f64) -> f64 {
        let j = self.values.partition_point(|&v| v > s);
        self.knots[j]
    }

    pub fn trace_of(&self, f: SpectralFn) -> f64 {
        self.values
            .iter()
            .zip(self.knots.windows(2))
            .map(|(&v, k)| f.apply(v) * (k[1] - k[0]))
            .sum()
    }

    /// `Σ b_k F(μ_k)` over unit cells, for a spectrum given with multiplicities `b`.
    pub fn weighted_trace_of(&self, f: SpectralFn, b: &[f64]) -> Result<f64> {
        if b.len() != self.values.len() {
            return Err(Error::LengthMismatch { expected: self.values.len(), got: b.len() });
        }
        Ok(self
            .values
            .iter()
            .zip(self.knots.windows(2))
            .zip(b)
            .map(|((&v, k), &bk)| bk * f.apply(v) * (k[1] - k[0]))
            .sum())
    }

    fn scaled(&self, c: f64) -> Self {
        let mut p = FiniteProfile { knots: self.knots.clone(), values: self.values.iter().map(|v| v * c).collect(), prefix: Vec::new() };
        p.trim_and_index();
        p
    }
}

/// The decreasing rearrangement `μ(T, ·)` of an operator or function.
#[derive(Clone, Debug)]
pub enum SingularValueProfile {
    Finite(FiniteProfile),
    Analytic(AnalyticProfile),
}

/// Sorted magnitudes as a step function on unit cells (counting measure).
pub fn mu_from_values(magnitudes: &[f64]) -> Result<SingularValueProfile> {
    mu_from_grid(magnitudes, 1.0)
}

/// Rearrangement of a sampled function whose samples each carry `cell_measure`.
pub fn mu_from_grid(values: &[f64], cell_measure: f64) -> Result<SingularValueProfile> {
    if !(cell_measure > 0.0 && cell_measure.is_finite()) {
        return Err(Error::Domain(format!("cell measure must be positive, got {cell_measure}")));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::Domain(format!("magnitudes must be finite and nonnegative, got {v}")));
    }
    let mut v = values.to_vec();
    // stable, descending
    v.sort_by(|a, b| b.total_cmp(a));
    let knots = (0..=v.len()).map(|i| i as f64 * cell_measure).collect();
    Ok(SingularValueProfile::Finite(FiniteProfile::from_steps(knots, v)?))
}

impl SingularValueProfile {
    pub fn zero() -> Self {
        SingularValueProfile::Finite(FiniteProfile::from_steps(vec![0.0], vec![]).expect("empty profile"))
    }

    /// Value of `μ` at `t` (right-continuous).
    pub fn mu(&self, t: f64) -> f64 {
        match self {
            SingularValueProfile::Finite(p) => p.mu(t),
            SingularValueProfile::Analytic(p) => p.mu(t),
        }
    }

    /// `∫_0^t μ`.
    pub fn cumulative(&self, t: f64) -> f64 {
        match self {
            SingularValueProfile::Finite(p) => p.cumulative(t),
            SingularValueProfile::Analytic(p) => p.cumulative(t),
        }
    }

    /// Measure of `{μ > s}`.
    pub fn distribution(&self, s: f64) -> f64 {
        match self {
            SingularValueProfile::Finite(p) => p.distribution(s),
            SingularValueProfile::Analytic(p) => p.distribution(s),
        }
    }

    /// `τ(F(T))`; `+∞` when the sum or integral diverges.
    pub fn trace_of(&self, f: SpectralFn) -> f64 {
        match self {
            SingularValueProfile::Finite(p) => p.trace_of(f),
            SingularValueProfile::Analytic(p) => p.trace_of(f),
        }
    }

    /// The profile of `c T`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("scale factor must be finite and nonnegative, got {c}")));
        }
        Ok(match self {
            SingularValueProfile::Finite(p) => SingularValueProfile::Finite(p.scaled(c)),
            SingularValueProfile::Analytic(p) => SingularValueProfile::Analytic(p.scaled(c)),
        })
    }

    /// Finite support and bounded values, i.e. a finite-trace projection bound.
    pub fn has_finite_support(&self) -> bool {
        matches!(self, SingularValueProfile::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteProfile> {
        match self {
            SingularValueProfile::Finite(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SingularValueProfile::Finite(p) => format!("finite({} cells)", p.values.len()),
            SingularValueProfile::Analytic(p) => p.id().to_string(),
        }
    }
}

/// `S ≺≺ T`: `∫_0^t μ(S) ≤ ∫_0^t μ(T)` at every probe and at every knot.
pub fn hlp_majorizes(s: &SingularValueProfile, t: &SingularValueProfile, probe: &[f64]) -> bool {
    let mut pts: Vec<f64> = probe.to_vec();
    for p in [s, t] {
        if let SingularValueProfile::Finite(f) = p {
            pts.extend_from_slice(f.knots());
        }
    }
    pts.iter().all(|&x| {
        let (a, b) = (s.cumulative(x), t.cumulative(x));
        a <= b + 1e-12 * a.abs().max(b.abs())
    })
}

/// Marcinkiewicz norm `sup_t ψ(t)^{-1} ∫_0^t μ`, with the point where it is attained.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LorentzNorm {
    pub value: f64,
    /// `0` stands for the limit `t → 0`; `+∞` for a divergent ratio.
    pub argmax: f64,
}

impl LorentzNorm {
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

pub fn lorentz_norm(p: &SingularValueProfile, w: &WeightFunction) -> LorentzNorm {
    match p {
        SingularValueProfile::Finite(f) => lorentz_finite(f, w),
        SingularValueProfile::Analytic(a) => lorentz_analytic(a, w),
    }
}

fn lorentz_finite(p: &FiniteProfile, w: &WeightFunction) -> LorentzNorm {
    if p.values.is_empty() {
        return LorentzNorm { value: 0.0, argmax: 0.0 };
    }
    let mut best = LorentzNorm { value: p.values[0] / w.slope_at_zero(), argmax: 0.0 };
    let ratio = |t: f64| p.cumulative(t) / w.value(t);
    for (i, &k) in p.knots.iter().enumerate().skip(1) {
        let r = p.prefix[i] / w.value(k);
        if r > best.value {
            best = LorentzNorm { value: r, argmax: k };
        }
        // Within a cell the numerator is affine and ψ concave, so the ratio
        // has no interior maximum; refine only if the end slopes disagree.
        let (a, b) = (p.knots[i - 1], k);
        let h = 1e-7 * (b - a);
        let rising_left = a > 0.0 && ratio(a + h) > ratio(a);
        let falling_right = ratio(b - h) > ratio(b);
        if rising_left && falling_right {
            let (x, v) = golden_max(ratio, a, b, 8);
            if v > best.value {
                best = LorentzNorm { value: v, argmax: x };
            }
        }
    }
    best
}

fn lorentz_analytic(p: &AnalyticProfile, w: &WeightFunction) -> LorentzNorm {
    let ratio = |t: f64| p.cumulative(t) / w.value(t);
    let mut best = LorentzNorm { value: p.mu(0.0) / w.slope_at_zero(), argmax: 0.0 };
    let n = 700;
    let (l0, l1) = (1e-8f64.ln(), 1e30f64.ln());
    let mut pts: Vec<f64> = (0..n).map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp()).collect();
    if p.kind() == ModelKind::Sequence {
        // the ratio is maximal at integer knots
        pts = pts.into_iter().map(|t| t.round().max(1.0)).collect();
        pts.extend((1..=64).map(|k| k as f64));
        pts.sort_by(f64::total_cmp);
        pts.dedup();
    }
    let vals: Vec<f64> = pts.iter().map(|&t| ratio(t)).collect();
    let mut imax = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v > vals[imax] {
            imax = i;
        }
    }
    if vals[imax] > best.value {
        best = LorentzNorm { value: vals[imax], argmax: pts[imax] };
    }
    if p.kind() == ModelKind::Continuous {
        let lo = pts[imax.saturating_sub(1)].ln();
        let hi = pts[(imax + 1).min(pts.len() - 1)].ln();
        let (x, v) = golden_max(|l| ratio(l.exp()), lo, hi, 60);
        if v > best.value {
            best = LorentzNorm { value: v, argmax: x.exp() };
        }
    }
    // a ratio still climbing far past the grid is treated as unbounded
    let far = ratio(1e300);
    if !far.is_finite() || far > 2.0 * best.value {
        return LorentzNorm { value: f64::INFINITY, argmax: f64::INFINITY };
    }
    best
}
