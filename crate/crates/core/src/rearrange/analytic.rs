//! Profiles given by a closed-form model rather than stored values.

use std::fmt::Debug;
use std::sync::Arc;

use super::SpectralFn;
use crate::numeric::quad::{integrate, integrate_ln_tail};

/// Terms below this index are summed directly; the rest by Euler–Maclaurin.
const DIRECT_TERMS: f64 = 2048.0;
const REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// `μ = μ_k` on `[k-1, k)`, `k = 1, 2, ...`
    Sequence,
    /// `μ` is a continuous decreasing function on `(0, ∞)`.
    Continuous,
}

/// A decreasing spectral model described through `ln μ`.
///
/// `ln_mu(v)` is `ln μ_k` at `v = ln k` for sequences, `ln μ(t)` at `v = ln t`
/// for continuous models; it must be smooth in `v` for sequence models since
/// Euler–Maclaurin interpolates between integer points. The optional methods
/// return closed forms; `None` selects generic quadrature.
pub trait SpectralModel: Send + Sync + Debug {
    fn kind(&self) -> ModelKind;
    fn ln_mu(&self, v: f64) -> f64;
    fn cumulative(&self, _t: f64) -> Option<f64> {
        None
    }
    fn distribution(&self, _s: f64) -> Option<f64> {
        None
    }
    fn trace_of(&self, _f: SpectralFn) -> Option<f64> {
        None
    }
}

#[derive(Clone, Debug)]
pub struct AnalyticProfile {
    id: String,
    model: Arc<dyn SpectralModel>,
    scale: f64,
    closed_forms: bool,
}

impl AnalyticProfile {
    pub fn new(id: impl Into<String>, model: Arc<dyn SpectralModel>) -> Self {
        AnalyticProfile { id: id.into(), model, scale: 1.0, closed_forms: true }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> ModelKind {
        self.model.kind()
    }

    /// Same profile with closed forms switched off, for cross-checks.
    pub fn generic(&self) -> Self {
        AnalyticProfile { closed_forms: false, ..self.clone() }
    }

    pub(crate) fn scaled(&self, c: f64) -> Self {
        AnalyticProfile { scale: self.scale * c, ..self.clone() }
    }

    fn ln_mu(&self, v: f64) -> f64 {
        self.model.ln_mu(v) + self.scale.ln()
    }

    pub fn mu(&self, t: f64) -> f64 {
        match self.kind() {
            ModelKind::Sequence => self.ln_mu((t.floor() + 1.0).ln()).exp(),
            ModelKind::Continuous => self.ln_mu(t.ln()).exp(),
        }
    }

    pub fn cumulative(&self, t: f64) -> f64 {
        if self.scale == 0.0 || t <= 0.0 {
            return 0.0;
        }
        if self.closed_forms {
            if let Some(c) = self.model.cumulative(t) {
                return self.scale * c;
            }
        }
        let phi = |v: f64| self.ln_mu(v);
        match self.kind() {
            ModelKind::Sequence => {
                let n = t.floor();
                let frac = t - n;
                let head = sequence_sum(&phi, n);
                if frac > 0.0 {
                    head + frac * phi((n + 1.0).ln()).exp()
                } else {
                    head
                }
            }
            ModelKind::Continuous => {
                let near = integrate(|s| self.mu(s), 0.0, t.min(1.0), REL_TOL, 0.0).value;
                if t <= 1.0 {
                    near
                } else {
                    near + integrate(|v| (phi(v) + v).exp(), 0.0, t.ln(), REL_TOL, 0.0).value
                }
            }
        }
    }

    pub fn distribution(&self, s: f64) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        if self.closed_forms {
            if let Some(d) = self.model.distribution(s / self.scale) {
                return d;
            }
        }
        let ls = s.ln();
        match self.kind() {
            ModelKind::Sequence => {
                // number of k >= 1 with μ_k > s
                let above = |k: f64| self.ln_mu(k.ln()) > ls;
                if !above(1.0) {
                    return 0.0;
                }
                let mut hi = 2.0;
                while above(hi) {
                    hi *= 2.0;
                    if !hi.is_finite() {
                        return f64::INFINITY;
                    }
                }
                let mut lo = hi / 2.0;
                // lo above, hi not
                while hi - lo > 1.0 && hi - lo > lo * 1e-15 {
                    let mid = (0.5 * (lo + hi)).floor();
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if above(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
            ModelKind::Continuous => {
                let (mut lo, mut hi) = (-745.0, 1.0);
                while self.ln_mu(hi) > ls {
                    hi *= 2.0;
                    if hi > 1e6 {
                        return f64::INFINITY;
                    }
                }
                if self.ln_mu(lo) <= ls {
                    return 0.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if self.ln_mu(mid) > ls {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi.exp()
            }
        }
    }

    pub fn trace_of(&self, f: SpectralFn) -> f64 {
        if self.scale == 0.0 {
            return 0.0;
        }
        let (m, g) = f.rescaled(self.scale);
        if self.closed_forms {
            if let Some(v) = self.model.trace_of(g) {
                return self.scale.powf(m) * v;
            }
        }
        let phi = |v: f64| f.ln_apply(self.ln_mu(v));
        match self.kind() {
            ModelKind::Sequence => sequence_sum(&phi, f64::INFINITY),
            ModelKind::Continuous => {
                let near = integrate(|s| f.apply(self.mu(s)), 0.0, 1.0, REL_TOL, 0.0).value;
                let tail = integrate_ln_tail(|v| phi(v) + v, 0.0, REL_TOL);
                if tail.diverged {
                    f64::INFINITY
                } else {
                    near + tail.value
                }
            }
        }
    }
}

/// `Σ_{k=1}^{n} exp(φ(ln k))` for integer-valued `n` (possibly infinite).
fn sequence_sum(phi: &dyn Fn(f64) -> f64, n: f64) -> f64 {
    if n < 1.0 {
        return 0.0;
    }
    let term = |k: f64| phi(k.ln()).exp();
    if n <= DIRECT_TERMS {
        return (1..=n as u64).map(|k| term(k as f64)).sum();
    }
    let k0 = DIRECT_TERMS;
    let head: f64 = (1..k0 as u64).map(|k| term(k as f64)).sum();
    // f'(x) = f(x) φ'(ln x) / x
    let dterm = |x: f64| {
        let v = x.ln();
        let h = 1e-5;
        term(x) * (phi(v + h) - phi(v - h)) / (2.0 * h) / x
    };
    let v0 = k0.ln();
    if n.is_infinite() {
        let tail = integrate_ln_tail(|v| phi(v) + v, v0, REL_TOL);
        if tail.diverged {
            return f64::INFINITY;
        }
        head + tail.value + 0.5 * term(k0) - dterm(k0) / 12.0
    } else {
        let body = integrate(|v| (phi(v) + v).exp(), v0, n.ln(), REL_TOL, 0.0).value;
        head + body + 0.5 * (term(k0) + term(n)) + (dterm(n) - dterm(k0)) / 12.0
    }
}
