//! Built-in spectral models.

use std::sync::Arc;

use super::{AnalyticProfile, ModelKind, SingularValueProfile, SpectralFn, SpectralModel};
use crate::numeric::special;
use crate::weight::WeightFunction;

/// `μ_k = c / k`.
#[derive(Debug)]
pub struct Harmonic {
    pub c: f64,
}

impl SpectralModel for Harmonic {
    fn kind(&self) -> ModelKind {
        ModelKind::Sequence
    }
    fn ln_mu(&self, v: f64) -> f64 {
        self.c.ln() - v
    }
    fn cumulative(&self, t: f64) -> Option<f64> {
        let n = t.floor();
        Some(self.c * (special::harmonic(n) + (t - n) / (n + 1.0)))
    }
    fn distribution(&self, s: f64) -> Option<f64> {
        Some(((self.c / s).ceil() - 1.0).max(0.0))
    }
    fn trace_of(&self, f: SpectralFn) -> Option<f64> {
        match f {
            // Σ e^{-k/(cu)} is geometric
            SpectralFn::Heat { u } => Some(1.0 / (1.0 / (self.c * u)).exp_m1()),
            // Σ x^k / k = -ln(1 - x)
            SpectralFn::WeightedHeat { u } => Some(-self.c * (-(-1.0 / (self.c * u)).exp_m1()).ln()),
            SpectralFn::Power(p) if p <= 1.0 => Some(f64::INFINITY),
            SpectralFn::Power(_) => None,
        }
    }
}

/// `μ(s) = min(1, 1/s)`.
#[derive(Debug)]
pub struct HarmonicContinuous;

impl SpectralModel for HarmonicContinuous {
    fn kind(&self) -> ModelKind {
        ModelKind::Continuous
    }
    fn ln_mu(&self, v: f64) -> f64 {
        (-v).min(0.0)
    }
    fn cumulative(&self, t: f64) -> Option<f64> {
        Some(if t <= 1.0 { t } else { 1.0 + t.ln() })
    }
    fn distribution(&self, s: f64) -> Option<f64> {
        Some(if s >= 1.0 { 0.0 } else { 1.0 / s })
    }
    fn trace_of(&self, f: SpectralFn) -> Option<f64> {
        match f {
            SpectralFn::Power(p) if p > 1.0 => Some(1.0 + 1.0 / (p - 1.0)),
            SpectralFn::Power(_) => Some(f64::INFINITY),
            _ => None,
        }
    }
}

/// `μ_k = log(k + 2) / k`.
#[derive(Debug)]
pub struct LogHarmonic;

impl SpectralModel for LogHarmonic {
    fn kind(&self) -> ModelKind {
        ModelKind::Sequence
    }
    fn ln_mu(&self, v: f64) -> f64 {
        // ln(e^v + 2) without overflow
        (v + (2.0 * (-v).exp()).ln_1p()).ln() - v
    }
}

/// `μ = ψ'`, so that `∫_0^t μ = ψ(t)`.
#[derive(Debug)]
pub struct PsiPrime {
    pub w: WeightFunction,
}

impl SpectralModel for PsiPrime {
    fn kind(&self) -> ModelKind {
        ModelKind::Continuous
    }
    fn ln_mu(&self, v: f64) -> f64 {
        if v < -700.0 {
            return self.w.slope_at_zero().ln();
        }
        if v < 700.0 {
            return self.w.deriv(v.exp()).ln();
        }
        self.w.ln_value_at_ln(v) + self.w.elasticity_at_ln(v).ln() - v
    }
    fn cumulative(&self, t: f64) -> Option<f64> {
        Some(self.w.value(t))
    }
}

/// `μ = 2/e` on `[0, e]`, then `(2 + sin(log log t)) / t`.
///
/// The normalized partial sums oscillate between roughly `2 ± 1/√2` on a
/// `log log` time scale, so the operator is not measurable.
#[derive(Debug)]
pub struct LogLogOscillation;

impl SpectralModel for LogLogOscillation {
    fn kind(&self) -> ModelKind {
        ModelKind::Continuous
    }
    fn ln_mu(&self, v: f64) -> f64 {
        if v <= 1.0 {
            2f64.ln() - 1.0
        } else {
            (2.0 + v.ln().sin()).ln() - v
        }
    }
    fn cumulative(&self, t: f64) -> Option<f64> {
        let e = std::f64::consts::E;
        if t <= e {
            return Some(2.0 * t / e);
        }
        let u = t.ln();
        let lu = u.ln();
        Some(2.0 + 2.0 * (u - 1.0) + (u * (lu.sin() - lu.cos()) + 1.0) / 2.0)
    }
}

fn wrap(id: &str, m: impl SpectralModel + 'static) -> SingularValueProfile {
    SingularValueProfile::Analytic(AnalyticProfile::new(id, Arc::new(m)))
}

pub fn harmonic(c: f64) -> SingularValueProfile {
    if c == 1.0 {
        wrap("harmonic", Harmonic { c })
    } else {
        wrap(&format!("harmonic[c={c}]"), Harmonic { c })
    }
}

pub fn harmonic_continuous() -> SingularValueProfile {
    wrap("harmonic_continuous", HarmonicContinuous)
}

pub fn log_harmonic() -> SingularValueProfile {
    wrap("log_harmonic", LogHarmonic)
}

pub fn psi_prime(w: &WeightFunction) -> SingularValueProfile {
    wrap(&format!("psi_prime[{}]", w.label()), PsiPrime { w: w.clone() })
}

pub fn loglog_oscillation() -> SingularValueProfile {
    wrap("loglog_oscillation", LogLogOscillation)
}
