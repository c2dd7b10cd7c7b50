//! `L^p` profiles of operators and the two extrapolation norms built on them.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{geomspace, quad::integrate_ln_tail};
use crate::rearrange::{lorentz_norm, models::psi_prime, SingularValueProfile, SpectralFn};
use crate::weight::{ConditionVerdict, TailGrid, WeightFunction};

/// Exponents `p > 1`, log-spaced in `p - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct PGrid {
    p: Vec<f64>,
}

impl PGrid {
    /// `p - 1` over `[1e-3, 10]`, 48 points.
    pub fn standard() -> Self {
        PGrid { p: geomspace(1e-3, 10.0, 48).into_iter().map(|e| 1.0 + e).collect() }
    }

    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 40 {
            return Err(Error::TooFewSamples { needed: 40, got: p.len() });
        }
        if p.iter().any(|&x| !(x > 1.0 && x.is_finite())) || p.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("p grid must be increasing and above 1".into()));
        }
        if p[0] - 1.0 > 1e-3 * (1.0 + 1e-9) || p[p.len() - 1] - 1.0 < 10.0 * (1.0 - 1e-9) {
            return Err(Error::Domain("p grid must cover p - 1 in [1e-3, 10]".into()));
        }
        Ok(PGrid { p })
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }
}

/// `‖T‖_q = τ(|T|^q)^{1/q}`; `+∞` when the trace diverges.
pub fn lp_norm(p: &SingularValueProfile, q: f64) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::Domain(format!("lp_norm needs q > 1, got {q}")));
    }
    Ok(p.trace_of(SpectralFn::Power(q)).powf(1.0 / q))
}

/// `‖ψ'‖_q`; `+∞` when `ψ'` is not `q`-integrable.
pub fn dpsi_lp(w: &WeightFunction, q: f64) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::Domain(format!("dpsi_lp needs q > 1, got {q}")));
    }
    Ok(psi_prime(w).trace_of(SpectralFn::Power(q)).powf(1.0 / q))
}

/// `ψ(e^{1/(p-1)})`.
fn psi_exp(w: &WeightFunction, p: f64) -> f64 {
    w.ln_value_at_ln(1.0 / (p - 1.0)).exp()
}

/// Weight-side quantities on a p-grid, reusable across profiles.
#[derive(Clone, Debug)]
pub struct WeightNorms {
    w: WeightFunction,
    p: Vec<f64>,
    psi_exp: Vec<f64>,
    dpsi: Vec<f64>,
}

impl WeightNorms {
    pub fn new(w: &WeightFunction, grid: &PGrid) -> Self {
        let p = grid.values().to_vec();
        let psi_exp = p.iter().map(|&q| psi_exp(w, q)).collect();
        let dpsi = p.iter().map(|&q| dpsi_lp(w, q).expect("q > 1")).collect();
        WeightNorms { w: w.clone(), p, psi_exp, dpsi }
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn dpsi(&self) -> &[f64] {
        &self.dpsi
    }
}

/// A supremum over `p`, with the exponent where it was attained
/// (`+∞` for the limit `p → ∞`).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PSup {
    pub value: f64,
    pub argmax: f64,
}

fn sup_over(p: &[f64], vals: &[f64], at_infinity: f64) -> PSup {
    let mut best = PSup { value: at_infinity, argmax: f64::INFINITY };
    for (&q, &v) in p.iter().zip(vals) {
        if v > best.value || v.is_nan() {
            best = PSup { value: v, argmax: q };
        }
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalFunctions {
    pub t: Vec<f64>,
    /// `φ_ψ(t) = sup_p t^{1/p} / ψ(e^{1/(p-1)})`
    pub lower: Vec<f64>,
    /// `φ^ψ(t) = sup_p t^{1/p} / ‖ψ'‖_p`
    pub upper: Vec<f64>,
    /// `ψ(t) sup_p t^{1/p - 1} / ‖ψ'‖_p`
    pub eqconds_ratio: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtrapolationReport {
    /// `(p, ‖T‖_p)`
    pub eta_samples: Vec<(f64, f64)>,
    pub lower_ratios: Vec<f64>,
    pub upper_ratios: Vec<f64>,
    pub frak_lower: PSup,
    pub frak_upper: PSup,
    pub lorentz: f64,
    /// `max{e, ψ(1)/ψ'(1)}`
    pub sandwich_constant: f64,
    pub sandwich_ok: bool,
    pub fundamental: FundamentalFunctions,
}

pub fn frak_norms(p: &SingularValueProfile, w: &WeightFunction, grid: &PGrid) -> ExtrapolationReport {
    frak_norms_with(p, &WeightNorms::new(w, grid))
}

/// As [`frak_norms`], with the weight-side norms precomputed.
pub fn frak_norms_with(p: &SingularValueProfile, wn: &WeightNorms) -> ExtrapolationReport {
    let w = &wn.w;
    let eta: Vec<f64> = wn.p.iter().map(|&q| lp_norm(p, q).expect("q > 1")).collect();
    let lower_ratios: Vec<f64> = eta.iter().zip(&wn.psi_exp).map(|(a, b)| a / b).collect();
    let upper_ratios: Vec<f64> = eta.iter().zip(&wn.dpsi).map(|(a, b)| a / b).collect();
    // p → ∞: ‖T‖_∞ = μ(0), ψ(e^0) = ψ(1), ‖ψ'‖_∞ = ψ'(0)
    let mu0 = p.mu(0.0);
    let frak_lower = sup_over(&wn.p, &lower_ratios, mu0 / w.value(1.0));
    let frak_upper = sup_over(&wn.p, &upper_ratios, mu0 / w.slope_at_zero());
    let lorentz = lorentz_norm(p, w).value;
    let sandwich_constant = E.max(w.value(1.0) / w.deriv(1.0));
    let tol = 1.0 + 1e-9;
    let upper_ok = frak_upper.value <= lorentz * tol;
    let lower_ok = !frak_lower.value.is_finite() || lorentz <= sandwich_constant * frak_lower.value * tol;
    let embed_ok = frak_upper.value <= E * frak_lower.value * tol;
    ExtrapolationReport {
        eta_samples: wn.p.iter().cloned().zip(eta).collect(),
        lower_ratios,
        upper_ratios,
        frak_lower,
        frak_upper,
        lorentz,
        sandwich_constant,
        sandwich_ok: upper_ok && lower_ok && embed_ok,
        fundamental: fundamental_with(wn, &geomspace(1e-2, 1e10, 25)),
    }
}

pub fn fundamental_functions(w: &WeightFunction, t_grid: &[f64]) -> FundamentalFunctions {
    fundamental_with(&WeightNorms::new(w, &PGrid::standard()), t_grid)
}

fn fundamental_with(wn: &WeightNorms, t_grid: &[f64]) -> FundamentalFunctions {
    let w = &wn.w;
    let mut lower = Vec::with_capacity(t_grid.len());
    let mut upper = Vec::with_capacity(t_grid.len());
    let mut ratio = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let lo = wn.p.iter().zip(&wn.psi_exp).map(|(&q, &d)| t.powf(1.0 / q) / d).fold(1.0 / w.value(1.0), f64::max);
        let up = wn.p.iter().zip(&wn.dpsi).map(|(&q, &d)| t.powf(1.0 / q) / d).fold(1.0 / w.slope_at_zero(), f64::max);
        lower.push(lo);
        upper.push(up);
        ratio.push(w.value(t) / t * up);
    }
    FundamentalFunctions { t: t_grid.to_vec(), lower, upper, eqconds_ratio: ratio }
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualityReport {
    /// `sup_p ‖ψ'‖_p / ψ(e^{1/(p-1)})` over the grid.
    pub conds2_iii_sup: f64,
    pub conds2_iii: ConditionVerdict,
    /// `(ε, R(ε))` with `R(ε) = ψ(e^{1/ε})^{-1} ∫_{e^{1/ε}}^∞ ψ'^{1+ε}`.
    pub trivial_ratios: Vec<(f64, f64)>,
    pub trivial_test: ConditionVerdict,
    /// Largest `ρ` for which `ψ(exp(t^ρ))` is concave.
    pub propeq_rho: Option<f64>,
    /// `δ` values for which `t^{-δ} ψ(t)` is eventually decreasing.
    pub propeq_delta_ok: Vec<(f64, bool)>,
    pub propeq_hypotheses: ConditionVerdict,
}

pub fn equality_criteria(w: &WeightFunction) -> EqualityReport {
    let grid = PGrid::standard();
    let wn = WeightNorms::new(w, &grid);

    // eps = p - 1 decreasing to 1e-3; bounded means no blow-up in the last decade
    let ratios: Vec<f64> = wn.dpsi.iter().zip(&wn.psi_exp).map(|(a, b)| a / b).collect();
    let conds2_iii_sup = ratios.iter().cloned().fold(0.0, f64::max);
    let near = wn.p.iter().zip(&ratios).filter(|(q, _)| **q - 1.0 <= 1e-2).map(|(_, r)| *r).fold(0.0, f64::max);
    let far = wn.p.iter().zip(&ratios).filter(|(q, _)| **q - 1.0 > 1e-2).map(|(_, r)| *r).fold(0.0, f64::max);
    let conds2_iii = if !conds2_iii_sup.is_finite() {
        ConditionVerdict::FailsDiverges
    } else if near <= 2.0 * far {
        ConditionVerdict::Holds
    } else {
        ConditionVerdict::FailsDiverges
    };

    let trivial_ratios: Vec<(f64, f64)> = [1.0, 0.5, 0.2, 0.1, 0.05].iter().map(|&eps| (eps, trivial_ratio(w, eps))).collect();
    let base = trivial_ratios[..3].iter().map(|r| r.1).fold(0.0, f64::max);
    let last = trivial_ratios[4].1;
    let trivial_test = if last.is_finite() && last <= 2.0 * base {
        ConditionVerdict::Holds
    } else {
        ConditionVerdict::FailsDiverges
    };

    let propeq_rho = [1.0, 0.5, 0.25, 0.125].into_iter().find(|&rho| exp_composition_concave(w, rho));
    let tail = TailGrid::standard();
    let ln_t = tail.ln_t();
    let half = &ln_t[ln_t.len() / 2..];
    let propeq_delta_ok: Vec<(f64, bool)> =
        [0.1, 0.01].iter().map(|&d| (d, half.iter().all(|&l| w.elasticity_at_ln(l) < d))).collect();
    let propeq_hypotheses = if propeq_rho.is_some() && propeq_delta_ok.iter().all(|x| x.1) {
        ConditionVerdict::Holds
    } else {
        ConditionVerdict::FailsLimit
    };

    EqualityReport { conds2_iii_sup, conds2_iii, trivial_ratios, trivial_test, propeq_rho, propeq_delta_ok, propeq_hypotheses }
}

fn trivial_ratio(w: &WeightFunction, eps: f64) -> f64 {
    let v0 = 1.0 / eps;
    let ln_dpsi = |v: f64| w.ln_value_at_ln(v) + w.elasticity_at_ln(v).ln() - v;
    let tail = integrate_ln_tail(|v| (1.0 + eps) * ln_dpsi(v) + v, v0, 1e-10);
    if tail.diverged {
        return f64::INFINITY;
    }
    tail.value / w.ln_value_at_ln(v0).exp()
}

/// Concavity of `t ↦ ψ(exp(t^ρ))` on `t ∈ [1e-8, 1e40]` through nonincreasing
/// divided-difference slopes.
fn exp_composition_concave(w: &WeightFunction, rho: f64) -> bool {
    let t = geomspace(1e-8, 1e40, 800);
    let g: Vec<f64> = t.iter().map(|&x| w.ln_value_at_ln(x.powf(rho)).exp()).collect();
    if g.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let slopes: Vec<f64> = t.windows(2).zip(g.windows(2)).map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0])).collect();
    slopes.windows(2).all(|s| s[1] <= s[0] + 1e-9 * s[0].abs().max(s[1].abs()))
}
