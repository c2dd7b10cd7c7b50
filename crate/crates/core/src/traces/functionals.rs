//! The Dixmier-trace functionals sampled on a scale grid.

use serde::Serialize;

use super::grid::{ScaleGrid, ScaleKind};
use super::limit::{estimate_on, LimitEstimate};
use crate::error::{Error, Result};
use crate::numeric::geomspace;
use crate::rearrange::{SingularValueProfile, SpectralFn};
use crate::weight::{c_zeta, WeightFunction};

/// `ψ(t)^{-1} ∫_0^t μ`.
pub fn partial_sum(p: &SingularValueProfile, w: &WeightFunction, g: &ScaleGrid) -> Result<LimitEstimate> {
    let v = g.ln_scales().iter().map(|&l| p.cumulative(l.exp()) / psi_at_ln(w, l)).collect();
    estimate_on(g, v)
}

fn psi_at_ln(w: &WeightFunction, l: f64) -> f64 {
    w.ln_value_at_ln(l).exp()
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffResult {
    pub estimate: LimitEstimate,
    /// `(ε, ψ(t) ≤ C t^ε on the grid)` for ε ∈ {0.5, 0.1}.
    pub precondition: Vec<(f64, bool)>,
}

impl CutoffResult {
    pub fn precondition_ok(&self) -> bool {
        self.precondition.iter().all(|x| x.1)
    }
}

/// `ψ(t)^{-1} τ(T χ_{(1/t, ∞)}(T))`, i.e. the integral of μ over `{μ > 1/t}`.
pub fn cutoff(p: &SingularValueProfile, w: &WeightFunction, g: &ScaleGrid) -> Result<CutoffResult> {
    let ls = g.ln_scales();
    let v = ls.iter().map(|&l| p.cumulative(p.distribution((-l).exp())) / psi_at_ln(w, l)).collect();
    let precondition = [0.5, 0.1]
        .iter()
        .map(|&eps| {
            // ψ(t) t^{-ε} must not grow over the last third of the grid
            let r: Vec<f64> = ls.iter().map(|&l| w.ln_value_at_ln(l) - eps * l).collect();
            let start = r.len() - r.len() / 3;
            let peak = r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (eps, r[start..].windows(2).all(|x| x[1] <= x[0] + 1e-12) || r[r.len() - 1] < peak)
        })
        .collect();
    Ok(CutoffResult { estimate: estimate_on(g, v)?, precondition })
}

fn twisted_trace(p: &SingularValueProfile, f: SpectralFn, b: Option<&[f64]>) -> Result<f64> {
    match b {
        None => Ok(p.trace_of(f)),
        Some(b) => match p {
            SingularValueProfile::Finite(fp) => fp.weighted_trace_of(f, b),
            SingularValueProfile::Analytic(_) => {
                Err(Error::Domain("diagonal weights b need a finite spectrum".into()))
            }
        },
    }
}

/// `C_ζ(ψ) τ(B T^{1+1/r}) / ψ(e^r)` on an exponent grid.
pub fn zeta(p: &SingularValueProfile, w: &WeightFunction, g: &ScaleGrid, b: Option<&[f64]>) -> Result<LimitEstimate> {
    if g.kind() != ScaleKind::Exponent {
        return Err(Error::Domain("the zeta functional is sampled on an exponent grid".into()));
    }
    let c = c_zeta(w)?;
    zeta_with_constant(p, w, g, b, c)
}

pub(crate) fn zeta_with_constant(
    p: &SingularValueProfile,
    w: &WeightFunction,
    g: &ScaleGrid,
    b: Option<&[f64]>,
    c: f64,
) -> Result<LimitEstimate> {
    let mut v = Vec::with_capacity(g.len());
    for &r in g.values() {
        v.push(c * twisted_trace(p, SpectralFn::Power(1.0 + 1.0 / r), b)? / psi_at_ln(w, r));
    }
    estimate_on(g, v)
}

#[derive(Clone, Debug, Serialize)]
pub struct HeatResult {
    pub estimate: LimitEstimate,
    /// `[τ(T e^{-1/(λT)}) − τ(T e^{-1/T})] / ψ(λ)`, when no weights are given.
    pub closed_form: Option<Vec<f64>>,
    pub max_rel_gap: Option<f64>,
}

impl HeatResult {
    /// Quadrature agrees with the closed form to `1e-4` relative.
    pub fn cross_check_ok(&self) -> bool {
        self.max_rel_gap.map_or(true, |g| g <= 1e-4)
    }
}

const NODES_PER_DECADE: f64 = 64.0;

/// `ψ(λ)^{-1} ∫_1^λ τ(B e^{-1/(tT)}) dt/t²`.
///
/// The outer integral is a trapezoid rule in `u = ln t` with 64 nodes per
/// decade, accumulated once along the whole grid.
pub fn heat(p: &SingularValueProfile, w: &WeightFunction, g: &ScaleGrid, b: Option<&[f64]>) -> Result<HeatResult> {
    let ls = g.ln_scales();
    if ls[0] < 0.0 {
        return Err(Error::Domain("heat functional needs λ >= 1".into()));
    }
    let top = ls[ls.len() - 1];
    let step = 10f64.ln() / NODES_PER_DECADE;
    let mut nodes: Vec<f64> = (0..).map(|i| i as f64 * step).take_while(|&u| u < top).collect();
    nodes.extend_from_slice(&ls);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let mut integrand = Vec::with_capacity(nodes.len());
    for &u in &nodes {
        integrand.push(twisted_trace(p, SpectralFn::Heat { u: u.exp() }, b)? * (-u).exp());
    }
    let mut acc = 0.0;
    let mut cum = vec![0.0; nodes.len()];
    for i in 1..nodes.len() {
        acc += 0.5 * (integrand[i] + integrand[i - 1]) * (nodes[i] - nodes[i - 1]);
        cum[i] = acc;
    }
    let vals: Vec<f64> = ls
        .iter()
        .map(|&l| {
            let i = nodes.partition_point(|&u| u < l);
            cum[i] / psi_at_ln(w, l)
        })
        .collect();
    let (closed_form, max_rel_gap) = if b.is_none() {
        let base = p.trace_of(SpectralFn::WeightedHeat { u: 1.0 });
        let cf: Vec<f64> =
            ls.iter().map(|&l| (p.trace_of(SpectralFn::WeightedHeat { u: l.exp() }) - base) / psi_at_ln(w, l)).collect();
        let gap = vals
            .iter()
            .zip(&cf)
            .map(|(a, b)| if a == b { 0.0 } else { (a - b).abs() / b.abs().max(1e-300) })
            .fold(0.0, f64::max);
        (Some(cf), Some(gap))
    } else {
        (None, None)
    };
    Ok(HeatResult { estimate: estimate_on(g, vals)?, closed_form, max_rel_gap })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HeatMembership {
    pub sup: f64,
    pub finite: bool,
}

/// `sup_λ ψ(λ)^{-1} ∫_0^λ τ(e^{-1/(uT)}) du/u² = sup_λ τ(T e^{-1/(λT)}) / ψ(λ)`.
pub fn heat_membership(p: &SingularValueProfile, w: &WeightFunction) -> HeatMembership {
    let ratio = |lam: f64| p.trace_of(SpectralFn::WeightedHeat { u: lam }) / w.value(lam);
    let sup = geomspace(1e-6, 1e30, 400).into_iter().map(ratio).fold(0.0, f64::max);
    let far = ratio(1e300);
    if !far.is_finite() || far > 2.0 * sup.max(f64::MIN_POSITIVE) && far > 0.0 {
        return HeatMembership { sup: f64::INFINITY, finite: false };
    }
    HeatMembership { sup, finite: true }
}

/// `λ ↦ ψ(λ)^{-1} ∫_0^λ f dψ` for `f` sampled at increasing `scales`.
///
/// Trapezoid rule with respect to `dψ`, so constants are reproduced
/// exactly; below the first scale `f` is taken constant.
pub fn twisted_cesaro(scales: &[f64], f: &[f64], w: &WeightFunction) -> Result<Vec<f64>> {
    if scales.len() != f.len() {
        return Err(Error::LengthMismatch { expected: scales.len(), got: f.len() });
    }
    if scales.is_empty() {
        return Ok(Vec::new());
    }
    let psi: Vec<f64> = scales.iter().map(|&t| w.value(t)).collect();
    let mut acc = f[0] * psi[0];
    let mut out = vec![f[0]];
    for i in 1..scales.len() {
        acc += 0.5 * (f[i] + f[i - 1]) * (psi[i] - psi[i - 1]);
        out.push(acc / psi[i]);
    }
    Ok(out)
}
