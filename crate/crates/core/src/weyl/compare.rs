use std::f64::consts::{FRAC_PI_4, PI};

use serde::Serialize;

use super::symbol::{SymbolDescriptor, SymbolGrid};
use super::{eigenvalues, quantize, trace_identity_check, Spectrum, TraceIdentity};
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, integrate_ln_tail};
use crate::numeric::{geomspace, lsq_slope};
use crate::rearrange::{lorentz_norm, mu_from_grid, mu_from_values, LorentzNorm, SingularValueProfile};
use crate::traces::{heat, limit_estimate, partial_sum, relative_gap, LimitEstimate, ScaleGrid, ScaleKind};
use crate::weight::{c_zeta, WeightFunction};

/// Points of the local-slope fit and of the resolved functional grids.
const WINDOW_POINTS: usize = 24;

/// Functionals of one side, sampled on its resolved range `t ∈ [1, hi]`.
#[derive(Clone, Debug, Serialize)]
pub struct SideFunctionals {
    pub partial_sum: LimitEstimate,
    pub heat: LimitEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct DixmierReport {
    pub symbol: String,
    pub l: f64,
    pub n: usize,
    pub spectrum: Spectrum,
    pub hermitization_defect: f64,
    pub boundary_warning: bool,
    pub trace_identity: TraceIdentity,
    /// Eigenvalues above `10 λ_max ε_mach N`.
    pub n_floor: usize,
    /// `(2π)^{-1}` times the area of the superlevel sets that fit in the box.
    pub n_box: f64,
    /// Upper end of the operator-side range, `max(min(n_floor, n_box), 10)`.
    pub operator_range: f64,
    pub symbol_range: f64,
    /// Slope of `Σ_{k<t} λ_k` against `ψ(t)` over the last decade of the range.
    pub operator_side: f64,
    /// Same for `(2π)^{-1} ∫_0^{2πt} μ_f`.
    pub symbol_side: f64,
    pub zeta_side: f64,
    pub zeta: LimitEstimate,
    pub gap: f64,
    /// Largest gap between the zeta side and either of the other two.
    pub zeta_gap: f64,
    pub lorentz_operator: LorentzNorm,
    pub lorentz_symbol: LorentzNorm,
    pub operator_functionals: SideFunctionals,
    pub symbol_functionals: SideFunctionals,
}

/// `L` and `N` of the quantization.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Quantization {
    pub l: f64,
    pub n: usize,
}

fn local_slope(p: &SingularValueProfile, w: &WeightFunction, hi: f64) -> f64 {
    let t = geomspace(hi / 10.0, hi, WINDOW_POINTS);
    let x: Vec<f64> = t.iter().map(|&s| w.value(s)).collect();
    let y: Vec<f64> = t.iter().map(|&s| p.cumulative(s)).collect();
    lsq_slope(&x, &y)
}

fn side_functionals(p: &SingularValueProfile, w: &WeightFunction, hi: f64) -> Result<SideFunctionals> {
    let g = ScaleGrid::resolved(ScaleKind::Direct, 1.0, hi.max(2.0), WINDOW_POINTS)?;
    Ok(SideFunctionals { partial_sum: partial_sum(p, w, &g)?, heat: heat(p, w, &g, None)?.estimate })
}

/// Operator side against symbol side for a positive symbol.
///
/// Both sides are expressed in eigenvalue-count units: the symbol
/// rearrangement is taken with cell measure `h²/(2π)`. Each side is only
/// trusted up to its resolved range, so the Dixmier value is read off as the
/// local slope of the cumulative sum against `ψ` over the last decade of that
/// range rather than as a ratio at the largest scale.
pub fn dixmier_compare(d: &SymbolDescriptor, w: &WeightFunction, g: &ScaleGrid, q: Quantization) -> Result<DixmierReport> {
    c_zeta(w)?;
    let grid = SymbolGrid::sample(d, q.l, q.n)?;
    if let Some(v) = grid.values().iter().find(|v| **v < 0.0) {
        return Err(Error::Domain(format!("symbol {} takes the negative value {v}", d.id)));
    }
    let op = quantize(&grid)?;
    let spectrum = eigenvalues(&op)?;
    let trace_identity = trace_identity_check(&grid, &op);

    let lmax = spectrum.values.first().cloned().unwrap_or(0.0);
    let floor = 10.0 * lmax * f64::EPSILON * q.n as f64;
    let n_floor = spectrum.values.iter().filter(|v| **v > floor).count();
    let bmax = grid.boundary_max();
    let inside = grid.values().iter().filter(|v| **v > bmax).count();
    let n_box = inside as f64 * grid.cell_area() / (2.0 * PI);
    let operator_range = (n_floor as f64).min(n_box).max(10.0);
    let symbol_range = n_box.max(10.0);

    let op_profile = mu_from_values(&spectrum.values)?;
    let sym_profile = mu_from_grid(grid.values(), grid.cell_area() / (2.0 * PI))?;
    let operator_side = local_slope(&op_profile, w, operator_range);
    let symbol_side = local_slope(&sym_profile, w, symbol_range);
    let zeta = symbol_zeta(&grid, w, g)?;
    let zeta_side = zeta.value;

    Ok(DixmierReport {
        symbol: d.id.clone(),
        l: q.l,
        n: q.n,
        hermitization_defect: op.hermitization_defect,
        boundary_warning: op.boundary_warning,
        trace_identity,
        n_floor,
        n_box,
        operator_range,
        symbol_range,
        operator_side,
        symbol_side,
        zeta_side,
        gap: relative_gap(operator_side, symbol_side),
        zeta_gap: relative_gap(operator_side, zeta_side).max(relative_gap(symbol_side, zeta_side)),
        lorentz_operator: lorentz_norm(&op_profile, w),
        lorentz_symbol: lorentz_norm(&sym_profile, w),
        operator_functionals: side_functionals(&op_profile, w, operator_range)?,
        symbol_functionals: side_functionals(&sym_profile, w, symbol_range)?,
        zeta,
        spectrum,
    })
}

/// `∫ f|f|^{p-1}` outside `[-L, L]²` in polar coordinates, one adaptive
/// angular integral per octant and a log-scale radial tail. Assumes `f` does
/// not change sign outside the box.
fn exterior_integral(d: &SymbolDescriptor, l: f64, p: f64) -> f64 {
    let f = &d.f;
    let radial = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let r0 = l / c.abs().max(s.abs());
        let ln_g = |v: f64| {
            let rho = r0 * v.exp();
            let a = f(rho * c, rho * s).abs();
            // far out the closure over- or underflows; the remainder is negligible
            if a > 1e-290 && a.is_finite() {
                p * a.ln() + 2.0 * rho.ln()
            } else {
                f64::NEG_INFINITY
            }
        };
        integrate_ln_tail(ln_g, 0.0, 1e-9).value
    };
    let mut total = 0.0;
    for k in 0..8 {
        let a = k as f64 * FRAC_PI_4;
        total += integrate(&radial, a, a + FRAC_PI_4, 1e-7, 1e-300).value;
    }
    if f(2.0 * l, 0.0) < 0.0 {
        -total
    } else {
        total
    }
}

/// `C_ζ(ψ) ψ(e^r)^{-1} (2π)^{-1} ∬ f|f|^{1/r}` on an exponent grid: grid sum
/// inside the box, quadrature of the symbol outside.
pub fn symbol_zeta(s: &SymbolGrid, w: &WeightFunction, g: &ScaleGrid) -> Result<LimitEstimate> {
    if g.kind() != ScaleKind::Exponent {
        return Err(Error::Domain("the symbol zeta functional is sampled on an exponent grid".into()));
    }
    let c = c_zeta(w)?;
    let area = s.cell_area();
    let mut v = Vec::with_capacity(g.len());
    for &r in g.values() {
        let eps = 1.0 / r;
        let inside: f64 = s.values().iter().map(|f| f * f.abs().powf(eps)).sum::<f64>() * area;
        let outside = exterior_integral(s.descriptor(), s.l(), 1.0 + eps);
        v.push(c * (inside + outside) / (2.0 * PI) / w.ln_value_at_ln(r).exp());
    }
    limit_estimate(g.values(), &g.ln_scales(), &v)
}
