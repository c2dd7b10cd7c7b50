//! Numerical check of the Karamata-type identity
//! `lim β(r)/φ(r) = Γ(1+k)^{-1} lim φ(r)^{-1} ∫_0^∞ e^{-t/r} dβ(t)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::grid::ScaleGrid;
use super::limit::{estimate_on, LimitEstimate};
use crate::error::{Error, Result};
use crate::numeric::{quad::integrate, special::gamma};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An increasing function `β`, its density `β'`, a comparison function `φ`
/// regularly varying with index `k`, and optionally the Laplace–Stieltjes
/// transform `r ↦ ∫_0^∞ e^{-t/r} dβ(t)` in closed form.
#[derive(Clone)]
pub struct KaramataCase {
    pub id: String,
    pub beta: RealFn,
    pub dbeta: RealFn,
    pub laplace: Option<RealFn>,
    pub phi: RealFn,
    pub k: f64,
}

impl fmt::Debug for KaramataCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KaramataCase").field("id", &self.id).field("k", &self.k).finish()
    }
}

impl KaramataCase {
    /// `β(t) = t^k`, `φ(r) = r^k` for integer `k >= 1`; transform by quadrature.
    pub fn power(k: u32) -> Self {
        let kf = k as f64;
        KaramataCase {
            id: format!("power{k}"),
            beta: Arc::new(move |t: f64| t.powf(kf)),
            dbeta: Arc::new(move |t: f64| kf * t.powf(kf - 1.0)),
            laplace: None,
            phi: Arc::new(move |r: f64| r.powf(kf)),
            k: kf,
        }
    }

    /// `β(t) = t + sin(t)/2`, a bounded oscillating perturbation of `t`.
    pub fn perturbed_linear() -> Self {
        KaramataCase {
            id: "perturbed_linear".into(),
            beta: Arc::new(|t: f64| t + 0.5 * t.sin()),
            dbeta: Arc::new(|t: f64| 1.0 + 0.5 * t.cos()),
            laplace: Some(Arc::new(|r: f64| r + 0.5 * r / (1.0 + r * r))),
            phi: Arc::new(|r: f64| r),
            k: 1.0,
        }
    }

    /// `φ(r/n)/φ(r)` against `n^{-k}` at the largest grid point, `n ∈ {2,3,5}`.
    pub fn check_invariant(&self, g: &ScaleGrid) -> Result<()> {
        let r = *g.scales().last().expect("nonempty grid");
        for n in [2.0f64, 3.0, 5.0] {
            let got = (self.phi)(r / n) / (self.phi)(r);
            let want = n.powf(-self.k);
            if (got / want - 1.0).abs() > 0.02 {
                return Err(Error::Invariant(format!("phi(r/{n})/phi(r) = {got}, expected {want}")));
            }
        }
        Ok(())
    }

    fn transform(&self, r: f64) -> f64 {
        match &self.laplace {
            Some(l) => l(r),
            None => {
                // r ∫_0^∞ e^{-x} β'(r x) dx
                let db = &self.dbeta;
                let head = integrate(|x| (-x).exp() * db(r * x), 0.0, 1.0, 1e-12, 0.0).value;
                let tail = integrate(|x| (-x).exp() * db(r * x), 1.0, 60.0, 1e-12, 0.0).value;
                r * (head + tail)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KaramataResult {
    pub lhs: LimitEstimate,
    pub rhs: LimitEstimate,
    pub agree: bool,
}

/// Samples `β(r)/φ(r)` and `Γ(1+k)^{-1} φ(r)^{-1} ∫ e^{-t/r} dβ(t)`; they
/// agree when both converge to values within 2%.
pub fn karamata_check(c: &KaramataCase, g: &ScaleGrid) -> Result<KaramataResult> {
    c.check_invariant(g)?;
    let scales = g.scales();
    let gk = gamma(1.0 + c.k);
    let lhs = estimate_on(g, scales.iter().map(|&r| (c.beta)(r) / (c.phi)(r)).collect())?;
    let rhs = estimate_on(g, scales.iter().map(|&r| c.transform(r) / (gk * (c.phi)(r))).collect())?;
    let agree = lhs.converged() && rhs.converged() && (lhs.value - rhs.value).abs() <= 0.02 * lhs.value.abs().max(rhs.value.abs());
    Ok(KaramataResult { lhs, rhs, agree })
}
