use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub type SymbolFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A phase-space symbol together with the metadata of its symbol class.
///
/// `metric` and `certificate` are descriptive only; the Hörmander-pair
/// property is accepted on analytic grounds. The order bound `|f| ≤ C m` is
/// checked on every sampled grid.
#[derive(Clone)]
pub struct SymbolDescriptor {
    pub id: String,
    pub description: String,
    pub f: SymbolFn,
    pub weight: SymbolFn,
    pub planck: SymbolFn,
    pub order_bound: f64,
    pub metric: String,
    pub certificate: String,
}

impl fmt::Debug for SymbolDescriptor {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("SymbolDescriptor")
            .field("id", &self.id)
            .field("order_bound", &self.order_bound)
            .field("metric", &self.metric)
            .finish()
    }
}

fn radial(g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> SymbolFn {
    Arc::new(move |x, xi| g(x * x + xi * xi))
}

const ISOTROPIC: &str = "isotropic metric g = (dx² + dξ²)/(1 + x² + ξ²), g^σ = (1 + x² + ξ²)(dx² + dξ²)";

impl SymbolDescriptor {
    /// `(1 + x² + ξ²)^{-1}`.
    pub fn inv_harmonic() -> Self {
        SymbolDescriptor {
            id: "inv_harmonic".into(),
            description: "(1 + x² + ξ²)^-1".into(),
            f: radial(|u| 1.0 / (1.0 + u)),
            weight: radial(|u| 1.0 / (1.0 + u)),
            planck: radial(|u| 1.0 / (1.0 + u)),
            order_bound: 1.0,
            metric: ISOTROPIC.into(),
            certificate: "m = (1 + x² + ξ²)^-1 is g-continuous and σ-temperate; h_g = m is integrable to power 1+ε only".into(),
        }
    }

    /// `(1 + x² + ξ²)^{-1} log(2 + x² + ξ²)`.
    pub fn log_inv_harmonic() -> Self {
        SymbolDescriptor {
            id: "log_inv_harmonic".into(),
            description: "(1 + x² + ξ²)^-1 log(2 + x² + ξ²)".into(),
            f: radial(|u| (2.0 + u).ln() / (1.0 + u)),
            weight: radial(|u| (2.0 + u).ln() / (1.0 + u)),
            planck: radial(|u| 1.0 / (1.0 + u)),
            order_bound: 1.0,
            metric: ISOTROPIC.into(),
            certificate: "logarithmic factor is a slowly varying weight for the isotropic metric".into(),
        }
    }

    /// `x² + ξ²`, quantizing to the harmonic oscillator with spectrum `2k + 1`.
    pub fn harmonic_oscillator() -> Self {
        SymbolDescriptor {
            id: "harmonic_oscillator".into(),
            description: "x² + ξ²".into(),
            f: radial(|u| u),
            weight: radial(|u| 1.0 + u),
            planck: radial(|u| 1.0 / (1.0 + u)),
            order_bound: 1.0,
            metric: ISOTROPIC.into(),
            certificate: "polynomial weight 1 + x² + ξ² is admissible for the isotropic metric".into(),
        }
    }

    /// `e^{-x²-ξ²}`, quantizing to half the projection on the ground state.
    pub fn gaussian() -> Self {
        SymbolDescriptor {
            id: "gaussian".into(),
            description: "exp(-x² - ξ²)".into(),
            f: radial(|u| (-u).exp()),
            weight: radial(|u| (1.0 + u).powi(-4)),
            planck: radial(|u| 1.0 / (1.0 + u)),
            order_bound: 24.0,
            metric: ISOTROPIC.into(),
            certificate: "Schwartz symbol, in S(m, g) for every polynomial weight".into(),
        }
    }

    /// `c` on `[-a, a]²`, zero outside.
    pub fn box_indicator(c: f64, a: f64) -> Self {
        SymbolDescriptor {
            id: "box_indicator".into(),
            description: format!("{c} on [-{a}, {a}]²"),
            f: Arc::new(move |x: f64, xi: f64| if x.abs() <= a && xi.abs() <= a { c } else { 0.0 }),
            weight: Arc::new(|_, _| 1.0),
            planck: radial(|u| 1.0 / (1.0 + u)),
            order_bound: c.abs(),
            metric: "flat metric dx² + dξ²".into(),
            certificate: "bounded compactly supported symbol; not smooth, used only for symbol-side checks".into(),
        }
    }
}

/// Symbol sampled at cell centers of `[-L, L]²`, `N` cells per axis.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolGrid {
    l: f64,
    n: usize,
    /// `values[i * N + j] = f(x_i, ξ_j)`.
    values: Vec<f64>,
    /// `max |f| / m` over the grid.
    pub order_ratio: f64,
    pub order_bound_ok: bool,
    #[serde(skip)]
    descriptor: SymbolDescriptor,
}

impl SymbolGrid {
    pub fn sample(d: &SymbolDescriptor, l: f64, n: usize) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::Domain(format!("grid size must be even and at least 2, got {n}")));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::Domain(format!("box half-width must be positive, got {l}")));
        }
        let h = 2.0 * l / n as f64;
        let c: Vec<f64> = (0..n).map(|i| -l + (i as f64 + 0.5) * h).collect();
        let mut values = Vec::with_capacity(n * n);
        let mut order_ratio = 0.0f64;
        for &x in &c {
            for &xi in &c {
                let v = (d.f)(x, xi);
                if !v.is_finite() {
                    return Err(Error::Domain(format!("symbol {} is not finite at ({x}, {xi})", d.id)));
                }
                order_ratio = order_ratio.max(v.abs() / (d.weight)(x, xi));
                values.push(v);
            }
        }
        Ok(SymbolGrid {
            l,
            n,
            values,
            order_ratio,
            order_bound_ok: order_ratio <= d.order_bound * (1.0 + 1e-12),
            descriptor: d.clone(),
        })
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cell width `2L/N`.
    pub fn h(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.h() * self.h()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn descriptor(&self) -> &SymbolDescriptor {
        &self.descriptor
    }

    /// Largest `|f|` on the outer ring of cells.
    pub fn boundary_max(&self) -> f64 {
        let n = self.n;
        let mut m = 0.0f64;
        for i in 0..n {
            for j in [0, n - 1] {
                m = m.max(self.values[i * n + j].abs()).max(self.values[j * n + i].abs());
            }
        }
        m
    }

    /// `∫ |f|^p` over the box by the midpoint rule.
    pub fn integral_of_power(&self, p: f64) -> f64 {
        self.values.iter().map(|v| v.abs().powf(p)).sum::<f64>() * self.cell_area()
    }
}
