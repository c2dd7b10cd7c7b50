//! Weyl quantization in one dimension on a truncated phase-space box.
//!
//! Symbols are quantized with the kernel
//! `K(x, y) = (2π)^{-1} ∫ e^{iξ(x-y)} f((x+y)/2, ξ) dξ`, so that
//! `Tr OP_W(f) = (2π)^{-1} ∫ f`.

mod compare;
mod symbol;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::quad::integrate;

pub use compare::{dixmier_compare, symbol_zeta, DixmierReport, Quantization, SideFunctionals};
pub use symbol::{SymbolDescriptor, SymbolFn, SymbolGrid};

/// Relative size of the symbol on the quantization boundary above which
/// truncation is flagged.
pub const BOUNDARY_DECAY: f64 = 1e-8;

/// Quantized operator as an `N×N` Hermitian matrix acting on samples
/// `φ(x_i) √dx`.
#[derive(Clone, Debug)]
pub struct WeylOperator {
    pub matrix: DMatrix<Complex64>,
    /// `max |K − K†|` before symmetrization.
    pub hermitization_defect: f64,
    pub dx: f64,
    /// `max |f|` on the boundary of the quantization window relative to `max |f|`.
    pub boundary_ratio: f64,
    pub boundary_warning: bool,
}

impl WeylOperator {
    /// Wraps an explicit matrix, symmetrizing it.
    pub fn from_matrix(m: DMatrix<Complex64>, dx: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Domain(format!("operator matrix must be square, got {}×{}", m.nrows(), m.ncols())));
        }
        let (matrix, defect) = hermitize(m);
        Ok(WeylOperator { matrix, hermitization_defect: defect, dx, boundary_ratio: 0.0, boundary_warning: false })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// `Tr(A*A)`.
    pub fn hs_trace(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn hermitize(m: DMatrix<Complex64>) -> (DMatrix<Complex64>, f64) {
    let adj = m.adjoint();
    let defect = m.iter().zip(adj.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    ((m + adj) * Complex64::new(0.5, 0.0), defect)
}

/// Half-shifted ξ nodes of the quantization: `2N` nodes with spacing
/// `π/(2L)`, covering `|ξ| < πN/(2L)`.
pub fn xi_nodes(l: f64, n: usize) -> Vec<f64> {
    let dxi = std::f64::consts::PI / (2.0 * l);
    (0..2 * n).map(|k| (k as f64 - n as f64 + 0.5) * dxi).collect()
}

pub fn quantize(s: &SymbolGrid) -> Result<WeylOperator> {
    let n = s.n();
    let l = s.l();
    let h = s.h();
    let m = 2 * n;
    let xi = xi_nodes(l, n);
    let dxi = xi[1] - xi[0];
    let f = s.descriptor().f.clone();
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(m);

    // one inverse DFT along ξ per midpoint (x_i + x_j)/2, indexed by i + j
    let rows: Vec<Result<(Vec<Complex64>, f64, f64)>> = (0..2 * n - 1)
        .into_par_iter()
        .map(|sidx| {
            let x = -l + (sidx as f64 / 2.0 + 0.5) * h;
            let mut buf: Vec<Complex64> = xi.iter().map(|&k| Complex64::new(f(x, k), 0.0)).collect();
            if buf.iter().any(|z| !z.re.is_finite()) {
                return Err(Error::Domain(format!("symbol {} is not finite at x = {x}", s.descriptor().id)));
            }
            let peak = buf.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
            let edge = if sidx == 0 || sidx == 2 * n - 2 { peak } else { buf[0].re.abs().max(buf[m - 1].re.abs()) };
            fft.process(&mut buf);
            Ok((buf, peak, edge))
        })
        .collect();
    let mut g = Vec::with_capacity(rows.len());
    let (mut peak, mut edge) = (0.0f64, 0.0f64);
    for r in rows {
        let (b, p, e) = r?;
        peak = peak.max(p);
        edge = edge.max(e);
        g.push(b);
    }

    // ξ_k d h = π d (k − N + 1/2) / N
    let scale = dxi / (2.0 * std::f64::consts::PI) * h;
    let mat = DMatrix::from_fn(n, n, |i, j| {
        let d = i as i64 - j as i64;
        let phase = std::f64::consts::PI * d as f64 * (0.5 / n as f64 - 1.0);
        let idx = d.rem_euclid(m as i64) as usize;
        g[i + j][idx] * Complex64::from_polar(scale, phase)
    });
    let (matrix, defect) = hermitize(mat);
    let ratio = if peak > 0.0 { edge / peak } else { 0.0 };
    Ok(WeylOperator {
        matrix,
        hermitization_defect: defect,
        dx: h,
        boundary_ratio: ratio,
        boundary_warning: ratio > BOUNDARY_DECAY,
    })
}

/// Spectrum of a quantized operator.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    /// Descending, negative values clipped to zero.
    pub values: Vec<f64>,
    /// Eigenvalues below `-1e-8 λ_max`.
    pub significant_negative: usize,
    pub clipped: usize,
    pub most_negative: f64,
}

pub fn eigenvalues(op: &WeylOperator) -> Result<Spectrum> {
    let a = &op.matrix;
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let imag = a.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let mut ev: Vec<f64> = if imag <= 1e-14 * scale {
        a.map(|z| z.re).symmetric_eigenvalues().iter().cloned().collect()
    } else {
        a.clone().symmetric_eigenvalues().iter().cloned().collect()
    };
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("eigensolver produced non-finite eigenvalues".into()));
    }
    ev.sort_by(|x, y| y.total_cmp(x));
    let lmax = ev.first().cloned().unwrap_or(0.0).max(0.0);
    let tol_neg = -1e-8 * lmax;
    let most_negative = ev.last().cloned().unwrap_or(0.0).min(0.0);
    let significant_negative = ev.iter().filter(|v| **v < tol_neg).count();
    let clipped = ev.iter().filter(|v| **v < 0.0).count();
    for v in ev.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(Spectrum { values: ev, significant_negative, clipped, most_negative })
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentity {
    pub matrix_trace: f64,
    /// `(2π)^{-1} ∫ f` over the quantization window.
    pub symbol_integral: f64,
    pub gap: f64,
    pub hs_trace: f64,
    /// `(2π)^{-1} ∫ f²` over the quantization window.
    pub hs_symbol_integral: f64,
    pub hs_gap: f64,
}

/// Compares `Tr OP_W(f)` and `Tr OP_W(f)²` with the symbol integrals, the
/// latter computed by nested adaptive quadrature over the window
/// `[-L, L] × [-πN/(2L), πN/(2L)]`.
pub fn trace_identity_check(s: &SymbolGrid, op: &WeylOperator) -> TraceIdentity {
    let f = &s.descriptor().f;
    let xmax = s.l();
    let ximax = std::f64::consts::PI * s.n() as f64 / (2.0 * s.l());
    let two_pi = 2.0 * std::f64::consts::PI;
    let window = |power: i32| {
        integrate(
            |x| integrate(|xi| f(x, xi).powi(power), -ximax, ximax, 1e-9, 1e-300).value,
            -xmax,
            xmax,
            1e-8,
            1e-300,
        )
        .value
            / two_pi
    };
    let symbol_integral = window(1);
    let hs_symbol_integral = window(2);
    let matrix_trace = op.trace();
    let hs_trace = op.hs_trace();
    TraceIdentity {
        matrix_trace,
        symbol_integral,
        gap: gap(matrix_trace, symbol_integral),
        hs_trace,
        hs_symbol_integral,
        hs_gap: gap(hs_trace, hs_symbol_integral),
    }
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
