//! Adaptive Gauss–Kronrod (7/15) quadrature and log-domain tail integrals.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

/// Outcome of a quadrature.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate falls below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, error: 0.0, converged: true };
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (v, e) = gk15(&f, lo, hi);
    let mut parts = vec![(lo, hi, v, e)];
    let mut total = v;
    let mut err = e;
    while !(err <= abs_tol.max(rel_tol * total.abs())) {
        if parts.len() >= MAX_INTERVALS || !total.is_finite() {
            return Quadrature { value: sign * total, error: err, converged: false };
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (l, r, pv, pe) = parts.swap_remove(idx);
        let m = 0.5 * (l + r);
        if m <= l || m >= r {
            // interval exhausted at machine resolution
            parts.push((l, r, pv, 0.0));
            err -= pe;
            continue;
        }
        let (v1, e1) = gk15(&f, l, m);
        let (v2, e2) = gk15(&f, m, r);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((l, m, v1, e1));
        parts.push((m, r, v2, e2));
        // resum occasionally to limit drift
        if parts.len() % 64 == 0 {
            total = parts.iter().map(|p| p.2).sum();
            err = parts.iter().map(|p| p.3).sum();
        }
    }
    Quadrature { value: sign * total, error: err, converged: true }
}

/// Result of a semi-infinite integral evaluated in the log domain.
#[derive(Clone, Copy, Debug)]
pub struct TailIntegral {
    pub value: f64,
    /// The integral does not settle before the search horizon.
    pub diverged: bool,
}

/// Integral over `[v0, ∞)` of `exp(ln_f(v))`.
///
/// `ln_f` is the logarithm of the integrand; the integrand itself may over- or
/// underflow in ordinary arithmetic. The range is walked in chunks of doubling
/// width, each integrated adaptively relative to its own scale, until a chunk
/// contributes less than `rel_tol` of the running total on a decaying integrand.
pub fn integrate_ln_tail<F: Fn(f64) -> f64>(ln_f: F, v0: f64, rel_tol: f64) -> TailIntegral {
    const HORIZON: f64 = 1e7;
    let mut v = v0;
    let mut width = 1.0;
    let mut total = 0.0f64;
    loop {
        let end = v + width;
        let shift = [ln_f(v), ln_f(0.5 * (v + end)), ln_f(end)]
            .into_iter()
            .filter(|x| !x.is_nan())
            .fold(f64::NEG_INFINITY, f64::max);
        let chunk = if shift == f64::NEG_INFINITY {
            0.0
        } else if shift == f64::INFINITY {
            return TailIntegral { value: f64::INFINITY, diverged: true };
        } else {
            let q = integrate(|x| (ln_f(x) - shift).exp(), v, end, rel_tol * 0.1, 1e-300);
            q.value * shift.exp()
        };
        total += chunk;
        if !total.is_finite() {
            return TailIntegral { value: f64::INFINITY, diverged: true };
        }
        let decaying = !(ln_f(end) > ln_f(v));
        if decaying && chunk <= rel_tol * total.abs() {
            return TailIntegral { value: total, diverged: false };
        }
        if end > HORIZON {
            return TailIntegral { value: f64::INFINITY, diverged: true };
        }
        v = end;
        width *= 2.0;
    }
}
