//! Concave weights ψ and the limit conditions attached to them.
//!
//! Every family can be evaluated both directly and in the logarithmic
//! domain (`l = ln t`). The log-domain entry points are what the limit
//! estimators use, since the interesting behaviour of iterated logarithms
//! only shows up at `t` far beyond `f64::MAX`.

mod conditions;

pub use conditions::{
    c_zeta, c_zeta_of_k, check_conditions, dilation_norm, estimate_a, ConditionReport, ConditionVerdict,
    LimitReport, TailGrid, TailVerdict,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::softplus;

/// Serializable description of a weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum WeightSpec {
    /// `(log(1 + log(1 + ... log(1 + t^{1/β}))))^β` with `n` logarithms.
    Iterlog { n: u32, beta: f64 },
    /// Linear on `[0, C]`, `exp((log^n t)^β)` beyond.
    Exppow { n: u32, beta: f64 },
    /// Piecewise linear through `(knots[i], values[i])`, extended linearly.
    Tabulated { knots: Vec<f64>, values: Vec<f64> },
}

#[derive(Clone, Debug)]
enum Kind {
    Iterlog { n: u32, beta: f64 },
    Exppow { n: u32, beta: f64, ln_c: f64 },
    Tabulated { knots: Vec<f64>, values: Vec<f64>, slopes: Vec<f64> },
}

/// A concave weight in the admissible class.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "WeightSpec", into = "WeightSpec")]
pub struct WeightFunction {
    spec: WeightSpec,
    kind: Kind,
}

impl PartialEq for WeightFunction {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl From<WeightFunction> for WeightSpec {
    fn from(w: WeightFunction) -> Self {
        w.spec
    }
}

impl TryFrom<WeightSpec> for WeightFunction {
    type Error = Error;
    fn try_from(spec: WeightSpec) -> Result<Self> {
        WeightFunction::new(spec)
    }
}

impl WeightFunction {
    pub fn new(spec: WeightSpec) -> Result<Self> {
        let kind = match &spec {
            WeightSpec::Iterlog { n, beta } => {
                if *n == 0 || !(beta.is_finite() && *beta > 0.0) {
                    return Err(Error::Domain(format!("iterlog needs n >= 1 and beta > 0, got n={n}, beta={beta}")));
                }
                Kind::Iterlog { n: *n, beta: *beta }
            }
            WeightSpec::Exppow { n, beta } => {
                if *n == 0 || !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::Domain(format!("exppow needs n >= 1 and 0 < beta < 1, got n={n}, beta={beta}")));
                }
                Kind::Exppow { n: *n, beta: *beta, ln_c: exppow_ln_c(*n, *beta)? }
            }
            WeightSpec::Tabulated { knots, values } => tabulated_kind(knots, values)?,
        };
        Ok(WeightFunction { spec, kind })
    }

    pub fn iterlog(n: u32, beta: f64) -> Result<Self> {
        Self::new(WeightSpec::Iterlog { n, beta })
    }

    pub fn exppow(n: u32, beta: f64) -> Result<Self> {
        Self::new(WeightSpec::Exppow { n, beta })
    }

    pub fn tabulated(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(WeightSpec::Tabulated { knots, values })
    }

    /// `log(1 + t)`.
    pub fn log1p() -> Self {
        Self::iterlog(1, 1.0).expect("valid parameters")
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    /// Short human-readable label such as `iterlog(1,1)`.
    pub fn label(&self) -> String {
        match &self.spec {
            WeightSpec::Iterlog { n, beta } => format!("iterlog({n},{beta})"),
            WeightSpec::Exppow { n, beta } => format!("exppow({n},{beta})"),
            WeightSpec::Tabulated { knots, .. } => format!("tabulated({} knots)", knots.len()),
        }
    }

    /// Joining point `C` of the exppow family (as `ln C`).
    pub fn exppow_ln_c(&self) -> Option<f64> {
        match self.kind {
            Kind::Exppow { ln_c, .. } => Some(ln_c),
            _ => None,
        }
    }

    /// ψ(t), checked.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("psi evaluated at t = {t}")));
        }
        Ok(self.value(t))
    }

    /// ψ'(t), checked.
    pub fn eval_deriv(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("psi' evaluated at t = {t}")));
        }
        Ok(self.deriv(t))
    }

    /// ψ(t) for `t >= 0`.
    pub fn value(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        if t == 0.0 {
            return 0.0;
        }
        match &self.kind {
            Kind::Iterlog { n, beta } => {
                let mut x = if *beta == 1.0 { t } else { t.powf(1.0 / beta) };
                if x.is_infinite() && t.is_finite() {
                    return self.ln_value_at_ln(t.ln()).exp();
                }
                for _ in 0..*n {
                    x = x.ln_1p();
                }
                if *beta == 1.0 {
                    x
                } else {
                    x.powf(*beta)
                }
            }
            Kind::Exppow { .. } => {
                if t.is_infinite() {
                    return f64::INFINITY;
                }
                self.ln_value_at_ln(t.ln()).exp()
            }
            Kind::Tabulated { knots, values, slopes } => {
                let i = segment(knots, t);
                values[i] + slopes[i] * (t - knots[i])
            }
        }
    }

    /// ψ'(t) for `t > 0`.
    pub fn deriv(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Iterlog { n: 1, beta } if *beta == 1.0 => 1.0 / (1.0 + t),
            Kind::Iterlog { .. } => {
                let v = self.value(t);
                if v == 0.0 {
                    return self.slope_at_zero();
                }
                v * self.elasticity_at_ln(t.ln()) / t
            }
            Kind::Exppow { ln_c, .. } => {
                let l = t.ln();
                if l <= *ln_c {
                    (1.0 - ln_c).exp()
                } else {
                    (self.ln_value_at_ln(l) + self.elasticity_at_ln(l).ln() - l).exp()
                }
            }
            Kind::Tabulated { .. } => {
                let h = (1e-4 * t.max(1.0)).min(t / 2.0);
                (self.value(t + h) - self.value(t - h)) / (2.0 * h)
            }
        }
    }

    /// ψ'(0+).
    pub fn slope_at_zero(&self) -> f64 {
        match &self.kind {
            Kind::Iterlog { .. } => 1.0,
            Kind::Exppow { ln_c, .. } => (1.0 - ln_c).exp(),
            Kind::Tabulated { slopes, .. } => slopes[0],
        }
    }

    /// `ln ψ(e^l)`, valid for every finite `l`.
    pub fn ln_value_at_ln(&self, l: f64) -> f64 {
        match &self.kind {
            Kind::Iterlog { n, beta } => {
                let mut x = softplus(l / beta);
                for _ in 1..*n {
                    x = x.ln_1p();
                }
                beta * x.ln()
            }
            Kind::Exppow { n, beta, ln_c } => {
                if l <= *ln_c {
                    1.0 - ln_c + l
                } else {
                    let mut g = l;
                    for _ in 1..*n {
                        g = g.ln();
                    }
                    g.powf(*beta)
                }
            }
            Kind::Tabulated { knots, values, slopes } => {
                let last = knots.len() - 1;
                if l < 700.0 {
                    let t = l.exp();
                    if t <= knots[last] {
                        return self.value(t).ln();
                    }
                }
                // linear tail: ψ = s t + b
                let s = slopes[last - 1];
                let b = values[last] - s * knots[last];
                l + (s + b * (-l).exp()).ln()
            }
        }
    }

    /// `ln ψ(e^{l+δ}) − ln ψ(e^l)` without cancellation at large `l`.
    pub fn ln_increment(&self, l: f64, delta: f64) -> f64 {
        match &self.kind {
            Kind::Iterlog { n, beta } => {
                let a = l / beta;
                let d = delta / beta;
                if a <= 1.0 || a + d <= 1.0 {
                    return self.ln_value_at_ln(l + delta) - self.ln_value_at_ln(l);
                }
                let mut ell = softplus(a);
                let mut dell = d + (-(a + d)).exp().ln_1p() - (-a).exp().ln_1p();
                for _ in 1..*n {
                    dell = (dell / (1.0 + ell)).ln_1p();
                    ell = ell.ln_1p();
                }
                beta * (dell / ell).ln_1p()
            }
            Kind::Exppow { n, beta, ln_c } => {
                if l <= *ln_c || l + delta <= *ln_c {
                    return self.ln_value_at_ln(l + delta) - self.ln_value_at_ln(l);
                }
                let mut g = l;
                let mut dg = delta;
                for _ in 1..*n {
                    dg = (dg / g).ln_1p();
                    g = g.ln();
                }
                g.powf(*beta) * (beta * (dg / g).ln_1p()).exp_m1()
            }
            Kind::Tabulated { knots, values, slopes } => {
                let last = knots.len() - 1;
                let edge = knots[last].ln();
                if l > edge && l + delta > edge {
                    // both points on the linear tail ψ = s t + b
                    let s = slopes[last - 1];
                    let b = values[last] - s * knots[last];
                    return delta + (s + b * (-l - delta).exp()).ln() - (s + b * (-l).exp()).ln();
                }
                self.ln_value_at_ln(l + delta) - self.ln_value_at_ln(l)
            }
        }
    }

    /// Elasticity `t ψ'(t) / ψ(t)` at `t = e^l`; lies in `[0, 1]` for concave ψ.
    pub fn elasticity_at_ln(&self, l: f64) -> f64 {
        match &self.kind {
            Kind::Iterlog { n, beta } => {
                let a = l / beta;
                let mut ell = softplus(a);
                let mut d = 1.0 / (beta * (1.0 + (-a).exp()));
                for _ in 1..*n {
                    d /= 1.0 + ell;
                    ell = ell.ln_1p();
                }
                if ell == 0.0 {
                    1.0
                } else {
                    beta * d / ell
                }
            }
            Kind::Exppow { n, beta, ln_c } => {
                if l <= *ln_c {
                    return 1.0;
                }
                let mut g = l;
                let mut d = 1.0;
                for _ in 1..*n {
                    d /= g;
                    g = g.ln();
                }
                beta * g.powf(beta - 1.0) * d
            }
            Kind::Tabulated { knots, values, slopes } => {
                let last = knots.len() - 1;
                if l > knots[last].ln() {
                    let s = slopes[last - 1];
                    let b = values[last] - s * knots[last];
                    return s / (s + b * (-l).exp());
                }
                let t = l.exp();
                let v = self.value(t);
                if v > 0.0 {
                    t * self.deriv(t) / v
                } else {
                    1.0
                }
            }
        }
    }

    /// True when all second divided differences on `grid` are ≤ 0 up to
    /// `1e-9` relative tolerance.
    pub fn is_concave_on(&self, grid: &[f64]) -> bool {
        let v: Vec<f64> = grid.iter().map(|&t| self.value(t)).collect();
        grid.windows(3).zip(v.windows(3)).all(|(t, y)| {
            let s1 = (y[1] - y[0]) / (t[1] - t[0]);
            let s2 = (y[2] - y[1]) / (t[2] - t[1]);
            s2 <= s1 + 1e-9 * s1.abs().max(s2.abs()).max(f64::MIN_POSITIVE)
        })
    }
}

fn segment(knots: &[f64], t: f64) -> usize {
    match knots.binary_search_by(|k| k.total_cmp(&t)) {
        Ok(i) => i.min(knots.len() - 2),
        Err(0) => 0,
        Err(i) => (i - 1).min(knots.len() - 2),
    }
}

fn tabulated_kind(knots: &[f64], values: &[f64]) -> Result<Kind> {
    if knots.len() != values.len() {
        return Err(Error::LengthMismatch { expected: knots.len(), got: values.len() });
    }
    if knots.is_empty() {
        return Err(Error::Domain("tabulated weight without knots".into()));
    }
    if knots.iter().chain(values).any(|x| !x.is_finite()) {
        return Err(Error::Domain("tabulated weight has non-finite entries".into()));
    }
    let (mut k, mut v) = (knots.to_vec(), values.to_vec());
    if k[0] < 0.0 {
        return Err(Error::Domain("tabulated knots must be nonnegative".into()));
    }
    if k[0] > 0.0 {
        k.insert(0, 0.0);
        v.insert(0, 0.0);
    } else if v[0] != 0.0 {
        return Err(Error::Domain("tabulated weight must vanish at 0".into()));
    }
    if k.len() < 2 {
        return Err(Error::Domain("tabulated weight needs a positive knot".into()));
    }
    if k.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("tabulated knots must be strictly increasing".into()));
    }
    let slopes: Vec<f64> = k.windows(2).zip(v.windows(2)).map(|(t, y)| (y[1] - y[0]) / (t[1] - t[0])).collect();
    for w in slopes.windows(2) {
        if w[1] > w[0] + 1e-9 * w[0].abs().max(w[1].abs()) {
            return Err(Error::Domain("tabulated data is not concave".into()));
        }
    }
    if *slopes.last().expect("nonempty") <= 0.0 {
        return Err(Error::Domain("tabulated weight must keep increasing".into()));
    }
    Ok(Kind::Tabulated { knots: k, values: v, slopes })
}

/// `ln C` for the exppow family.
///
/// `C` is the tower `exp(exp(...exp(1)))` with `n` exponentials, so that the
/// right piece equals `e` at `C` and the two pieces join continuously. Since
/// the right-hand elasticity at `C` is below one the join is concave; the
/// right piece is then scanned for concavity and `C` is pushed outwards past
/// any violation.
fn exppow_ln_c(n: u32, beta: f64) -> Result<f64> {
    let mut ln_c = 1.0f64;
    for _ in 1..n {
        ln_c = ln_c.exp();
    }
    if !ln_c.is_finite() {
        return Err(Error::Domain(format!("exppow with n = {n} has a joining point beyond f64 range")));
    }
    // ln ψ'(e^l) = ln ψ + ln E − l must be nonincreasing on l > ln C
    let ln_dpsi = |l: f64| -> f64 {
        let mut g = l;
        let mut d = 1.0;
        for _ in 1..n {
            d /= g;
            g = g.ln();
        }
        g.powf(beta) + (beta * g.powf(beta - 1.0) * d).ln() - l
    };
    for _ in 0..8 {
        let span = 50.0 * ln_c.max(1.0);
        let steps = 2000;
        let mut bad = None;
        let mut prev = ln_dpsi(ln_c * (1.0 + 1e-12));
        for i in 1..=steps {
            let l = ln_c + span * (i as f64 / steps as f64).powi(2);
            let cur = ln_dpsi(l);
            if cur > prev + 1e-12 * prev.abs().max(1.0) {
                bad = Some(l);
            }
            prev = cur;
        }
        match bad {
            None => return Ok(ln_c),
            Some(l) => ln_c = l,
        }
    }
    Err(Error::Numeric(format!("no concave joining point found for exppow({n},{beta})")))
}
