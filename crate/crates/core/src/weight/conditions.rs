//! Exponentiation index, the SSZ and "easy" conditions, dilation norms.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use super::{WeightFunction, WeightSpec};
use crate::error::{Error, Result};
use crate::numeric::{golden_max, lsq_slope, special::gamma};

/// Sample points for limits at infinity, stored as `ln t`.
///
/// The standard grid is geometric in `ln t` from `ln 100` to `1e120`:
/// iterated logarithms approach their limits like `1/log log t`, so a grid
/// ending at `t = 1e12` cannot separate convergence from slow drift.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TailGrid {
    ln_t: Vec<f64>,
}

impl TailGrid {
    pub fn standard() -> Self {
        let (a, b) = (100f64.ln(), 1e120f64);
        let n = 240;
        let ln_t = (0..n)
            .map(|i| (a.ln() + (b.ln() - a.ln()) * i as f64 / (n - 1) as f64).exp())
            .collect();
        TailGrid { ln_t }
    }

    /// Grid from plain `t` values; must cover `[1e2, 1e12]` with at least 30 points.
    pub fn from_t(t: &[f64]) -> Result<Self> {
        Self::from_ln_t(t.iter().map(|x| x.ln()).collect())
    }

    pub fn from_ln_t(ln_t: Vec<f64>) -> Result<Self> {
        if ln_t.len() < 30 {
            return Err(Error::TooFewSamples { needed: 30, got: ln_t.len() });
        }
        if ln_t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("tail grid must be strictly increasing".into()));
        }
        if ln_t[0] > 100f64.ln() + 1e-9 || *ln_t.last().expect("nonempty") < 1e12f64.ln() - 1e-9 {
            return Err(Error::Domain("tail grid must span at least [1e2, 1e12]".into()));
        }
        Ok(TailGrid { ln_t })
    }

    pub fn ln_t(&self) -> &[f64] {
        &self.ln_t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailVerdict {
    Converged,
    Diverging,
    Inconclusive,
}

/// Tail estimate of a quantity sampled along a [`TailGrid`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitReport {
    pub estimate: f64,
    /// Smallest and largest of the last five samples.
    pub band: (f64, f64),
    /// Least-squares slope over the last third, against `ln ln t`.
    pub slope: f64,
    pub verdict: TailVerdict,
}

/// Classifies samples `y` taken at `ln_t`. `log_scale` marks samples that are
/// logarithms of the reported quantity.
fn classify(ln_t: &[f64], y: &[f64], log_scale: bool, spread_tol: f64) -> LimitReport {
    let n = y.len();
    let lift = |v: f64| if log_scale { v.exp() } else { v };
    if y.iter().any(|v| !v.is_finite()) {
        return LimitReport { estimate: f64::INFINITY, band: (f64::NAN, f64::INFINITY), slope: f64::INFINITY, verdict: TailVerdict::Diverging };
    }
    let last5 = &y[n - 5..];
    let lo = last5.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = last5.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let start = n - n / 3;
    let x: Vec<f64> = ln_t[start..].iter().map(|l| l.ln()).collect();
    let slope = lsq_slope(&x, &y[start..]);
    let tail = &y[start..];
    let monotone = tail.windows(2).all(|w| w[1] >= w[0]) || tail.windows(2).all(|w| w[1] <= w[0]);
    let verdict = if hi - lo < spread_tol && slope.abs() < 0.01 {
        TailVerdict::Converged
    } else if slope.abs() >= 0.01 && monotone {
        TailVerdict::Diverging
    } else {
        TailVerdict::Inconclusive
    };
    LimitReport { estimate: lift(y[n - 1]), band: (lift(lo), lift(hi)), slope, verdict }
}

const LN_SPREAD: f64 = 0.004_987_541_511_038_968; // ln 1.005

/// Tail estimate of `A_ψ(α) = lim ψ(t^α)/ψ(t)`.
pub fn estimate_a(w: &WeightFunction, alpha: f64, grid: &TailGrid) -> Result<LimitReport> {
    if !(alpha > 1.0) {
        return Err(Error::Domain(format!("exponent alpha must exceed 1, got {alpha}")));
    }
    let y: Vec<f64> = grid.ln_t.iter().map(|&l| w.ln_increment(l, (alpha - 1.0) * l)).collect();
    Ok(classify(&grid.ln_t, &y, true, LN_SPREAD))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionVerdict {
    Holds,
    /// The defining quantity grows without bound.
    FailsDiverges,
    /// The defining quantity settles, but not at the required value.
    FailsLimit,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub weight: WeightSpec,
    /// `log A_ψ(e)`; present when the exponentiation index exists.
    pub k_psi: Option<f64>,
    pub k_psi_interval: Option<(f64, f64)>,
    pub a_of_e: LimitReport,
    pub a_of_2: LimitReport,
    pub a_of_4: LimitReport,
    /// `A(α) ≈ α^k` within 2% for α ∈ {2, 4}.
    pub power_law_consistent: bool,
    pub c_zeta: Option<f64>,
    pub cond_exp_index: ConditionVerdict,
    /// Limit of `ψ(t ψ(t)) / ψ(t)`.
    pub ssz_limit: LimitReport,
    pub cond_ssz: ConditionVerdict,
    /// Limit of `ψ(2t) / ψ(t)`.
    pub easy_dilation_limit: LimitReport,
    /// Limit of `t ψ'(t) / ψ(t)`.
    pub easy_elasticity_limit: LimitReport,
    pub cond_easy: ConditionVerdict,
    /// `(a, ‖D_a‖)` pairs.
    pub dilation_norms: Vec<(f64, f64)>,
    /// `(a, log(1/a) / log ‖D_a‖)`, `None` where `‖D_a‖ = 1`.
    pub boyd_diagnostic: Vec<(f64, Option<f64>)>,
}

struct ExpIndex {
    verdict: ConditionVerdict,
    a_e: LimitReport,
    a_2: LimitReport,
    a_4: LimitReport,
    consistent: bool,
}

fn exp_index(w: &WeightFunction, grid: &TailGrid) -> ExpIndex {
    let a_e = estimate_a(w, E, grid).expect("alpha > 1");
    let a_2 = estimate_a(w, 2.0, grid).expect("alpha > 1");
    let a_4 = estimate_a(w, 4.0, grid).expect("alpha > 1");
    let k = a_e.estimate.ln();
    let consistent = [(2.0f64, &a_2), (4.0, &a_4)]
        .iter()
        .all(|(al, r)| r.verdict == TailVerdict::Converged && (r.estimate / al.powf(k) - 1.0).abs() < 0.02);
    let verdict = match a_e.verdict {
        TailVerdict::Converged if consistent => ConditionVerdict::Holds,
        TailVerdict::Diverging => ConditionVerdict::FailsDiverges,
        _ => ConditionVerdict::Inconclusive,
    };
    ExpIndex { verdict, a_e, a_2, a_4, consistent }
}

/// `1 / Γ(1 + k)`.
pub fn c_zeta_of_k(k: f64) -> f64 {
    1.0 / gamma(1.0 + k)
}

/// The ζ-residue constant `1/Γ(1 + k_ψ)`; errors when ψ has no exponentiation index.
pub fn c_zeta(w: &WeightFunction) -> Result<f64> {
    let ei = exp_index(w, &TailGrid::standard());
    if ei.verdict != ConditionVerdict::Holds {
        return Err(Error::UnsupportedWeight {
            weight: w.label(),
            reason: format!("no exponentiation index ({:?})", ei.verdict),
        });
    }
    Ok(c_zeta_of_k(ei.a_e.estimate.ln()))
}

fn limit_verdict(r: &LimitReport, target_ok: impl Fn(f64) -> bool) -> ConditionVerdict {
    match r.verdict {
        TailVerdict::Converged if target_ok(r.estimate) => ConditionVerdict::Holds,
        TailVerdict::Converged => ConditionVerdict::FailsLimit,
        TailVerdict::Diverging => ConditionVerdict::FailsDiverges,
        TailVerdict::Inconclusive => ConditionVerdict::Inconclusive,
    }
}

pub fn check_conditions(w: &WeightFunction) -> ConditionReport {
    let grid = TailGrid::standard();
    let l = &grid.ln_t;
    let ei = exp_index(w, &grid);
    let (k_psi, k_psi_interval, c) = if ei.verdict == ConditionVerdict::Holds {
        let k = ei.a_e.estimate.ln();
        (Some(k), Some((ei.a_e.band.0.ln(), ei.a_e.band.1.ln())), Some(c_zeta_of_k(k)))
    } else {
        (None, None, None)
    };

    let ssz: Vec<f64> = l.iter().map(|&x| w.ln_increment(x, w.ln_value_at_ln(x))).collect();
    let ssz_limit = classify(l, &ssz, true, LN_SPREAD);
    let cond_ssz = limit_verdict(&ssz_limit, |v| (v - 1.0).abs() < 0.01);

    let dil: Vec<f64> = l.iter().map(|&x| w.ln_increment(x, 2f64.ln())).collect();
    let easy_dilation_limit = classify(l, &dil, true, LN_SPREAD);
    let el: Vec<f64> = l.iter().map(|&x| w.elasticity_at_ln(x)).collect();
    let easy_elasticity_limit = classify(l, &el, false, 0.005);
    let cond_easy = match (
        limit_verdict(&easy_dilation_limit, |v| (v - 1.0).abs() < 0.01),
        limit_verdict(&easy_elasticity_limit, |v| v.abs() < 0.01),
    ) {
        (ConditionVerdict::Holds, ConditionVerdict::Holds) => ConditionVerdict::Holds,
        (ConditionVerdict::FailsDiverges, _) | (_, ConditionVerdict::FailsDiverges) => ConditionVerdict::FailsDiverges,
        (ConditionVerdict::FailsLimit, _) | (_, ConditionVerdict::FailsLimit) => ConditionVerdict::FailsLimit,
        _ => ConditionVerdict::Inconclusive,
    };

    let a_grid = [1.0 / 16.0, 0.125, 0.25, 0.5, 2.0, 4.0, 8.0, 16.0];
    let dilation_norms: Vec<(f64, f64)> = a_grid.iter().map(|&a| (a, dilation_norm(w, a))).collect();
    let boyd_diagnostic = dilation_norms
        .iter()
        .map(|&(a, n)| {
            let ln_n = n.ln();
            (a, if ln_n.abs() < 1e-12 { None } else { Some((1.0 / a).ln() / ln_n) })
        })
        .collect();

    ConditionReport {
        weight: w.spec().clone(),
        k_psi,
        k_psi_interval,
        power_law_consistent: ei.consistent,
        c_zeta: c,
        cond_exp_index: ei.verdict,
        a_of_e: ei.a_e,
        a_of_2: ei.a_2,
        a_of_4: ei.a_4,
        ssz_limit,
        cond_ssz,
        easy_dilation_limit,
        easy_elasticity_limit,
        cond_easy,
        dilation_norms,
        boyd_diagnostic,
    }
}

/// `‖D_a‖ = sup_{t>0} ψ(at) / (a ψ(t))`.
///
/// Scans `t ∈ [1e-10, 1e12]` on a log grid, refines the best cell by golden
/// section and compares with the two endpoint limits: 1 as `t → 0` (ψ is
/// linear to first order there) and the far-tail value of the ratio.
pub fn dilation_norm(w: &WeightFunction, a: f64) -> f64 {
    if a == 1.0 {
        return 1.0;
    }
    let la = a.ln();
    let ratio = |l: f64| (w.ln_increment(l, la) - la).exp();
    let (l0, l1) = (1e-10f64.ln(), 1e12f64.ln());
    let n = 400;
    let ls: Vec<f64> = (0..n).map(|i| l0 + (l1 - l0) * i as f64 / (n - 1) as f64).collect();
    let vals: Vec<f64> = ls.iter().map(|&l| ratio(l)).collect();
    let (imax, _) = vals
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty grid");
    let lo = ls[imax.saturating_sub(1)];
    let hi = ls[(imax + 1).min(n - 1)];
    let (_, refined) = golden_max(ratio, lo, hi, 60);
    let far = match w.spec() {
        WeightSpec::Tabulated { .. } => 700.0,
        _ => 1e120,
    };
    [1.0, vals[imax], refined, ratio(far)].into_iter().fold(f64::NEG_INFINITY, f64::max)
}
