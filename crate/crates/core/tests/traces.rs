use dixmier_core::numeric::geomspace;
use dixmier_core::rearrange::models::*;
use dixmier_core::rearrange::*;
use dixmier_core::traces::*;
use dixmier_core::weight::WeightFunction;
use dixmier_core::Error;

const EULER: f64 = 0.577_215_664_901_532_9;

fn exp_grid() -> ScaleGrid {
    ScaleGrid::standard_exponent(30.0).unwrap()
}

fn finite_rank() -> SingularValueProfile {
    mu_from_values(&[0.9, 0.4, 0.4, 0.1]).unwrap()
}

#[test]
fn partial_sum_examples() {
    let w = WeightFunction::log1p();
    let e = partial_sum(&psi_prime(&w), &w, &exp_grid()).unwrap();
    assert!(e.values.iter().all(|v| (v - 1.0).abs() < 1e-9));
    assert!(e.converged());

    let e = partial_sum(&harmonic(1.0), &w, &exp_grid()).unwrap();
    // H(e^r) ≈ r + γ
    let oracle = (30.0 + EULER) / 30f64.exp().ln_1p();
    assert!((e.value - oracle).abs() < 1e-9);
    assert!((e.value - 1.0).abs() < 0.05 && e.converged());

    let e = partial_sum(&finite_rank(), &w, &exp_grid()).unwrap();
    assert!(e.converged() && e.value.abs() < 0.1);
}

#[test]
fn cutoff_examples() {
    let w = WeightFunction::log1p();
    let c = cutoff(&harmonic(1.0), &w, &exp_grid()).unwrap();
    assert!(c.precondition_ok());
    // Σ_{k < t} 1/k
    let t = 30f64.exp();
    let oracle = dixmier_core::numeric::special::harmonic(t.ceil() - 1.0) / t.ln_1p();
    assert!((c.estimate.value - oracle).abs() < 1e-9);
    assert!((c.estimate.value - 1.0).abs() < 0.05);

    let c = cutoff(&psi_prime(&w), &w, &exp_grid()).unwrap();
    // ∫_0^{t-1} (1+s)^{-1} ds = log t
    for (r, v) in c.estimate.scales.iter().zip(&c.estimate.values) {
        assert!((v - r / r.exp().ln_1p()).abs() < 1e-8);
    }
    let c = cutoff(&finite_rank(), &w, &exp_grid()).unwrap();
    assert!(c.estimate.value.abs() < 0.1);
}

#[test]
fn zeta_examples() {
    let w = WeightFunction::log1p();
    let z = zeta(&harmonic(1.0), &w, &exp_grid(), None).unwrap();
    // ζ(1 + 1/r) ≈ r + γ
    assert!((z.value - (30.0 + EULER) / 30f64.exp().ln_1p()).abs() < 1e-3);
    assert!((z.value - 1.0).abs() < 0.03);

    let z = zeta(&finite_rank(), &w, &exp_grid(), None).unwrap();
    assert!(z.value < 0.1);

}

#[test]
fn zeta_of_log_harmonic_matches_incomplete_gamma_oracle() {
    let w = WeightFunction::iterlog(1, 2.0).unwrap();
    let z = zeta(&log_harmonic(), &w, &exp_grid(), None).unwrap();
    // Σ ln(k+2)^{1+s} k^{-1-s}: direct below N, tail ∫_N^∞ (ln x)^{1+s} x^{-1-s} dx
    // = Γ(2+s) Q(2+s, s ln N) / s^{2+s}
    let s = 1.0 / 30.0;
    let n = 1_000_000u64;
    let f = |k: f64| (k + 2.0).ln().powf(1.0 + s) * k.powf(-1.0 - s);
    let head: f64 = (1..n).map(|k| f(k as f64)).sum();
    let a = 2.0 + s;
    let tail = statrs::function::gamma::gamma(a)
        * statrs::function::gamma::gamma_ur(a, s * (n as f64).ln())
        / s.powf(a);
    let total = head + 0.5 * f(n as f64) + tail;
    let oracle = 0.5 * total / w.value(30f64.exp());
    assert!((z.value - oracle).abs() < 1e-5 * oracle, "{} vs {}", z.value, oracle);
    // the leading term r^{2+1/r} Γ(2+1/r) / (r²/4) / 2 still carries a factor r^{1/r}
    assert!(z.value > 2.0 && z.values.windows(2).rev().take(10).all(|p| p[1] < p[0]));
}

#[test]
fn zeta_errors() {
    let w = WeightFunction::log1p();
    assert!(matches!(
        zeta(&harmonic(1.0), &WeightFunction::exppow(1, 0.5).unwrap(), &exp_grid(), None),
        Err(Error::UnsupportedWeight { .. })
    ));
    assert!(matches!(zeta(&finite_rank(), &w, &exp_grid(), Some(&[1.0, 1.0])), Err(Error::LengthMismatch { .. })));
    let direct = ScaleGrid::direct(1.0, 1e12, 30).unwrap();
    assert!(zeta(&finite_rank(), &w, &direct, None).is_err());
}

#[test]
fn heat_examples() {
    let w = WeightFunction::log1p();
    let g = ScaleGrid::direct(1.0, 1e12, 40).unwrap();
    let h = heat(&harmonic(1.0), &w, &g, None).unwrap();
    assert!(h.cross_check_ok(), "gap {:?}", h.max_rel_gap);
    assert!((h.estimate.value - 1.0).abs() < 0.05);

    // single eigenvalue s: s(e^{-1/(sλ)} − e^{-1/s}) / ψ(λ)
    let s = 0.8;
    let h = heat(&mu_from_values(&[s]).unwrap(), &w, &g, None).unwrap();
    for (lam, v) in h.estimate.scales.iter().zip(&h.estimate.values).skip(1) {
        let exact = s * ((-1.0 / (s * lam)).exp() - (-1.0 / s).exp()) / lam.ln_1p();
        assert!((v - exact).abs() < 1e-4 * exact, "λ={lam}");
    }
    assert!(h.estimate.value < 0.05);
}

#[test]
fn heat_of_generic_model_matches_closed_form() {
    let w = WeightFunction::iterlog(1, 2.0).unwrap();
    let h = heat(&log_harmonic(), &w, &exp_grid(), None).unwrap();
    assert!(h.cross_check_ok(), "gap {:?}", h.max_rel_gap);
}

#[test]
fn heat_of_psi_prime_model() {
    // Tr e^{-u/T} behaves like C/u with C = 1 for μ = 1/(1+t)
    let w = WeightFunction::log1p();
    let h = heat(&psi_prime(&w), &w, &ScaleGrid::direct(1.0, 1e12, 40).unwrap(), None).unwrap();
    assert!(h.cross_check_ok());
    assert!((h.estimate.value - 1.0).abs() < 0.05, "{}", h.estimate.value);
}

#[test]
fn heat_membership_examples() {
    let w = WeightFunction::log1p();
    assert!(heat_membership(&harmonic(1.0), &w).finite);
    assert!(!heat_membership(&harmonic(1.0), &WeightFunction::iterlog(2, 1.0).unwrap()).finite);
    let z = heat_membership(&SingularValueProfile::zero(), &w);
    assert!(z.finite && z.sup == 0.0);
}

#[test]
fn twisted_cesaro_examples() {
    let w = WeightFunction::log1p();
    let t = geomspace(1e-3, 1e30, 600);
    let c = twisted_cesaro(&t, &vec![2.5; t.len()], &w).unwrap();
    assert!(c.iter().all(|v| (v - 2.5).abs() < 1e-12));

    let t0 = 100.0;
    let f: Vec<f64> = t.iter().map(|&x| if x <= t0 { 1.0 } else { 0.0 }).collect();
    let c = twisted_cesaro(&t, &f, &w).unwrap();
    let last = *c.last().unwrap();
    assert!((last - w.value(t0) / w.value(1e30)).abs() < 0.01);

    let f: Vec<f64> = t.iter().map(|x| x.ln().sin()).collect();
    let c = twisted_cesaro(&t, &f, &w).unwrap();
    let ln_t: Vec<f64> = t.iter().map(|x| x.ln()).collect();
    let e = limit_estimate(&t, &ln_t, &c).unwrap();
    assert!(e.tail_mean.abs() < 0.05, "{}", e.tail_mean);
    assert!(twisted_cesaro(&t, &f[1..], &w).is_err());
}

#[test]
fn karamata_cases() {
    let g = ScaleGrid::direct(1e-2, 1e6, 40).unwrap();
    for k in 1..=3 {
        let r = karamata_check(&KaramataCase::power(k), &g).unwrap();
        assert!(r.agree);
        for (a, b) in r.lhs.values.iter().zip(&r.rhs.values) {
            assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-6, "k={k}: {a} {b}");
        }
    }
    let r = karamata_check(&KaramataCase::perturbed_linear(), &g).unwrap();
    assert!(r.agree);
    assert!((r.lhs.value - r.rhs.value).abs() < 0.02);
}

#[test]
fn compare_harmonic_is_measurable() {
    let w = WeightFunction::log1p();
    let r = compare_all(&harmonic(1.0), &w, &exp_grid(), None).unwrap();
    assert!(r.measurable, "{:?}", r.gaps);
    assert!((r.value.unwrap() - 1.0).abs() < 0.05);
    assert!(r.heat_cross_check_ok && r.cutoff_precondition_ok);
}

#[test]
fn compare_finite_rank_vanishes() {
    let w = WeightFunction::log1p();
    let r = compare_all(&finite_rank(), &w, &exp_grid(), None).unwrap();
    for e in r.estimates() {
        assert!(e.value.abs() < 0.1);
    }
}

#[test]
fn oscillating_model_is_not_measurable() {
    let w = WeightFunction::log1p();
    let r = compare_all(&loglog_oscillation(), &w, &exp_grid(), None).unwrap();
    assert!(!r.partial_sum.converged());
    assert!(!r.measurable);
}

#[test]
fn twist_with_unit_weights() {
    let w = WeightFunction::log1p();
    let v: Vec<f64> = (1..=400).map(|k| 1.0 / k as f64).collect();
    let p = mu_from_values(&v).unwrap();
    let ones = vec![1.0; 400];
    let g = exp_grid();
    let a = zeta(&p, &w, &g, None).unwrap();
    let b = zeta(&p, &w, &g, Some(&ones)).unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).abs() <= 1e-12 * x.abs());
    }
    let a = heat(&p, &w, &g, None).unwrap();
    let b = heat(&p, &w, &g, Some(&ones)).unwrap();
    for (x, y) in a.estimate.values.iter().zip(&b.estimate.values) {
        assert!((x - y).abs() <= 1e-12 * x.abs());
    }
}
