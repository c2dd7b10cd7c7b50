use std::f64::consts::E;

use dixmier_core::numeric::geomspace;
use dixmier_core::weight::*;
use proptest::prelude::*;

fn catalog() -> Vec<WeightFunction> {
    vec![
        WeightFunction::iterlog(1, 1.0).unwrap(),
        WeightFunction::iterlog(1, 2.0).unwrap(),
        WeightFunction::iterlog(2, 1.0).unwrap(),
        WeightFunction::iterlog(3, 0.5).unwrap(),
        WeightFunction::exppow(1, 0.25).unwrap(),
        WeightFunction::exppow(1, 0.5).unwrap(),
        WeightFunction::exppow(1, 0.75).unwrap(),
        WeightFunction::exppow(2, 0.5).unwrap(),
    ]
}

#[test]
fn derivative_examples() {
    let w = WeightFunction::log1p();
    assert!((w.eval_deriv(1.0).unwrap() - 0.5).abs() < 1e-15);
    assert!((w.eval_deriv(1e-8).unwrap() - 1.0).abs() < 1e-6);
    for t in [0.1, 3.0, 100.0] {
        assert!((w.deriv(t) - 1.0 / (1.0 + t)).abs() < 1e-15);
    }
}

#[test]
fn tabulated_derivative_against_analytic() {
    let knots = geomspace(1e-4, 1e4, 4001);
    let values: Vec<f64> = knots.iter().map(|t: &f64| t.ln_1p()).collect();
    let w = WeightFunction::tabulated(knots, values).unwrap();
    assert!((w.eval_deriv(1.0).unwrap() - 0.5).abs() < 1e-4);
    assert!((w.value(2.0) - 3f64.ln()).abs() < 1e-5);
}

#[test]
fn weights_are_concave_increasing_unbounded() {
    let grid = geomspace(1e-6, 1e12, 400);
    for w in catalog() {
        assert_eq!(w.value(0.0), 0.0);
        assert!(w.is_concave_on(&grid), "{} not concave", w.label());
        let v: Vec<f64> = (1..=12).map(|k| w.value(10f64.powi(k))).collect();
        assert!(v.windows(2).all(|p| p[1] > p[0]), "{} not increasing", w.label());
        // unbounded: the log-domain value keeps growing far out
        assert!(w.ln_value_at_ln(1e100) > w.ln_value_at_ln(1e10));
    }
}

#[test]
fn iterlog_is_bounded_near_zero() {
    for w in catalog().into_iter().filter(|w| matches!(w.spec(), WeightSpec::Iterlog { .. })) {
        let sup = geomspace(1e-12, 1.0, 200).iter().map(|&t| w.value(t) / t).fold(0.0, f64::max);
        assert!(sup <= 1.0 + 1e-9, "{}: {sup}", w.label());
    }
}

#[test]
fn elasticity_between_zero_and_one() {
    for w in catalog() {
        for l in (-20..=300).map(|i| i as f64 * 0.5) {
            let e = w.elasticity_at_ln(l);
            assert!((0.0..=1.0 + 1e-12).contains(&e), "{} at l={l}: {e}", w.label());
        }
    }
}

#[test]
fn exponent_examples() {
    let grid = TailGrid::standard();
    let r = estimate_a(&WeightFunction::iterlog(1, 1.0).unwrap(), E, &grid).unwrap();
    assert_eq!(r.verdict, TailVerdict::Converged);
    assert!((r.estimate / E - 1.0).abs() < 0.01);
    let r = estimate_a(&WeightFunction::iterlog(2, 1.0).unwrap(), E, &grid).unwrap();
    assert_eq!(r.verdict, TailVerdict::Converged);
    assert!((r.estimate - 1.0).abs() < 0.01);
    let r = estimate_a(&WeightFunction::exppow(1, 0.5).unwrap(), 2.0, &grid).unwrap();
    assert_eq!(r.verdict, TailVerdict::Diverging);
}

#[test]
fn exponent_is_multiplicative() {
    let grid = TailGrid::standard();
    for w in catalog() {
        let a2 = estimate_a(&w, 2.0, &grid).unwrap();
        let a3 = estimate_a(&w, 3.0, &grid).unwrap();
        let a6 = estimate_a(&w, 6.0, &grid).unwrap();
        if [&a2, &a3, &a6].iter().all(|r| r.verdict == TailVerdict::Converged) {
            assert!((a6.estimate / (a2.estimate * a3.estimate) - 1.0).abs() < 0.02, "{}", w.label());
        }
    }
}

#[test]
fn hierarchy_on_catalog() {
    for w in catalog() {
        let r = check_conditions(&w);
        if r.cond_exp_index == ConditionVerdict::Holds {
            assert_eq!(r.cond_ssz, ConditionVerdict::Holds, "{}", w.label());
        }
        if r.cond_ssz == ConditionVerdict::Holds {
            assert_eq!(r.cond_easy, ConditionVerdict::Holds, "{}", w.label());
        }
        assert!(r.a_of_e.estimate >= 1.0 - 1e-12);
    }
}

#[test]
fn hierarchy_witnesses() {
    let r = check_conditions(&WeightFunction::exppow(1, 0.25).unwrap());
    assert_eq!(r.cond_ssz, ConditionVerdict::Holds);
    assert_eq!(r.cond_exp_index, ConditionVerdict::FailsDiverges);

    let r = check_conditions(&WeightFunction::exppow(1, 0.5).unwrap());
    assert_eq!(r.cond_ssz, ConditionVerdict::FailsLimit);
    assert!((r.ssz_limit.estimate / E.sqrt() - 1.0).abs() < 0.02);

    let r = check_conditions(&WeightFunction::exppow(1, 0.75).unwrap());
    assert_eq!(r.cond_ssz, ConditionVerdict::FailsDiverges);
    assert_eq!(r.cond_easy, ConditionVerdict::Holds);
}

#[test]
fn iterlog_conditions_and_index() {
    for (n, beta) in [(1, 1.0), (1, 2.0), (1, 0.5), (2, 1.0), (2, 3.0), (3, 1.0)] {
        let w = WeightFunction::iterlog(n, beta).unwrap();
        let r = check_conditions(&w);
        assert_eq!(r.cond_exp_index, ConditionVerdict::Holds, "{}", w.label());
        assert_eq!(r.cond_ssz, ConditionVerdict::Holds, "{}", w.label());
        assert_eq!(r.cond_easy, ConditionVerdict::Holds, "{}", w.label());
        let k = r.k_psi.unwrap();
        let expect = if n == 1 { beta } else { 0.0 };
        assert!((k - expect).abs() <= 0.02 * expect.max(1.0), "{}: k={k}", w.label());
        let (lo, hi) = r.k_psi_interval.unwrap();
        assert!(lo <= k + 1e-12 && k <= hi + 1e-12);
        assert!((r.a_of_e.estimate.ln() - k).abs() < 1e-12);
    }
}

#[test]
fn dilation_norm_oracle() {
    // independent sup on a dense grid including far-out points
    let w = WeightFunction::iterlog(1, 2.0).unwrap();
    for a in [0.25, 3.0] {
        let dense = geomspace(1e-12, 1e15, 20000)
            .iter()
            .map(|&t| w.value(a * t) / (a * w.value(t)))
            .fold(1.0f64, f64::max);
        let got = dilation_norm(&w, a);
        assert!(got >= dense - 1e-9, "a={a}: {got} < {dense}");
        if a > 1.0 {
            assert!((got - dense).abs() < 1e-6);
        }
    }
}

proptest! {
    #[test]
    fn concavity_bound(l in -30.0f64..600.0, n in 1u32..4, beta in 0.2f64..3.0) {
        let w = WeightFunction::iterlog(n, beta).unwrap();
        let e = w.elasticity_at_ln(l);
        prop_assert!(e <= 1.0 + 1e-12 && e >= 0.0);
    }

    #[test]
    fn dilation_norm_at_least_one_and_submultiplicative(a in 0.05f64..20.0) {
        let w = WeightFunction::iterlog(1, 1.0).unwrap();
        let d = dilation_norm(&w, a);
        prop_assert!(d >= 1.0);
        prop_assert!(d <= (1.0f64).max(1.0 / a) + 1e-9);
    }
}
