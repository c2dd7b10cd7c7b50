//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::time::{Duration, Instant};

use dixmier_core::catalog;
use dixmier_core::extrapolate::equality_criteria;
use dixmier_core::rearrange::models::{harmonic, log_harmonic};
use dixmier_core::rearrange::{SingularValueProfile, SpectralFn};
use dixmier_core::traces::{compare_all, cutoff, heat, karamata_check, partial_sum, zeta, ScaleGrid};
use dixmier_core::weight::{c_zeta, check_conditions, ConditionVerdict, WeightFunction};
use dixmier_core::weyl::{dixmier_compare, eigenvalues, quantize, Quantization, SymbolDescriptor, SymbolGrid};
use dixmier_harness::suite::{random_profiles, sandwich_suite};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn heat_grid() -> ScaleGrid {
    ScaleGrid::exponent(2.0, 1e12f64.ln(), 36).unwrap()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        let ok = took <= limit;
        o.pass &= ok;
        o.detail.push_str(&format!("; runtime {:.2} s (limit {} s)", took.as_secs_f64(), limit.as_secs()));
    }
    o
}

fn three_way_agreement() -> Outcome {
    let w = WeightFunction::log1p();
    let p = harmonic(1.0);
    let r = compare_all(&p, &w, &ScaleGrid::standard_exponent(30.0).unwrap(), None).unwrap();
    let h = heat(&p, &w, &heat_grid(), None).unwrap().estimate.value;
    let vals = [r.partial_sum.value, r.cutoff.value, r.zeta.value, h];
    let near = vals.iter().all(|v| rel(*v, 1.0) < 0.05);
    let max_gap = vals.iter().flat_map(|a| vals.iter().map(move |b| gap(*a, *b))).fold(0.0, f64::max);
    outcome(
        near && max_gap < 0.05,
        format!(
            "partial_sum {:.4}, cutoff {:.4}, zeta {:.4} at r = 30, heat {:.4} at λ = 1e12; max gap {:.4}",
            vals[0], vals[1], vals[2], vals[3], max_gap
        ),
    )
}

fn nontrivial_exponent() -> Outcome {
    let w = WeightFunction::iterlog(1, 2.0).unwrap();
    let c = c_zeta(&w).unwrap();
    let g = ScaleGrid::standard_exponent(30.0).unwrap();
    let p = log_harmonic();
    let z = zeta(&p, &w, &g, None).unwrap().value;
    let s = partial_sum(&p, &w, &g).unwrap().value;
    let pass = rel(z, 2.0) < 0.1 && rel(s, 2.0) < 0.1 && gap(z, s) < 0.1;
    outcome(pass, format!("C_ζ {c:.4}; zeta {z:.4}, partial_sum {s:.4} at r = 30 against 2"))
}

fn karamata_identity() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    let g = ScaleGrid::direct(1e-2, 1e6, 40).unwrap();
    for id in ["power1", "power2"] {
        let r = karamata_check(&catalog::karamata_case(id).unwrap(), &g).unwrap();
        let err = r.lhs.values.iter().zip(&r.rhs.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        pass &= err <= 1e-6;
        details.push(format!("{id} max |lhs - rhs| {err:.1e}"));
    }
    let r = karamata_check(&catalog::karamata_case("perturbed_linear").unwrap(), &g).unwrap();
    let d = gap(r.lhs.value, r.rhs.value);
    pass &= d <= 0.02 && rel(r.lhs.value, 1.0) <= 0.02;
    details.push(format!("perturbed lhs {:.6}, rhs {:.6} at r = 1e6", r.lhs.value, r.rhs.value));
    outcome(pass, details.join("; "))
}

fn condition_hierarchy() -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;

    let r = check_conditions(&WeightFunction::exppow(1, 0.25).unwrap());
    let ok = r.cond_ssz == ConditionVerdict::Holds && r.cond_exp_index != ConditionVerdict::Holds;
    pass &= ok;
    details.push(format!("exppow(1,1/4) ssz {:?}, exp_index {:?}", r.cond_ssz, r.cond_exp_index));

    let r = check_conditions(&WeightFunction::exppow(1, 0.5).unwrap());
    let l = r.ssz_limit.estimate;
    pass &= rel(l, 0.5f64.exp()) <= 0.02;
    details.push(format!("exppow(1,1/2) ssz limit {l:.4} vs √e"));

    let r = check_conditions(&WeightFunction::exppow(1, 0.75).unwrap());
    pass &= r.cond_ssz != ConditionVerdict::Holds;
    details.push(format!("exppow(1,3/4) ssz {:?}", r.cond_ssz));

    for (n, beta) in [(1, 0.5), (1, 1.0), (1, 2.0), (2, 1.0), (2, 2.0), (3, 1.0)] {
        let r = check_conditions(&WeightFunction::iterlog(n, beta).unwrap());
        let all = [r.cond_exp_index, r.cond_ssz, r.cond_easy].iter().all(|v| *v == ConditionVerdict::Holds);
        let k = r.k_psi.unwrap_or(f64::NAN);
        let k_ok = if n == 1 { rel(k, beta) <= 0.02 } else { k.abs() <= 0.02 };
        pass &= all && k_ok;
        if !(all && k_ok) {
            details.push(format!("iterlog({n},{beta}) k {k:.4} conditions {:?}", [r.cond_exp_index, r.cond_ssz, r.cond_easy]));
        }
    }
    details.push("iterlog family checked for six (n, β)".into());
    outcome(pass, details.join("; "))
}

fn extrapolation_sandwich() -> Outcome {
    let s = sandwich_suite(20240601).unwrap();
    outcome(s.checked == 150 && s.violations == 0, format!("{} checks, {} violations", s.checked, s.violations))
}

fn equality() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for (n, beta) in [(1, 1.0), (1, 2.0), (2, 1.0)] {
        let r = equality_criteria(&WeightFunction::iterlog(n, beta).unwrap());
        let all = [r.conds2_iii, r.trivial_test, r.propeq_hypotheses].iter().all(|v| *v == ConditionVerdict::Holds);
        pass &= all;
        details.push(format!("iterlog({n},{beta}) {}", if all { "all hold" } else { "fails" }));
    }
    let r = equality_criteria(&WeightFunction::exppow(1, 0.5).unwrap());
    let at = |eps: f64| r.trivial_ratios.iter().find(|x| x.0 == eps).map(|x| x.1).unwrap();
    let growth = at(0.05) / at(0.2);
    pass &= r.trivial_test != ConditionVerdict::Holds && growth >= 10.0;
    details.push(format!("exppow(1,1/2) trivial test {:?}, growth {growth:.1}x", r.trivial_test));
    outcome(pass, details.join("; "))
}

fn heat_corollary() -> Outcome {
    let w = WeightFunction::log1p();
    let mut pass = true;
    let mut details = Vec::new();
    for c in [0.5, 1.0, 3.0] {
        let v = heat(&harmonic(c), &w, &heat_grid(), None).unwrap().estimate.value;
        pass &= rel(v, c) < 0.05;
        details.push(format!("C = {c}: {v:.4}"));
    }
    outcome(pass, details.join(", "))
}

fn weyl_pipeline() -> Outcome {
    let s = SymbolGrid::sample(&SymbolDescriptor::harmonic_oscillator(), 12.0, 512).unwrap();
    let mut ev = eigenvalues(&quantize(&s).unwrap()).unwrap().values;
    ev.reverse();
    let spec_err = ev.iter().take(10).enumerate().map(|(k, v)| rel(*v, 2.0 * k as f64 + 1.0)).fold(0.0, f64::max);

    let w = WeightFunction::log1p();
    let g = ScaleGrid::standard_exponent(30.0).unwrap();
    let r = dixmier_compare(&SymbolDescriptor::inv_harmonic(), &w, &g, Quantization { l: 12.0, n: 512 }).unwrap();
    let sides = [r.operator_side, r.symbol_side, r.zeta_side];
    let agree = sides.iter().all(|a| sides.iter().all(|b| gap(*a, *b) < 0.1)) && sides.iter().all(|v| rel(*v, 0.5) < 0.1);
    let finite = r.lorentz_operator.is_finite() && r.lorentz_symbol.is_finite();
    outcome(
        spec_err < 0.01 && agree && finite,
        format!(
            "(a) max rel error {spec_err:.1e}; (b) operator {:.4}, symbol {:.4}, zeta {:.4}; (c) Lorentz {:.4} / {:.4}",
            sides[0], sides[1], sides[2], r.lorentz_operator.value, r.lorentz_symbol.value
        ),
    )
}

fn singularity_and_homogeneity() -> Outcome {
    let w = WeightFunction::log1p();
    let g = ScaleGrid::standard_exponent(30.0).unwrap();
    let c = c_zeta(&w).unwrap();
    let samples = |p: &SingularValueProfile| -> [Vec<f64>; 4] {
        [
            partial_sum(p, &w, &g).unwrap().values,
            cutoff(p, &w, &g).unwrap().estimate.values,
            zeta(p, &w, &g, None).unwrap().values,
            heat(p, &w, &g, None).unwrap().estimate.values,
        ]
    };
    let names = ["partial_sum", "cutoff", "zeta", "heat"];

    // finite rank: every sample is at most K Tr(T) / ψ(t), so the functional tends to 0
    let mut finite = vec![catalog::profile("finite_rank", &w).unwrap(), SingularValueProfile::zero()];
    finite.extend(random_profiles(7, 5, 200).unwrap());
    let mut singular_ok = true;
    for p in &finite {
        let trace = p.trace_of(SpectralFn::Power(1.0));
        let mu0 = p.mu(0.0);
        for (i, vals) in samples(p).iter().enumerate() {
            for (&r, &v) in g.values().iter().zip(vals) {
                let k = if i == 2 { c * mu0.max(1.0).powf(1.0 / r) } else { 1.0 };
                let psi = w.ln_value_at_ln(r).exp();
                singular_ok &= v >= 0.0 && v * psi <= k * trace * (1.0 + 1e-9);
            }
        }
    }

    let mut worst = [0.0f64; 4];
    for p in [harmonic(1.0), random_profiles(11, 1, 200).unwrap().remove(0)] {
        let base = samples(&p);
        let tripled = samples(&p.scaled(3.0).unwrap());
        for i in 0..4 {
            for (a, b) in tripled[i].iter().zip(&base[i]) {
                worst[i] = worst[i].max(gap(*a, 3.0 * b));
            }
        }
    }
    let homogeneous = worst.iter().all(|e| *e <= 1e-12);
    let errs: Vec<String> = names.iter().zip(worst).map(|(n, e)| format!("{n} {e:.1e}")).collect();
    outcome(
        singular_ok && homogeneous,
        format!(
            "finite rank bounded by Tr(T)/ψ: {}; homogeneity max rel error {}",
            if singular_ok { "yes" } else { "no" },
            errs.join(", ")
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Option<u64>, fn() -> Outcome)> = vec![
        ("1 three-way agreement", Some(5), three_way_agreement),
        ("2 nontrivial exponent", Some(10), nontrivial_exponent),
        ("3 Karamata identity", None, karamata_identity),
        ("4 condition hierarchy", None, condition_hierarchy),
        ("5 extrapolation sandwich", None, extrapolation_sandwich),
        ("6 equality criteria", None, equality),
        ("7 heat asymptotics", None, heat_corollary),
        ("8 Weyl pipeline", Some(120), weyl_pipeline),
        ("9 singularity and homogeneity", None, singularity_and_homogeneity),
    ];
    let mut failed = Vec::new();
    for (name, limit, f) in criteria {
        let o = timed(limit.map(Duration::from_secs), f);
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
