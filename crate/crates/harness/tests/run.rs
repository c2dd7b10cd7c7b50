use dixmier_core::traces::ScaleKind;
use dixmier_core::weight::WeightSpec;
use dixmier_harness::{run, ExperimentConfig, ExperimentKind, GridConfig, HarnessError, Outcome};

fn config(kind: ExperimentKind) -> ExperimentConfig {
    ExperimentConfig::new(kind)
}

#[test]
fn trace_compare_harmonic_is_measurable() {
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile = Some("harmonic".into());
    let r = run(&c).unwrap();
    assert_eq!(r.summary["measurable"], true);
    let v = r.summary["value"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 0.05, "{v}");
    assert_eq!(r.summary["gaps"].as_object().unwrap().len(), 6);
    assert_eq!(r.table.header, ["scale", "partial_sum", "cutoff", "zeta", "heat"]);
    assert_eq!(r.table.rows.len(), 36);
    assert_eq!(r.verdicts["measurable"], "holds");
}

#[test]
fn psi_report_exppow_three_quarters_fails_ssz() {
    let mut c = config(ExperimentKind::PsiReport);
    c.weight = WeightSpec::Exppow { n: 1, beta: 0.75 };
    let r = run(&c).unwrap();
    assert_eq!(r.verdicts["cond_ssz"], "fails_diverges");
    assert_eq!(r.table.header, ["a", "dilation_norm", "boyd"]);
    assert!(!r.table.rows.is_empty());
}

#[test]
fn weyl_compare_inv_harmonic_gap_is_small() {
    let mut c = config(ExperimentKind::WeylCompare);
    c.symbol = Some("inv_harmonic".into());
    let r = run(&c).unwrap();
    assert!(r.summary["gap"].as_f64().unwrap() < 0.1);
    for k in ["operator_side", "symbol_side", "zeta_side"] {
        let v = r.summary[k].as_f64().unwrap();
        assert!((v - 0.5).abs() < 0.05, "{k} {v}");
    }
    assert_eq!(r.table.rows.len(), 512);
    assert!(r.table.rows.windows(2).all(|w| w[1][1] <= w[0][1]));
    assert!(matches!(r.results, Outcome::Weyl(_)));
}

#[test]
fn karamata_default_grid() {
    let mut c = config(ExperimentKind::Karamata);
    c.karamata = Some("power2".into());
    let r = run(&c).unwrap();
    assert_eq!(r.verdicts["agree"], "holds");
    assert_eq!(r.table.rows.len(), 40);
    assert!((r.table.rows[39][0] - 1e6).abs() < 1e-3);
}

#[test]
fn lorentz_report_columns() {
    let mut c = config(ExperimentKind::LorentzReport);
    c.profile = Some("harmonic".into());
    let r = run(&c).unwrap();
    assert_eq!(r.table.header, ["p", "lp_norm", "lower_ratio", "upper_ratio"]);
    assert_eq!(r.table.rows.len(), 48);
    // μ = 1/k: ‖μ‖_p = ζ(p)^{1/p}
    let row = &r.table.rows[47];
    let zeta: f64 = (1..200_000).map(|k| (k as f64).powf(-row[0])).sum();
    assert!((row[1] - zeta.powf(1.0 / row[0])).abs() < 1e-6);
    assert_eq!(r.verdicts["sandwich"], "holds");
}

#[test]
fn report_echoes_config_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile = Some("harmonic".into());
    c.seed = 42;
    c.outputs.csv = Some(dir.path().join("nested/t.csv"));
    c.outputs.json = Some(dir.path().join("t.json"));
    let r = run(&c).unwrap();
    assert_eq!(r.config, c);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    let echoed: ExperimentConfig = serde_json::from_value(json["config"].clone()).unwrap();
    assert_eq!(echoed, c);
    assert_eq!(json["tool"], "dixmier");
    assert!(json["gaps"].is_object() && json["measurable"].is_boolean());
    let csv = std::fs::read_to_string(dir.path().join("nested/t.csv")).unwrap();
    assert!(csv.starts_with("scale,partial_sum,cutoff,zeta,heat\n"));
    assert_eq!(csv.lines().count(), 37);
}

#[test]
fn rerun_gives_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for i in 0..2 {
        let mut c = config(ExperimentKind::LorentzReport);
        c.profile = Some("log_harmonic".into());
        c.seed = 5;
        c.outputs.csv = Some(dir.path().join(format!("{i}.csv")));
        run(&c).unwrap();
        bytes.push(std::fs::read(dir.path().join(format!("{i}.csv"))).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn profile_from_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    std::fs::write(&path, "knot,value\n0,1\n1,0.5\n3,0\n").unwrap();
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile_csv = Some(path);
    let r = run(&c).unwrap();
    // trace 2, so the partial sum at t = e^30 is 2 / log(1 + e^30)
    let ps = r.table.rows.last().unwrap()[1];
    assert!((ps - 2.0 / 30f64.exp().ln_1p()).abs() < 1e-12);
}

#[test]
fn errors_map_to_exit_codes() {
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile = Some("nope".into());
    let e = run(&c).unwrap_err();
    assert!(matches!(e, HarnessError::Config(_)));
    assert_eq!(e.exit_code(), 2);

    // log-type symbol against a weight without an exponentiation index: numeric failure
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile = Some("harmonic".into());
    c.weight = WeightSpec::Exppow { n: 1, beta: 0.5 };
    let e = run(&c).unwrap_err();
    assert!(matches!(e, HarnessError::Numeric(_)), "{e}");
    assert_eq!(e.exit_code(), 3);

    let mut c = config(ExperimentKind::PsiReport);
    c.outputs.csv = Some("/proc/definitely/not/writable.csv".into());
    let e = run(&c).unwrap_err();
    assert!(matches!(e, HarnessError::Io { .. }));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn explicit_grid_is_used() {
    let mut c = config(ExperimentKind::TraceCompare);
    c.profile = Some("harmonic_continuous".into());
    c.grid = Some(GridConfig { kind: ScaleKind::Exponent, min: 1.0, max: 25.0, points: 30 });
    let r = run(&c).unwrap();
    assert_eq!(r.table.rows.len(), 30);
    assert!((r.table.rows[29][0] - 25.0).abs() < 1e-12);
    // cumulative 1 + log t against ψ = log(1 + t)
    for row in &r.table.rows {
        let oracle = (1.0 + row[0]) / row[0].exp().ln_1p();
        assert!((row[1] - oracle).abs() < 1e-12, "{row:?}");
    }
}
