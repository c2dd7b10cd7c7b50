use dixmier_core::rearrange::{mu_from_values, FiniteProfile, SingularValueProfile};
use dixmier_harness::csvio::{read_profile, write_profile, write_table};
use dixmier_harness::suite::{random_profiles, random_values, sandwich_suite};
use dixmier_harness::HarnessError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn finite(p: &SingularValueProfile) -> &FiniteProfile {
    p.as_finite().unwrap()
}

#[test]
fn profile_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let p = mu_from_values(&[0.3, 1.0 / 3.0, 0.1, 0.1, 1e-17]).unwrap();
    write_profile(&path, finite(&p)).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("knot,value\n"));
    assert!(text.ends_with(",0.0\n"));
    let q = read_profile(&path).unwrap();
    assert_eq!(finite(&q), finite(&p));
}

#[test]
fn random_profiles_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    for (i, p) in random_profiles(3, 4, 50).unwrap().iter().enumerate() {
        let path = dir.path().join(format!("{i}.csv"));
        write_profile(&path, finite(p)).unwrap();
        assert_eq!(finite(&read_profile(&path).unwrap()), finite(p));
    }
}

#[test]
fn malformed_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("header", "t,mu\n0,1\n1,0\n"),
        ("number", "knot,value\n0,one\n1,0\n"),
        ("open support", "knot,value\n0,1\n1,0.5\n"),
        ("increasing", "knot,value\n0,1\n1,2\n2,0\n"),
        ("empty", "knot,value\n"),
    ];
    for (name, body) in cases {
        let path = dir.path().join(format!("{name}.csv"));
        std::fs::write(&path, body).unwrap();
        let e = read_profile(&path).unwrap_err();
        assert!(matches!(e, HarnessError::Csv { .. }), "{name}: {e}");
        assert_eq!(e.exit_code(), 2);
    }
    let e = read_profile(&dir.path().join("missing.csv")).unwrap_err();
    assert!(matches!(e, HarnessError::Io { .. }), "{e}");
}

#[test]
fn tables_format_non_finite_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    write_table(&path, &["a", "b"], &[vec![1.0, f64::NAN], vec![0.1, f64::INFINITY]]).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1.0,nan\n0.1,inf\n");
}

#[test]
fn random_values_follow_the_suite_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = random_values(&mut rng, 5000);
    for (k, x) in v.iter().enumerate() {
        let u = x * (k + 1) as f64;
        assert!((0.5..=1.5).contains(&u));
    }
    let mean = v.iter().enumerate().map(|(k, x)| x * (k + 1) as f64).sum::<f64>() / v.len() as f64;
    assert!((mean - 1.0).abs() < 0.02, "{mean}");
}

#[test]
fn suites_are_reproducible_and_seed_dependent() {
    let a = sandwich_suite(17).unwrap();
    let b = sandwich_suite(17).unwrap();
    assert_eq!(a.csv(), b.csv());
    assert_eq!(a.violations, 0);
    assert!(a.csv().contains("\"iterlog(1,1)\""));
    assert_ne!(a.csv(), sandwich_suite(18).unwrap().csv());
}
