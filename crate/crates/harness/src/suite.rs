//! Seeded random-profile suites.

use dixmier_core::extrapolate::{frak_norms_with, PGrid, WeightNorms};
use dixmier_core::rearrange::{mu_from_values, SingularValueProfile};
use dixmier_core::weight::WeightFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

pub const SUITE_PROFILES: usize = 50;
pub const PROFILE_TERMS: usize = 1000;

/// `v_k = u_k / k`, `u_k` uniform on `[0.5, 1.5]`.
pub fn random_values(rng: &mut impl Rng, terms: usize) -> Vec<f64> {
    (1..=terms).map(|k| rng.gen_range(0.5..=1.5) / k as f64).collect()
}

/// `count` profiles drawn from one generator seeded with `seed`.
pub fn random_profiles(seed: u64, count: usize, terms: usize) -> Result<Vec<SingularValueProfile>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Ok(mu_from_values(&random_values(&mut rng, terms))?)).collect()
}

pub fn sandwich_weights() -> Result<Vec<WeightFunction>> {
    Ok(vec![WeightFunction::iterlog(1, 1.0)?, WeightFunction::iterlog(1, 2.0)?, WeightFunction::iterlog(2, 1.0)?])
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichRow {
    pub profile: usize,
    pub weight: String,
    pub frak_upper: f64,
    pub lorentz: f64,
    pub frak_lower: f64,
    pub constant: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichSuite {
    pub seed: u64,
    pub checked: usize,
    pub violations: usize,
    pub rows: Vec<SandwichRow>,
}

/// Checks the extrapolation sandwich on every seeded profile and weight.
pub fn sandwich_suite(seed: u64) -> Result<SandwichSuite> {
    let profiles = random_profiles(seed, SUITE_PROFILES, PROFILE_TERMS)?;
    let grid = PGrid::standard();
    let mut rows = Vec::new();
    for w in sandwich_weights()? {
        let wn = WeightNorms::new(&w, &grid);
        let label = w.label();
        let mut part: Vec<SandwichRow> = profiles
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let r = frak_norms_with(p, &wn);
                SandwichRow {
                    profile: i,
                    weight: label.clone(),
                    frak_upper: r.frak_upper.value,
                    lorentz: r.lorentz,
                    frak_lower: r.frak_lower.value,
                    constant: r.sandwich_constant,
                    ok: r.sandwich_ok,
                }
            })
            .collect();
        rows.append(&mut part);
    }
    let violations = rows.iter().filter(|r| !r.ok).count();
    Ok(SandwichSuite { seed, checked: rows.len(), violations, rows })
}

impl SandwichSuite {
    /// One row per profile and weight; weight labels are quoted.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}
