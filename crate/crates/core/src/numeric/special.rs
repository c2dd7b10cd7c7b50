//! Harmonic numbers for real arguments.

pub use statrs::function::gamma::{gamma, ln_gamma};

const EULER: f64 = 0.577_215_664_901_532_9;

/// `H_x = ψ(x + 1) + γ`; equals `1 + 1/2 + ... + 1/n` at integers.
pub fn harmonic(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < 64.0 && x.fract() == 0.0 {
        return (1..=x as u64).map(|k| 1.0 / k as f64).sum();
    }
    statrs::function::gamma::digamma(x + 1.0) + EULER
}
