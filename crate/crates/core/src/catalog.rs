//! Built-in weights, profiles, symbols and Karamata cases, addressed by id.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rearrange::models::{harmonic, harmonic_continuous, log_harmonic, loglog_oscillation, psi_prime};
use crate::rearrange::{mu_from_values, SingularValueProfile};
use crate::traces::KaramataCase;
use crate::weight::WeightFunction;
use crate::weyl::SymbolDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Weight,
    Profile,
    Symbol,
    Karamata,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub kind: EntryKind,
    pub id: &'static str,
    pub description: &'static str,
    /// Where the expected behavior comes from.
    pub note: &'static str,
}

const ENTRIES: &[(EntryKind, &str, &str, &str)] = &[
    (EntryKind::Weight, "log", "log(1 + t)", "iterlog with n = 1, β = 1"),
    (EntryKind::Weight, "iterlog", "(log(1 + ... log(1 + t^{1/β})))^β with n logarithms", "family parameters n ≥ 1, β > 0"),
    (EntryKind::Weight, "exppow", "linear on [0, C], exp((log^n t)^β) beyond", "family parameters n ≥ 1, 0 < β < 1"),
    (EntryKind::Weight, "tabulated", "piecewise linear concave weight through given knots", "user supplied"),
    (EntryKind::Profile, "harmonic", "μ_k = 1/k", "partial sums log t + γ + o(1)"),
    (EntryKind::Profile, "harmonic_continuous", "μ(t) = min(1, 1/t)", "cumulative 1 + log t"),
    (EntryKind::Profile, "log_harmonic", "μ_k = log(k + 2)/k", "partial sums log²t / 2 + O(1)"),
    (EntryKind::Profile, "psi_prime", "μ = ψ' for the chosen weight", "cumulative equals ψ"),
    (EntryKind::Profile, "loglog_oscillation", "μ(t) = (2 + sin log log t)/t", "normalized partial sums oscillate, not measurable"),
    (EntryKind::Profile, "finite_rank", "singular values 0.9, 0.4, 0.4, 0.1", "every singular trace vanishes"),
    (EntryKind::Profile, "zero", "the zero operator", "every functional vanishes"),
    (EntryKind::Symbol, "inv_harmonic", "(1 + x² + ξ²)^-1", "μ_f(t) = π/(π + t), Dixmier value 1/2"),
    (EntryKind::Symbol, "log_inv_harmonic", "(1 + x² + ξ²)^-1 log(2 + x² + ξ²)", "Dixmier value 1 for ψ = iterlog(1, 2)"),
    (EntryKind::Symbol, "harmonic_oscillator", "x² + ξ²", "spectrum 2k + 1"),
    (EntryKind::Symbol, "gaussian", "exp(-x² - ξ²)", "quantizes to half a rank one projection"),
    (EntryKind::Symbol, "box_indicator", "2 on [-3, 3]²", "bounded support, zeta side tends to 0"),
    (EntryKind::Karamata, "power1", "β(t) = t, φ(r) = r", "exact, both sides equal 1"),
    (EntryKind::Karamata, "power2", "β(t) = t², φ(r) = r²", "exact, both sides equal 1"),
    (EntryKind::Karamata, "power3", "β(t) = t³, φ(r) = r³", "exact, both sides equal 1"),
    (EntryKind::Karamata, "perturbed_linear", "β(t) = t + sin(t)/2, φ(r) = r", "bounded perturbation, both sides tend to 1"),
];

pub fn catalog() -> Vec<CatalogEntry> {
    ENTRIES.iter().map(|&(kind, id, description, note)| CatalogEntry { kind, id, description, note }).collect()
}

pub fn contains(kind: EntryKind, id: &str) -> bool {
    ENTRIES.iter().any(|e| e.0 == kind && e.1 == id)
}

/// Profile by id; `w` is only used by `psi_prime`.
pub fn profile(id: &str, w: &WeightFunction) -> Result<SingularValueProfile> {
    match id {
        "harmonic" => Ok(harmonic(1.0)),
        "harmonic_continuous" => Ok(harmonic_continuous()),
        "log_harmonic" => Ok(log_harmonic()),
        "psi_prime" => Ok(psi_prime(w)),
        "loglog_oscillation" => Ok(loglog_oscillation()),
        "finite_rank" => mu_from_values(&[0.9, 0.4, 0.4, 0.1]),
        "zero" => Ok(SingularValueProfile::zero()),
        _ => Err(Error::UnknownId(id.into())),
    }
}

pub fn symbol(id: &str) -> Result<SymbolDescriptor> {
    match id {
        "inv_harmonic" => Ok(SymbolDescriptor::inv_harmonic()),
        "log_inv_harmonic" => Ok(SymbolDescriptor::log_inv_harmonic()),
        "harmonic_oscillator" => Ok(SymbolDescriptor::harmonic_oscillator()),
        "gaussian" => Ok(SymbolDescriptor::gaussian()),
        "box_indicator" => Ok(SymbolDescriptor::box_indicator(2.0, 3.0)),
        _ => Err(Error::UnknownId(id.into())),
    }
}

pub fn karamata_case(id: &str) -> Result<KaramataCase> {
    match id {
        "power1" => Ok(KaramataCase::power(1)),
        "power2" => Ok(KaramataCase::power(2)),
        "power3" => Ok(KaramataCase::power(3)),
        "perturbed_linear" => Ok(KaramataCase::perturbed_linear()),
        _ => Err(Error::UnknownId(id.into())),
    }
}

/// Named weight without parameters.
pub fn weight(id: &str) -> Result<WeightFunction> {
    match id {
        "log" => Ok(WeightFunction::log1p()),
        _ => Err(Error::UnknownId(id.into())),
    }
}
