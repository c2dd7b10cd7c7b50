//! Dixmier-trace functionals, their tail classification and cross-checks.

mod compare;
mod functionals;
mod grid;
mod karamata;
mod limit;

pub use compare::{compare_all, relative_gap, CompareReport, FUNCTIONAL_NAMES};
pub use functionals::{
    cutoff, heat, heat_membership, partial_sum, twisted_cesaro, zeta, CutoffResult, HeatMembership, HeatResult,
};
pub use grid::{ScaleGrid, ScaleKind};
pub use karamata::{karamata_check, KaramataCase, KaramataResult};
pub use limit::{limit_estimate, LimitEstimate, LimitVerdict};
