//! Reproducible experiments over `dixmier-core`: JSON configs in, CSV
//! samples and JSON reports out.

pub mod config;
pub mod csvio;
pub mod error;
pub mod report;
pub mod run;
pub mod suite;

pub use config::{ExperimentConfig, ExperimentKind, GridConfig, Outputs, QuantizationConfig};
pub use error::{HarnessError, Result};
pub use run::{run, Outcome, RunReport, Table};

/// Sizes the global rayon pool from `DIXMIER_THREADS` when set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("DIXMIER_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| HarnessError::Config(format!("DIXMIER_THREADS must be a positive integer, got `{v}`")))?;
    if n == 0 {
        return Err(HarnessError::Config("DIXMIER_THREADS must be at least 1".into()));
    }
    // a pool built earlier in the process wins; that is fine for tests
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
