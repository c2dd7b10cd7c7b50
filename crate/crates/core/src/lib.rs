pub mod catalog;
pub mod error;
pub mod extrapolate;
pub mod numeric;
pub mod rearrange;
pub mod traces;
pub mod weight;
pub mod weyl;

pub use error::{Error, Result};
