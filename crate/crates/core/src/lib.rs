pub mod asymptotic;
pub mod cli;
pub mod coherence;
pub mod convertibility;
pub mod correlation;
pub mod error;
pub mod matrixlab;

pub use error::{Error, Result};
pub use matrixlab::*;
