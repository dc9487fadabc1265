//! Exact state-transfer certificates for `(beta, gamma)` pair perturbations
//! of strongly regular graphs.

pub mod arith;
pub mod certificate;
pub mod error;
pub mod graph;
pub mod perturbation;
pub mod pgst;
pub mod pst;
pub mod spectra;
pub mod surd;
pub mod walk;

pub use error::{Error, Result};
