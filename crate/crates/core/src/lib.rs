//! Exact symbolic workbench for the bicomplex of a grading-restricted
//! vertex algebra, instantiated on the truncated rank-one Heisenberg
//! vertex algebra.

pub mod bicomplex;
pub mod continual;
pub mod correlators;
pub mod diffalg;
pub mod error;
pub mod linalg;
pub mod ratcalc;
pub mod scalar;
pub mod voa;

pub use error::{Error, Result};
