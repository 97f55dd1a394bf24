//! Exact-arithmetic classification of the singularities of the irreducible
//! components of the reduced stack of rank-two mod p (phi, Gamma)-modules,
//! labelled by Serre weights, together with the chart-level computations
//! that cross-check it.

pub mod charts;
pub mod classify;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod galois;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod shapes;
pub mod weights;

pub use error::{Error, Result};
