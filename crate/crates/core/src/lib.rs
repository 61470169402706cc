//! Equivariant spaces of matrices of constant and bounded rank: construction,
//! rank prediction and exact certification.

pub mod catalog;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod field;
pub mod matrix;
pub mod pencil;
pub mod rank;
pub mod reps;

pub use error::{Error, Result};
