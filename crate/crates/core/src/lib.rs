//! Siegel upper half space: Möbius actions of complex symplectic matrices,
//! sufficient conditions for preserving the space, and the Finsler distance
//! with its closed form.

pub mod document;
pub mod error;
pub mod matrix;
pub mod metric;
pub mod sampling;
pub mod siegel;
pub mod suites;
pub mod symplectic;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Tolerance};
