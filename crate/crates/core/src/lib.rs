//! Bloch-wave homogenization of one-dimensional periodic elastic cells.
//!
//! The crate computes, for a layered unit cell, the cell functions of the
//! Bloch expansion, the effective Willis parameters and impedance, the static
//! cell-problem chain behind the second-order two-scale model, and the
//! dispersion branches used to compare the models. See the `examples/`
//! directory for one runnable program per capability.

pub mod asymptotics;
pub mod cell_functions;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod fourier;
pub mod io;
pub mod material;
pub mod parallel;
pub mod report;
pub mod special;
pub mod spectral;
pub mod tolerances;
pub mod willis;

pub use error::{Error, Result};
pub use material::{Phase, UnitCell1D};
