//! The crate-wide error type.

use thiserror::Error;

/// Errors raised by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("resonance: omega^2 = {omega2} is within the window of eigenvalue {eigenvalue}")]
    Resonance { omega2: f64, eigenvalue: f64 },

    #[error("solvability violated: projection {residual:e} exceeds tolerance {tolerance:e}")]
    NotSolvable { residual: f64, tolerance: f64 },

    #[error("cell average of w vanishes (|<w>| = {0:e}); the impedance is undefined here")]
    VanishingMean(f64),

    #[error("modulation factor vanishes at (k, omega) = ({k}, {omega}): |M2| = {value:e}")]
    ModulationSingular { k: f64, omega: f64, value: f64 },

    #[error("branch terminated at k = {k}: {reason}")]
    BranchTerminated { k: f64, reason: String },

    #[error("root search failed: {0}")]
    NoRoot(String),

    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 2 for configuration problems,
    /// 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidMaterial(_)
            | Error::UnsupportedGeometry(_)
            | Error::Config(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
