//! Numerical thresholds shared across modules.
//!
//! Every artifact written by the CLI records these values in its header so a
//! file can be traced back to the settings that produced it.

use serde::Serialize;

/// Default Fourier truncation order: modes `m` run over `-N..=N`.
pub const DEFAULT_BASIS_N: usize = 128;

/// `|lambda - omega^2| < RESONANCE_REL * (1 + lambda)` counts as resonant.
pub const RESONANCE_REL: f64 = 1e-8;

/// Eigenvalues closer than `DEGENERACY_REL * (1 + lambda)` form one cluster.
pub const DEGENERACY_REL: f64 = 1e-8;

/// `|<w>|` at or below this is treated as a vanishing mean.
pub const ZERO_MEAN_W: f64 = 1e-12;

/// Phase normalisation falls back to the largest coefficient below this.
pub const PHASE_FIX: f64 = 1e-12;

/// A mode with `|<phi>|` at or below this is invisible.
pub const VISIBILITY: f64 = 1e-8;

/// Relative solvability tolerance for projected solves.
pub const SOLVABILITY: f64 = 1e-6;

/// `|M2|` below this makes the two-scale impedance undefined.
pub const MODULATION_FLOOR: f64 = 1e-12;

/// Relative tolerance for identities evaluated on the exact route.
pub const IDENTITY_EXACT: f64 = 1e-8;

/// Relative tolerance for identities evaluated on the spectral route.
pub const IDENTITY_SPECTRAL: f64 = 1e-5;

/// Residual below which a spectral identity is considered at round-off,
/// so a refinement-improvement requirement is vacuous.
pub const ROUNDOFF_FLOOR: f64 = 1e-11;

/// Scan step and bisection tolerance for branch root finding.
pub const ROOT_SCAN_STEP: f64 = 0.01;
pub const ROOT_BISECT_TOL: f64 = 1e-13;

/// Snapshot of the thresholds, serialised into artifact headers.
#[derive(Clone, Debug, Serialize)]
pub struct ToleranceSet {
    pub resonance_rel: f64,
    pub degeneracy_rel: f64,
    pub zero_mean_w: f64,
    pub visibility: f64,
    pub solvability: f64,
    pub modulation_floor: f64,
    pub identity_exact: f64,
    pub identity_spectral: f64,
}

impl Default for ToleranceSet {
    fn default() -> Self {
        Self {
            resonance_rel: RESONANCE_REL,
            degeneracy_rel: DEGENERACY_REL,
            zero_mean_w: ZERO_MEAN_W,
            visibility: VISIBILITY,
            solvability: SOLVABILITY,
            modulation_floor: MODULATION_FLOOR,
            identity_exact: IDENTITY_EXACT,
            identity_spectral: IDENTITY_SPECTRAL,
        }
    }
}

impl ToleranceSet {
    /// Compact `key=value` rendering for CSV comment headers.
    pub fn header_line(&self) -> String {
        format!(
            "resonance_rel={:e} degeneracy_rel={:e} zero_mean_w={:e} visibility={:e} solvability={:e} modulation_floor={:e}",
            self.resonance_rel,
            self.degeneracy_rel,
            self.zero_mean_w,
            self.visibility,
            self.solvability,
            self.modulation_floor
        )
    }
}
