//! Piecewise-constant 1D unit cells on `Y = [0, 1)`.
//!
//! A cell is an ordered list of phases. Each phase has a length, a shear
//! modulus `G` and a density `rho`; the phases tile `[0, 1)` left to right.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fourier::FourierField;

/// Total phase length must equal one to within this.
pub const LENGTH_TOL: f64 = 1e-12;

/// One homogeneous layer of the cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Phase {
    pub length: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub rho: f64,
}

impl Phase {
    pub fn new(length: f64, g: f64, rho: f64) -> Self {
        Self { length, g, rho }
    }

    /// Local wave speed `sqrt(G / rho)`.
    pub fn wave_speed(&self) -> f64 {
        (self.g / self.rho).sqrt()
    }

    /// Acoustic impedance `sqrt(G rho)`.
    pub fn impedance(&self) -> f64 {
        (self.g * self.rho).sqrt()
    }
}

/// Which piecewise-constant coefficient to sample or transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Shear,
    Density,
    /// `1 / G`.
    Compliance,
    Unit,
}

impl FieldKind {
    fn value(self, p: &Phase) -> f64 {
        match self {
            FieldKind::Shear => p.g,
            FieldKind::Density => p.rho,
            FieldKind::Compliance => 1.0 / p.g,
            FieldKind::Unit => 1.0,
        }
    }
}

/// A phase located in the cell: `[start, end)` together with its data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub phase: Phase,
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

/// A validated unit cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCell", into = "RawCell")]
pub struct UnitCell1D {
    phases: Vec<Phase>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    phases: Vec<Phase>,
}

impl TryFrom<RawCell> for UnitCell1D {
    type Error = Error;
    fn try_from(raw: RawCell) -> Result<Self> {
        UnitCell1D::new(raw.phases)
    }
}

impl From<UnitCell1D> for RawCell {
    fn from(cell: UnitCell1D) -> Self {
        RawCell { phases: cell.phases }
    }
}

impl UnitCell1D {
    /// Validates and builds a cell. Lengths and coefficients must be finite and
    /// positive and the lengths must sum to one.
    pub fn new(phases: Vec<Phase>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::InvalidMaterial("a cell needs at least one phase".into()));
        }
        for (i, p) in phases.iter().enumerate() {
            for (name, v) in [("length", p.length), ("G", p.g), ("rho", p.rho)] {
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::InvalidMaterial(format!(
                        "phase {i}: {name} must be finite and positive, got {v}"
                    )));
                }
            }
        }
        let total: f64 = phases.iter().map(|p| p.length).sum();
        if (total - 1.0).abs() > LENGTH_TOL {
            return Err(Error::InvalidMaterial(format!("phase lengths sum to {total}, expected 1")));
        }
        Ok(Self { phases })
    }

    /// Single-phase cell.
    pub fn homogeneous(g: f64, rho: f64) -> Result<Self> {
        Self::new(vec![Phase::new(1.0, g, rho)])
    }

    /// Two equal halves: `(G, rho) = (1, 1)` on `[0, 1/2)` and
    /// `(gamma_g, gamma_rho)` on `[1/2, 1)`.
    pub fn bilaminate(gamma_g: f64, gamma_rho: f64) -> Result<Self> {
        Self::new(vec![Phase::new(0.5, 1.0, 1.0), Phase::new(0.5, gamma_g, gamma_rho)])
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Phases with their absolute positions. The last segment ends exactly at 1.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::with_capacity(self.phases.len());
        let mut start = 0.0;
        let last = self.phases.len() - 1;
        for (i, p) in self.phases.iter().enumerate() {
            let end = if i == last { 1.0 } else { start + p.length };
            out.push(Segment { start, end, phase: *p });
            start = end;
        }
        out
    }

    /// Right-continuous sample on the periodic cell.
    pub fn sample(&self, x: f64, kind: FieldKind) -> f64 {
        let xr = x - x.floor();
        let segs = self.segments();
        let seg = segs.iter().find(|s| xr < s.end).unwrap_or_else(|| segs.last().expect("non-empty cell"));
        kind.value(&seg.phase)
    }

    /// Cell average of a coefficient.
    pub fn mean(&self, kind: FieldKind) -> f64 {
        self.phases.iter().map(|p| p.length * kind.value(p)).sum()
    }

    /// Harmonic mean of the shear modulus, `<1/G>^-1`.
    pub fn harmonic_shear(&self) -> f64 {
        1.0 / self.mean(FieldKind::Compliance)
    }

    /// True when every phase has the same density.
    pub fn has_constant_density(&self) -> bool {
        let r0 = self.phases[0].rho;
        self.phases.iter().all(|p| p.rho == r0)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cell serialises")
    }

    /// SHA-256 of the compact JSON form, hex encoded. Used to tag artifacts.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `int_a^b exp(-i theta x) dx` without cancellation for small `theta`.
fn segment_exponential(theta: f64, a: f64, b: f64) -> C64 {
    let h = b - a;
    if theta == 0.0 {
        return C64::new(h, 0.0);
    }
    let half = 0.5 * theta * h;
    let amplitude = h * half.sin() / half;
    C64::from_polar(amplitude, -0.5 * theta * (a + b))
}

/// Closed-form Fourier coefficients
/// `c_m = int_Y f(x) exp(-2 pi i m x) dx` for `m in -order..=order`.
pub fn fourier_coefficients(cell: &UnitCell1D, kind: FieldKind, order: usize) -> FourierField {
    let n = order as i64;
    let segs = cell.segments();
    let coeffs = (-n..=n)
        .map(|m| {
            let theta = 2.0 * PI * m as f64;
            segs.iter().map(|s| kind.value(&s.phase) * segment_exponential(theta, s.start, s.end)).sum()
        })
        .collect();
    FourierField::from_coeffs(order, coeffs)
}
