//! Real piecewise polynomials on the phases of a cell.
//!
//! Each segment stores coefficients in the local variable `t = x - start`.
//! Phase coefficients are constant, so every static cell field of a layered
//! cell is a piecewise polynomial and all averages are exact.

use crate::material::{FieldKind, UnitCell1D};

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly {
    starts: Vec<f64>,
    lengths: Vec<f64>,
    coeffs: Vec<Vec<f64>>,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return vec![0.0];
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &x| acc * t + x)
}

/// `int_0^t p`.
fn poly_prim(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; c.len() + 1];
    for (i, x) in c.iter().enumerate() {
        out[i + 1] = x / (i as f64 + 1.0);
    }
    out
}

impl PiecewisePoly {
    fn with(cell: &UnitCell1D, f: impl Fn(usize) -> Vec<f64>) -> Self {
        let segs = cell.segments();
        Self {
            starts: segs.iter().map(|s| s.start).collect(),
            lengths: segs.iter().map(|s| s.length()).collect(),
            coeffs: (0..segs.len()).map(f).collect(),
        }
    }

    pub fn constant(cell: &UnitCell1D, value: f64) -> Self {
        Self::with(cell, |_| vec![value])
    }

    /// The phase coefficient `kind` as a piecewise constant.
    pub fn coefficient(cell: &UnitCell1D, kind: FieldKind) -> Self {
        let segs = cell.segments();
        Self::with(cell, |i| {
            let p = segs[i].phase;
            vec![match kind {
                FieldKind::Shear => p.g,
                FieldKind::Density => p.rho,
                FieldKind::Compliance => 1.0 / p.g,
                FieldKind::Unit => 1.0,
            }]
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> Self {
        Self {
            starts: self.starts.clone(),
            lengths: self.lengths.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| {
            let mut out = vec![0.0; a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                out[i] += x;
            }
            for (i, x) in b.iter().enumerate() {
                out[i] += x;
            }
            out
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            starts: self.starts.clone(),
            lengths: self.lengths.clone(),
            coeffs: self.coeffs.iter().map(|c| c.iter().map(|x| x * s).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn add_constant(&self, c: f64) -> Self {
        let mut out = self.clone();
        for seg in &mut out.coeffs {
            seg[0] += c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, poly_mul)
    }

    pub fn derivative(&self) -> Self {
        Self {
            starts: self.starts.clone(),
            lengths: self.lengths.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    if c.len() <= 1 {
                        vec![0.0]
                    } else {
                        c.iter().enumerate().skip(1).map(|(i, x)| i as f64 * x).collect()
                    }
                })
                .collect(),
        }
    }

    /// Continuous antiderivative vanishing at `x = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut acc = 0.0;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (c, &h) in self.coeffs.iter().zip(&self.lengths) {
            let mut p = poly_prim(c);
            p[0] = acc;
            acc = poly_eval(&p, h);
            coeffs.push(p);
        }
        Self { starts: self.starts.clone(), lengths: self.lengths.clone(), coeffs }
    }

    /// `int_Y p`, which is also the cell average.
    pub fn mean(&self) -> f64 {
        self.coeffs.iter().zip(&self.lengths).map(|(c, &h)| poly_eval(&poly_prim(c), h)).sum()
    }

    /// `sum_segments |int_segment p|`, a scale for mean-zero checks.
    pub fn abs_scale(&self) -> f64 {
        self.coeffs.iter().zip(&self.lengths).map(|(c, &h)| poly_eval(&poly_prim(c), h).abs()).sum::<f64>()
            + self.coeffs.iter().map(|c| c.iter().map(|x| x.abs()).sum::<f64>()).sum::<f64>() * f64::EPSILON
    }

    /// Periodic evaluation, right-continuous at interfaces.
    pub fn eval(&self, x: f64) -> f64 {
        let xr = x - x.floor();
        let last = self.starts.len() - 1;
        let i = (0..=last).find(|&i| xr < self.starts[i] + self.lengths[i]).unwrap_or(last);
        poly_eval(&self.coeffs[i], xr - self.starts[i])
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }
}
