//! Long-wave sweeps of the second-order model against the exact route.
//!
//! At `(k, omega) = (eps k_hat, eps omega_hat)` the gaps between the exact
//! cell averages and the order-2 model decay like powers of `eps`; the fitted
//! exponents are the observable convergence orders.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{modulation, two_scale_impedance, velocity_numerator_order2, willis_impedance_order2, HomogCoefficients};
use crate::cell_functions::{solve_v_exact, solve_w_exact};
use crate::error::Result;
use crate::material::UnitCell1D;

pub const DEFAULT_EPSILONS: [f64; 4] = [0.01, 0.02, 0.04, 0.08];

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub eps: f64,
    pub k: f64,
    pub omega: f64,
    /// `|1/<w> - Z2|`
    pub impedance_gap: f64,
    /// `|Z2cal <w> - M2|`
    pub modulation_gap: f64,
    /// `|Z2cal <v> - N2|`
    pub velocity_gap: f64,
    /// `|1/<w>|`, the size of the quantity being approximated.
    pub impedance_scale: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
    pub impedance_slope: f64,
    pub modulation_slope: f64,
    pub velocity_slope: f64,
}

/// Least-squares slope of `log y` against `log x`. Returns `+inf` when every
/// `y` is at or below `floor`, i.e. the model is exact to round-off.
pub fn log_slope(xs: &[f64], ys: &[f64], floor: f64) -> f64 {
    if ys.iter().all(|&y| y <= floor) {
        return f64::INFINITY;
    }
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).map(|(&x, &y)| (x.ln(), y.max(floor).max(f64::MIN_POSITIVE).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Round-off floor for the gaps, relative to the size of the compared terms.
const GAP_FLOOR_REL: f64 = 1e-13;

pub fn long_wave_sweep(
    cell: &UnitCell1D,
    c: &HomogCoefficients,
    k_hat: f64,
    omega_hat: f64,
    epsilons: &[f64],
) -> Result<Sweep> {
    let mut points = Vec::with_capacity(epsilons.len());
    let mut floors = [0.0f64; 3];
    for &eps in epsilons {
        let (k, omega) = (eps * k_hat, eps * omega_hat);
        let w = solve_w_exact(cell, k, omega)?;
        let v = solve_v_exact(cell, k, omega)?;
        let z = (C64::new(1.0, 0.0) / w.mean()).norm();
        let zc = two_scale_impedance(c, k, omega);
        let m = modulation(c, k, omega);
        let impedance_gap = (C64::new(1.0, 0.0) / w.mean() - willis_impedance_order2(c, k, omega)?).norm();
        let modulation_gap = (zc * w.mean() - m).norm();
        let velocity_gap = (zc * v.mean() - velocity_numerator_order2(c, k, omega)).norm();
        floors[0] = floors[0].max(GAP_FLOOR_REL * z);
        floors[1] = floors[1].max(GAP_FLOOR_REL * m.abs());
        floors[2] = floors[2].max(GAP_FLOOR_REL * (zc * v.mean()).norm().max(c.mu0 * k));
        points.push(SweepPoint { eps, k, omega, impedance_gap, modulation_gap, velocity_gap, impedance_scale: z });
    }
    let slope = |f: fn(&SweepPoint) -> f64, floor: f64| {
        let ys: Vec<f64> = points.iter().map(f).collect();
        log_slope(epsilons, &ys, floor)
    };
    Ok(Sweep {
        impedance_slope: slope(|p| p.impedance_gap, floors[0]),
        modulation_slope: slope(|p| p.modulation_gap, floors[1]),
        velocity_slope: slope(|p| p.velocity_gap, floors[2]),
        points,
    })
}
