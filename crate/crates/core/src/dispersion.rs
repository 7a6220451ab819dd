//! Lowest Bloch branch of a bilaminate and its homogenized approximations.
//!
//! For two phases with lengths `h_i`, speeds `c_i` and impedances `z_i`, the
//! Bloch frequencies satisfy `D(omega) = cos k` with
//! `D = cos(a) cos(b) - X sin(a) sin(b)`, `a = omega h1 / c1`,
//! `b = omega h2 / c2`, `X = (z1/z2 + z2/z1) / 2`.

use num_complex::Complex64 as C64;

use crate::asymptotics::HomogCoefficients;
use crate::cell_functions::solve_w_exact;
use crate::error::{Error, Result};
use crate::material::UnitCell1D;
use crate::tolerances::{ROOT_BISECT_TOL, ROOT_SCAN_STEP};

/// Frequencies above this end the branch scan.
const SCAN_LIMIT: f64 = 200.0;

struct Bilayer {
    a_rate: f64,
    b_rate: f64,
    x: f64,
}

fn bilayer(cell: &UnitCell1D) -> Result<Bilayer> {
    let p = cell.phases();
    if p.len() != 2 {
        return Err(Error::UnsupportedGeometry(format!(
            "the dispersion relation needs exactly two phases, got {}",
            p.len()
        )));
    }
    let (z1, z2) = (p[0].impedance(), p[1].impedance());
    Ok(Bilayer {
        a_rate: p[0].length / p[0].wave_speed(),
        b_rate: p[1].length / p[1].wave_speed(),
        x: 0.5 * (z1 / z2 + z2 / z1),
    })
}

/// `D(omega)`.
pub fn relation(cell: &UnitCell1D, omega: f64) -> Result<f64> {
    let b = bilayer(cell)?;
    let (a, bb) = (omega * b.a_rate, omega * b.b_rate);
    Ok(a.cos() * bb.cos() - b.x * a.sin() * bb.sin())
}

/// `1 - D(omega)` written without cancellation at small frequency.
fn one_minus_relation(b: &Bilayer, omega: f64) -> f64 {
    let (a, bb) = (omega * b.a_rate, omega * b.b_rate);
    let sa = (0.5 * a).sin();
    let sb = (0.5 * bb).sin();
    2.0 * sa * sa + 2.0 * a.cos() * sb * sb + b.x * a.sin() * bb.sin()
}

/// Half trace of the transfer matrix over any number of phases. Equals
/// [`relation`] for two phases and serves as an independent cross-check.
pub fn monodromy_half_trace(cell: &UnitCell1D, omega: f64) -> f64 {
    let mut t = [[1.0, 0.0], [0.0, 1.0]];
    for p in cell.phases() {
        let q = omega * (p.rho / p.g).sqrt();
        let th = q * p.length;
        let s = if q == 0.0 { p.length } else { th.sin() / q };
        let m = [[th.cos(), s / p.g], [-omega * omega * p.rho * s, th.cos()]];
        t = [
            [m[0][0] * t[0][0] + m[0][1] * t[1][0], m[0][0] * t[0][1] + m[0][1] * t[1][1]],
            [m[1][0] * t[0][0] + m[1][1] * t[1][0], m[1][0] * t[0][1] + m[1][1] * t[1][1]],
        ];
    }
    0.5 * (t[0][0] + t[1][1])
}

fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ROOT_BISECT_TOL * mid.abs().max(1e-300) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest Bloch frequency at wavenumber `k`, by a `0.01` scan and bisection.
/// `k` enters only through `cos k`.
pub fn exact_frequency(cell: &UnitCell1D, k: f64) -> Result<f64> {
    let b = bilayer(cell)?;
    let s = (0.5 * k).sin();
    let target = 2.0 * s * s;
    if target == 0.0 {
        return Ok(0.0);
    }
    let f = |w: f64| one_minus_relation(&b, w) - target;
    let mut lo = 0.0;
    while lo < SCAN_LIMIT {
        let hi = lo + ROOT_SCAN_STEP;
        if f(hi) >= 0.0 {
            return Ok(bisect(f, lo, hi));
        }
        lo = hi;
    }
    Err(Error::BranchTerminated { k, reason: "no crossing of cos k below the scan limit".into() })
}

pub fn exact_branch(cell: &UnitCell1D, ks: &[f64]) -> Result<Vec<f64>> {
    ks.iter().map(|&k| exact_frequency(cell, k)).collect()
}

/// Small-wavenumber slope `d omega / dk` at `k = 0`, by Richardson
/// extrapolation of `omega(k) / k` at `k = 0.01, 0.02`.
pub fn small_k_slope(cell: &UnitCell1D) -> Result<f64> {
    let s1 = exact_frequency(cell, 0.01)? / 0.01;
    let s2 = exact_frequency(cell, 0.02)? / 0.02;
    Ok((4.0 * s1 - s2) / 3.0)
}

/// Root of `Z2cal`: `omega^2 = (mu0 k^2 - mu2 k^4) / (rho0 - rho2 k^2)`.
pub fn order2_frequency(c: &HomogCoefficients, k: f64) -> Result<f64> {
    let num = c.mu0 * k * k - c.mu2 * k.powi(4);
    let den = c.rho0 - c.rho2 * k * k;
    let radicand = num / den;
    if den == 0.0 || radicand.is_nan() || radicand < 0.0 {
        return Err(Error::BranchTerminated { k, reason: format!("radicand {num} / {den} is negative") });
    }
    Ok(radicand.sqrt())
}

/// Order-2 branch; fails at the first wavenumber where it terminates.
pub fn order2_branch(c: &HomogCoefficients, ks: &[f64]) -> Result<Vec<f64>> {
    ks.iter().map(|&k| order2_frequency(c, k)).collect()
}

/// `omega = k sqrt(mu0 / rho0)`.
pub fn quasistatic_frequency(c: &HomogCoefficients, k: f64) -> f64 {
    k.abs() * (c.mu0 / c.rho0).sqrt()
}

pub fn quasistatic_branch(c: &HomogCoefficients, ks: &[f64]) -> Vec<f64> {
    ks.iter().map(|&k| quasistatic_frequency(c, k)).collect()
}

/// Exact-route effective impedance `1 / <w>` at `(k, omega)`. A singular
/// interface system is a Bloch frequency and reports zero.
fn exact_impedance(cell: &UnitCell1D, k: f64, omega: f64) -> f64 {
    match solve_w_exact(cell, k, omega) {
        Ok(sol) => (C64::new(1.0, 0.0) / sol.mean()).re,
        Err(_) => 0.0,
    }
}

/// Zero of the exact-route impedance inside `bracket`. Sign changes caused by
/// a zero of `<w>` (a pole of the impedance) are rejected.
pub fn willis_exact_root(cell: &UnitCell1D, k: f64, bracket: (f64, f64)) -> Result<f64> {
    let (a, b) = bracket;
    let za = exact_impedance(cell, k, a);
    let zb = exact_impedance(cell, k, b);
    if za == 0.0 {
        return Ok(a);
    }
    if zb == 0.0 {
        return Ok(b);
    }
    if (za > 0.0) == (zb > 0.0) {
        return Err(Error::NoRoot(format!("impedance has no sign change on [{a}, {b}] at k = {k}")));
    }
    let root = bisect(|w| exact_impedance(cell, k, w), a, b);
    let zr = exact_impedance(cell, k, root).abs();
    if zr > za.abs().max(zb.abs()) {
        return Err(Error::NoRoot(format!("sign change near {root} is a pole of the impedance")));
    }
    Ok(root)
}

/// All impedance zeros on `(0, omega_max]`, scanning in `0.01` steps.
/// Invisible eigenvalues produce no sign change and are skipped.
pub fn willis_exact_roots(cell: &UnitCell1D, k: f64, omega_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut lo = ROOT_SCAN_STEP * 0.5;
    let mut zlo = exact_impedance(cell, k, lo);
    while lo < omega_max {
        let hi = (lo + ROOT_SCAN_STEP).min(omega_max);
        let zhi = exact_impedance(cell, k, hi);
        if (zlo > 0.0) != (zhi > 0.0) {
            if let Ok(r) = willis_exact_root(cell, k, (lo, hi)) {
                out.push(r);
            }
        }
        lo = hi;
        zlo = zhi;
    }
    out
}
