//! Closed-form cell solutions for piecewise-constant cells.
//!
//! Writing the physical field `U = u exp(i k x)` and the flux
//! `S = G (U' - gamma exp(i k x))`, each phase obeys the constant-coefficient
//! system `y' = M y + g exp(i k x)` with `y = (U, S)`,
//! `M = [[0, 1/G], [-omega^2 rho, 0]]` and `g = (gamma, -f)`. Both components
//! are continuous at interfaces, and the Bloch condition is `y(1) = e^{ik} y(0)`.
//!
//! The segment propagator, the forcing integral and the segment averages are
//! all expressed through
//! `int_0^t w(tau) exp(M tau) exp(-i k tau) dtau = C I + S M`
//! with scalar kernels `C`, `S` that are entire in `(q, k)`, `q^2 = omega^2 rho / G`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::material::{FieldKind, UnitCell1D};
use crate::special::{phi1, phi2, GaussLegendre};

use super::CellAverages;

type Vec2 = [C64; 2];
type Mat2 = [[C64; 2]; 2];

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Below this value of `q t` the sine kernel is integrated by quadrature
/// instead of through the divided difference `(e(q-k) - e(-q-k)) / 2iq`.
const SMALL_QT: f64 = 1e-2;

fn gl32() -> &'static GaussLegendre {
    use std::sync::OnceLock;
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(32))
}

fn sinq(q: f64, t: f64) -> f64 {
    if q == 0.0 {
        t
    } else {
        (q * t).sin() / q
    }
}

/// `int_0^t exp(i s tau) dtau`.
fn e1(s: f64, t: f64) -> C64 {
    t * phi1(I * (s * t))
}

/// `int_0^t (t - tau) exp(i s tau) dtau`.
fn e2(s: f64, t: f64) -> C64 {
    t * t * phi2(I * (s * t))
}

/// `(int_0^t cos(q tau) e^{-ik tau}, int_0^t sin(q tau)/q e^{-ik tau})`.
fn first_kernels(q: f64, k: f64, t: f64) -> (C64, C64) {
    let ep = e1(q - k, t);
    let em = e1(-q - k, t);
    let c = 0.5 * (ep + em);
    let s = if q * t >= SMALL_QT {
        (ep - em) / (2.0 * I * q)
    } else {
        gl32().integrate(0.0, t, |tau| sinq(q, tau) * C64::from_polar(1.0, -k * tau))
    };
    (c, s)
}

/// Same kernels with the extra weight `(t - tau)`.
fn second_kernels(q: f64, k: f64, t: f64) -> (C64, C64) {
    let ep = e2(q - k, t);
    let em = e2(-q - k, t);
    let c = 0.5 * (ep + em);
    let s = if q * t >= SMALL_QT {
        (ep - em) / (2.0 * I * q)
    } else {
        gl32().integrate(0.0, t, |tau| (t - tau) * sinq(q, tau) * C64::from_polar(1.0, -k * tau))
    };
    (c, s)
}

fn mat_vec(m: &Mat2, v: &Vec2) -> Vec2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `c I + s M` for the phase matrix `M`.
fn kernel_matrix(c: C64, s: C64, g: f64, omega2_rho: f64) -> Mat2 {
    [[c, s / g], [-omega2_rho * s, c]]
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    start: f64,
    length: f64,
    g: f64,
    rho: f64,
    q: f64,
    /// State `(U, S)` at `start`.
    y: Vec2,
}

impl Piece {
    fn propagator(&self, omega2: f64, t: f64) -> Mat2 {
        let c = C64::new((self.q * t).cos(), 0.0);
        let s = C64::new(sinq(self.q, t), 0.0);
        kernel_matrix(c, s, self.g, omega2 * self.rho)
    }
}

/// Exact solution of `-omega^2 rho u - (d/dx+ik)(G((d/dx+ik)u - gamma)) = f`.
#[derive(Clone, Debug)]
pub struct ExactCellSolution {
    pub k: f64,
    pub omega: f64,
    pub f: C64,
    pub gamma: C64,
    g_mean: f64,
    pieces: Vec<Piece>,
    /// Segment-summed `(<u>, <rho u>, <G((d/dx+ik)u - gamma)>)`.
    sums: [C64; 3],
}

/// Solves the forced cell problem in closed form. Fails with
/// [`Error::Resonance`] when the Bloch interface system is singular.
pub fn solve_exact(cell: &UnitCell1D, k: f64, omega: f64, f: C64, gamma: C64) -> Result<ExactCellSolution> {
    let omega2 = omega * omega;
    let forcing: Vec2 = [gamma, -f];
    let mut pieces: Vec<Piece> = cell
        .segments()
        .iter()
        .map(|s| Piece {
            start: s.start,
            length: s.length(),
            g: s.phase.g,
            rho: s.phase.rho,
            q: omega.abs() * (s.phase.rho / s.phase.g).sqrt(),
            y: [ZERO; 2],
        })
        .collect();

    // Affine monodromy y(1) = T y(0) + r.
    let mut t_mat: Mat2 = [[ONE, ZERO], [ZERO, ONE]];
    let mut r: Vec2 = [ZERO; 2];
    let mut forced = Vec::with_capacity(pieces.len());
    for p in &pieces {
        let prop = p.propagator(omega2, p.length);
        let (c1, s1) = first_kernels(p.q, k, p.length);
        let kern = kernel_matrix(c1, s1, p.g, omega2 * p.rho);
        let phase = C64::from_polar(1.0, k * (p.start + p.length));
        let kf = mat_vec(&kern, &forcing);
        let push = [phase * kf[0], phase * kf[1]];
        t_mat = mat_mul(&prop, &t_mat);
        let pr = mat_vec(&prop, &r);
        r = [pr[0] + push[0], pr[1] + push[1]];
        forced.push((prop, push, kern));
    }

    let bloch = C64::from_polar(1.0, k);
    let a = [[t_mat[0][0] - bloch, t_mat[0][1]], [t_mat[1][0], t_mat[1][1] - bloch]];
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale: f64 = a.iter().flatten().map(|z| z.norm()).sum::<f64>() + 1.0;
    if det.norm() <= 1e-14 * scale * scale {
        return Err(Error::Resonance { omega2, eigenvalue: omega2 });
    }
    // Solve a y0 = -r by Cramer's rule.
    let y0 = [(-r[0] * a[1][1] + r[1] * a[0][1]) / det, (-r[1] * a[0][0] + r[0] * a[1][0]) / det];

    let mut y = y0;
    let mut sums = [ZERO; 3];
    for (p, (prop, push, kern)) in pieces.iter_mut().zip(&forced) {
        p.y = y;
        let (c2, s2) = second_kernels(p.q, k, p.length);
        let lmat = kernel_matrix(c2, s2, p.g, omega2 * p.rho);
        let back = C64::from_polar(1.0, -k * p.start);
        let hom = mat_vec(kern, &y);
        let inh = mat_vec(&lmat, &forcing);
        let seg_mean = [back * hom[0] + inh[0], back * hom[1] + inh[1]];
        sums[0] += seg_mean[0];
        sums[1] += p.rho * seg_mean[0];
        sums[2] += seg_mean[1];
        let next = mat_vec(prop, &y);
        y = [next[0] + push[0], next[1] + push[1]];
    }

    Ok(ExactCellSolution { k, omega, f, gamma, g_mean: cell.mean(FieldKind::Shear), pieces, sums })
}

/// Exact `w` (`f = 1`, `gamma = 0`).
pub fn solve_w_exact(cell: &UnitCell1D, k: f64, omega: f64) -> Result<ExactCellSolution> {
    solve_exact(cell, k, omega, ONE, ZERO)
}

/// Exact `v` (`f = 0`, `gamma = 1`).
pub fn solve_v_exact(cell: &UnitCell1D, k: f64, omega: f64) -> Result<ExactCellSolution> {
    solve_exact(cell, k, omega, ZERO, ONE)
}

/// Exact `zeta`, i.e. `v` at `omega = 0`.
pub fn solve_zeta_exact(cell: &UnitCell1D, k: f64) -> Result<ExactCellSolution> {
    solve_exact(cell, k, 0.0, ZERO, ONE)
}

impl ExactCellSolution {
    /// `<u>`
    pub fn mean(&self) -> C64 {
        self.sums[0]
    }

    /// `<rho u>`
    pub fn rho_mean(&self) -> C64 {
        self.sums[1]
    }

    /// `<G ((d/dx + ik) u - gamma)>`, the mean stress of the cell field.
    pub fn flux_mean(&self) -> C64 {
        self.sums[2]
    }

    /// `<G (d/dx + ik) u>`
    pub fn g_grad_mean(&self) -> C64 {
        self.sums[2] + self.gamma * self.g_mean
    }

    pub fn averages(&self) -> CellAverages {
        CellAverages { mean: self.mean(), rho_mean: self.rho_mean(), g_grad_mean: self.g_grad_mean() }
    }

    fn locate(&self, x: f64) -> (&Piece, f64, f64) {
        let xr = x - x.floor();
        let p = self
            .pieces
            .iter()
            .find(|p| xr < p.start + p.length)
            .unwrap_or_else(|| self.pieces.last().expect("non-empty cell"));
        (p, xr, xr - p.start)
    }

    fn state(&self, x: f64) -> (Vec2, f64) {
        let (p, xr, t) = self.locate(x);
        let omega2 = self.omega * self.omega;
        let prop = p.propagator(omega2, t);
        let (c1, s1) = first_kernels(p.q, self.k, t);
        let kern = kernel_matrix(c1, s1, p.g, omega2 * p.rho);
        let hom = mat_vec(&prop, &p.y);
        let inh = mat_vec(&kern, &[self.gamma, -self.f]);
        let phase = C64::from_polar(1.0, self.k * xr);
        ([hom[0] + phase * inh[0], hom[1] + phase * inh[1]], xr)
    }

    /// Periodic cell function `u(x)`.
    pub fn value(&self, x: f64) -> C64 {
        let (y, xr) = self.state(x);
        y[0] * C64::from_polar(1.0, -self.k * xr)
    }

    /// Periodic flux `G ((d/dx + ik) u - gamma)` at `x`.
    pub fn flux(&self, x: f64) -> C64 {
        let (y, xr) = self.state(x);
        y[1] * C64::from_polar(1.0, -self.k * xr)
    }
}

/// `int_Y f(x) dx` by a 24-point Gauss rule on `panels` sub-intervals of
/// every phase. Exponentially accurate when `f` is smooth inside phases.
pub fn phase_quadrature<F: FnMut(f64) -> C64>(cell: &UnitCell1D, panels: usize, mut f: F) -> C64 {
    use std::sync::OnceLock;
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    let rule = RULE.get_or_init(|| GaussLegendre::new(24));
    cell.segments().iter().map(|s| rule.integrate_composite(s.start, s.end, panels, &mut f)).sum()
}
