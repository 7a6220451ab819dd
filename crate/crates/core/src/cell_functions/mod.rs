//! Cell functions of the Bloch-wave expansion.
//!
//! * `w` solves `-omega^2 rho w + L_k w = 1`,
//! * `v` solves `-omega^2 rho v - (d/dx + ik)(G ((d/dx + ik) v - 1)) = 0`,
//! * `zeta` is `v` at `omega = 0`.
//!
//! The general solution with mean body force `f` and mean dipole `gamma` is
//! `u = f w + gamma v`. Two independent routes are provided: the Galerkin
//! route on a [`BlochOperator`] and a closed-form piecewise route in
//! [`exact`] that serves as the oracle for layered cells.

pub mod exact;

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::FourierField;
use crate::spectral::{eigen_expansion, projected_solve, solve_with_fallback, BlochEigensystem, BlochOperator};
use crate::tolerances::SOLVABILITY;

pub use exact::{solve_exact, solve_v_exact, solve_w_exact, solve_zeta_exact, ExactCellSolution};

/// The three cell averages every downstream formula needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CellAverages {
    /// `<u>`
    pub mean: C64,
    /// `<rho u>`
    pub rho_mean: C64,
    /// `<G (d/dx + i k) u>`
    pub g_grad_mean: C64,
}

impl CellAverages {
    pub fn combine(a: &CellAverages, ca: C64, b: &CellAverages, cb: C64) -> CellAverages {
        CellAverages {
            mean: ca * a.mean + cb * b.mean,
            rho_mean: ca * a.rho_mean + cb * b.rho_mean,
            g_grad_mean: ca * a.g_grad_mean + cb * b.g_grad_mean,
        }
    }
}

/// Averages of `w` and `v` at one `(k, omega)`, from either route.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CellPair {
    pub k: f64,
    pub omega: f64,
    /// `<G>`
    pub g_mean: f64,
    pub w: CellAverages,
    pub v: CellAverages,
}

/// How a Galerkin cell problem is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Direct LU solve of the shifted system.
    Resolvent,
    /// Eigen-expansion over the lowest `modes` eigenpairs (all when `None`).
    Eigen { modes: Option<usize> },
}

/// A spectral cell solution together with its averages.
#[derive(Clone, Debug)]
pub struct CellSolution {
    pub k: f64,
    pub omega: f64,
    /// Mean body force `f` and dipole `gamma` of the source `f + gamma * dipole`.
    pub f: C64,
    pub gamma: C64,
    pub coefficients: DVector<C64>,
    pub averages: CellAverages,
}

impl CellSolution {
    fn from_coefficients(op: &BlochOperator, omega: f64, f: C64, gamma: C64, c: DVector<C64>) -> Self {
        let averages = CellAverages { mean: op.mean(&c), rho_mean: op.rho_mean(&c), g_grad_mean: op.g_grad_mean(&c) };
        Self { k: op.wavenumber(), omega, f, gamma, coefficients: c, averages }
    }

    pub fn field(&self) -> FourierField {
        let order = (self.coefficients.len() - 1) / 2;
        FourierField::from_coeffs(order, self.coefficients.iter().copied().collect())
    }
}

fn solve_galerkin(
    op: &BlochOperator,
    omega: f64,
    rhs: &DVector<C64>,
    method: SolveMethod,
    eig: Option<&BlochEigensystem>,
) -> Result<DVector<C64>> {
    let omega2 = omega * omega;
    match method {
        SolveMethod::Resolvent => solve_with_fallback(op, omega2, rhs),
        SolveMethod::Eigen { modes } => {
            let owned;
            let eig = match eig {
                Some(e) => e,
                None => {
                    owned = op.eigensystem()?;
                    &owned
                }
            };
            let excluded = eig.resonant_indices(omega2);
            if excluded.is_empty() {
                eigen_expansion(eig, omega2, rhs, modes)
            } else {
                let eigenvalue = eig.eigenvalues[excluded[0]];
                projected_solve(eig, omega2, rhs, &excluded, SOLVABILITY)
                    .map_err(|_| Error::Resonance { omega2, eigenvalue })
            }
        }
    }
}

/// Solves for `w`.
pub fn solve_w(op: &BlochOperator, omega: f64, method: SolveMethod) -> Result<CellSolution> {
    solve_w_with(op, omega, method, None)
}

/// Solves for `w`, reusing a precomputed eigensystem for [`SolveMethod::Eigen`].
pub fn solve_w_with(
    op: &BlochOperator,
    omega: f64,
    method: SolveMethod,
    eig: Option<&BlochEigensystem>,
) -> Result<CellSolution> {
    let c = solve_galerkin(op, omega, &op.load_unit(), method, eig)?;
    Ok(CellSolution::from_coefficients(op, omega, C64::new(1.0, 0.0), C64::new(0.0, 0.0), c))
}

/// Solves for `v`.
pub fn solve_v(op: &BlochOperator, omega: f64, method: SolveMethod) -> Result<CellSolution> {
    solve_v_with(op, omega, method, None)
}

pub fn solve_v_with(
    op: &BlochOperator,
    omega: f64,
    method: SolveMethod,
    eig: Option<&BlochEigensystem>,
) -> Result<CellSolution> {
    let c = solve_galerkin(op, omega, &op.load_dipole(), method, eig)?;
    Ok(CellSolution::from_coefficients(op, omega, C64::new(0.0, 0.0), C64::new(1.0, 0.0), c))
}

/// Solves for `zeta`. At `k = 0` the load is orthogonal to the resonant
/// constant mode, so the projected solve returns the zero-mean solution.
pub fn solve_zeta(op: &BlochOperator, method: SolveMethod) -> Result<CellSolution> {
    solve_v(op, 0.0, method)
}

/// `u = f w + gamma v`.
pub fn superpose(w: &CellSolution, v: &CellSolution, f: C64, gamma: C64) -> CellSolution {
    let coefficients = &w.coefficients * f + &v.coefficients * gamma;
    CellSolution {
        k: w.k,
        omega: w.omega,
        f,
        gamma,
        coefficients,
        averages: CellAverages::combine(&w.averages, f, &v.averages, gamma),
    }
}

/// Spectral `w` and `v` with their averages, bundled for the Willis formulas.
pub fn spectral_pair(
    op: &BlochOperator,
    omega: f64,
    method: SolveMethod,
) -> Result<(CellSolution, CellSolution, CellPair)> {
    let eig = match method {
        SolveMethod::Eigen { .. } => Some(op.eigensystem()?),
        SolveMethod::Resolvent => None,
    };
    let w = solve_w_with(op, omega, method, eig.as_ref())?;
    let v = solve_v_with(op, omega, method, eig.as_ref())?;
    let pair = CellPair { k: op.wavenumber(), omega, g_mean: op.g_hat().mean().re, w: w.averages, v: v.averages };
    Ok((w, v, pair))
}

/// Exact-route averages of `w` and `v`.
pub fn exact_pair(cell: &crate::material::UnitCell1D, k: f64, omega: f64) -> Result<CellPair> {
    let w = solve_w_exact(cell, k, omega)?;
    let v = solve_v_exact(cell, k, omega)?;
    Ok(CellPair { k, omega, g_mean: cell.mean(crate::material::FieldKind::Shear), w: w.averages(), v: v.averages() })
}
