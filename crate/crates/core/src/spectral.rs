//! Fourier-Galerkin discretisation of the shifted cell operator
//! `L_k u = -(d/dx + i k) (G (d/dx + i k) u)` with mass weight `rho`.
//!
//! With basis `e_m = exp(2 pi i m x)`, `|m| <= N`, the Galerkin matrices are
//! `A_mn = G_{m-n} (2 pi n + k)(2 pi m + k)` and `B_mn = rho_{m-n}`, where
//! `G_j`, `rho_j` are the exact Fourier coefficients of the phases.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fourier::FourierField;
use crate::material::{fourier_coefficients, FieldKind, UnitCell1D};
use crate::tolerances::{DEGENERACY_REL, PHASE_FIX, RESONANCE_REL, SOLVABILITY, VISIBILITY};

/// Resonance window half-width around `lambda`.
pub fn resonance_window(lambda: f64) -> f64 {
    RESONANCE_REL * (1.0 + lambda.abs())
}

/// Assembled Galerkin pair `(A, B)` at one Bloch wavenumber.
#[derive(Debug)]
pub struct BlochOperator {
    k: f64,
    order: usize,
    stiffness: DMatrix<C64>,
    mass: DMatrix<C64>,
    g_hat: FourierField,
    rho_hat: FourierField,
    eigenvalues: OnceLock<std::result::Result<Vec<f64>, String>>,
}

impl BlochOperator {
    /// Builds the `(2N+1)`-square matrices for wavenumber `k`.
    pub fn assemble(cell: &UnitCell1D, k: f64, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Config("basis order N must be at least 1".into()));
        }
        if !k.is_finite() {
            return Err(Error::Config(format!("wavenumber must be finite, got {k}")));
        }
        let g_hat = fourier_coefficients(cell, FieldKind::Shear, 2 * order);
        let rho_hat = fourier_coefficients(cell, FieldKind::Density, 2 * order);
        let n = order as i64;
        let dim = 2 * order + 1;
        let wave = |i: usize| 2.0 * PI * (i as i64 - n) as f64 + k;
        let stiffness = DMatrix::from_fn(dim, dim, |i, j| g_hat.get(i as i64 - j as i64) * (wave(i) * wave(j)));
        let mass = DMatrix::from_fn(dim, dim, |i, j| rho_hat.get(i as i64 - j as i64));
        Ok(Self { k, order, stiffness, mass, g_hat, rho_hat, eigenvalues: OnceLock::new() })
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        2 * self.order + 1
    }

    pub fn stiffness(&self) -> &DMatrix<C64> {
        &self.stiffness
    }

    pub fn mass(&self) -> &DMatrix<C64> {
        &self.mass
    }

    /// Exact coefficients of `G` up to order `2N`.
    pub fn g_hat(&self) -> &FourierField {
        &self.g_hat
    }

    /// Exact coefficients of `rho` up to order `2N`.
    pub fn rho_hat(&self) -> &FourierField {
        &self.rho_hat
    }

    /// Load vector of the constant source `1`: `(1, e_m) = delta_m0`.
    pub fn load_unit(&self) -> DVector<C64> {
        let mut r = DVector::zeros(self.dim());
        r[self.order] = C64::new(1.0, 0.0);
        r
    }

    /// Load vector of the dipole source `-(d/dx + ik) G`:
    /// `(G, (d/dx + ik) e_m) = -i (2 pi m + k) G_m`.
    pub fn load_dipole(&self) -> DVector<C64> {
        let n = self.order as i64;
        DVector::from_iterator(
            self.dim(),
            (-n..=n).map(|m| C64::new(0.0, -(2.0 * PI * m as f64 + self.k)) * self.g_hat.get(m)),
        )
    }

    /// `<u>`.
    pub fn mean(&self, c: &DVector<C64>) -> C64 {
        c[self.order]
    }

    /// `<rho u>`, exact for the truncated `u`.
    pub fn rho_mean(&self, c: &DVector<C64>) -> C64 {
        let n = self.order as i64;
        (-n..=n).map(|m| self.rho_hat.get(-m) * c[(m + n) as usize]).sum()
    }

    /// `<G (d/dx + i k) u>`.
    pub fn g_grad_mean(&self, c: &DVector<C64>) -> C64 {
        let n = self.order as i64;
        (-n..=n).map(|m| self.g_hat.get(-m) * C64::new(0.0, 2.0 * PI * m as f64 + self.k) * c[(m + n) as usize]).sum()
    }

    /// `int rho u conj(v)` for coefficient vectors.
    pub fn rho_inner(&self, u: &DVector<C64>, v: &DVector<C64>) -> C64 {
        (v.adjoint() * &self.mass * u)[(0, 0)]
    }

    /// Generalized eigenvalues in ascending order, computed once and cached.
    pub fn eigenvalues(&self) -> Result<&[f64]> {
        let cached = self.eigenvalues.get_or_init(|| {
            reduce(&self.stiffness, &self.mass).map(|(c, _)| {
                let mut ev: Vec<f64> = c.symmetric_eigenvalues().iter().copied().collect();
                ev.sort_by(|a, b| a.total_cmp(b));
                ev
            })
        });
        cached.as_deref().map_err(|e| Error::LinearAlgebra(e.clone()))
    }

    /// Eigenvalues within the resonance window of `omega2`, as indices into
    /// [`Self::eigenvalues`].
    pub fn resonant_indices(&self, omega2: f64) -> Result<Vec<usize>> {
        let ev = self.eigenvalues()?;
        Ok(resonant_indices(ev, omega2))
    }

    /// Full eigendecomposition `A c = lambda B c` with `c^H B c = 1`.
    pub fn eigensystem(&self) -> Result<BlochEigensystem> {
        let (reduced, l) = reduce(&self.stiffness, &self.mass).map_err(Error::LinearAlgebra)?;
        let eig = SymmetricEigen::new(reduced);
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let lh = l.adjoint();
        let y = DMatrix::from_fn(self.dim(), self.dim(), |i, j| eig.eigenvectors[(i, order[j])]);
        let mut modes =
            lh.solve_upper_triangular(&y).ok_or_else(|| Error::LinearAlgebra("singular Cholesky factor".into()))?;
        for j in 0..self.dim() {
            fix_phase(&mut modes.column_mut(j), self.order);
        }
        let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        Ok(BlochEigensystem {
            k: self.k,
            order: self.order,
            eigenvalues,
            modes,
            g_hat: self.g_hat.clone(),
            rho_hat: self.rho_hat.clone(),
        })
    }

    /// Solves `(A - omega^2 B) c = rhs` by LU, refusing resonant `omega^2`.
    pub fn resolvent_solve(&self, omega2: f64, rhs: &DVector<C64>) -> Result<DVector<C64>> {
        let ev = self.eigenvalues()?;
        if let Some(&j) = resonant_indices(ev, omega2).first() {
            return Err(Error::Resonance { omega2, eigenvalue: ev[j] });
        }
        let shifted = &self.stiffness - &self.mass * C64::new(omega2, 0.0);
        shifted.lu().solve(rhs).ok_or_else(|| Error::LinearAlgebra("singular shifted operator".into()))
    }
}

fn resonant_indices(ev: &[f64], omega2: f64) -> Vec<usize> {
    ev.iter().enumerate().filter(|(_, &l)| (l - omega2).abs() < resonance_window(l)).map(|(i, _)| i).collect()
}

/// Cholesky reduction `C = L^-1 A L^-H` with `B = L L^H`.
fn reduce(a: &DMatrix<C64>, b: &DMatrix<C64>) -> std::result::Result<(DMatrix<C64>, DMatrix<C64>), String> {
    let chol = b.clone().cholesky().ok_or("mass matrix is not positive definite")?;
    let l = chol.l();
    let x = l.solve_lower_triangular(a).ok_or("singular Cholesky factor")?;
    let c = l.solve_lower_triangular(&x.adjoint()).ok_or("singular Cholesky factor")?;
    let c = (&c + c.adjoint()) * C64::new(0.5, 0.0);
    Ok((c, l))
}

/// Makes `(1, phi) = conj(c_0)` real and non-negative; for modes with
/// vanishing mean, makes the largest coefficient real positive instead.
fn fix_phase(col: &mut nalgebra::DVectorViewMut<C64>, order: usize) {
    let c0 = col[order];
    let pivot = if c0.norm() >= PHASE_FIX {
        c0
    } else {
        let mut best = 0;
        for i in 0..col.len() {
            if col[i].norm() > col[best].norm() + 1e-14 {
                best = i;
            }
        }
        col[best]
    };
    if pivot.norm() > 0.0 {
        let rot = pivot.conj() / pivot.norm();
        for v in col.iter_mut() {
            *v *= rot;
        }
    }
}

/// Sorted eigenpairs of one Bloch operator.
#[derive(Clone, Debug)]
pub struct BlochEigensystem {
    pub k: f64,
    pub order: usize,
    /// Ascending eigenvalues `lambda_1 <= lambda_2 <= ...`.
    pub eigenvalues: Vec<f64>,
    /// Column `j` holds the coefficients of mode `j`, normalised so that
    /// `int rho |phi_j|^2 = 1`.
    pub modes: DMatrix<C64>,
    g_hat: FourierField,
    rho_hat: FourierField,
}

impl BlochEigensystem {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn mode(&self, j: usize) -> FourierField {
        FourierField::from_coeffs(self.order, self.modes.column(j).iter().copied().collect())
    }

    /// `<phi_j>`.
    pub fn mode_mean(&self, j: usize) -> C64 {
        self.modes[(self.order, j)]
    }

    /// `<rho phi_j>`.
    pub fn mode_rho_mean(&self, j: usize) -> C64 {
        let n = self.order as i64;
        (-n..=n).map(|m| self.rho_hat.get(-m) * self.modes[((m + n) as usize, j)]).sum()
    }

    /// `<G (d/dx + ik) phi_j>`.
    pub fn mode_g_grad_mean(&self, j: usize) -> C64 {
        let n = self.order as i64;
        (-n..=n)
            .map(|m| {
                self.g_hat.get(-m) * C64::new(0.0, 2.0 * PI * m as f64 + self.k) * self.modes[((m + n) as usize, j)]
            })
            .sum()
    }

    /// `(rhs, phi_j)` for a Galerkin load vector, i.e. `c_j^H rhs`.
    pub fn projection(&self, j: usize, rhs: &DVector<C64>) -> C64 {
        self.modes.column(j).dotc(rhs)
    }

    /// Indices in the degeneracy cluster containing mode `j`.
    pub fn cluster(&self, j: usize) -> Vec<usize> {
        let lj = self.eigenvalues[j];
        let tol = DEGENERACY_REL * (1.0 + lj.abs());
        let mut lo = j;
        while lo > 0 && (self.eigenvalues[lo - 1] - self.eigenvalues[lo]).abs() < tol {
            lo -= 1;
        }
        let mut hi = j;
        while hi + 1 < self.len() && (self.eigenvalues[hi + 1] - self.eigenvalues[hi]).abs() < tol {
            hi += 1;
        }
        (lo..=hi).collect()
    }

    /// Indices resonant with `omega2`.
    pub fn resonant_indices(&self, omega2: f64) -> Vec<usize> {
        resonant_indices(&self.eigenvalues, omega2)
    }
}

/// Eigen-expansion `sum_j (rhs, phi_j) / (lambda_j - omega^2) phi_j` over the
/// lowest `modes` eigenpairs (all when `None`).
pub fn eigen_expansion(
    eig: &BlochEigensystem,
    omega2: f64,
    rhs: &DVector<C64>,
    modes: Option<usize>,
) -> Result<DVector<C64>> {
    let m = modes.unwrap_or(eig.len()).min(eig.len());
    let mut out = DVector::zeros(eig.modes.nrows());
    for j in 0..m {
        let lambda = eig.eigenvalues[j];
        if (lambda - omega2).abs() < resonance_window(lambda) {
            return Err(Error::Resonance { omega2, eigenvalue: lambda });
        }
        let coef = eig.projection(j, rhs) / (lambda - omega2);
        out.axpy(coef, &eig.modes.column(j), C64::new(1.0, 0.0));
    }
    Ok(out)
}

/// Expansion with the resonant modes `excluded` removed. Their projections
/// must satisfy `|(rhs, phi_j)| <= tol * ||rhs||`, where the norm is
/// `sqrt(sum_j |(rhs, phi_j)|^2)`.
pub fn projected_solve(
    eig: &BlochEigensystem,
    omega2: f64,
    rhs: &DVector<C64>,
    excluded: &[usize],
    tol: f64,
) -> Result<DVector<C64>> {
    let proj: Vec<C64> = (0..eig.len()).map(|j| eig.projection(j, rhs)).collect();
    let scale = proj.iter().map(|p| p.norm_sqr()).sum::<f64>().sqrt();
    for &j in excluded {
        let residual = proj[j].norm();
        if residual > tol * scale {
            return Err(Error::NotSolvable { residual: residual / scale.max(f64::MIN_POSITIVE), tolerance: tol });
        }
    }
    let mut out = DVector::zeros(eig.modes.nrows());
    for (j, p) in proj.iter().enumerate() {
        if excluded.contains(&j) {
            continue;
        }
        let lambda = eig.eigenvalues[j];
        if (lambda - omega2).abs() < resonance_window(lambda) {
            return Err(Error::Resonance { omega2, eigenvalue: lambda });
        }
        out.axpy(*p / (lambda - omega2), &eig.modes.column(j), C64::new(1.0, 0.0));
    }
    Ok(out)
}

/// Solves `(A - omega^2 B) c = rhs`; at a resonance, falls back to the
/// projected solve when the resonant cluster is orthogonal to `rhs`.
pub fn solve_with_fallback(op: &BlochOperator, omega2: f64, rhs: &DVector<C64>) -> Result<DVector<C64>> {
    match op.resolvent_solve(omega2, rhs) {
        Err(Error::Resonance { eigenvalue, .. }) => {
            let eig = op.eigensystem()?;
            let excluded = eig.resonant_indices(omega2);
            projected_solve(&eig, omega2, rhs, &excluded, SOLVABILITY)
                .map_err(|_| Error::Resonance { omega2, eigenvalue })
        }
        other => other,
    }
}

/// Whether a Bloch mode has a non-zero cell average.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Visibility {
    Visible,
    Invisible,
}

/// Behaviour of the effective impedance as `omega^2` crosses the eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ImpedanceBehaviour {
    /// Invisible and not excited by the dipole load: `Z` is continuous.
    Continuous,
    /// Simple visible eigenvalue excited by the dipole load: the parameter
    /// poles cancel inside `Z`.
    BoundedByCancellation,
    /// Degenerate or mixed cluster; the limit may not be unique.
    Degenerate,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct VisibilityReport {
    /// One-based branch number.
    pub branch: usize,
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// `sqrt(sum |<phi_j>|^2)` over the cluster; basis independent.
    pub mean_magnitude: f64,
    /// `sqrt(sum |(G, (d/dx+ik) phi_j)|^2)` over the cluster.
    pub dipole_projection: f64,
    pub visibility: Visibility,
    pub behaviour: ImpedanceBehaviour,
}

/// Classifies branch `branch` (one-based) by the mean of its eigenspace.
pub fn classify_visibility(
    op: &BlochOperator,
    eig: &BlochEigensystem,
    branch: usize,
    tau: Option<f64>,
) -> Result<VisibilityReport> {
    if branch == 0 || branch > eig.len() {
        return Err(Error::Config(format!("branch {branch} outside 1..={}", eig.len())));
    }
    let tau = tau.unwrap_or(VISIBILITY);
    let cluster = eig.cluster(branch - 1);
    let dipole = op.load_dipole();
    let mean_magnitude = cluster.iter().map(|&j| eig.mode_mean(j).norm_sqr()).sum::<f64>().sqrt();
    let dipole_projection = cluster.iter().map(|&j| eig.projection(j, &dipole).norm_sqr()).sum::<f64>().sqrt();
    let visibility = if mean_magnitude > tau { Visibility::Visible } else { Visibility::Invisible };
    let behaviour = match visibility {
        Visibility::Invisible if dipole_projection <= tau => ImpedanceBehaviour::Continuous,
        Visibility::Visible if cluster.len() == 1 && dipole_projection > tau => {
            ImpedanceBehaviour::BoundedByCancellation
        }
        _ => ImpedanceBehaviour::Degenerate,
    };
    Ok(VisibilityReport {
        branch,
        eigenvalue: eig.eigenvalues[branch - 1],
        multiplicity: cluster.len(),
        mean_magnitude,
        dipole_projection,
        visibility,
        behaviour,
    })
}
