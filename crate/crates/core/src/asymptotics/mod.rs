//! Static cell-problem chain and the second-order two-scale model.
//!
//! In one dimension every cell problem of the chain has the form
//! `(G (chi' + a))' = s` with a known field `a` and a zero-mean source `s`;
//! solutions are normalised to zero mean. The chain is
//!
//! | field     | `a`      | `s`                                               |
//! |-----------|----------|---------------------------------------------------|
//! | `chi1`    | `1`      | `0`                                               |
//! | `chi2`    | `chi1`   | `-(G (chi1' + 1) - rho mu0 / rho0)`               |
//! | `eta0`    | `0`      | `(rho - rho0) / rho0`                             |
//! | `chi3`    | `chi2`   | `-(G (chi2' + chi1) - rho chi1 mu0 / rho0)`       |
//! | `eta1`    | `eta0`   | `-(G eta0' - rho chi1 / rho0)`                    |
//! | `alpha1`  | `0`      | `rho chi1 - rho1`                                 |
//! | `chi2~`   | `chi1`   | `-(G (chi1' + 1) - rho mu0 / rho0)`               |
//! | `chi3~`   | `chi2`   | `-(G (chi1 + chi2~') - mu1~ - mu0 (rho chi1 - rho1) / rho0)` |
//!
//! The non-symmetrised fields `chi2~`, `chi3~` are solved from their own
//! equations even though they coincide with `chi2`, `chi3` in one dimension.
//!
//! Two interchangeable backends implement the field algebra: exact piecewise
//! polynomials and a Fourier-Galerkin discretisation.

pub mod convergence;
pub mod piecewise;
mod spectral_static;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::material::UnitCell1D;
use crate::report::{relative_gap, Check, RouteTag};
use crate::tolerances::{IDENTITY_EXACT, IDENTITY_SPECTRAL, MODULATION_FLOOR};

pub use piecewise::PiecewisePoly;
pub use spectral_static::SpectralStatic;

/// Which backend produced a coefficient record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "lowercase")]
pub enum Route {
    Exact,
    Spectral { basis_n: usize },
}

impl Route {
    pub fn tag(&self) -> RouteTag {
        match self {
            Route::Exact => RouteTag::Exact,
            Route::Spectral { .. } => RouteTag::Spectral,
        }
    }

    fn identity_tolerance(&self) -> f64 {
        match self {
            Route::Exact => IDENTITY_EXACT,
            Route::Spectral { .. } => IDENTITY_SPECTRAL,
        }
    }
}

/// Effective coefficients of the static chain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HomogCoefficients {
    #[serde(flatten)]
    pub route: Route,
    pub rho0: f64,
    pub mu0: f64,
    pub rho1: f64,
    pub mu1: f64,
    pub rho2: f64,
    pub mu2: f64,
    pub mu1_tilde: f64,
    pub mu2_tilde: f64,
    pub rho2_tilde: f64,
    /// `<G (eta1' + eta0)>`
    pub s_g: f64,
    /// `<rho eta0>`
    pub s_rho: f64,
    /// `<rho chi1^2>`
    pub q: f64,
}

/// Auxiliary averages used by the consistency identities.
#[derive(Clone, Debug, Serialize)]
pub struct ChainDiagnostics {
    pub mean_g: f64,
    /// `<G eta0'>`
    pub g_eta0_prime: f64,
    /// `<G alpha1'>`
    pub g_alpha1_prime: f64,
    /// `<G chi1'>` integrated directly.
    pub g_chi1_prime: f64,
    /// `<G eta1'>`
    pub g_eta1_prime: f64,
    /// `<chi1^2>`
    pub mean_chi1_sq: f64,
    /// Largest relative gap between `chi2~, chi3~` and `chi2, chi3`.
    pub tilde_gap: f64,
    /// `(field, |<field>|)` for every computed field.
    pub field_means: Vec<(String, f64)>,
    /// `(problem, |<s>| / scale)` before projection of each source.
    pub source_means: Vec<(String, f64)>,
    pub constant_density: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StaticChain {
    pub coefficients: HomogCoefficients,
    pub diagnostics: ChainDiagnostics,
}

/// Field algebra needed to run the chain on one backend.
pub(crate) trait ChainAlgebra {
    type F: Clone;
    fn constant(&self, c: f64) -> Self::F;
    fn rho(&self) -> Self::F;
    fn add(&self, a: &Self::F, b: &Self::F) -> Self::F;
    fn scale(&self, a: &Self::F, s: f64) -> Self::F;
    fn mul_g(&self, a: &Self::F) -> Self::F;
    fn mul_rho(&self, a: &Self::F) -> Self::F;
    fn mean(&self, a: &Self::F) -> f64;
    fn mean_product(&self, a: &Self::F, b: &Self::F) -> f64;
    /// Relative size of the mean of `s`, measured before the solve removes it.
    fn source_mean(&self, s: &Self::F) -> f64;
    /// Solves `(G (chi' + a))' = s`; returns `(chi, chi')`.
    fn solve(&self, a: &Self::F, s: &Self::F) -> Result<(Self::F, Self::F)>;
    /// `sup |a - b| / max(sup |b|, floor)` or a comparable norm.
    fn gap(&self, a: &Self::F, b: &Self::F) -> f64;

    fn sub(&self, a: &Self::F, b: &Self::F) -> Self::F {
        self.add(a, &self.scale(b, -1.0))
    }
}

/// A source must have zero mean to within this before it is projected.
const SOURCE_MEAN_TOL: f64 = 1e-8;

fn run_chain<A: ChainAlgebra>(alg: &A, route: Route, cell: &UnitCell1D) -> Result<StaticChain> {
    let mut source_means = Vec::new();
    let mut solve = |name: &str, a: &A::F, s: &A::F| -> Result<(A::F, A::F)> {
        let m = alg.source_mean(s);
        source_means.push((name.to_string(), m));
        if m > SOURCE_MEAN_TOL {
            return Err(Error::NotSolvable { residual: m, tolerance: SOURCE_MEAN_TOL });
        }
        alg.solve(a, s)
    };
    let one = alg.constant(1.0);
    let zero = alg.constant(0.0);
    let rho = alg.rho();
    let rho0 = alg.mean(&rho);

    let (chi1, d1) = solve("chi1", &one, &zero)?;
    let g_grad1 = alg.mul_g(&alg.add(&d1, &one));
    let mu0 = alg.mean(&g_grad1);
    let s2 = alg.scale(&alg.sub(&g_grad1, &alg.scale(&rho, mu0 / rho0)), -1.0);
    let (chi2, d2) = solve("chi2", &chi1, &s2)?;

    let s_eta0 = alg.scale(&alg.sub(&rho, &alg.constant(rho0)), 1.0 / rho0);
    let (eta0, de0) = solve("eta0", &zero, &s_eta0)?;

    let rho_chi1 = alg.mul_rho(&chi1);
    let rho1 = alg.mean(&rho_chi1);
    let g_grad2 = alg.mul_g(&alg.add(&d2, &chi1));
    let mu1 = alg.mean(&g_grad2);
    let s3 = alg.scale(&alg.sub(&g_grad2, &alg.scale(&rho_chi1, mu0 / rho0)), -1.0);
    let (chi3, d3) = solve("chi3", &chi2, &s3)?;

    let g_eta0p = alg.mul_g(&de0);
    let s_eta1 = alg.scale(&alg.sub(&g_eta0p, &alg.scale(&rho_chi1, 1.0 / rho0)), -1.0);
    let (eta1, de1) = solve("eta1", &eta0, &s_eta1)?;

    let s_alpha = alg.sub(&rho_chi1, &alg.constant(rho1));
    let (alpha1, da1) = solve("alpha1", &zero, &s_alpha)?;

    let s2t = alg.scale(&alg.sub(&g_grad1, &alg.scale(&rho, mu0 / rho0)), -1.0);
    let (chi2t, d2t) = solve("chi2_tilde", &chi1, &s2t)?;
    let mu1_tilde = alg.mean(&alg.mul_g(&alg.add(&d2t, &chi1)));
    let s3t_inner = alg.sub(
        &alg.add(&alg.mul_g(&alg.add(&chi1, &d2t)), &alg.constant(-mu1_tilde)),
        &alg.scale(&alg.sub(&rho_chi1, &alg.constant(rho1)), mu0 / rho0),
    );
    let s3t = alg.scale(&s3t_inner, -1.0);
    let (chi3t, d3t) = solve("chi3_tilde", &chi2, &s3t)?;

    let coefficients = HomogCoefficients {
        route,
        rho0,
        mu0,
        rho1,
        mu1,
        rho2: alg.mean(&alg.mul_rho(&chi2)),
        mu2: alg.mean(&alg.mul_g(&alg.add(&d3, &chi2))),
        mu1_tilde,
        mu2_tilde: alg.mean(&alg.mul_g(&alg.add(&d3t, &chi2t))),
        rho2_tilde: alg.mean(&alg.mul_rho(&chi2t)),
        s_g: alg.mean(&alg.mul_g(&alg.add(&de1, &eta0))),
        s_rho: alg.mean(&alg.mul_rho(&eta0)),
        q: alg.mean_product(&rho_chi1, &chi1),
    };

    let fields = [
        ("chi1", &chi1),
        ("chi2", &chi2),
        ("chi3", &chi3),
        ("eta0", &eta0),
        ("eta1", &eta1),
        ("alpha1", &alpha1),
        ("chi2_tilde", &chi2t),
        ("chi3_tilde", &chi3t),
    ];
    let diagnostics = ChainDiagnostics {
        mean_g: alg.mean(&alg.mul_g(&one)),
        g_eta0_prime: alg.mean(&g_eta0p),
        g_alpha1_prime: alg.mean(&alg.mul_g(&da1)),
        g_chi1_prime: alg.mean(&alg.mul_g(&d1)),
        g_eta1_prime: alg.mean(&alg.mul_g(&de1)),
        mean_chi1_sq: alg.mean_product(&chi1, &chi1),
        tilde_gap: alg.gap(&chi2t, &chi2).max(alg.gap(&chi3t, &chi3)),
        field_means: fields.iter().map(|(n, f)| (n.to_string(), alg.mean(f).abs())).collect(),
        source_means,
        constant_density: cell.has_constant_density(),
    };
    Ok(StaticChain { coefficients, diagnostics })
}

/// Exact chain by piecewise-polynomial integration.
pub fn solve_static_chain_exact(cell: &UnitCell1D) -> Result<StaticChain> {
    run_chain(&ExactAlgebra { cell }, Route::Exact, cell)
}

/// Fourier-Galerkin chain with modes `|m| <= basis_n`.
pub fn solve_static_chain_spectral(cell: &UnitCell1D, basis_n: usize) -> Result<StaticChain> {
    let alg = SpectralStatic::new(cell, basis_n)?;
    run_chain(&alg, Route::Spectral { basis_n }, cell)
}

pub fn solve_static_chain(cell: &UnitCell1D, route: Route) -> Result<StaticChain> {
    match route {
        Route::Exact => solve_static_chain_exact(cell),
        Route::Spectral { basis_n } => solve_static_chain_spectral(cell, basis_n),
    }
}

struct ExactAlgebra<'a> {
    cell: &'a UnitCell1D,
}

impl ChainAlgebra for ExactAlgebra<'_> {
    type F = PiecewisePoly;

    fn constant(&self, c: f64) -> PiecewisePoly {
        PiecewisePoly::constant(self.cell, c)
    }
    fn rho(&self) -> PiecewisePoly {
        PiecewisePoly::coefficient(self.cell, crate::material::FieldKind::Density)
    }
    fn add(&self, a: &PiecewisePoly, b: &PiecewisePoly) -> PiecewisePoly {
        a.add(b)
    }
    fn scale(&self, a: &PiecewisePoly, s: f64) -> PiecewisePoly {
        a.scale(s)
    }
    fn mul_g(&self, a: &PiecewisePoly) -> PiecewisePoly {
        a.mul(&PiecewisePoly::coefficient(self.cell, crate::material::FieldKind::Shear))
    }
    fn mul_rho(&self, a: &PiecewisePoly) -> PiecewisePoly {
        a.mul(&self.rho())
    }
    fn mean(&self, a: &PiecewisePoly) -> f64 {
        a.mean()
    }
    fn mean_product(&self, a: &PiecewisePoly, b: &PiecewisePoly) -> f64 {
        a.mul(b).mean()
    }
    fn source_mean(&self, s: &PiecewisePoly) -> f64 {
        s.mean().abs() / s.abs_scale().max(1.0)
    }
    fn solve(&self, a: &PiecewisePoly, s: &PiecewisePoly) -> Result<(PiecewisePoly, PiecewisePoly)> {
        let compliance = PiecewisePoly::coefficient(self.cell, crate::material::FieldKind::Compliance);
        let s = s.add_constant(-s.mean());
        // Flux F = S + c with S = int_0^x s; chi' = F / G - a.
        let base = s.antiderivative().mul(&compliance).sub(a);
        let c = -base.mean() / compliance.mean();
        let dchi = base.add(&compliance.scale(c));
        let chi = dchi.antiderivative();
        let chi = chi.add_constant(-chi.mean());
        Ok((chi, dchi))
    }
    fn gap(&self, a: &PiecewisePoly, b: &PiecewisePoly) -> f64 {
        let d = a.sub(b);
        let d2 = d.mul(&d).mean().sqrt();
        let nb = b.mul(b).mean().sqrt();
        d2 / nb.max(1e-300)
    }
}

/// Two-scale impedance `Z2cal = mu0 (ik)^2 + rho0 w^2 + mu2 (ik)^4 + rho2 (ik)^2 w^2`.
/// All powers of `ik` are even, so the value is real.
pub fn two_scale_impedance(c: &HomogCoefficients, k: f64, omega: f64) -> f64 {
    let k2 = -k * k;
    let w2 = omega * omega;
    c.mu0 * k2 + c.rho0 * w2 + c.mu2 * k2 * k2 + c.rho2 * k2 * w2
}

/// Modulation factor `M2 = -1 - (s_G (ik)^2 + s_rho w^2)`.
pub fn modulation(c: &HomogCoefficients, k: f64, omega: f64) -> f64 {
    -1.0 - (c.s_g * (-k * k) + c.s_rho * omega * omega)
}

/// Second-order Willis impedance `Z2 = Z2cal / M2`.
pub fn willis_impedance_order2(c: &HomogCoefficients, k: f64, omega: f64) -> Result<f64> {
    let m = modulation(c, k, omega);
    if m.abs() < MODULATION_FLOOR {
        return Err(Error::ModulationSingular { k, omega, value: m.abs() });
    }
    Ok(two_scale_impedance(c, k, omega) / m)
}

/// Leading and second-order terms `(W0, W2)` of the mean `<w>`, in unscaled
/// variables: `P0 W0 = -1` and `P2 W0 + P0 W2 = -(s_G (ik)^2 + s_rho w^2)`,
/// with `P0 = mu0 (ik)^2 + rho0 w^2` and `P2 = mu2 (ik)^4 + rho2 (ik)^2 w^2`.
pub fn mean_series(c: &HomogCoefficients, k: f64, omega: f64) -> Result<(f64, f64)> {
    let k2 = -k * k;
    let w2 = omega * omega;
    let p0 = c.mu0 * k2 + c.rho0 * w2;
    if p0 == 0.0 {
        return Err(Error::Resonance { omega2: w2, eigenvalue: -c.mu0 * k2 / c.rho0 });
    }
    let p2 = c.mu2 * k2 * k2 + c.rho2 * k2 * w2;
    let s = c.s_g * k2 + c.s_rho * w2;
    let w0 = -1.0 / p0;
    let w2_term = -(s + p2 * w0) / p0;
    Ok((w0, w2_term))
}

/// Second-order impedance from the truncated mean, `1 / (W0 + W2)`.
pub fn series_impedance_order2(c: &HomogCoefficients, k: f64, omega: f64) -> Result<f64> {
    let (w0, w2) = mean_series(c, k, omega)?;
    Ok(1.0 / (w0 + w2))
}

/// First-order correction to the mean,
/// `W1 = -(mu1 - rho1 mu0 / rho0) (ik)^3 W0 / P0`; identically zero when the
/// coefficients are consistent.
pub fn first_order_mean(c: &HomogCoefficients, k: f64, omega: f64) -> Result<C64> {
    let (w0, _) = mean_series(c, k, omega)?;
    let ik = C64::new(0.0, k);
    let p0 = c.mu0 * (-k * k) + c.rho0 * omega * omega;
    Ok(-(c.mu1 - c.rho1 * c.mu0 / c.rho0) * ik.powi(3) * w0 / p0)
}

/// Second-order numerator `N2` of the mean velocity-like field,
/// matched against `Z2cal <v>`.
pub fn velocity_numerator_order2(c: &HomogCoefficients, k: f64, omega: f64) -> C64 {
    let ik = C64::new(0.0, k);
    let w2 = omega * omega;
    c.mu0 * ik - (c.mu0 * c.rho1 / c.rho0) * ik * ik
        + c.mu1_tilde * ik * ik
        + w2 * c.rho1
        + c.mu2_tilde * ik.powi(3)
        + c.rho2_tilde * ik * w2
        - w2 * c.q * ik
}

/// Consistency identities of a computed chain.
pub fn identity_suite(chain: &StaticChain) -> Vec<Check> {
    let c = &chain.coefficients;
    let d = &chain.diagnostics;
    let route = c.route.tag();
    let tol = c.route.identity_tolerance();
    let scale = c.mu0.abs().max(c.rho0.abs());
    let mut out = vec![
        Check::new("eta0_flux_mean", route, relative_gap(d.g_eta0_prime, c.rho1 / c.rho0, scale / c.rho0), tol),
        Check::new("mu1_from_rho1", route, relative_gap(c.mu1, c.rho1 * c.mu0 / c.rho0, scale), tol),
        Check::new("chi1_flux_mean", route, relative_gap(d.g_chi1_prime, c.mu0 - d.mean_g, scale), tol),
        Check::new("alpha1_flux_mean", route, relative_gap(d.g_alpha1_prime, c.q, scale), tol),
        Check::new("one_d_tilde_fields", route, d.tilde_gap, tol),
        Check::new(
            "one_d_tilde_coefficients",
            route,
            relative_gap(c.mu1_tilde, c.mu1, scale).max(relative_gap(c.mu2_tilde, c.mu2, scale)).max(relative_gap(
                c.rho2_tilde,
                c.rho2,
                scale,
            )),
            tol,
        ),
    ];
    for (k_hat, w_hat) in [(1.0, 0.3), (0.4, 0.1)] {
        if let Ok(w1) = first_order_mean(c, k_hat, w_hat) {
            let (w0, _) = mean_series(c, k_hat, w_hat).unwrap_or((1.0, 0.0));
            out.push(Check::new(format!("first_order_mean_at_{k_hat}_{w_hat}"), route, w1.norm() / w0.abs(), tol));
        }
    }
    if d.constant_density {
        out.push(Check::new("constant_density_eta1_flux", route, relative_gap(d.g_eta1_prime, d.mean_chi1_sq, scale), tol));
        let mut worst: f64 = 0.0;
        for (k, w) in [(0.5, 0.2), (1.0, 0.7), (2.0, 1.5)] {
            let general = modulation(c, k, w);
            let reduced = -1.0 - d.mean_chi1_sq * (-k * k);
            worst = worst.max(relative_gap(general, reduced, 1.0));
        }
        out.push(Check::new("constant_density_modulation", route, worst, tol));
    }
    for (name, m) in &d.field_means {
        out.push(Check::new(format!("zero_mean_{name}"), route, *m / scale, tol));
    }
    for (name, m) in &d.source_means {
        out.push(Check::new(format!("zero_mean_source_{name}"), route, *m, tol));
    }
    out
}
