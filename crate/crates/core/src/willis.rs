//! Effective Willis parameters, localization fields and mean-field balance.
//!
//! Everything here consumes the averages in a [`CellPair`], so the same
//! formulas run on the spectral and the exact route.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::cell_functions::{CellPair, CellSolution};
use crate::error::{Error, Result};
use crate::fourier::FourierField;
use crate::report::{relative_gap_c, Check, RouteTag};
use crate::tolerances::ZERO_MEAN_W;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Effective impedance `Z = 1 / <w>`.
pub fn effective_impedance(pair: &CellPair) -> Result<C64> {
    let m = pair.w.mean;
    if m.norm() <= ZERO_MEAN_W {
        return Err(Error::VanishingMean(m.norm()));
    }
    Ok(1.0 / m)
}

/// Which closed form evaluates the parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterForm {
    /// Formulas read off the representation of the cell field.
    Representation,
    /// Equivalent forms in which the symmetries are manifest.
    Symmetric,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct WillisParameters {
    pub k: f64,
    pub omega: f64,
    pub form: ParameterForm,
    pub impedance: C64,
    pub density: C64,
    pub stiffness: C64,
    /// Coupling entering the stress.
    pub coupling_stress: C64,
    /// Coupling entering the momentum.
    pub coupling_momentum: C64,
}

/// Evaluates `(rho_e, C_e, S1_e, S2_e)`. Requires `omega != 0` for the
/// representation form of `S1_e`.
pub fn willis_parameters(pair: &CellPair, form: ParameterForm) -> Result<WillisParameters> {
    let z = effective_impedance(pair)?;
    let ik = I * pair.k;
    let iw = I * pair.omega;
    let w2 = pair.omega * pair.omega;
    let g = C64::new(pair.g_mean, 0.0);
    let (w, v) = (&pair.w, &pair.v);
    let g_grad_ikv = ik * v.g_grad_mean;
    let coupling_momentum = iw * (v.rho_mean - z * w.rho_mean * v.mean);
    let (density, stiffness, coupling_stress) = match form {
        ParameterForm::Representation => {
            if pair.omega == 0.0 {
                return Err(Error::Config("the representation form needs omega != 0".into()));
            }
            let density = z * w.rho_mean * (1.0 - ik * v.mean) + ik * v.rho_mean;
            let stiffness = g + z * w.g_grad_mean * v.mean - v.g_grad_mean;
            let s1 = (ik / iw) * g - (z / iw) * w.g_grad_mean * (1.0 - ik * v.mean) - g_grad_ikv / iw;
            (density, stiffness, s1)
        }
        ParameterForm::Symmetric => {
            let density = -w2 * z * w.rho_mean.norm_sqr() + ik * v.rho_mean;
            let stiffness = g + z * v.mean.conj() * v.mean - v.g_grad_mean;
            (density, stiffness, -coupling_momentum.conj())
        }
    };
    Ok(WillisParameters {
        k: pair.k,
        omega: pair.omega,
        form,
        impedance: z,
        density,
        stiffness,
        coupling_stress,
        coupling_momentum,
    })
}

/// `Z = -(ik) C (ik) - ik (S2 + conj S2) i omega - omega^2 rho`.
pub fn impedance_from_parameters(p: &WillisParameters) -> C64 {
    let ik = I * p.k;
    let iw = I * p.omega;
    -ik * p.stiffness * ik
        - ik * (p.coupling_momentum + p.coupling_momentum.conj()) * iw
        - p.omega * p.omega * p.density
}

/// Cell-periodic localization fields with `u = <u> + A <eps - gamma> + B <vel>`.
#[derive(Clone, Debug)]
pub struct LocalizationFields {
    pub k: f64,
    pub omega: f64,
    pub strain: FourierField,
    pub velocity: FourierField,
}

/// `A = (<v>/<w>) w - v` and
/// `B = (1/i omega)(1 - w/<w>) + (1/i omega)(ik <v>/<w> w - ik v)`.
pub fn localization_fields(w: &CellSolution, v: &CellSolution) -> Result<LocalizationFields> {
    let wm = w.averages.mean;
    if wm.norm() <= ZERO_MEAN_W {
        return Err(Error::VanishingMean(wm.norm()));
    }
    if w.omega == 0.0 {
        return Err(Error::Config("the velocity localization field needs omega != 0".into()));
    }
    let wf = w.field();
    let vf = v.field();
    let ratio = v.averages.mean / wm;
    let strain = &wf.scale(ratio) - &vf;
    let ik = I * w.k;
    let inv_iw = 1.0 / (I * w.omega);
    let one = FourierField::constant(wf.order(), C64::new(1.0, 0.0));
    let first = &one - &wf.scale(1.0 / wm);
    let second = &wf.scale(ik * ratio) - &vf.scale(ik);
    let velocity = (&first + &second).scale(inv_iw);
    Ok(LocalizationFields { k: w.k, omega: w.omega, strain, velocity })
}

/// Mean fields of `u = f w + gamma v`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MeanFields {
    pub displacement: C64,
    pub strain: C64,
    pub velocity: C64,
    pub stress: C64,
    pub momentum: C64,
}

/// `<eps> = ik <u>`, `<vel> = -i omega <u>`, `<sigma> = <G((d/dx+ik)u - gamma)>`,
/// `<p> = -i omega <rho u>`.
pub fn mean_fields(pair: &CellPair, f: C64, gamma: C64) -> MeanFields {
    let u = crate::cell_functions::CellAverages::combine(&pair.w, f, &pair.v, gamma);
    let ik = I * pair.k;
    let iw = I * pair.omega;
    MeanFields {
        displacement: u.mean,
        strain: ik * u.mean,
        velocity: -iw * u.mean,
        stress: u.g_grad_mean - gamma * pair.g_mean,
        momentum: -iw * u.rho_mean,
    }
}

/// `|-i omega <p> - ik <sigma> - f|`, relative to `max(|f|, 1)`.
pub fn balance_residual(m: &MeanFields, k: f64, omega: f64, f: C64) -> f64 {
    let r = -I * omega * m.momentum - I * k * m.stress - f;
    r.norm() / f.norm().max(1.0)
}

/// Extra averages that need `zeta`: `<zeta>` and `<rho w conj(zeta)>`.
#[derive(Clone, Copy, Debug)]
pub struct ZetaAverages {
    pub mean: C64,
    pub rho_w_conj: C64,
}

/// Identity residuals at one point. `zeta` enables the cell-basis check.
pub fn identity_checks(pair: &CellPair, zeta: Option<ZetaAverages>, route: RouteTag, tol: f64) -> Result<Vec<Check>> {
    let (w, v) = (&pair.w, &pair.v);
    let ik = I * pair.k;
    let w2 = pair.omega * pair.omega;
    let g = pair.g_mean;
    let tag = |s: &str| format!("{s}@k={:.3},w={:.3}", pair.k, pair.omega);
    let mut out = vec![
        Check::new(tag("mean_w_real"), route, w.mean.im.abs() / w.mean.norm().max(1e-300), tol),
        Check::new(tag("real_g_grad_v"), route, v.g_grad_mean.im.abs() / v.g_grad_mean.norm().max(g), tol),
        Check::new(tag("reciprocity_mean_v"), route, relative_gap_c(ik * v.mean, 1.0 + w2 * w.rho_mean.conj(), 1.0), tol),
        Check::new(
            tag("reciprocity_g_grad_v"),
            route,
            relative_gap_c(ik * v.g_grad_mean, ik * g + w2 * v.rho_mean.conj(), g * pair.k.abs()),
            tol,
        ),
        Check::new(tag("reciprocity_g_grad_w"), route, relative_gap_c(w.g_grad_mean, v.mean.conj(), 1e-300), tol),
    ];
    if let Some(z) = zeta {
        let rhs = z.mean.conj() + w2 * z.rho_w_conj;
        out.push(Check::new(tag("cell_basis_g_grad_w"), route, relative_gap_c(w.g_grad_mean, rhs, 1e-300), tol));
    }
    if pair.omega != 0.0 {
        let rep = willis_parameters(pair, ParameterForm::Representation)?;
        let sym = willis_parameters(pair, ParameterForm::Symmetric)?;
        let scale = rep.density.norm().max(rep.stiffness.norm());
        out.push(Check::new(tag("density_real"), route, rep.density.im.abs() / rep.density.norm(), tol));
        out.push(Check::new(tag("stiffness_real"), route, rep.stiffness.im.abs() / rep.stiffness.norm(), tol));
        out.push(Check::new(
            tag("coupling_antisymmetry"),
            route,
            (rep.coupling_stress + rep.coupling_momentum.conj()).norm() / scale,
            tol,
        ));
        out.push(Check::new(
            tag("forms_agree"),
            route,
            relative_gap_c(rep.density, sym.density, 1e-300).max(relative_gap_c(rep.stiffness, sym.stiffness, 1e-300)),
            tol,
        ));
        let zf = impedance_from_parameters(&rep);
        let zscale = pair.k * pair.k * rep.stiffness.norm() + w2 * rep.density.norm();
        out.push(Check::new(tag("impedance_from_parameters"), route, relative_gap_c(zf, rep.impedance, zscale), tol));
    }
    Ok(out)
}

/// One row of a parameter map.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParameterRow {
    pub params: WillisParameters,
    /// Worst symmetry residual of this point.
    pub symmetry_residual: f64,
    /// Relative gap between `1/<w>` and the parameter-built impedance.
    pub impedance_residual: f64,
}

pub fn parameter_row(pair: &CellPair) -> Result<ParameterRow> {
    let rep = willis_parameters(pair, ParameterForm::Representation)?;
    let scale = rep.density.norm().max(rep.stiffness.norm());
    let symmetry_residual = (rep.density.im.abs() / rep.density.norm())
        .max(rep.stiffness.im.abs() / rep.stiffness.norm())
        .max((rep.coupling_stress + rep.coupling_momentum.conj()).norm() / scale);
    let zscale = pair.k * pair.k * rep.stiffness.norm() + pair.omega * pair.omega * rep.density.norm();
    let impedance_residual = relative_gap_c(impedance_from_parameters(&rep), rep.impedance, zscale);
    Ok(ParameterRow { params: rep, symmetry_residual, impedance_residual })
}
