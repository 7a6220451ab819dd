//! Fourier-Galerkin backend for the static chain.
//!
//! Unknowns are the coefficients `m != 0`; the weak form of
//! `(G (chi' + a))' = s` tested with `e_m` reads
//! `sum_n G_{m-n} (2 pi m)(2 pi n) chi_n = 2 pi i m (G a)_m - s_m`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Dyn, LU};
use num_complex::Complex64 as C64;

use super::ChainAlgebra;
use crate::error::{Error, Result};
use crate::fourier::FourierField;
use crate::material::{fourier_coefficients, FieldKind, UnitCell1D};

pub struct SpectralStatic {
    order: usize,
    g_hat: FourierField,
    rho_hat: FourierField,
    lu: LU<C64, Dyn, Dyn>,
}

impl SpectralStatic {
    pub fn new(cell: &UnitCell1D, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Config("basis order N must be at least 1".into()));
        }
        let g_hat = fourier_coefficients(cell, FieldKind::Shear, 2 * order);
        let rho_hat = fourier_coefficients(cell, FieldKind::Density, 2 * order);
        let modes = Self::modes(order);
        let dim = modes.len();
        let k = DMatrix::from_fn(dim, dim, |i, j| {
            let (m, n) = (modes[i], modes[j]);
            g_hat.get(m - n) * (4.0 * PI * PI * (m * n) as f64)
        });
        Ok(Self { order, g_hat, rho_hat, lu: k.lu() })
    }

    fn modes(order: usize) -> Vec<i64> {
        let n = order as i64;
        (-n..=n).filter(|&m| m != 0).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn deriv(&self, a: &FourierField) -> FourierField {
        a.grad_k(0.0)
    }
}

impl ChainAlgebra for SpectralStatic {
    type F = FourierField;

    fn constant(&self, c: f64) -> FourierField {
        FourierField::constant(self.order, C64::new(c, 0.0))
    }
    fn rho(&self) -> FourierField {
        self.rho_hat.with_order(self.order)
    }
    fn add(&self, a: &FourierField, b: &FourierField) -> FourierField {
        a + b
    }
    fn scale(&self, a: &FourierField, s: f64) -> FourierField {
        a.scale(C64::new(s, 0.0))
    }
    fn mul_g(&self, a: &FourierField) -> FourierField {
        self.g_hat.multiply(a, self.order)
    }
    fn mul_rho(&self, a: &FourierField) -> FourierField {
        self.rho_hat.multiply(a, self.order)
    }
    fn mean(&self, a: &FourierField) -> f64 {
        a.mean().re
    }
    fn mean_product(&self, a: &FourierField, b: &FourierField) -> f64 {
        a.average_product(b).re
    }
    fn source_mean(&self, s: &FourierField) -> f64 {
        s.mean().norm() / s.l2_norm().max(1.0)
    }
    fn solve(&self, a: &FourierField, s: &FourierField) -> Result<(FourierField, FourierField)> {
        let ga = self.mul_g(a);
        let modes = Self::modes(self.order);
        let rhs = DVector::from_iterator(
            modes.len(),
            modes.iter().map(|&m| C64::new(0.0, 2.0 * PI * m as f64) * ga.get(m) - s.get(m)),
        );
        let sol = self.lu.solve(&rhs).ok_or_else(|| Error::LinearAlgebra("singular static operator".into()))?;
        let mut chi = FourierField::zeros(self.order);
        for (i, &m) in modes.iter().enumerate() {
            chi.set(m, sol[i]);
        }
        let dchi = self.deriv(&chi);
        Ok((chi, dchi))
    }
    fn gap(&self, a: &FourierField, b: &FourierField) -> f64 {
        (a - b).l2_norm() / b.l2_norm().max(1e-300)
    }
}
