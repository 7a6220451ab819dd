//! Truncated Fourier series on the unit cell.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

/// Coefficients `c_m` of `sum_m c_m exp(2 pi i m x)` for `m in -order..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierField {
    order: usize,
    coeffs: Vec<C64>,
}

impl FourierField {
    pub fn zeros(order: usize) -> Self {
        Self { order, coeffs: vec![C64::new(0.0, 0.0); 2 * order + 1] }
    }

    /// Panics unless `coeffs.len() == 2 * order + 1`.
    pub fn from_coeffs(order: usize, coeffs: Vec<C64>) -> Self {
        assert_eq!(coeffs.len(), 2 * order + 1, "coefficient count must be 2N+1");
        Self { order, coeffs }
    }

    /// The constant field `value`.
    pub fn constant(order: usize, value: C64) -> Self {
        let mut f = Self::zeros(order);
        f.coeffs[order] = value;
        f
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// `c_m`, or zero outside the stored range.
    pub fn get(&self, m: i64) -> C64 {
        if m.unsigned_abs() as usize > self.order {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(m + self.order as i64) as usize]
        }
    }

    pub fn set(&mut self, m: i64, value: C64) {
        let idx = (m + self.order as i64) as usize;
        self.coeffs[idx] = value;
    }

    /// Cell average `<f> = c_0`.
    pub fn mean(&self) -> C64 {
        self.coeffs[self.order]
    }

    pub fn evaluate(&self, x: f64) -> C64 {
        let n = self.order as i64;
        (-n..=n).map(|m| self.get(m) * C64::from_polar(1.0, 2.0 * PI * m as f64 * x)).sum()
    }

    /// `sqrt(<|f|^2>)` by Parseval.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<f g> = sum_m f_{-m} g_m`. When one factor is stored to a higher order
    /// (an exact coefficient field) the result is exact for the other.
    pub fn average_product(&self, other: &FourierField) -> C64 {
        let n = self.order.min(other.order) as i64;
        (-n..=n).map(|m| self.get(-m) * other.get(m)).sum()
    }

    /// Pointwise product truncated to `out_order`.
    pub fn multiply(&self, other: &FourierField, out_order: usize) -> FourierField {
        let n = out_order as i64;
        let o = other.order as i64;
        let coeffs = (-n..=n).map(|m| (-o..=o).map(|j| self.get(m - j) * other.get(j)).sum()).collect();
        FourierField::from_coeffs(out_order, coeffs)
    }

    /// Applies `d/dx + i k`, i.e. multiplies `c_m` by `i (2 pi m + k)`.
    pub fn grad_k(&self, k: f64) -> FourierField {
        let n = self.order as i64;
        let coeffs = (-n..=n).map(|m| C64::new(0.0, 2.0 * PI * m as f64 + k) * self.get(m)).collect();
        FourierField::from_coeffs(self.order, coeffs)
    }

    /// Complex conjugate field: `c_m -> conj(c_{-m})`.
    pub fn conj(&self) -> FourierField {
        let n = self.order as i64;
        let coeffs = (-n..=n).map(|m| self.get(-m).conj()).collect();
        FourierField::from_coeffs(self.order, coeffs)
    }

    pub fn scale(&self, s: C64) -> FourierField {
        FourierField::from_coeffs(self.order, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Re-truncates or zero-pads to `order`.
    pub fn with_order(&self, order: usize) -> FourierField {
        let n = order as i64;
        FourierField::from_coeffs(order, (-n..=n).map(|m| self.get(m)).collect())
    }

    /// True when `c_{-m} = conj(c_m)` to within `tol`, i.e. the field is real.
    pub fn is_real(&self, tol: f64) -> bool {
        let n = self.order as i64;
        (0..=n).all(|m| (self.get(-m) - self.get(m).conj()).norm() <= tol)
    }
}

impl Add for &FourierField {
    type Output = FourierField;
    fn add(self, rhs: &FourierField) -> FourierField {
        let n = self.order.max(rhs.order);
        let ni = n as i64;
        FourierField::from_coeffs(n, (-ni..=ni).map(|m| self.get(m) + rhs.get(m)).collect())
    }
}

impl Sub for &FourierField {
    type Output = FourierField;
    fn sub(self, rhs: &FourierField) -> FourierField {
        let n = self.order.max(rhs.order);
        let ni = n as i64;
        FourierField::from_coeffs(n, (-ni..=ni).map(|m| self.get(m) - rhs.get(m)).collect())
    }
}

impl Mul<C64> for &FourierField {
    type Output = FourierField;
    fn mul(self, rhs: C64) -> FourierField {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn get_outside_range_is_zero() {
        let f = FourierField::constant(2, c(1.0, 0.0));
        assert_eq!(f.get(5), c(0.0, 0.0));
        assert_eq!(f.get(0), c(1.0, 0.0));
        assert_eq!(f.mean(), c(1.0, 0.0));
    }

    #[test]
    fn product_of_conjugate_harmonics() {
        let mut a = FourierField::zeros(2);
        a.set(1, c(1.0, 0.0));
        let b = a.conj();
        assert!((a.average_product(&b) - c(1.0, 0.0)).norm() < 1e-15);
        let p = a.multiply(&b, 2);
        assert!((p.mean() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(p.get(1).norm() < 1e-15);
    }

    #[test]
    fn evaluate_matches_series() {
        let mut f = FourierField::zeros(1);
        f.set(1, c(0.5, 0.0));
        f.set(-1, c(0.5, 0.0));
        assert!((f.evaluate(0.25) - c(0.0, 0.0)).norm() < 1e-15);
        assert!((f.evaluate(0.0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(f.is_real(1e-15));
    }

    #[test]
    fn grad_k_of_constant() {
        let f = FourierField::constant(1, c(2.0, 0.0));
        assert!((f.grad_k(0.5).mean() - c(0.0, 1.0)).norm() < 1e-15);
    }
}
