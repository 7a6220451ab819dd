//! Entire exponential helpers and Gauss-Legendre quadrature.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

/// `phi1(z) = (e^z - 1) / z`, with `phi1(0) = 1`.
pub fn phi1(z: C64) -> C64 {
    if z.norm() < 0.5 {
        // Taylor series: sum z^n / (n + 1)!
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for n in 1..24 {
            term = term * z / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `phi2(z) = (e^z - 1 - z) / z^2`, with `phi2(0) = 1/2`.
pub fn phi2(z: C64) -> C64 {
    if z.norm() < 1.0 {
        let mut term = C64::new(0.5, 0.0);
        let mut sum = term;
        for n in 1..30 {
            term = term * z / (n as f64 + 2.0);
            sum += term;
        }
        sum
    } else {
        (z.exp() - 1.0 - z) / (z * z)
    }
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule via Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// `int_a^b f(x) dx`.
    pub fn integrate<F: FnMut(f64) -> C64>(&self, a: f64, b: f64, mut f: F) -> C64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<C64>() * half
    }

    /// Composite rule with `panels` equal sub-intervals.
    pub fn integrate_composite<F: FnMut(f64) -> C64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> C64 {
        let h = (b - a) / panels as f64;
        (0..panels).map(|p| self.integrate(a + p as f64 * h, a + (p + 1) as f64 * h, &mut f)).sum()
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_functions_are_continuous_across_branches() {
        for r in [0.499_999, 0.500_001, 0.999_999, 1.000_001] {
            let z = C64::from_polar(r, 0.7);
            let a1 = (z.exp() - 1.0) / z;
            assert!((phi1(z) - a1).norm() < 1e-14);
            let a2 = (z.exp() - 1.0 - z) / (z * z);
            assert!((phi2(z) - a2).norm() < 1e-12);
        }
        assert_eq!(phi1(C64::new(0.0, 0.0)), C64::new(1.0, 0.0));
        assert_eq!(phi2(C64::new(0.0, 0.0)), C64::new(0.5, 0.0));
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(8);
        // Degree 15 is the exactness limit for 8 points.
        let v = gl.integrate(0.0, 2.0, |x| C64::new(x.powi(15), 0.0));
        assert!((v.re - 2f64.powi(16) / 16.0).abs() < 1e-9);
        let w: f64 = gl.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_oscillatory() {
        let gl = GaussLegendre::new(32);
        let v = gl.integrate(0.0, 1.0, |x| C64::from_polar(1.0, 7.0 * x));
        let exact = (C64::new(0.0, 7.0).exp() - 1.0) / C64::new(0.0, 7.0);
        assert!((v - exact).norm() < 1e-14);
    }
}
