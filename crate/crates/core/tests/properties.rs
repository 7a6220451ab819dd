//! Randomized invariants over layered cells.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use willis_homog::cell_functions::{exact_pair, solve_exact};
use willis_homog::material::{fourier_coefficients, FieldKind};
use willis_homog::spectral::BlochOperator;
use willis_homog::willis::{willis_parameters, ParameterForm};
use willis_homog::{Error, Phase, UnitCell1D};

fn cell_strategy() -> impl Strategy<Value = UnitCell1D> {
    prop::collection::vec((0.1f64..1.0, 0.2f64..5.0, 0.2f64..5.0), 2..=4).prop_map(|raw| {
        let total: f64 = raw.iter().map(|r| r.0).sum();
        let mut phases: Vec<Phase> = raw.iter().map(|&(l, g, rho)| Phase::new(l / total, g, rho)).collect();
        // Close the cell exactly so validation sees a unit length.
        let head: f64 = phases[..phases.len() - 1].iter().map(|p| p.length).sum();
        phases.last_mut().unwrap().length = 1.0 - head;
        UnitCell1D::new(phases).expect("normalised cell")
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn fourier_data_of_real_fields_is_conjugate_symmetric(cell in cell_strategy(), m in 1i64..40) {
        for kind in [FieldKind::Shear, FieldKind::Density, FieldKind::Compliance] {
            let f = fourier_coefficients(&cell, kind, 40);
            prop_assert!((f.get(-m) - f.get(m).conj()).norm() < 1e-14);
            prop_assert!((f.mean().re - cell.mean(kind)).abs() < 1e-13);
            prop_assert!(f.mean().im.abs() < 1e-15);
        }
    }

    #[test]
    fn galerkin_matrices_are_hermitian(cell in cell_strategy(), k in -3.1f64..3.1) {
        let op = BlochOperator::assemble(&cell, k, 12).unwrap();
        let a = op.stiffness();
        let b = op.mass();
        prop_assert!((a - a.adjoint()).norm() <= 1e-12 * a.norm());
        prop_assert!((b - b.adjoint()).norm() <= 1e-14 * b.norm());
        // Positive eigenvalues when k is not a reciprocal lattice vector.
        if k.abs() > 1e-3 {
            prop_assert!(op.eigenvalues().unwrap()[0] > 0.0);
        }
    }

    #[test]
    fn effective_density_and_stiffness_are_real(cell in cell_strategy(), k in 0.05f64..3.0, omega in 0.05f64..3.0) {
        let pair = match exact_pair(&cell, k, omega) {
            Err(Error::Resonance { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assume!(pair.w.mean.norm() > 1e-6 && pair.w.mean.norm() < 1e6);
        for form in [ParameterForm::Representation, ParameterForm::Symmetric] {
            let p = willis_parameters(&pair, form).unwrap();
            prop_assert!(p.density.im.abs() <= 1e-8 * p.density.norm(), "{:?} density {}", form, p.density);
            prop_assert!(p.stiffness.im.abs() <= 1e-8 * p.stiffness.norm(), "{:?} stiffness {}", form, p.stiffness);
        }
        prop_assert!(pair.w.mean.im.abs() <= 1e-9 * pair.w.mean.norm());
    }

    #[test]
    fn cell_response_is_linear_in_the_source(
        cell in cell_strategy(),
        k in 0.05f64..3.0,
        omega in 0.05f64..3.0,
        f in (-2.0f64..2.0, -2.0f64..2.0),
        gamma in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let (f, gamma) = (C64::new(f.0, f.1), C64::new(gamma.0, gamma.1));
        let pair = match exact_pair(&cell, k, omega) {
            Err(Error::Resonance { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let u = solve_exact(&cell, k, omega, f, gamma).unwrap();
        let want = f * pair.w.mean + gamma * pair.v.mean;
        let scale = pair.w.mean.norm() + pair.v.mean.norm();
        prop_assert!((u.mean() - want).norm() <= 1e-10 * scale * (f.norm() + gamma.norm() + 1.0));
    }

    #[test]
    fn json_round_trip_preserves_the_hash(cell in cell_strategy()) {
        let back = UnitCell1D::from_json_str(&cell.to_json()).unwrap();
        prop_assert_eq!(back.content_hash(), cell.content_hash());
    }
}
