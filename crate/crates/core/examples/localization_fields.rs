//! Strain and velocity localization fields of a bilaminate, sampled across
//! the cell, together with the mean-field balance of a superposed source.

use num_complex::Complex64 as C64;
use willis_homog::cell_functions::{spectral_pair, SolveMethod};
use willis_homog::spectral::BlochOperator;
use willis_homog::willis::{balance_residual, localization_fields, mean_fields};
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let (k, omega) = (1.2, 0.5);
    let op = BlochOperator::assemble(&cell, k, 128)?;
    let (w, v, pair) = spectral_pair(&op, omega, SolveMethod::Resolvent)?;
    let loc = localization_fields(&w, &v)?;
    println!("<A> = {:.3e}  <B> = {:.3e}", loc.strain.mean().norm(), loc.velocity.mean().norm());
    println!("\n   x      |A(x)|      |B(x)|");
    for i in 0..10 {
        let x = 0.05 + 0.1 * i as f64;
        println!("{x:>5.2}  {:>10.5}  {:>10.5}", loc.strain.evaluate(x).norm(), loc.velocity.evaluate(x).norm());
    }
    let (f, gamma) = (C64::new(1.0, 0.5), C64::new(-0.3, 0.2));
    let m = mean_fields(&pair, f, gamma);
    println!("\nbalance residual for f = {f}, gamma = {gamma}: {:.3e}", balance_residual(&m, k, omega, f));
    Ok(())
}
