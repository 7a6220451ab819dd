//! Solves the monopole and dipole cell problems on the spectral route, with
//! both the resolvent and the eigen-expansion, and compares the averages with
//! the exact piecewise solution.

use willis_homog::cell_functions::{exact_pair, spectral_pair, SolveMethod};
use willis_homog::spectral::BlochOperator;
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let (k, omega) = (0.8, 0.35);
    let exact = exact_pair(&cell, k, omega)?;
    println!("exact      <w> = {:.12}  <v> = {:.12}", exact.w.mean, exact.v.mean);

    for n in [32, 64, 128, 256] {
        let op = BlochOperator::assemble(&cell, k, n)?;
        let (_, _, res) = spectral_pair(&op, omega, SolveMethod::Resolvent)?;
        let (_, _, eig) = spectral_pair(&op, omega, SolveMethod::Eigen { modes: None })?;
        println!(
            "N = {n:>3}  <w> = {:.12}  |gap exact| = {:.3e}  |resolvent - eigen| = {:.3e}",
            res.w.mean,
            (res.w.mean - exact.w.mean).norm(),
            (res.w.mean - eig.w.mean).norm()
        );
    }
    Ok(())
}
