//! Runs the full verification report for a homogeneous cell and a
//! bilaminate, and shows that a corrupted coefficient is caught.

use willis_homog::cli::{verify_cell, VerifyTolerances};
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let tol = VerifyTolerances::default();
    for (label, cell) in
        [("homogeneous", UnitCell1D::homogeneous(1.0, 1.0)?), ("bilaminate", UnitCell1D::bilaminate(0.1, 0.1)?)]
    {
        let report = verify_cell(&cell, 64, tol, |_| {})?;
        println!("{label}: {} checks, passed = {}", report.checks.len(), report.passed());
    }
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let corrupted = verify_cell(&cell, 64, tol, |c| c.mu2 *= 1.01)?;
    println!("mu2 scaled by 1.01: passed = {}", corrupted.passed());
    for f in corrupted.failures() {
        println!("  failing: {} (residual {:.3e})", f.name, f.residual);
    }
    Ok(())
}
