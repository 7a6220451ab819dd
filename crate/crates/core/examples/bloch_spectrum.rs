//! Lowest Bloch eigenvalues of a bilaminate and the visibility of each branch.
//!
//! ```text
//! cargo run --release --example bloch_spectrum -- [k] [basis_n]
//! ```

use willis_homog::spectral::{classify_visibility, BlochOperator};
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: f64 = args.next().map_or(1.0, |s| s.parse().expect("k must be a number"));
    let n: usize = args.next().map_or(64, |s| s.parse().expect("basis_n must be an integer"));

    for (label, cell) in [
        ("homogeneous", UnitCell1D::homogeneous(1.0, 1.0)?),
        ("bilaminate(0.1,0.1)", UnitCell1D::bilaminate(0.1, 0.1)?),
    ] {
        let op = BlochOperator::assemble(&cell, k, n)?;
        let eig = op.eigensystem()?;
        println!("{label}, k = {k}, N = {n}");
        println!("branch   lambda          omega     |<phi>|      dipole      visibility  behaviour");
        for b in 1..=5 {
            let r = classify_visibility(&op, &eig, b, None)?;
            println!(
                "{b:>6}  {:>12.6}  {:>9.5}  {:>10.3e}  {:>10.3e}  {:<10?}  {:?}",
                r.eigenvalue,
                r.eigenvalue.sqrt(),
                r.mean_magnitude,
                r.dipole_projection,
                r.visibility,
                r.behaviour
            );
        }
        println!();
    }
    Ok(())
}
