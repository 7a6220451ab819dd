//! Exact, order-2 and quasi-static acoustic branches of the (0.1, 0.1)
//! bilaminate, with the relative error of both models.

use willis_homog::asymptotics::solve_static_chain_exact;
use willis_homog::dispersion::{exact_frequency, order2_frequency, quasistatic_frequency, small_k_slope};
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let c = solve_static_chain_exact(&cell)?.coefficients;
    println!("small-k slope {:.9}, sqrt(mu0/rho0) {:.9}", small_k_slope(&cell)?, (c.mu0 / c.rho0).sqrt());
    println!("\n   k      exact      order2   rel.err    quasi   rel.err");
    for i in 1..=12 {
        let k = 0.25 * i as f64;
        let w = exact_frequency(&cell, k)?;
        let q = quasistatic_frequency(&c, k);
        match order2_frequency(&c, k) {
            Ok(o) => println!(
                "{k:>5.2}  {w:>9.6}  {o:>9.6}  {:>8.2e}  {q:>7.4}  {:>8.2e}",
                (o - w).abs() / w,
                (q - w).abs() / w
            ),
            Err(e) => println!("{k:>5.2}  {w:>9.6}  order-2 branch ends ({e})"),
        }
    }
    Ok(())
}
