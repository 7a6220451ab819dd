//! Higher-order homogenization coefficients of a bilaminate on both routes,
//! followed by the identity residuals of the exact chain.

use willis_homog::asymptotics::{identity_suite, solve_static_chain_exact, solve_static_chain_spectral};
use willis_homog::UnitCell1D;

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let exact = solve_static_chain_exact(&cell)?;
    let spectral = solve_static_chain_spectral(&cell, 128)?;
    let (e, s) = (&exact.coefficients, &spectral.coefficients);
    println!("coefficient        exact          spectral(N=128)");
    for (name, a, b) in [
        ("rho0", e.rho0, s.rho0),
        ("mu0", e.mu0, s.mu0),
        ("rho2", e.rho2, s.rho2),
        ("mu2", e.mu2, s.mu2),
        ("s_G", e.s_g, s.s_g),
        ("s_rho", e.s_rho, s.s_rho),
        ("q", e.q, s.q),
    ] {
        println!("{name:<8}  {a:>16.10e}  {b:>16.10e}");
    }
    println!();
    for c in identity_suite(&exact) {
        println!("{:<32} {:>10.2e} {}", c.name, c.residual, if c.passed { "ok" } else { "FAIL" });
    }
    Ok(())
}
