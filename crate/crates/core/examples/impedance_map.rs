//! Order-2 Willis and two-scale impedance maps, plus a check that the two
//! share their zero set along three wavenumbers.

use willis_homog::asymptotics::{modulation, solve_static_chain_exact, two_scale_impedance, willis_impedance_order2};
use willis_homog::cli::{cmd_impedance_map, resolve, Preset};

fn main() -> willis_homog::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "target/example-out/impedance".into());
    std::fs::create_dir_all(&out)?;
    let settings = resolve(None, Some(Preset::Fig4), None)?;
    let outcome = cmd_impedance_map(&settings, out.as_ref())?;
    println!("{}", outcome.summary);

    let c = solve_static_chain_exact(settings.cell())?.coefficients;
    for k in [0.5, 1.0, 2.0] {
        // Zero of the two-scale impedance, which is quadratic in omega^2.
        let w = ((c.mu0 * k * k - c.mu2 * k.powi(4)) / (c.rho0 - c.rho2 * k * k)).sqrt();
        println!(
            "k = {k}: omega* = {w:.9}, two-scale {:.1e}, willis {:.1e}, M2 {:.4}",
            two_scale_impedance(&c, k, w),
            willis_impedance_order2(&c, k, w)?,
            modulation(&c, k, w)
        );
    }
    Ok(())
}
