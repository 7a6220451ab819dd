//! Writes the modulation-factor map of the (0.1, 0.1) bilaminate through the
//! command-line layer, then reports the smallest |M2| with k <= 2.
//!
//! ```text
//! cargo run --release --example modulation_map -- [out_dir]
//! ```

use willis_homog::asymptotics::{modulation, solve_static_chain_exact};
use willis_homog::cli::{cmd_modulation_map, resolve, Preset};

fn main() -> willis_homog::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "target/example-out/modulation".into());
    std::fs::create_dir_all(&out)?;
    let settings = resolve(None, Some(Preset::Fig3), None)?;
    let outcome = cmd_modulation_map(&settings, out.as_ref())?;
    println!("{}", outcome.summary);
    for f in outcome.files {
        println!("wrote {}", f.display());
    }

    let c = solve_static_chain_exact(settings.cell())?.coefficients;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=200 {
        for j in 0..400 {
            let (k, w) = (2.0 * i as f64 / 200.0, 2.0 * std::f64::consts::PI * j as f64 / 400.0);
            let m = modulation(&c, k, w).abs();
            if m < best.0 {
                best = (m, k, w);
            }
        }
    }
    println!("min |M2| for k <= 2: {:.4} at k = {:.3}, omega = {:.3}", best.0, best.1, best.2);
    Ok(())
}
