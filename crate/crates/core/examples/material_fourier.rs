//! Builds a three-phase cell, prints its closed-form Fourier data and checks
//! the truncated series against point samples away from the interfaces.
//!
//! Run with `cargo run --example material_fourier`.

use willis_homog::material::{fourier_coefficients, FieldKind};
use willis_homog::{Phase, UnitCell1D};

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::new(vec![Phase::new(0.3, 1.0, 1.0), Phase::new(0.5, 4.0, 0.5), Phase::new(0.2, 0.5, 2.0)])?;
    println!("cell sha256 {}", cell.content_hash());
    println!(
        "<G> = {:.6}  <rho> = {:.6}  harmonic G = {:.6}",
        cell.mean(FieldKind::Shear),
        cell.mean(FieldKind::Density),
        cell.harmonic_shear()
    );

    let order = 256;
    let g = fourier_coefficients(&cell, FieldKind::Shear, order);
    println!("\n  m          Re G_m          Im G_m");
    for m in -3..=3 {
        let c = g.get(m);
        println!("{m:>3}  {:>14.8}  {:>14.8}", c.re, c.im);
    }
    println!("real field: {}", g.is_real(1e-12));

    println!("\n   x     sampled   series(N={order})");
    for x in [0.15, 0.55, 0.9] {
        println!("{x:>5.2}  {:>9.5}  {:>9.5}", cell.sample(x, FieldKind::Shear), g.evaluate(x).re);
    }
    Ok(())
}
