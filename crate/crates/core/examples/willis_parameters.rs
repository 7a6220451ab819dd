//! Writes a CSV map of the effective Willis parameters of a bilaminate over a
//! small (k, omega) grid, with symmetry and impedance residuals per row.
//!
//! ```text
//! cargo run --release --example willis_parameters -- [out.csv]
//! ```
//! Without an argument the CSV goes to stdout.

use willis_homog::cell_functions::exact_pair;
use willis_homog::io::{csv_string, ArtifactHeader, CsvValue};
use willis_homog::willis::parameter_row;
use willis_homog::{Error, UnitCell1D};

fn main() -> willis_homog::Result<()> {
    let cell = UnitCell1D::bilaminate(0.1, 0.1)?;
    let mut rows = Vec::new();
    for i in 1..=8 {
        for j in 1..=6 {
            let (k, omega) = (0.35 * i as f64, 0.25 * j as f64);
            let pair = match exact_pair(&cell, k, omega) {
                Ok(p) => p,
                Err(Error::Resonance { .. }) => continue,
                Err(e) => return Err(e),
            };
            let r = parameter_row(&pair)?;
            let p = r.params;
            rows.push(vec![
                CsvValue::from(k),
                omega.into(),
                p.impedance.re.into(),
                p.density.re.into(),
                p.stiffness.re.into(),
                p.coupling_momentum.re.into(),
                p.coupling_momentum.im.into(),
                r.symmetry_residual.into(),
                r.impedance_residual.into(),
            ]);
        }
    }
    let header = ArtifactHeader::new("example-willis-parameters", &cell.content_hash(), 0).with("route", "exact");
    let cols = ["k", "omega", "re_z", "re_rho", "re_c", "re_s2", "im_s2", "symmetry_residual", "impedance_residual"];
    let text = csv_string(&header, &cols, &rows);
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
