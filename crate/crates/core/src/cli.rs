//! Command-line front end: configuration, presets and the five commands.
//!
//! The binary is a thin wrapper around [`run`], which returns the process
//! exit code: 0 on success, 1 when `verify` finds a failing check, 2 for a
//! configuration or I/O problem and 3 for a numerical failure.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::asymptotics::convergence::{long_wave_sweep, DEFAULT_EPSILONS};
use crate::asymptotics::{
    identity_suite, modulation, solve_static_chain_exact, solve_static_chain_spectral, two_scale_impedance,
    willis_impedance_order2, HomogCoefficients,
};
use crate::cell_functions::{
    exact::phase_quadrature, exact_pair, solve_w_exact, solve_zeta_exact, spectral_pair, SolveMethod,
};
use crate::dispersion::{exact_frequency, order2_frequency, quasistatic_frequency, willis_exact_roots};
use crate::error::{Error, Result};
use crate::io::{svg_heatmap, svg_line_plot, write_csv, ArtifactHeader, CsvValue, Grid, Series, ARTIFACT_VERSION};
use crate::material::{FieldKind, UnitCell1D};
use crate::parallel::{par_map, thread_count};
use crate::report::{Check, RouteTag, VerificationReport};
use crate::spectral::BlochOperator;
use crate::tolerances::{DEFAULT_BASIS_N, IDENTITY_EXACT, IDENTITY_SPECTRAL};
use crate::willis::{identity_checks, ZetaAverages};

#[derive(Parser, Debug)]
#[command(name = "willis-homog", version, about = "Bloch-wave homogenization of layered elastic cells")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration file. Optional when a preset is given.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Fourier truncation order N (modes -N..=N).
    #[arg(long = "basis-n", global = true)]
    pub basis_n: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Static-chain coefficients on the exact and spectral routes.
    Coeffs,
    /// Exact, order-2 and quasistatic acoustic branches.
    Dispersion,
    /// Map of the modulation factor M2 over (k, omega).
    ModulationMap,
    /// Map of the order-2 impedance over (k, omega).
    ImpedanceMap,
    /// Identity and convergence checks; exits 1 if any fails.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Dispersion => "dispersion",
            Command::ModulationMap => "modulation-map",
            Command::ImpedanceMap => "impedance-map",
            Command::Verify => "verify",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Dispersion of the (0.1, 0.1) bilaminate and a (0.5, 0.5) companion.
    Fig2,
    /// Modulation-factor map of the (0.1, 0.1) bilaminate.
    Fig3,
    /// Impedance map of the (0.1, 0.1) bilaminate.
    Fig4,
}

/// JSON configuration. Every field is optional; presets supply defaults.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub cell: Option<UnitCell1D>,
    /// Path to a cell file, resolved relative to the config file.
    pub cell_file: Option<PathBuf>,
    /// Additional cells, used by `dispersion`.
    #[serde(default)]
    pub extra_cells: Vec<UnitCell1D>,
    pub basis_n: Option<usize>,
    pub k_range: Option<[f64; 2]>,
    pub k_points: Option<usize>,
    pub omega_range: Option<[f64; 2]>,
    pub omega_points: Option<usize>,
    pub svg: Option<bool>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
}

/// Identity tolerances used by `verify`, overriding the built-in defaults.
#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub identity_exact: Option<f64>,
    pub identity_spectral: Option<f64>,
}

/// Tolerances applied to identity checks on each route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyTolerances {
    pub exact: f64,
    pub spectral: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self { exact: IDENTITY_EXACT, spectral: IDENTITY_SPECTRAL }
    }
}

/// Smallest accepted truncation order.
pub const MIN_BASIS_N: usize = 4;

/// Fully resolved run settings.
#[derive(Clone, Debug)]
pub struct Settings {
    pub cells: Vec<UnitCell1D>,
    pub basis_n: usize,
    pub k_range: [f64; 2],
    pub k_points: usize,
    pub omega_range: [f64; 2],
    pub omega_points: usize,
    pub svg: bool,
    pub tolerances: VerifyTolerances,
    pub preset: Option<Preset>,
}

impl Settings {
    pub fn cell(&self) -> &UnitCell1D {
        &self.cells[0]
    }

    /// Half-open grid `lo + i (hi - lo) / n`, `i = 0..n`.
    pub fn k_grid(&self) -> Vec<f64> {
        half_open(self.k_range, self.k_points)
    }

    pub fn omega_grid(&self) -> Vec<f64> {
        half_open(self.omega_range, self.omega_points)
    }
}

fn half_open(range: [f64; 2], n: usize) -> Vec<f64> {
    (0..n).map(|i| range[0] + (range[1] - range[0]) * i as f64 / n as f64).collect()
}

fn preset_config(p: Preset) -> Config {
    let main = UnitCell1D::bilaminate(0.1, 0.1).expect("valid preset cell");
    match p {
        Preset::Fig2 => Config {
            cell: Some(main),
            extra_cells: vec![UnitCell1D::bilaminate(0.5, 0.5).expect("valid preset cell")],
            k_range: Some([0.0, PI]),
            k_points: Some(200),
            ..Config::default()
        },
        Preset::Fig3 | Preset::Fig4 => Config {
            cell: Some(main),
            k_range: Some([0.0, 2.0 * PI]),
            k_points: Some(160),
            omega_range: Some([0.0, 2.0 * PI]),
            omega_points: Some(160),
            ..Config::default()
        },
    }
}

/// Merges preset, config file and command-line overrides, in that order.
pub fn resolve(config_path: Option<&Path>, preset: Option<Preset>, basis_n: Option<usize>) -> Result<Settings> {
    let base = preset.map(preset_config).unwrap_or_default();
    let (file, dir) = match config_path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read config {}: {e}", p.display())))?;
            let cfg: Config = serde_json::from_str(&text)?;
            (Some(cfg), p.parent().map(Path::to_path_buf).unwrap_or_default())
        }
        None if preset.is_none() => {
            return Err(Error::Config("either --config or --preset is required".into()));
        }
        None => (None, PathBuf::new()),
    };
    let file = file.unwrap_or_default();
    let file_cell = match &file.cell_file {
        Some(rel) => Some(UnitCell1D::from_json_file(&dir.join(rel))?),
        None => None,
    };
    let main = file_cell
        .or(file.cell.clone())
        .or(base.cell.clone())
        .ok_or_else(|| Error::Config("no cell given: set `cell` or `cell_file`".into()))?;
    let mut cells = vec![main];
    if file.extra_cells.is_empty() {
        cells.extend(base.extra_cells);
    } else {
        cells.extend(file.extra_cells.clone());
    }
    let basis_n = basis_n.or(file.basis_n).or(base.basis_n).unwrap_or(DEFAULT_BASIS_N);
    if basis_n < MIN_BASIS_N {
        return Err(Error::Config(format!("basis_n must be at least {MIN_BASIS_N}, got {basis_n}")));
    }
    let defaults = VerifyTolerances::default();
    let tolerances = VerifyTolerances {
        exact: file.tolerances.identity_exact.unwrap_or(defaults.exact),
        spectral: file.tolerances.identity_spectral.unwrap_or(defaults.spectral),
    };
    for t in [tolerances.exact, tolerances.spectral] {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Config(format!("tolerances must be positive and finite, got {t}")));
        }
    }
    let settings = Settings {
        cells,
        basis_n,
        k_range: file.k_range.or(base.k_range).unwrap_or([0.0, PI]),
        k_points: file.k_points.or(base.k_points).unwrap_or(100),
        omega_range: file.omega_range.or(base.omega_range).unwrap_or([0.0, 2.0 * PI]),
        omega_points: file.omega_points.or(base.omega_points).unwrap_or(100),
        svg: file.svg.or(base.svg).unwrap_or(true),
        tolerances,
        preset,
    };
    for (name, r) in [("k_range", settings.k_range), ("omega_range", settings.omega_range)] {
        if !(r[0].is_finite() && r[1].is_finite() && r[1] > r[0]) {
            return Err(Error::Config(format!("{name} must be an increasing finite pair, got {r:?}")));
        }
    }
    if settings.k_points == 0 || settings.omega_points == 0 {
        return Err(Error::Config("grid point counts must be positive".into()));
    }
    Ok(settings)
}

/// Result of one command.
#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
    pub passed: bool,
}

fn header(cmd: Command, s: &Settings, cell: &UnitCell1D) -> ArtifactHeader {
    let mut h = ArtifactHeader::new(cmd.name(), &cell.content_hash(), s.basis_n);
    if let Some(p) = s.preset {
        h = h.with("preset", format!("{p:?}").to_lowercase());
    }
    h
}

fn write_text(path: PathBuf, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

#[derive(Serialize)]
struct CoeffsDoc<'a> {
    version: &'a str,
    cell_sha256: String,
    cell: &'a UnitCell1D,
    records: Vec<HomogCoefficients>,
}

pub fn cmd_coeffs(s: &Settings, out: &Path) -> Result<Outcome> {
    let cell = s.cell();
    let exact = solve_static_chain_exact(cell)?.coefficients;
    let spectral = solve_static_chain_spectral(cell, s.basis_n)?.coefficients;
    let doc =
        CoeffsDoc { version: ARTIFACT_VERSION, cell_sha256: cell.content_hash(), cell, records: vec![exact, spectral] };
    let mut files = Vec::new();
    write_text(out.join("coeffs.json"), &(serde_json::to_string_pretty(&doc)? + "\n"), &mut files)?;
    let names =
        ["rho0", "mu0", "rho1", "mu1", "rho2", "mu2", "mu1_tilde", "mu2_tilde", "rho2_tilde", "s_g", "s_rho", "q"];
    let vals = |c: &HomogCoefficients| {
        [c.rho0, c.mu0, c.rho1, c.mu1, c.rho2, c.mu2, c.mu1_tilde, c.mu2_tilde, c.rho2_tilde, c.s_g, c.s_rho, c.q]
    };
    let rows: Vec<Vec<CsvValue>> = names
        .iter()
        .zip(vals(&exact).iter().zip(vals(&spectral)))
        .map(|(n, (e, sp))| vec![CsvValue::Text(n.to_string()), (*e).into(), sp.into()])
        .collect();
    let path = out.join("coeffs.csv");
    write_csv(&path, &header(Command::Coeffs, s, cell), &["coefficient", "exact", "spectral"], &rows)?;
    files.push(path);
    let summary = format!(
        "mu0={:.10} rho0={:.10} mu2={:.6e} rho2={:.6e} s_G={:.6e} s_rho={:.6e}",
        exact.mu0, exact.rho0, exact.mu2, exact.rho2, exact.s_g, exact.s_rho
    );
    Ok(Outcome { files, summary, passed: true })
}

pub fn cmd_dispersion(s: &Settings, out: &Path) -> Result<Outcome> {
    let ks = s.k_grid();
    let threads = thread_count()?;
    let mut files = Vec::new();
    let mut summary = Vec::new();
    for (i, cell) in s.cells.iter().enumerate() {
        let c = solve_static_chain_exact(cell)?.coefficients;
        let exact: Vec<Result<f64>> = par_map(&ks, threads, |&k| exact_frequency(cell, k))?;
        let exact: Vec<f64> = exact.into_iter().collect::<Result<_>>()?;
        let order2: Vec<f64> = ks.iter().map(|&k| order2_frequency(&c, k).unwrap_or(f64::NAN)).collect();
        let quasi: Vec<f64> = ks.iter().map(|&k| quasistatic_frequency(&c, k)).collect();
        let mut rows = Vec::with_capacity(3 * ks.len());
        for (label, ws) in [("exact", &exact), ("order2", &order2), ("quasistatic", &quasi)] {
            for (&k, &w) in ks.iter().zip(ws.iter()) {
                rows.push(vec![k.into(), w.into(), label.into()]);
            }
        }
        let stem = if i == 0 { "dispersion".to_string() } else { format!("dispersion_{}", i + 1) };
        let path = out.join(format!("{stem}.csv"));
        let p = cell.phases();
        let h = header(Command::Dispersion, s, cell).with("phases", p.len());
        write_csv(&path, &h, &["k", "omega", "branch_label"], &rows)?;
        files.push(path);
        if s.svg {
            let series = [
                ("exact", "black", false, &exact),
                ("order2", "#d62728", true, &order2),
                ("quasistatic", "#1f77b4", true, &quasi),
            ]
            .iter()
            .map(|(l, col, dash, ws)| Series {
                label: l.to_string(),
                color: col.to_string(),
                dashed: *dash,
                points: ks.iter().copied().zip(ws.iter().copied()).collect(),
            })
            .collect::<Vec<_>>();
            let svg = svg_line_plot(&format!("Acoustic branch, cell {}", i + 1), "k", "omega", &series);
            write_text(out.join(format!("{stem}.svg")), &svg, &mut files)?;
        }
        summary.push(format!("cell {}: {} k points, slope {:.8}", i + 1, ks.len(), (c.mu0 / c.rho0).sqrt()));
    }
    Ok(Outcome { files, summary: summary.join("; "), passed: true })
}

fn map_grid(s: &Settings, f: impl Fn(f64, f64) -> Vec<f64> + Sync + Send) -> Result<Vec<(f64, f64, Vec<f64>)>> {
    let ks = s.k_grid();
    let ws = s.omega_grid();
    let pts: Vec<(f64, f64)> = ks.iter().flat_map(|&k| ws.iter().map(move |&w| (k, w))).collect();
    par_map(&pts, thread_count()?, |&(k, w)| (k, w, f(k, w)))
}

fn to_grid(s: &Settings, rows: &[(f64, f64, Vec<f64>)], col: usize, transform: impl Fn(f64) -> f64) -> Grid {
    let (nk, nw) = (s.k_points, s.omega_points);
    let values = (0..nk).map(|i| (0..nw).map(|j| transform(rows[i * nw + j].2[col])).collect()).collect();
    Grid { xs: s.k_grid(), ys: s.omega_grid(), values }
}

pub fn cmd_modulation_map(s: &Settings, out: &Path) -> Result<Outcome> {
    let cell = s.cell();
    let c = solve_static_chain_exact(cell)?.coefficients;
    let rows = map_grid(s, |k, w| vec![modulation(&c, k, w)])?;
    let mut files = Vec::new();
    let path = out.join("modulation_map.csv");
    let csv_rows: Vec<Vec<CsvValue>> =
        rows.iter().map(|(k, w, v)| vec![(*k).into(), (*w).into(), v[0].into(), v[0].abs().into()]).collect();
    write_csv(&path, &header(Command::ModulationMap, s, cell), &["k", "omega", "re_m2", "abs_m2"], &csv_rows)?;
    files.push(path);
    let min_abs = rows.iter().map(|r| r.2[0].abs()).fold(f64::INFINITY, f64::min);
    if s.svg {
        let clip = rows.iter().map(|r| r.2[0].abs()).fold(0.0, f64::max).max(1e-300);
        let svg = svg_heatmap("Modulation factor M2", "k", "omega", &to_grid(s, &rows, 0, |x| x), clip);
        write_text(out.join("modulation_map.svg"), &svg, &mut files)?;
    }
    Ok(Outcome { files, summary: format!("min |M2| = {min_abs:.6e} on {} points", rows.len()), passed: true })
}

/// Marks grid points whose M2 (column 1) changes sign towards a neighbour
/// along either axis, so that the ratio is never reported unflagged next to
/// a pole of the order-2 impedance.
fn zero_crossing_flags(s: &Settings, rows: &[(f64, f64, Vec<f64>)]) -> Vec<bool> {
    let (nk, nw) = (s.k_points, s.omega_points);
    let m = |i: usize, j: usize| rows[i * nw + j].2[1];
    let mut flags = vec![false; rows.len()];
    for i in 0..nk {
        for j in 0..nw {
            let here = m(i, j);
            for (ii, jj) in [(i + 1, j), (i, j + 1)] {
                if ii < nk && jj < nw && (here.signum() != m(ii, jj).signum()) {
                    flags[i * nw + j] = true;
                    flags[ii * nw + jj] = true;
                }
            }
        }
    }
    flags
}

pub fn cmd_impedance_map(s: &Settings, out: &Path) -> Result<Outcome> {
    let cell = s.cell();
    let c = solve_static_chain_exact(cell)?.coefficients;
    let rows = map_grid(s, |k, w| {
        let zc = two_scale_impedance(&c, k, w);
        let m = modulation(&c, k, w);
        let (z, flag) = match willis_impedance_order2(&c, k, w) {
            Ok(z) => (z, 0.0),
            Err(_) => (f64::NAN, 1.0),
        };
        vec![zc, m, z, flag]
    })?;
    let flags = zero_crossing_flags(s, &rows);
    let rows: Vec<_> = rows
        .into_iter()
        .zip(flags)
        .map(|((k, w, mut v), crossing)| {
            if crossing {
                v[3] = 1.0;
            }
            (k, w, v)
        })
        .collect();
    let mut files = Vec::new();
    let path = out.join("impedance_map.csv");
    let csv_rows: Vec<Vec<CsvValue>> = rows
        .iter()
        .map(|(k, w, v)| vec![(*k).into(), (*w).into(), v[0].into(), v[1].into(), v[2].into(), v[3].into()])
        .collect();
    write_csv(
        &path,
        &header(Command::ImpedanceMap, s, cell),
        &["k", "omega", "two_scale_impedance", "m2", "willis_z2", "modulation_singular"],
        &csv_rows,
    )?;
    files.push(path);
    if s.svg {
        let svg =
            svg_heatmap("Order-2 Willis impedance, asinh scale", "k", "omega", &to_grid(s, &rows, 2, f64::asinh), 2.0);
        write_text(out.join("impedance_map.svg"), &svg, &mut files)?;
        let svg = svg_heatmap("Two-scale impedance, asinh scale", "k", "omega", &to_grid(s, &rows, 0, f64::asinh), 2.0);
        write_text(out.join("two_scale_impedance_map.svg"), &svg, &mut files)?;
    }
    let singular = rows.iter().filter(|r| r.2[3] > 0.0).count();
    Ok(Outcome {
        files,
        summary: format!("{} points, {singular} flagged modulation-singular", rows.len()),
        passed: true,
    })
}

/// Fixed evaluation points of the identity checks.
pub const VERIFY_POINTS: [(f64, f64); 4] = [(0.3, 0.1), (0.9, 0.25), (1.7, 0.6), (2.4, 1.9)];

/// Wavenumbers of the dispersion cross-check.
pub const TRIANGLE_KS: [f64; 6] = [0.1, 0.5, 1.0, 1.5, 2.0, 3.0];

/// Runs every check for `cell`. `mutate` may alter the exact-route
/// coefficients before the model checks, which is how a corrupted
/// coefficient is shown to be caught.
pub fn verify_cell(
    cell: &UnitCell1D,
    basis_n: usize,
    tol: VerifyTolerances,
    mutate: impl Fn(&mut HomogCoefficients),
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let exact_chain = solve_static_chain_exact(cell)?;
    report.extend(identity_suite(&exact_chain).into_iter().map(|c| retol(c, tol.exact)));
    let spectral_chain = solve_static_chain_spectral(cell, basis_n)?;
    report.extend(identity_suite(&spectral_chain).into_iter().map(|c| retol(c, tol.spectral)));

    for &(k, w) in &VERIFY_POINTS {
        let pair = match exact_pair(cell, k, w) {
            Ok(p) => p,
            Err(Error::Resonance { .. }) => continue,
            Err(e) => return Err(e),
        };
        let wsol = solve_w_exact(cell, k, w)?;
        let zeta = solve_zeta_exact(cell, k)?;
        let rho_w_conj =
            phase_quadrature(cell, 8, |x| cell.sample(x, FieldKind::Density) * wsol.value(x) * zeta.value(x).conj());
        let za = ZetaAverages { mean: zeta.mean(), rho_w_conj };
        report.extend(identity_checks(&pair, Some(za), RouteTag::Exact, tol.exact)?);
        let op = BlochOperator::assemble(cell, k, basis_n)?;
        if let Ok((_, _, sp)) = spectral_pair(&op, w, SolveMethod::Resolvent) {
            report.extend(identity_checks(&sp, None, RouteTag::Spectral, tol.spectral)?);
            let gap = (sp.w.mean - pair.w.mean).norm() / pair.w.mean.norm();
            report.push(Check::new(
                format!("routes_mean_w@k={k:.3},w={w:.3}"),
                RouteTag::Spectral,
                gap,
                50.0 / basis_n as f64,
            ));
        }
    }

    let mut c = exact_chain.coefficients;
    mutate(&mut c);
    let sweep = long_wave_sweep(cell, &c, 1.0, 0.3, &DEFAULT_EPSILONS)?;
    report.push(Check::predicate(
        "order2_impedance_slope",
        RouteTag::Model,
        sweep.impedance_slope,
        sweep.impedance_slope >= 4.5,
        ">= 4.5",
    ));
    report.push(Check::predicate(
        "order2_modulation_slope",
        RouteTag::Model,
        sweep.modulation_slope,
        sweep.modulation_slope >= 2.5,
        ">= 2.5",
    ));
    report.push(Check::predicate(
        "order2_velocity_slope",
        RouteTag::Model,
        sweep.velocity_slope,
        sweep.velocity_slope >= 3.5,
        ">= 3.5",
    ));

    if cell.phases().len() == 2 {
        for &k in &TRIANGLE_KS {
            let we = exact_frequency(cell, k)?;
            let roots = willis_exact_roots(cell, k, we + 0.05);
            let gap = roots.iter().map(|r| (r - we).abs()).fold(f64::INFINITY, f64::min);
            report.push(Check::new(format!("impedance_root_vs_branch@k={k}"), RouteTag::Exact, gap, 1e-6));
        }
    }
    Ok(report)
}

fn retol(c: Check, tolerance: f64) -> Check {
    Check::new(c.name, c.route, c.residual, tolerance)
}

pub fn cmd_verify(s: &Settings, out: &Path) -> Result<Outcome> {
    let report = verify_cell(s.cell(), s.basis_n, s.tolerances, |_| {})?;
    let mut files = Vec::new();
    write_text(out.join("verify.json"), &(report.to_json() + "\n"), &mut files)?;
    Ok(Outcome { files, summary: report.to_string(), passed: report.passed() })
}

/// Executes one parsed invocation.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let settings = resolve(cli.config.as_deref(), cli.preset, cli.basis_n)?;
    std::fs::create_dir_all(&cli.out)?;
    match cli.command {
        Command::Coeffs => cmd_coeffs(&settings, &cli.out),
        Command::Dispersion => cmd_dispersion(&settings, &cli.out),
        Command::ModulationMap => cmd_modulation_map(&settings, &cli.out),
        Command::ImpedanceMap => cmd_impedance_map(&settings, &cli.out),
        Command::Verify => cmd_verify(&settings, &cli.out),
    }
}

/// Parses `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
