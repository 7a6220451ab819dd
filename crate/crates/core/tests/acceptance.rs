//! Acceptance suite. Each criterion prints one line of the form
//! `criterion N: PASS|FAIL  <name>  (<measurements>, <seconds>s)`, followed by
//! indented detail lines for the measurements behind the verdict. The process
//! exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use willis_homog::asymptotics::convergence::{log_slope, long_wave_sweep, DEFAULT_EPSILONS};
use willis_homog::asymptotics::{
    identity_suite, modulation, series_impedance_order2, solve_static_chain_exact, solve_static_chain_spectral,
    two_scale_impedance, willis_impedance_order2, HomogCoefficients,
};
use willis_homog::cell_functions::{
    exact::phase_quadrature, exact_pair, solve_w, solve_w_exact, solve_zeta, solve_zeta_exact, spectral_pair,
    SolveMethod,
};
use willis_homog::cli::VERIFY_POINTS;
use willis_homog::dispersion::{
    exact_frequency, order2_frequency, quasistatic_frequency, small_k_slope, willis_exact_roots,
};
use willis_homog::material::FieldKind;
use willis_homog::report::{Check, RouteTag};
use willis_homog::spectral::{classify_visibility, BlochOperator, Visibility};
use willis_homog::tolerances::{IDENTITY_EXACT, IDENTITY_SPECTRAL, ROUNDOFF_FLOOR};
use willis_homog::willis::{effective_impedance, identity_checks, ZetaAverages};
use willis_homog::UnitCell1D;

/// Outcome of one criterion.
struct Verdict {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { passed: true, summary: String::new(), details: Vec::new() }
    }

    /// Records a sub-check; any failing sub-check fails the criterion.
    fn require(&mut self, ok: bool, line: impl Into<String>) {
        let line = line.into();
        self.details.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }

    fn note(&mut self, line: impl Into<String>) {
        self.details.push(format!("     {}", line.into()));
    }

    fn runtime(&mut self, elapsed: Duration, limit_s: f64) {
        let s = elapsed.as_secs_f64();
        self.require(s < limit_s, format!("runtime {s:.2}s < {limit_s}s"));
    }
}

/// `x <= bound`, false for NaN.
fn at_most(x: f64, bound: f64) -> bool {
    x <= bound
}

fn bilaminate() -> UnitCell1D {
    UnitCell1D::bilaminate(0.1, 0.1).unwrap()
}

fn higher_coefficients(c: &HomogCoefficients) -> [f64; 10] {
    [c.rho1, c.mu1, c.rho2, c.mu2, c.mu1_tilde, c.mu2_tilde, c.rho2_tilde, c.s_g, c.s_rho, c.q]
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let cell = UnitCell1D::homogeneous(1.0, 1.0).unwrap();
    let exact = solve_static_chain_exact(&cell).unwrap().coefficients;
    let spectral = solve_static_chain_spectral(&cell, 128).unwrap().coefficients;
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let (mut worst_z, mut worst_m, mut used) = (0.0f64, 0.0f64, 0);
    while used < 50 {
        let (k, omega) = (rng.random_range(0.0..PI), rng.random_range(0.0..3.0));
        if k == 0.0 || omega == 0.0 || (k * k - omega * omega).abs() < 1e-3 {
            continue;
        }
        used += 1;
        let target = k * k - omega * omega;
        let z_exact = effective_impedance(&exact_pair(&cell, k, omega).unwrap()).unwrap();
        let op = BlochOperator::assemble(&cell, k, 32).unwrap();
        let (_, _, pair) = spectral_pair(&op, omega, SolveMethod::Resolvent).unwrap();
        let z_spec = effective_impedance(&pair).unwrap();
        worst_z = worst_z.max((z_exact - target).norm()).max((z_spec - target).norm());
        for c in [&exact, &spectral] {
            worst_m = worst_m.max((modulation(c, k, omega) + 1.0).abs());
        }
    }
    let worst_c =
        higher_coefficients(&exact).iter().chain(&higher_coefficients(&spectral)).fold(0.0f64, |a, b| a.max(b.abs()));
    v.require(worst_z <= 1e-9, format!("max |Z - (k^2 - w^2)| = {worst_z:.2e} over 50 points, both routes"));
    v.require(worst_m <= 1e-12, format!("max |M2 + 1| = {worst_m:.2e}"));
    v.require(worst_c <= 1e-12, format!("max |higher coefficient| = {worst_c:.2e}"));
    v.runtime(start.elapsed(), 5.0);
    v.summary = format!("|Z-(k^2-w^2)| {worst_z:.1e}, |M2+1| {worst_m:.1e}, coefficients {worst_c:.1e}");
    v
}

/// Exact-route Willis identities at the fixed verification points, including
/// the cell-basis identity through quadrature of `w` against `zeta`.
fn exact_willis_checks(cell: &UnitCell1D) -> Vec<Check> {
    let mut out = Vec::new();
    let zeta_cache: Vec<_> = VERIFY_POINTS.iter().map(|&(k, _)| solve_zeta_exact(cell, k).unwrap()).collect();
    for (&(k, omega), zeta) in VERIFY_POINTS.iter().zip(&zeta_cache) {
        let pair = exact_pair(cell, k, omega).unwrap();
        let w = solve_w_exact(cell, k, omega).unwrap();
        let rho_w_conj =
            phase_quadrature(cell, 8, |x| cell.sample(x, FieldKind::Density) * w.value(x) * zeta.value(x).conj());
        let za = ZetaAverages { mean: zeta.mean(), rho_w_conj };
        out.extend(identity_checks(&pair, Some(za), RouteTag::Exact, IDENTITY_EXACT).unwrap());
    }
    out
}

/// Spectral-route Willis identities at the fixed points for truncation `n`.
fn spectral_willis_checks(cell: &UnitCell1D, n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for &(k, omega) in &VERIFY_POINTS {
        let op = BlochOperator::assemble(cell, k, n).unwrap();
        let (w, _, pair) = spectral_pair(&op, omega, SolveMethod::Resolvent).unwrap();
        let zeta = solve_zeta(&op, SolveMethod::Resolvent).unwrap();
        let za =
            ZetaAverages { mean: zeta.averages.mean, rho_w_conj: op.rho_inner(&w.coefficients, &zeta.coefficients) };
        out.extend(identity_checks(&pair, Some(za), RouteTag::Spectral, IDENTITY_SPECTRAL).unwrap());
    }
    out
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let cell = bilaminate();
    // Density is constant on this companion cell, so the constant-density
    // reduction applies to it.
    let companion = UnitCell1D::bilaminate(0.1, 1.0).unwrap();

    let mut exact: Vec<Check> = identity_suite(&solve_static_chain_exact(&cell).unwrap());
    exact.extend(exact_willis_checks(&cell));
    let companion_checks = identity_suite(&solve_static_chain_exact(&companion).unwrap());
    let constant_density: Vec<&Check> = companion_checks.iter().filter(|c| c.name.starts_with("constant_density")).collect();
    v.require(constant_density.len() == 2, format!("constant-density checks present on the companion cell ({})", constant_density.len()));
    exact.extend(companion_checks.iter().filter(|c| c.name.starts_with("constant_density")).cloned());
    let worst = exact.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)).unwrap();
    let fails: Vec<&str> =
        exact.iter().filter(|c| !at_most(c.residual, IDENTITY_EXACT)).map(|c| c.name.as_str()).collect();
    v.require(
        fails.is_empty(),
        format!("exact route: {} checks, worst {} = {:.2e} <= 1e-8 {fails:?}", exact.len(), worst.name, worst.residual),
    );
    for family in [
        "mean_w_real",
        "real_g_grad_v",
        "reciprocity_mean_v",
        "reciprocity_g_grad_v",
        "reciprocity_g_grad_w",
        "density_real",
        "stiffness_real",
        "coupling_antisymmetry",
        "impedance_from_parameters",
        "cell_basis",
        "eta0_flux_mean",
        "mu1_from_rho1",
        "first_order_mean",
        "chi1_flux_mean",
        "alpha1_flux_mean",
        "constant_density",
    ] {
        v.require(exact.iter().any(|c| c.name.starts_with(family)), format!("family {family} covered"));
    }

    let spectral_at = |n: usize| {
        let mut c = identity_suite(&solve_static_chain_spectral(&cell, n).unwrap());
        c.extend(spectral_willis_checks(&cell, n));
        c.extend(
            identity_suite(&solve_static_chain_spectral(&companion, n).unwrap())
                .into_iter()
                .filter(|c| c.name.starts_with("constant_density")),
        );
        c
    };
    let s128 = spectral_at(128);
    let s256 = spectral_at(256);
    let worst128 = s128.iter().map(|c| c.residual).fold(0.0f64, f64::max);
    v.require(
        s128.iter().all(|c| c.residual <= IDENTITY_SPECTRAL),
        format!("spectral N=128: {} checks, worst {worst128:.2e} <= 1e-5", s128.len()),
    );
    let mut not_improving = Vec::new();
    let mut floor_count = 0;
    for (a, b) in s128.iter().zip(&s256) {
        assert_eq!(a.name, b.name);
        if a.residual.max(b.residual) <= ROUNDOFF_FLOOR {
            floor_count += 1;
        } else if !at_most(b.residual * 2.0, a.residual) {
            not_improving.push(format!("{} {:.2e}->{:.2e}", a.name, a.residual, b.residual));
        }
    }
    v.require(
        not_improving.is_empty(),
        format!("N=256 improves x2 on every residual above the {ROUNDOFF_FLOOR:e} round-off floor ({floor_count} of {} at the floor) {not_improving:?}", s128.len()),
    );
    v.runtime(start.elapsed(), 60.0);
    v.summary = format!("exact worst {:.1e}, spectral N=128 worst {worst128:.1e}", worst.residual);
    v
}

/// Relative tolerance of `sqrt(lambda_1)` at N = 128. On a discontinuous cell
/// the Galerkin eigenvalue converges at first order in 1/N. The observed
/// relative error is 1.49e-3 at every k of the list, inherited from the
/// first-order error of the effective shear modulus, and halves at N = 256.
const SPECTRAL_BRANCH_REL: f64 = 2.5e-3;

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    let cell = bilaminate();
    let (mut worst_root, mut worst_spec) = (0.0f64, 0.0f64);
    for k in [0.1, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let w_tm = exact_frequency(&cell, k).unwrap();
        let roots = willis_exact_roots(&cell, k, w_tm + 0.05);
        let w_root = roots.iter().copied().min_by(|a, b| (a - w_tm).abs().total_cmp(&(b - w_tm).abs()));
        let spec = |n: usize| BlochOperator::assemble(&cell, k, n).unwrap().eigenvalues().unwrap()[0].sqrt();
        let (s128, s256) = (spec(128), spec(256));
        let e128 = (s128 - w_tm).abs() / w_tm;
        let e256 = (s256 - w_tm).abs() / w_tm;
        match w_root {
            Some(w_root) => {
                let gap = (w_root - w_tm).abs();
                worst_root = worst_root.max(gap);
                v.require(gap <= 1e-6, format!("k={k}: transfer {w_tm:.10}, impedance root gap {gap:.1e}"));
                let gap_rs = (w_root - s128).abs() / w_tm;
                v.require(gap_rs <= SPECTRAL_BRANCH_REL, format!("k={k}: root vs spectral rel {gap_rs:.2e}"));
            }
            None => v.require(false, format!("k={k}: no impedance root below {:.3}", w_tm + 0.05)),
        }
        worst_spec = worst_spec.max(e128);
        v.require(e128 <= SPECTRAL_BRANCH_REL, format!("k={k}: spectral N=128 rel {e128:.2e}, N=256 rel {e256:.2e}"));
        v.require(e256 < e128, format!("k={k}: spectral error decreases with N"));
    }
    v.runtime(start.elapsed(), 30.0);
    v.summary =
        format!("transfer vs root {worst_root:.1e}, spectral rel {worst_spec:.1e} (tol {SPECTRAL_BRANCH_REL:.1e})");
    v
}

fn sweep_lines(v: &mut Verdict, sweep: &willis_homog::asymptotics::convergence::Sweep) {
    for p in &sweep.points {
        v.note(format!(
            "eps={:.2}: |Z-Z2|={:.3e} |Z2cal<w>-M2|={:.3e} |Z2cal<v>-N2|={:.3e}",
            p.eps, p.impedance_gap, p.modulation_gap, p.velocity_gap
        ));
    }
}

fn criterion_4(c: &HomogCoefficients) -> Verdict {
    let mut v = Verdict::new();
    let sweep = long_wave_sweep(&bilaminate(), c, 1.0, 0.3, &DEFAULT_EPSILONS).unwrap();
    v.require(sweep.impedance_slope >= 4.5, format!("impedance slope {:.3} >= 4.5", sweep.impedance_slope));
    v.require(sweep.modulation_slope >= 2.5, format!("modulation slope {:.3} >= 2.5", sweep.modulation_slope));
    sweep_lines(&mut v, &sweep);
    v.summary = format!("slopes {:.2} and {:.2}", sweep.impedance_slope, sweep.modulation_slope);
    v
}

fn criterion_5(c: &HomogCoefficients) -> Verdict {
    let mut v = Verdict::new();
    let sweep = long_wave_sweep(&bilaminate(), c, 1.0, 0.3, &DEFAULT_EPSILONS).unwrap();
    v.require(sweep.velocity_slope >= 3.5, format!("dipole slope {:.3} >= 3.5", sweep.velocity_slope));
    v.summary = format!("slope {:.2}", sweep.velocity_slope);
    v
}

fn criterion_6(c: &HomogCoefficients) -> Verdict {
    let mut v = Verdict::new();
    let cell = bilaminate();
    let (mut e1, mut e2) = (0.0f64, 0.0f64);
    let mut ordering_violations = Vec::new();
    for i in 1..=200 {
        let k = 0.01 * i as f64;
        let w = exact_frequency(&cell, k).unwrap();
        let o = order2_frequency(c, k).unwrap();
        let q = quasistatic_frequency(c, k);
        let rel = (o - w).abs() / w;
        if k <= 1.0 + 1e-12 {
            e1 = e1.max(rel);
        }
        e2 = e2.max(rel);
        if (0.5 - 1e-12..=2.0 + 1e-12).contains(&k) && !at_most((o - w).abs(), (q - w).abs()) {
            ordering_violations.push(k);
        }
    }
    v.require(e1 <= 0.01, format!("max relative error of the order-2 branch for k <= 1: {e1:.3e} <= 1%"));
    v.require(e2 <= 0.05, format!("max relative error of the order-2 branch for k <= 2: {e2:.3e} <= 5%"));
    v.require(
        ordering_violations.is_empty(),
        format!("order-2 closer than quasi-static on k in [0.5, 2] {ordering_violations:?}"),
    );
    let slope = small_k_slope(&cell).unwrap();
    let target = (c.mu0 / c.rho0).sqrt();
    v.require(
        (slope - target).abs() <= 1e-6,
        format!("small-k slope {slope:.9} vs sqrt(mu0/rho0) = {target:.9}, gap {:.1e}", (slope - target).abs()),
    );
    v.require((target - 0.575).abs() < 5e-4, format!("sqrt(mu0/rho0) = {target:.6} rounds to 0.575"));
    v.summary = format!("errors {e1:.1e} (k<=1), {e2:.1e} (k<=2), slope {slope:.7}");
    v
}

fn criterion_7(c: &HomogCoefficients) -> Verdict {
    let mut v = Verdict::new();
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=400 {
        for j in 0..800 {
            let (k, w) = (2.0 * i as f64 / 400.0, 2.0 * PI * j as f64 / 800.0);
            let m = modulation(c, k, w).abs();
            if m < best.0 {
                best = (m, k, w);
            }
        }
    }
    v.require(best.0 < 0.6, format!("min |M2| = {:.3e} at (k, w) = ({:.3}, {:.3}) < 0.6", best.0, best.1, best.2));
    v.summary = format!("min |M2| {:.2e}", best.0);
    v
}

fn criterion_8(c: &HomogCoefficients) -> Verdict {
    let mut v = Verdict::new();
    let (mut worst_a, mut worst_b) = (0.0f64, 0.0f64);
    for j in 1..=20 {
        let k = 0.1 * j as f64;
        let w = order2_frequency(c, k).unwrap();
        let scale = c.mu0 * k * k + c.rho0 * w * w + c.mu2.abs() * k.powi(4) + c.rho2.abs() * k * k * w * w;
        let z_ts = two_scale_impedance(c, k, w);
        let z_willis = willis_impedance_order2(c, k, w).unwrap();
        let z_series = series_impedance_order2(c, k, w).unwrap();
        let a = z_willis.abs() / scale;
        let b = (z_series - z_willis).abs() / z_series.abs().max(z_willis.abs()).max(f64::MIN_POSITIVE);
        worst_a = worst_a.max(a);
        worst_b = worst_b.max(b);
        v.note(format!("k={k:.1}: w*={w:.6}, Z2cal={z_ts:.1e}, Z2/scale={a:.1e}, series route Z2 = {z_series:.4e}, relative gap {b:.2e}"));
    }
    v.require(worst_a <= 1e-10, format!("|Z2| at the 20 roots of Z2cal <= 1e-10 scale: worst {worst_a:.1e}"));
    // Off the zero set the two routes differ by a relative O(eps^4), which is
    // the order to which the truncated mean is accurate.
    for eps in [0.05, 0.1, 0.2, 0.4] {
        let (k, w) = (eps, 0.3 * eps);
        let (a, b) = (series_impedance_order2(c, k, w).unwrap(), willis_impedance_order2(c, k, w).unwrap());
        v.note(format!("off the zero set, (k, w) = ({k}, {w:.3}): relative route gap {:.2e}", (a - b).abs() / b.abs()));
    }
    v.require(
        worst_b <= 1e-9,
        format!("series route 1/(W0 + W2) agrees with Z2cal / M2 to 1e-9 relative: worst {worst_b:.2e}"),
    );
    v.summary = format!("co-location {worst_a:.1e}, route agreement {worst_b:.1e}");
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    let k = 1.0;
    let homog = UnitCell1D::homogeneous(1.0, 1.0).unwrap();
    let op = BlochOperator::assemble(&homog, k, 32).unwrap();
    let eig = op.eigensystem().unwrap();
    for branch in 2..=5 {
        let r = classify_visibility(&op, &eig, branch, None).unwrap();
        v.require(
            r.visibility == Visibility::Invisible,
            format!("homogeneous branch {branch} (lambda = {:.4}) is {:?}", r.eigenvalue, r.visibility),
        );
        let mut worst = 0.0f64;
        for d in [-1e-3, -1e-6, 0.0, 1e-6, 1e-3] {
            let omega = (r.eigenvalue * (1.0 + d)).sqrt();
            let w = solve_w(&op, omega, SolveMethod::Resolvent).unwrap();
            let z = 1.0 / w.averages.mean;
            worst = worst.max((z - (k * k - omega * omega)).norm() / omega.powi(2));
        }
        v.require(worst <= 1e-9, format!("Z featureless through branch {branch}: max relative deviation {worst:.1e}"));
    }
    let r1 = classify_visibility(&op, &eig, 1, None).unwrap();
    v.require(r1.visibility == Visibility::Visible, format!("homogeneous branch 1 is {:?}", r1.visibility));

    let cell = bilaminate();
    let op = BlochOperator::assemble(&cell, k, 128).unwrap();
    let eig = op.eigensystem().unwrap();
    let r = classify_visibility(&op, &eig, 1, None).unwrap();
    v.require(
        r.visibility == Visibility::Visible,
        format!("bilaminate acoustic branch is {:?}, |<phi>| = {:.3}", r.visibility, r.mean_magnitude),
    );
    let lambda = r.eigenvalue;
    let deltas: Vec<f64> = (0..7).map(|i| 1e-3 * 10f64.powf(-0.5 * i as f64)).collect();
    let means: Vec<f64> = deltas
        .iter()
        .map(|&d| solve_w(&op, (lambda - d).sqrt(), SolveMethod::Resolvent).unwrap().averages.mean.norm())
        .collect();
    let slope = log_slope(&deltas, &means, 0.0);
    v.require(
        (slope + 1.0).abs() <= 0.05,
        format!("log-slope of |<w>| against |lambda_1 - w^2| = {slope:.4}, expected -1 +- 0.05"),
    );
    v.summary = format!("invisible branches featureless, blow-up slope {slope:.3}");
    v
}

fn criterion_10() -> Verdict {
    let mut v = Verdict::new();
    let cell = bilaminate();
    let n = 128;
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let (mut worst_abs, mut worst_rel, mut used) = (0.0f64, 0.0f64, 0);
    while used < 20 {
        let (k, omega) = (rng.random_range(-PI..PI), rng.random_range(0.05..4.0));
        let op = BlochOperator::assemble(&cell, k, n).unwrap();
        let eig = op.eigensystem().unwrap();
        if !eig.resonant_indices(omega * omega).is_empty() {
            continue;
        }
        used += 1;
        let a = solve_w(&op, omega, SolveMethod::Resolvent).unwrap();
        let b = solve_w(&op, omega, SolveMethod::Eigen { modes: Some(eig.len()) }).unwrap();
        let d = &a.coefficients - &b.coefficients;
        let diff = op.rho_inner(&d, &d).re.sqrt();
        let norm = op.rho_inner(&a.coefficients, &a.coefficients).re.sqrt();
        worst_abs = worst_abs.max(diff);
        worst_rel = worst_rel.max(diff / norm);
    }
    v.require(worst_abs <= 1e-8, format!("eigen expansion vs resolvent at M = 2N+1 = {}: max L2_rho difference {worst_abs:.2e} (relative {worst_rel:.1e}) over 20 points", 2 * n + 1));

    let (k, omega) = (0.8, 0.35);
    let exact = exact_pair(&cell, k, omega).unwrap().w.mean;
    let errs: Vec<f64> = [32, 64, 128, 256]
        .iter()
        .map(|&n| {
            let op = BlochOperator::assemble(&cell, k, n).unwrap();
            (solve_w(&op, omega, SolveMethod::Resolvent).unwrap().averages.mean - exact).norm() / exact.norm()
        })
        .collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    v.require(monotone, format!("Fourier vs exact <w> relative error over N = 32, 64, 128, 256: {errs:?}"));
    v.summary = format!("eigen vs resolvent {worst_abs:.1e}, Fourier errors {:.1e} -> {:.1e}", errs[0], errs[3]);
    v
}

fn main() {
    let c = solve_static_chain_exact(&bilaminate()).unwrap().coefficients;
    let names = [
        "homogeneous sanity",
        "identity suite",
        "oracle triangle",
        "impedance and modulation convergence",
        "dipole convergence",
        "acoustic branch accuracy",
        "modulation dip",
        "zero-level co-location",
        "visibility",
        "method equivalence",
    ];
    let runners: Vec<Box<dyn Fn() -> Verdict>> = vec![
        Box::new(criterion_1),
        Box::new(criterion_2),
        Box::new(criterion_3),
        Box::new(move || criterion_4(&c)),
        Box::new(move || criterion_5(&c)),
        Box::new(move || criterion_6(&c)),
        Box::new(move || criterion_7(&c)),
        Box::new(move || criterion_8(&c)),
        Box::new(criterion_9),
        Box::new(criterion_10),
    ];
    let verbose = std::env::args().any(|a| a == "--verbose") || std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut failed = Vec::new();
    for (i, (name, run)) in names.iter().zip(&runners).enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Verdict { passed: false, summary: format!("panicked: {}", msg.unwrap_or_default()), details: Vec::new() }
        });
        println!(
            "criterion {:>2}: {}  {name}  ({}, {:.2}s)",
            i + 1,
            if verdict.passed { "PASS" } else { "FAIL" },
            verdict.summary,
            start.elapsed().as_secs_f64()
        );
        if verbose || !verdict.passed {
            for d in &verdict.details {
                println!("      {d}");
            }
        }
        if !verdict.passed {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
