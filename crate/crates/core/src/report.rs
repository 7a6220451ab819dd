//! Named residual checks and their aggregation.

use std::fmt;

use serde::Serialize;

/// Which computation produced a residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteTag {
    Exact,
    Spectral,
    Model,
}

impl fmt::Display for RouteTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouteTag::Exact => "exact",
            RouteTag::Spectral => "spectral",
            RouteTag::Model => "model",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub route: RouteTag,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `residual <= tolerance`; a NaN residual fails.
    pub fn new(name: impl Into<String>, route: RouteTag, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), route, residual, tolerance, passed: residual <= tolerance, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// A check decided by an explicit predicate rather than a residual bound.
    pub fn predicate(
        name: impl Into<String>,
        route: RouteTag,
        value: f64,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self { name: name.into(), route, residual: value, tolerance: f64::NAN, passed, detail: Some(detail.into()) }
    }
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_gap(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Complex version of [`relative_gap`].
pub fn relative_gap_c(a: num_complex::Complex64, b: num_complex::Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            passed: bool,
            checks: &'a [Check],
        }
        serde_json::to_string_pretty(&Out { passed: self.passed(), checks: &self.checks }).expect("report serialises")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        writeln!(f, "{:<width$}  {:<8}  {:>12}  {:>10}  result", "check", "route", "residual", "tol")?;
        for c in &self.checks {
            let tol = match (&c.detail, c.tolerance.is_nan()) {
                (Some(d), true) => d.clone(),
                _ => format!("{:.1e}", c.tolerance),
            };
            writeln!(
                f,
                "{:<width$}  {:<8}  {:>12.3e}  {:>10}  {}",
                c.name,
                c.route.to_string(),
                c.residual,
                tol,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::new("x", RouteTag::Exact, f64::NAN, 1.0).passed);
        assert!(Check::new("x", RouteTag::Exact, 0.5, 1.0).passed);
    }

    #[test]
    fn report_aggregates() {
        let mut r = VerificationReport::new();
        r.push(Check::new("a", RouteTag::Exact, 0.0, 1.0));
        assert!(r.passed());
        r.push(Check::new("b", RouteTag::Spectral, 2.0, 1.0));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_string().contains("FAIL"));
        assert!(r.to_json().contains("\"passed\": false"));
    }

    #[test]
    fn relative_gap_uses_floor() {
        assert_eq!(relative_gap(0.0, 0.0, 1.0), 0.0);
        assert!((relative_gap(1e-20, 0.0, 1.0) - 1e-20).abs() < 1e-30);
        assert!((relative_gap(2.0, 1.0, 0.0) - 0.5).abs() < 1e-15);
    }
}
