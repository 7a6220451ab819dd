//! Artifact writers: CSV with a provenance header and self-contained SVG.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::tolerances::ToleranceSet;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance written as `#` comment lines at the top of every CSV.
#[derive(Clone, Debug)]
pub struct ArtifactHeader {
    pub command: String,
    pub cell_hash: String,
    pub basis_n: usize,
    pub tolerances: ToleranceSet,
    pub extra: Vec<(String, String)>,
}

impl ArtifactHeader {
    pub fn new(command: &str, cell_hash: &str, basis_n: usize) -> Self {
        Self {
            command: command.into(),
            cell_hash: cell_hash.into(),
            basis_n,
            tolerances: ToleranceSet::default(),
            extra: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.extra.push((key.into(), value.to_string()));
        self
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("# willis-homog {ARTIFACT_VERSION} {}", self.command),
            format!("# cell_sha256={}", self.cell_hash),
            format!("# basis_n={}", self.basis_n),
            format!("# tolerances {}", self.tolerances.header_line()),
        ];
        out.extend(self.extra.iter().map(|(k, v)| format!("# {k}={v}")));
        out
    }
}

/// Fixed-format number rendering so output is byte-stable.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.12e}")
    }
}

/// A CSV cell: either a number or a literal label.
#[derive(Clone, Debug)]
pub enum CsvValue {
    Num(f64),
    Text(String),
}

impl From<f64> for CsvValue {
    fn from(x: f64) -> Self {
        CsvValue::Num(x)
    }
}

impl From<&str> for CsvValue {
    fn from(s: &str) -> Self {
        CsvValue::Text(s.into())
    }
}

pub fn csv_string(header: &ArtifactHeader, columns: &[&str], rows: &[Vec<CsvValue>]) -> String {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                CsvValue::Num(x) => fmt_num(*x),
                CsvValue::Text(s) => s.clone(),
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, header: &ArtifactHeader, columns: &[&str], rows: &[Vec<CsvValue>]) -> Result<()> {
    fs::write(path, csv_string(header, columns, rows))?;
    Ok(())
}

/// One polyline of a line plot. Non-finite points break the line.
#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 60.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD)
    }
    fn py(&self, y: f64) -> f64 {
        H - PAD - (y - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD)
    }
}

fn svg_open(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str) {
    let _ = writeln!(
        out,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = f.x0 + t * (f.x1 - f.x0);
        let yv = f.y0 + t * (f.y1 - f.y0);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{:.3}</text>"#,
            f.px(xv),
            H - PAD + 16.0,
            xv
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3}</text>"#,
            PAD - 6.0,
            f.py(yv) + 4.0,
            yv
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 16.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn svg_line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let finite = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in finite {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let f = Frame { x0, x1, y0: y0.min(0.0), y1 };
    let mut out = String::new();
    svg_open(&mut out, title);
    axes(&mut out, &f, xlabel, ylabel);
    for (i, s) in series.iter().enumerate() {
        let mut d = String::new();
        let mut pen_up = true;
        for &(x, y) in &s.points {
            if !(x.is_finite() && y.is_finite()) {
                pen_up = true;
                continue;
            }
            let _ = write!(d, "{}{:.2},{:.2} ", if pen_up { "M" } else { "L" }, f.px(x), f.py(y));
            pen_up = false;
        }
        let dash = if s.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ =
            writeln!(out, r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.6"{dash}/>"#, d.trim_end(), s.color);
        let ly = PAD + 16.0 + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"{dash}/>"#,
            PAD + 10.0,
            PAD + 34.0,
            s.color
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            PAD + 40.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Values on a tensor grid: `values[i][j]` at `(xs[i], ys[j])`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

fn diverging(t: f64) -> String {
    // t in [-1, 1]: blue through white to red.
    let t = t.clamp(-1.0, 1.0);
    let (r, g, b) = if t < 0.0 {
        let s = 1.0 + t;
        (s, s, 1.0)
    } else {
        let s = 1.0 - t;
        (1.0, s, s)
    };
    format!("#{:02x}{:02x}{:02x}", (r * 255.0).round() as u8, (g * 255.0).round() as u8, (b * 255.0).round() as u8)
}

/// Heat map with a signed colour scale and the zero level set drawn by
/// marching squares. `clip` bounds the colour scale symmetrically.
pub fn svg_heatmap(title: &str, xlabel: &str, ylabel: &str, grid: &Grid, clip: f64) -> String {
    let nx = grid.xs.len();
    let ny = grid.ys.len();
    let dx = if nx > 1 { grid.xs[1] - grid.xs[0] } else { 1.0 };
    let dy = if ny > 1 { grid.ys[1] - grid.ys[0] } else { 1.0 };
    let f = Frame { x0: grid.xs[0], x1: grid.xs[nx - 1] + dx, y0: grid.ys[0], y1: grid.ys[ny - 1] + dy };
    let mut out = String::new();
    svg_open(&mut out, title);
    let cw = f.px(f.x0 + dx) - f.px(f.x0);
    let ch = f.py(f.y0) - f.py(f.y0 + dy);
    for i in 0..nx {
        for j in 0..ny {
            let v = grid.values[i][j];
            let color = if v.is_finite() { diverging(v / clip) } else { "#808080".into() };
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{color}"/>"#,
                f.px(grid.xs[i]),
                f.py(grid.ys[j] + dy),
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    // Zero contour through cell centres.
    let mut d = String::new();
    let cx = |i: f64| f.px(grid.xs[0] + (i + 0.5) * dx);
    let cy = |j: f64| f.py(grid.ys[0] + (j + 0.5) * dy);
    for i in 0..nx.saturating_sub(1) {
        for j in 0..ny.saturating_sub(1) {
            let c = [grid.values[i][j], grid.values[i + 1][j], grid.values[i + 1][j + 1], grid.values[i][j + 1]];
            if c.iter().any(|v| !v.is_finite()) {
                continue;
            }
            let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
            let mut pts = Vec::new();
            for e in 0..4 {
                let (a, b) = (c[e], c[(e + 1) % 4]);
                if (a > 0.0) != (b > 0.0) {
                    let t = a / (a - b);
                    let (pa, pb) = (corners[e], corners[(e + 1) % 4]);
                    pts.push((i as f64 + pa.0 + t * (pb.0 - pa.0), j as f64 + pa.1 + t * (pb.1 - pa.1)));
                }
            }
            for pair in pts.chunks(2) {
                if let [p, q] = pair {
                    let _ = write!(d, "M{:.2},{:.2} L{:.2},{:.2} ", cx(p.0), cy(p.1), cx(q.0), cy(q.1));
                }
            }
        }
    }
    if !d.is_empty() {
        let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="black" stroke-width="1.2"/>"#, d.trim_end());
    }
    axes(&mut out, &f, xlabel, ylabel);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_provenance_header() {
        let h = ArtifactHeader::new("dispersion", "abc", 128).with("preset", "fig2");
        let s = csv_string(&h, &["k", "omega"], &[vec![0.5.into(), f64::NAN.into()]]);
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# willis-homog"));
        assert_eq!(lines[1], "# cell_sha256=abc");
        assert_eq!(lines[2], "# basis_n=128");
        assert!(lines[3].contains("resonance_rel=1e-8"));
        assert_eq!(lines[5], "k,omega");
        assert_eq!(lines[6], "5.000000000000e-1,nan");
    }

    #[test]
    fn svg_is_self_contained() {
        let s = svg_line_plot(
            "t",
            "x",
            "y",
            &[Series { label: "a".into(), color: "red".into(), dashed: false, points: vec![(0.0, 0.0), (1.0, 1.0)] }],
        );
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert!(!s.contains("href") && !s.contains("<script"));
        let g = Grid {
            xs: vec![0.0, 1.0, 2.0],
            ys: vec![0.0, 1.0],
            values: vec![vec![-1.0, 1.0], vec![-1.0, 1.0], vec![1.0, 1.0]],
        };
        let h = svg_heatmap("m", "k", "w", &g, 1.0);
        assert!(h.contains("stroke=\"black\" stroke-width=\"1.2\""));
    }
}
