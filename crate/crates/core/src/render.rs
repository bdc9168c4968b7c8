//! Static SVG figures: curve plots with highlighted curves, point-cloud
//! scatters, and homogeneity heatmaps.
//!
//! Output is plain SVG 1.1 text on a fixed 800x500 canvas. Coordinates are
//! printed with two decimals and nothing time-dependent is emitted, so equal
//! inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{DepthError, Result};
use crate::model::{DepthResult, FunctionalSample, PointCloud};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 40.0;

const HIGHLIGHT: &str = "red";
const MUTED: &str = "#b0b0b0";

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    s
}

/// Linear map from a data range onto a pixel range; a degenerate data range
/// maps to the middle.
#[derive(Clone, Copy)]
struct Scale {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, from: f64, to: f64) -> Self {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 1.0) };
        Scale { lo, hi, from, to }
    }

    fn map(&self, v: f64) -> f64 {
        if self.hi > self.lo {
            self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from)
        } else {
            (self.from + self.to) / 2.0
        }
    }
}

fn axes(s: &mut String, x: &Scale, y: &Scale) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/><line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/></g>"#
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="11" fill="black">"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x.lo + f * (x.hi - x.lo);
        let yv = y.lo + f * (y.hi - y.lo);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.2}</text>"#,
            x.map(xv),
            y0 + 16.0,
            xv
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.2}</text>"#,
            x0 - 6.0,
            y.map(yv) + 4.0,
            yv
        );
    }
    s.push_str("</g>\n");
}

fn legend(s: &mut String, ids: &[&str]) {
    if ids.is_empty() {
        return;
    }
    let x = WIDTH - RIGHT + 16.0;
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="12">"#);
    for (i, id) in ids.iter().enumerate() {
        let y = TOP + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{HIGHLIGHT}" stroke-width="2"/><text x="{:.2}" y="{y:.2}" fill="black">{}</text>"#,
            y - 4.0,
            x + 18.0,
            y - 4.0,
            x + 24.0,
            escape(id)
        );
    }
    s.push_str("</g>\n");
}

fn save(path: &Path, svg: &str) -> Result<()> {
    fs::write(path, svg).map_err(|source| DepthError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One polyline per curve; curves in `highlight` are drawn in red on top of
/// the gray rest and listed in a legend.
pub fn curves_svg(sample: &FunctionalSample, highlight: &[String], title: &str) -> Result<String> {
    let curves = sample
        .univariate_curves()
        .ok_or_else(|| DepthError::Unsupported("line plots need univariate curves".into()))?;
    let grid = sample.grid().points();
    let x = Scale::new(grid.iter().copied(), LEFT, WIDTH - RIGHT);
    let y = Scale::new(
        curves.iter().flat_map(|c| c.values.iter().copied()),
        HEIGHT - BOTTOM,
        TOP,
    );
    let mut s = header(title);
    axes(&mut s, &x, &y);
    let polyline = |s: &mut String, id: &str, values: &[f64], color: &str, width: f64| {
        let pts: Vec<String> = grid
            .iter()
            .zip(values)
            .map(|(&t, &v)| format!("{:.2},{:.2}", x.map(t), y.map(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline data-id="{}" points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
            escape(id),
            pts.join(" ")
        );
    };
    let is_marked = |id: &str| highlight.iter().any(|h| h == id);
    for c in curves.iter().filter(|c| !is_marked(&c.id)) {
        polyline(&mut s, &c.id, &c.values, MUTED, 1.2);
    }
    let marked: Vec<&str> = curves
        .iter()
        .filter(|c| is_marked(&c.id))
        .map(|c| c.id.as_str())
        .collect();
    for c in curves.iter().filter(|c| is_marked(&c.id)) {
        polyline(&mut s, &c.id, &c.values, HIGHLIGHT, 2.0);
    }
    legend(&mut s, &marked);
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_curves(
    sample: &FunctionalSample,
    highlight: &[String],
    title: &str,
    path: impl AsRef<Path>,
) -> Result<()> {
    save(path.as_ref(), &curves_svg(sample, highlight, title)?)
}

/// How scatter points are colored.
#[derive(Clone, Debug, PartialEq)]
pub enum ScatterMode {
    /// Listed ids in red, the rest gray.
    Highlight(Vec<String>),
    /// Gray level proportional to depth; deepest darkest.
    Gradient,
}

/// Fixed-angle orthographic view of 3-D points.
fn project(p: &[f64]) -> (f64, f64) {
    if p.len() == 2 {
        return (p[0], p[1]);
    }
    let (az, el) = (30f64.to_radians(), 20f64.to_radians());
    let u = p[0] * az.cos() - p[1] * az.sin();
    let v = (p[0] * az.sin() + p[1] * az.cos()) * el.sin() + p[2] * el.cos();
    (u, v)
}

/// Gray level (0-255) for a depth: 220 for the shallowest, 0 for the deepest.
fn shade(depth: f64, lo: f64, hi: f64) -> u8 {
    if hi > lo {
        (220.0 * (1.0 - (depth - lo) / (hi - lo))).round() as u8
    } else {
        110
    }
}

pub fn scatter_svg(
    cloud: &PointCloud,
    depths: &DepthResult,
    mode: &ScatterMode,
    title: &str,
) -> Result<String> {
    let d = cloud.dim();
    if d != 2 && d != 3 {
        return Err(DepthError::Unsupported(format!(
            "scatter plots need 2 or 3 dimensions, got {d}"
        )));
    }
    let projected: Vec<(f64, f64)> = cloud.points().iter().map(|p| project(p)).collect();
    let x = Scale::new(projected.iter().map(|p| p.0), LEFT, WIDTH - RIGHT);
    let y = Scale::new(projected.iter().map(|p| p.1), HEIGHT - BOTTOM, TOP);
    let values: Vec<f64> = cloud
        .ids()
        .iter()
        .map(|id| depths.depth_of(id).unwrap_or(0.0))
        .collect();
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });

    let mut s = header(title);
    axes(&mut s, &x, &y);
    let circle = |s: &mut String, i: usize, fill: &str| {
        let (px, py) = projected[i];
        let _ = writeln!(
            s,
            r#"<circle data-id="{}" cx="{:.2}" cy="{:.2}" r="4" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
            escape(&cloud.ids()[i]),
            x.map(px),
            y.map(py)
        );
    };
    match mode {
        ScatterMode::Gradient => {
            for (i, &v) in values.iter().enumerate() {
                let g = shade(v, lo, hi);
                circle(&mut s, i, &format!("rgb({g},{g},{g})"));
            }
        }
        ScatterMode::Highlight(ids) => {
            let marked = |i: usize| ids.iter().any(|h| *h == cloud.ids()[i]);
            for i in (0..cloud.len()).filter(|&i| !marked(i)) {
                circle(&mut s, i, MUTED);
            }
            for i in (0..cloud.len()).filter(|&i| marked(i)) {
                circle(&mut s, i, HIGHLIGHT);
            }
            let names: Vec<&str> = (0..cloud.len())
                .filter(|&i| marked(i))
                .map(|i| cloud.ids()[i].as_str())
                .collect();
            legend(&mut s, &names);
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_scatter(
    cloud: &PointCloud,
    depths: &DepthResult,
    mode: &ScatterMode,
    title: &str,
    path: impl AsRef<Path>,
) -> Result<()> {
    save(path.as_ref(), &scatter_svg(cloud, depths, mode, title)?)
}

/// Cell grid of `matrix[row][col]`, shaded from light (minimum) to dark
/// (maximum) and annotated with two decimals. Rows are "from" groups,
/// columns "to" groups; the matrix is drawn as given, not symmetrized.
pub fn heatmap_svg(matrix: &[Vec<f64>], labels: &[String], title: &str) -> Result<String> {
    let k = matrix.len();
    if k == 0 || matrix.iter().any(|row| row.len() != k) {
        return Err(DepthError::InvalidParams(
            "heatmap needs a nonempty square matrix".into(),
        ));
    }
    if labels.len() != k {
        return Err(DepthError::DimensionMismatch {
            expected: k,
            got: labels.len(),
        });
    }
    let (lo, hi) = matrix
        .iter()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let left = 120.0;
    let top = 60.0;
    let cell = ((WIDTH - left - 40.0) / k as f64).min((HEIGHT - top - 30.0) / k as f64);
    let mut s = header(title);
    s.push_str("<g font-family=\"sans-serif\" font-size=\"12\">\n");
    for (i, row) in matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
            let g = (247.0 - t * (247.0 - 37.0)).round() as u8;
            let cx = left + j as f64 * cell;
            let cy = top + i as f64 * cell;
            let ink = if t > 0.5 { "white" } else { "black" };
            let _ = writeln!(
                s,
                r#"<rect data-row="{i}" data-col="{j}" x="{cx:.2}" y="{cy:.2}" width="{cell:.2}" height="{cell:.2}" fill="rgb({g},{g},{g})" stroke="white"/><text x="{:.2}" y="{:.2}" text-anchor="middle" fill="{ink}">{v:.2}</text>"#,
                cx + cell / 2.0,
                cy + cell / 2.0 + 4.0
            );
        }
    }
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 8.0,
            top + (i as f64 + 0.5) * cell + 4.0,
            escape(label)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            left + (i as f64 + 0.5) * cell,
            top - 8.0,
            escape(label)
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

pub fn render_heatmap(
    matrix: &[Vec<f64>],
    labels: &[String],
    title: &str,
    path: impl AsRef<Path>,
) -> Result<()> {
    save(path.as_ref(), &heatmap_svg(matrix, labels, title)?)
}
