//! Static SVG emitters: surface heatmaps on the triangle embedding, edge
//! line plots, nodal three-color maps, and log-scale coefficient series.
//! All output is deterministic text.

use crate::error::{Error, Result};
use crate::mesh::{MeshTopology, NodalDomains};
use std::fmt::Write;

const MAX_SURFACE_LEVEL: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Surface,
    Edge,
    Nodal,
    CoeffSeries,
    JacobiDet,
}

impl std::str::FromStr for PlotKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "surface" => Ok(PlotKind::Surface),
            "edge" => Ok(PlotKind::Edge),
            "nodal" => Ok(PlotKind::Nodal),
            "coeff-series" => Ok(PlotKind::CoeffSeries),
            "jacobi-det" => Ok(PlotKind::JacobiDet),
            other => Err(Error::Parse(format!("unknown plot kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub width: u32,
    pub height: u32,
    pub title: String,
}

impl PlotSpec {
    pub fn new(kind: PlotKind, title: impl Into<String>) -> Self {
        PlotSpec {
            kind,
            width: 720,
            height: 680,
            title: title.into(),
        }
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.4}")
}

/// Diverging color map centered at zero: blue for negative, white near
/// zero, red for positive.
fn diverging_color(v: f64, max_abs: f64) -> String {
    if !v.is_finite() || max_abs <= 0.0 {
        return "rgb(255,255,255)".into();
    }
    let t = (v / max_abs).clamp(-1.0, 1.0);
    let (r, g, b) = if t >= 0.0 {
        let s = 1.0 - t;
        (255.0, 255.0 * s, 255.0 * s)
    } else {
        let s = 1.0 + t;
        (255.0 * s, 255.0 * s, 255.0)
    };
    format!("rgb({},{},{})", r.round() as u8, g.round() as u8, b.round() as u8)
}

fn svg_header(spec: &PlotSpec) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         <text x=\"{tx}\" y=\"24\" font-family=\"monospace\" font-size=\"16\" text-anchor=\"middle\">{t}</text>\n",
        w = spec.width,
        h = spec.height,
        tx = spec.width / 2,
        t = spec.title
    )
}

fn triangle_transform(spec: &PlotSpec) -> impl Fn(f64, f64) -> (f64, f64) {
    let w = spec.width as f64;
    let h = spec.height as f64;
    let side = (w - 80.0).min(h - 100.0);
    let x0 = (w - side) / 2.0;
    let y0 = h - 40.0;
    move |x: f64, y: f64| (x0 + x * side, y0 - y * side)
}

/// Heatmap of vertex values: one filled triangle per level-m cell, colored
/// by the mean of its corner values on a diverging scale centered at zero.
pub fn surface_svg(spec: &PlotSpec, topo: &MeshTopology, values: &[f64]) -> Result<String> {
    if topo.level > MAX_SURFACE_LEVEL {
        return Err(Error::RenderGuard(format!(
            "surface plots are limited to level {MAX_SURFACE_LEVEL}, got {}",
            topo.level
        )));
    }
    let max_abs = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let to = triangle_transform(spec);
    let mut out = svg_header(spec);
    for tri in &topo.cells {
        let mut pts = String::new();
        let mut mean = 0.0;
        for &v in tri {
            let (x, y) = topo.vertices[v as usize].coords();
            let (px, py) = to(x, y);
            write!(pts, "{},{} ", fmt(px), fmt(py)).unwrap();
            mean += values[v as usize];
        }
        mean /= 3.0;
        writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
            pts.trim_end(),
            diverging_color(mean, max_abs)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Three-color nodal map: cells colored by the majority corner sign, with
/// mixed-sign cells rendered as boundary color.
pub fn nodal_svg(
    spec: &PlotSpec,
    topo: &MeshTopology,
    signs: &[i8],
    domains: &NodalDomains,
) -> Result<String> {
    if topo.level > MAX_SURFACE_LEVEL {
        return Err(Error::RenderGuard(format!(
            "nodal plots are limited to level {MAX_SURFACE_LEVEL}, got {}",
            topo.level
        )));
    }
    let to = triangle_transform(spec);
    let mut out = svg_header(spec);
    for tri in &topo.cells {
        let s: i32 = tri.iter().map(|&v| signs[v as usize] as i32).sum();
        let all_same = {
            let a = signs[tri[0] as usize];
            a != 0 && tri.iter().all(|&v| signs[v as usize] == a)
        };
        let fill = if all_same {
            if s > 0 {
                "rgb(228,106,88)"
            } else {
                "rgb(94,129,212)"
            }
        } else {
            "rgb(240,233,163)"
        };
        let mut pts = String::new();
        for &v in tri {
            let (x, y) = topo.vertices[v as usize].coords();
            let (px, py) = to(x, y);
            write!(pts, "{},{} ", fmt(px), fmt(py)).unwrap();
        }
        writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
            pts.trim_end(),
            fill
        )
        .unwrap();
    }
    writeln!(
        out,
        "<text x=\"20\" y=\"{}\" font-family=\"monospace\" font-size=\"14\">domains: {}</text>",
        spec.height - 12,
        domains.count
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// Polyline plot of a series of (x, y) points with simple axes.
pub fn line_svg(spec: &PlotSpec, series: &[(f64, f64)], y_label: &str) -> Result<String> {
    if series.is_empty() {
        return Err(Error::RenderGuard("empty series".into()));
    }
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in series {
        if !y.is_finite() {
            continue;
        }
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    if !xmin.is_finite() || !ymin.is_finite() {
        return Err(Error::RenderGuard("series has no finite points".into()));
    }
    if (xmax - xmin).abs() < f64::EPSILON {
        xmax = xmin + 1.0;
    }
    if (ymax - ymin).abs() < f64::EPSILON {
        ymax = ymin + 1.0;
    }
    let w = spec.width as f64;
    let h = spec.height as f64;
    let (l, r, t, b) = (70.0, 20.0, 40.0, 50.0);
    let sx = (w - l - r) / (xmax - xmin);
    let sy = (h - t - b) / (ymax - ymin);
    let mut out = svg_header(spec);
    writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        fmt(l),
        fmt(t),
        fmt(w - l - r),
        fmt(h - t - b)
    )
    .unwrap();
    let mut pts = String::new();
    for &(x, y) in series {
        if !y.is_finite() {
            continue;
        }
        let px = l + (x - xmin) * sx;
        let py = h - b - (y - ymin) * sy;
        write!(pts, "{},{} ", fmt(px), fmt(py)).unwrap();
    }
    writeln!(
        out,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"rgb(178,34,52)\" stroke-width=\"1.5\"/>",
        pts.trim_end()
    )
    .unwrap();
    for (val, label_y) in [(ymin, h - b), (ymax, t)] {
        writeln!(
            out,
            "<text x=\"8\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">{}</text>",
            fmt(label_y),
            fmt(val)
        )
        .unwrap();
    }
    for (val, label_x) in [(xmin, l), (xmax, w - r - 30.0)] {
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">{}</text>",
            fmt(label_x),
            fmt(h - b + 16.0),
            fmt(val)
        )
        .unwrap();
    }
    writeln!(
        out,
        "<text x=\"8\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">{}</text>",
        fmt(t - 8.0),
        y_label
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

/// Several labeled series on shared axes.
pub fn multi_line_svg(spec: &PlotSpec, series: &[(&str, &[(f64, f64)])]) -> Result<String> {
    if series.is_empty() || series.iter().all(|(_, s)| s.is_empty()) {
        return Err(Error::RenderGuard("empty series".into()));
    }
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, s) in series {
        for &(x, y) in *s {
            if !y.is_finite() {
                continue;
            }
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if !xmin.is_finite() || !ymin.is_finite() {
        return Err(Error::RenderGuard("series has no finite points".into()));
    }
    if (xmax - xmin).abs() < f64::EPSILON {
        xmax = xmin + 1.0;
    }
    if (ymax - ymin).abs() < f64::EPSILON {
        ymax = ymin + 1.0;
    }
    const COLORS: [&str; 4] = [
        "rgb(178,34,52)",
        "rgb(40,90,170)",
        "rgb(40,140,70)",
        "rgb(150,90,170)",
    ];
    let w = spec.width as f64;
    let h = spec.height as f64;
    let (l, r, t, b) = (70.0, 20.0, 40.0, 50.0);
    let sx = (w - l - r) / (xmax - xmin);
    let sy = (h - t - b) / (ymax - ymin);
    let mut out = svg_header(spec);
    writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        fmt(l),
        fmt(t),
        fmt(w - l - r),
        fmt(h - t - b)
    )
    .unwrap();
    for (si, (label, s)) in series.iter().enumerate() {
        let color = COLORS[si % COLORS.len()];
        let mut pts = String::new();
        for &(x, y) in *s {
            if !y.is_finite() {
                continue;
            }
            let px = l + (x - xmin) * sx;
            let py = h - b - (y - ymin) * sy;
            write!(pts, "{},{} ", fmt(px), fmt(py)).unwrap();
        }
        writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            pts.trim_end(),
            color
        )
        .unwrap();
        writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{}\">{}</text>",
            fmt(l + 8.0),
            fmt(t + 16.0 + 16.0 * si as f64),
            color,
            label
        )
        .unwrap();
    }
    for (val, label_y) in [(ymin, h - b), (ymax, t)] {
        writeln!(
            out,
            "<text x=\"8\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">{}</text>",
            fmt(label_y),
            fmt(val)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::JetTable;
    use crate::mesh::evaluate_exact;
    use crate::ortho::{MonomialVector, OpBasis};
    use rug::Rational;

    #[test]
    fn constant_surface_is_uniform() {
        let jt: JetTable<Rational> = JetTable::compute(2, &());
        let one = MonomialVector::new(OpBasis::Rho, vec![Rational::from((1, 3))]);
        let mv = evaluate_exact(&one, 0, 3, &jt).unwrap();
        let spec = PlotSpec::new(PlotKind::Surface, "constant");
        let svg = surface_svg(&spec, &mv.topology, &mv.to_f64()).unwrap();
        let fills: std::collections::BTreeSet<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<polygon"))
            .map(|l| l.split("fill=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        assert_eq!(fills.len(), 1, "uniform color gasket");
    }

    #[test]
    fn render_guard_rejects_deep_levels() {
        let topo = crate::mesh::MeshTopology::new(2);
        let spec = PlotSpec::new(PlotKind::Surface, "guard");
        let vals = vec![0.0; topo.vertex_count()];
        assert!(surface_svg(&spec, &topo, &vals).is_ok());
        // build a fake deep topology marker by level check only
        let deep = crate::mesh::MeshTopology::new(10);
        let vals = vec![0.0; deep.vertex_count()];
        assert!(matches!(
            surface_svg(&spec, &deep, &vals),
            Err(Error::RenderGuard(_))
        ));
    }

    #[test]
    fn line_plot_emits() {
        let spec = PlotSpec::new(PlotKind::CoeffSeries, "series");
        let series: Vec<(f64, f64)> = (0..20).map(|k| (k as f64, -(k as f64) * 1.3)).collect();
        let svg = line_svg(&spec, &series, "log10").unwrap();
        assert!(svg.contains("<polyline"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn deterministic_output() {
        let jt: JetTable<Rational> = JetTable::compute(2, &());
        let v = MonomialVector::new(OpBasis::P3, vec![Rational::from(1)]);
        let mv = evaluate_exact(&v, 0, 4, &jt).unwrap();
        let spec = PlotSpec::new(PlotKind::Surface, "p03");
        let a = surface_svg(&spec, &mv.topology, &mv.to_f64()).unwrap();
        let b = surface_svg(&spec, &mv.topology, &mv.to_f64()).unwrap();
        assert_eq!(a, b);
    }
}
