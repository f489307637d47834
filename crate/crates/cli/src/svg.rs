//! Standalone SVG figures: the Log image of a curve's real arcs with
//! orientation arrows, and index diagrams on the lattice grid.

use std::fmt::Write;

use qindex_core::curve::IndexDiagram;
use qindex_core::lognum::log_image_arcs;
use qindex_core::curve::RealRationalCurve;

use crate::CliError;

const W: f64 = 640.0;
const H: f64 = 640.0;
const PAD: f64 = 40.0;

fn fmt_pt(x: f64, y: f64) -> String {
    format!("{:.2},{:.2}", x, y)
}

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
}

impl Frame {
    fn around(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        if !min.0.is_finite() {
            min = (-1.0, -1.0);
            max = (1.0, 1.0);
        }
        // Square frame with a margin, so aspect ratio is preserved.
        let cx = 0.5 * (min.0 + max.0);
        let cy = 0.5 * (min.1 + max.1);
        let r = (0.5 * (max.0 - min.0)).max(0.5 * (max.1 - min.1)).max(1.0) * 1.15;
        Frame {
            min: (cx - r, cy - r),
            max: (cx + r, cy + r),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (W - 2.0 * PAD) / (self.max.0 - self.min.0);
        let sy = (H - 2.0 * PAD) / (self.max.1 - self.min.1);
        (
            PAD + (x - self.min.0) * sx,
            // SVG y axis points down.
            H - PAD - (y - self.min.1) * sy,
        )
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(
        out,
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker></defs>"
    );
    let _ = writeln!(out, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
}

fn grid(out: &mut String, frame: &Frame) {
    let (x0, y0) = (frame.min.0.floor() as i64, frame.min.1.floor() as i64);
    let (x1, y1) = (frame.max.0.ceil() as i64, frame.max.1.ceil() as i64);
    if (x1 - x0) > 64 || (y1 - y0) > 64 {
        return;
    }
    for gx in x0..=x1 {
        let (a, b) = frame.map(gx as f64, frame.min.1);
        let (c, d) = frame.map(gx as f64, frame.max.1);
        let color = if gx == 0 { "#888888" } else { "#dddddd" };
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\"/>",
            a, b, c, d, color
        );
    }
    for gy in y0..=y1 {
        let (a, b) = frame.map(frame.min.0, gy as f64);
        let (c, d) = frame.map(frame.max.0, gy as f64);
        let color = if gy == 0 { "#888888" } else { "#dddddd" };
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\"/>",
            a, b, c, d, color
        );
    }
}

/// Log image of the real arcs, one polyline per arc, with a mid-arc
/// orientation arrow and the arc's lattice real index as a label.
pub fn curve_svg(curve: &RealRationalCurve) -> Result<String, CliError> {
    let arcs = log_image_arcs(curve).map_err(|e| CliError::numeric(format!("{}", e)))?;
    // Clamp far tentacle ends so the interesting region stays visible.
    let mut all: Vec<(f64, f64)> = Vec::new();
    for (_, pts) in &arcs {
        all.extend(pts.iter().copied());
    }
    all.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    let q = |v: f64| -> f64 { v };
    let lo_i = all.len() / 20;
    let hi_i = all.len() - 1 - all.len() / 20;
    let frame = Frame::around(
        all[lo_i..=hi_i]
            .iter()
            .map(|&(x, y)| (q(x), q(y)))
            .chain(std::iter::once((0.0, 0.0))),
    );
    let mut out = String::new();
    header(&mut out);
    grid(&mut out, &frame);
    let palette = ["#2c3e50", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"];
    for (i, (alpha, pts)) in arcs.iter().enumerate() {
        if pts.len() < 2 {
            continue;
        }
        let color = palette[i % palette.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| {
                let (a, b) = frame.map(x, y);
                fmt_pt(a, b)
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            path.join(" "),
            color
        );
        // Orientation arrow on the middle segment, following increasing
        // parameter when orientation = +1.
        let mid = pts.len() / 2;
        let (p, qq) = if curve.orientation == 1 {
            (pts[mid - 1], pts[mid])
        } else {
            (pts[mid], pts[mid - 1])
        };
        let (ax, ay) = frame.map(p.0, p.1);
        let (bx, by) = frame.map(qq.0, qq.1);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#c0392b\" \
             stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>",
            ax, ay, bx, by
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"{}\">({}, {})</text>",
            bx + 4.0,
            by - 4.0,
            color,
            alpha.a,
            alpha.b
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The index diagram as a closed broken line on the lattice grid, with
/// vertices labeled and edges arrowed in traversal order.
pub fn diagram_svg(diagram: &IndexDiagram) -> String {
    let frame = Frame::around(
        diagram
            .vertices
            .iter()
            .map(|v| (v.a as f64, v.b as f64))
            .chain(std::iter::once((0.0, 0.0))),
    );
    let mut out = String::new();
    header(&mut out);
    grid(&mut out, &frame);
    let n = diagram.vertices.len();
    for i in 0..n {
        let v = diagram.vertices[i];
        let w = diagram.vertices[(i + 1) % n];
        let (ax, ay) = frame.map(v.a as f64, v.b as f64);
        let (bx, by) = frame.map(w.a as f64, w.b as f64);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#2980b9\" \
             stroke-width=\"2\" marker-end=\"url(#arrow)\"/>",
            ax, ay, bx, by
        );
    }
    for v in &diagram.vertices {
        let (ax, ay) = frame.map(v.a as f64, v.b as f64);
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"#2c3e50\"/>",
            ax, ay
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#2c3e50\">({}, {})</text>",
            ax + 5.0,
            ay - 5.0,
            v.a,
            v.b
        );
    }
    out.push_str("</svg>\n");
    out
}
