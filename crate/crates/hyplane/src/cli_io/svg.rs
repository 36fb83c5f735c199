//! SVG rendering of tilings. Geodesics are drawn as exact circular arcs
//! (the orthogonal circle of each edge), diameters and vertical lines as
//! straight segments.

use num_complex::Complex64;
use std::fmt::Write;

use crate::geom::{GeodesicShape, IdealPolygon, Model};
use crate::tiling::Tiling;

/// Rendering chart: the unit disk or the upper half-plane window
/// `[-3, 3] x [0, 3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderModel {
    Disk,
    Halfplane,
}

const MARGIN_FACTOR: f64 = 1.05;
const HALFPLANE_XMAX: f64 = 3.0;
const HALFPLANE_YMAX: f64 = 3.0;

struct Canvas {
    width: f64,
    model: RenderModel,
}

impl Canvas {
    fn height(&self) -> f64 {
        match self.model {
            RenderModel::Disk => self.width,
            RenderModel::Halfplane => self.width * HALFPLANE_YMAX / (2.0 * HALFPLANE_XMAX),
        }
    }

    fn scale(&self) -> f64 {
        match self.model {
            RenderModel::Disk => self.width / (2.0 * MARGIN_FACTOR),
            RenderModel::Halfplane => self.width / (2.0 * HALFPLANE_XMAX),
        }
    }

    /// Map chart coordinates to SVG user coordinates (y grows downward).
    fn point(&self, z: Complex64) -> (f64, f64) {
        let s = self.scale();
        match self.model {
            RenderModel::Disk => (self.width / 2.0 + s * z.re, self.width / 2.0 - s * z.im),
            RenderModel::Halfplane => (self.width / 2.0 + s * z.re, self.height() - s * z.im),
        }
    }
}

fn fmt_num(x: f64) -> String {
    // Enough digits for sub-pixel exactness without ballooning the file.
    format!("{x:.4}")
}

/// Build the path data for one polygon in its chart.
fn polygon_path(poly: &IdealPolygon, canvas: &Canvas) -> String {
    let apexes = poly.apexes();
    let n = apexes.len();
    let mut d = String::new();
    let clip = |z: Complex64| -> Complex64 {
        // Cap points escaping the half-plane window (edges through the
        // point at infinity are drawn to the top).
        Complex64::new(
            z.re.clamp(-10.0 * HALFPLANE_XMAX, 10.0 * HALFPLANE_XMAX),
            z.im.min(10.0 * HALFPLANE_YMAX),
        )
    };
    let chart_point = |i: usize| -> Complex64 {
        match apexes[i].complex() {
            Some(z) => z,
            // The point at infinity: enter/leave through the top of the
            // window above the adjacent finite apex.
            None => Complex64::new(0.0, 10.0 * HALFPLANE_YMAX),
        }
    };
    let start = canvas.point(clip(chart_point(0)));
    let _ = write!(d, "M {} {}", fmt_num(start.0), fmt_num(start.1));
    for (i, edge) in poly.sides().enumerate() {
        let to_idx = (i + 1) % n;
        match edge.shape() {
            GeodesicShape::Arc { center, radius } => {
                let q = canvas.point(clip(chart_point(to_idx)));
                let p_math = chart_point(i) - center;
                let q_math = chart_point(to_idx) - center;
                // Geodesic arcs subtend less than a half turn; pick the sweep
                // that matches the rotation from p to q around the center
                // (flipped once for the y-down SVG frame).
                let cross = p_math.re * q_math.im - p_math.im * q_math.re;
                let sweep = if cross > 0.0 { 0 } else { 1 };
                let r = fmt_num(radius * canvas.scale());
                let _ = write!(d, " A {r} {r} 0 0 {sweep} {} {}", fmt_num(q.0), fmt_num(q.1));
            }
            GeodesicShape::Diameter { .. } | GeodesicShape::Vertical { .. } => {
                // Straight segment; for vertical edges one endpoint is the
                // capped stand-in for infinity directly above the other.
                let to = apexes[to_idx].complex().map(clip).unwrap_or_else(|| {
                    let below = apexes[i].complex().expect("one endpoint finite");
                    Complex64::new(below.re, 10.0 * HALFPLANE_YMAX)
                });
                let from_inf = apexes[i].complex().is_none();
                if from_inf {
                    // Drop down from the capped point above the target.
                    let over = Complex64::new(to.re, 10.0 * HALFPLANE_YMAX);
                    let o = canvas.point(over);
                    let _ = write!(d, " L {} {}", fmt_num(o.0), fmt_num(o.1));
                }
                let q = canvas.point(to);
                let _ = write!(d, " L {} {}", fmt_num(q.0), fmt_num(q.1));
            }
        }
    }
    d.push_str(" Z");
    d
}

fn polygon_fill(index: usize) -> String {
    // Deterministic muted palette keyed by position.
    let hue = (index as u64).wrapping_mul(47) % 360;
    format!("hsl({hue}, 55%, 62%)")
}

/// Render a tiling document to an SVG string.
pub fn render_svg(tiling: &Tiling, width_px: u32, model: RenderModel) -> String {
    let canvas = Canvas {
        width: width_px as f64,
        model,
    };
    let mut out = String::new();
    let h = canvas.height();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n",
        w = canvas.width,
        h = h,
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (idx, poly) in tiling.polygons.iter().enumerate() {
        let chart_poly = match model {
            RenderModel::Disk => poly.clone(),
            RenderModel::Halfplane => match poly.to_model(Model::Halfplane) {
                Ok(p) => p,
                Err(_) => continue,
            },
        };
        let d = polygon_path(&chart_poly, &canvas);
        let _ = write!(
            out,
            "<path d=\"{d}\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"#222\" \
             stroke-width=\"0.4\"/>\n",
            polygon_fill(idx)
        );
    }
    match model {
        RenderModel::Disk => {
            let c = canvas.width / 2.0;
            let r = canvas.scale();
            let _ = write!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" \
                 stroke-width=\"1\"/>\n",
                fmt_num(c),
                fmt_num(c),
                fmt_num(r)
            );
        }
        RenderModel::Halfplane => {
            let y = canvas.height();
            let _ = write!(
                out,
                "<line x1=\"0\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\" \
                 stroke-width=\"1\"/>\n",
                canvas.width,
                y = fmt_num(y)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Arc endpoints of a disk rendering, in SVG user coordinates. Exposed so
/// the geometry of emitted arcs can be validated against the drawing unit.
pub fn disk_arc_endpoints(tiling: &Tiling, width_px: u32) -> Vec<(f64, f64)> {
    let canvas = Canvas {
        width: width_px as f64,
        model: RenderModel::Disk,
    };
    let mut out = Vec::new();
    for poly in &tiling.polygons {
        for apex in poly.apexes() {
            if let Some(z) = apex.complex() {
                out.push(canvas.point(z));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::sample_disk_triangulation;

    #[test]
    fn arc_endpoints_lie_on_the_unit_circle() {
        let t = sample_disk_triangulation(2, 1e-2, None).unwrap();
        let width = 800u32;
        let scale = width as f64 / (2.0 * MARGIN_FACTOR);
        let c = width as f64 / 2.0;
        for (x, y) in disk_arc_endpoints(&t, width) {
            let r = ((x - c) * (x - c) + (y - c) * (y - c)).sqrt();
            assert!((r - scale).abs() < 1e-6 * scale, "endpoint radius {r}");
        }
    }

    #[test]
    fn svg_contains_paths_and_circle() {
        let t = sample_disk_triangulation(2, 5e-2, None).unwrap();
        let svg = render_svg(&t, 640, RenderModel::Disk);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<circle"));
        assert!(svg.matches("<path").count() == t.polygons.len());
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn halfplane_render_smoke() {
        let t = sample_disk_triangulation(3, 5e-2, None).unwrap();
        let svg = render_svg(&t, 640, RenderModel::Halfplane);
        assert!(svg.contains("<line"));
        assert!(svg.matches("<path").count() >= t.polygons.len() / 2);
    }

    #[test]
    fn geodesic_arc_radius_appears_in_path() {
        // The geodesic between angles 0 and 2 pi / 3 has radius sqrt 3; the
        // emitted path must carry that radius times the canvas scale.
        use crate::geom::{BoundaryPoint, IdealPolygon};
        use std::f64::consts::TAU;
        let tri = IdealPolygon::new(vec![
            BoundaryPoint::disk(0.0),
            BoundaryPoint::disk(TAU / 3.0),
            BoundaryPoint::disk(2.0 * TAU / 3.0),
        ])
        .unwrap();
        let canvas = Canvas {
            width: 200.0,
            model: RenderModel::Disk,
        };
        let d = polygon_path(&tri, &canvas);
        let expected = 3.0f64.sqrt() * canvas.scale();
        assert!(
            d.contains(&fmt_num(expected)),
            "path {d} lacks radius {expected}"
        );
    }
}
