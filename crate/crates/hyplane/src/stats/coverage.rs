//! Coverage of a boundary-to-boundary chord by tiling polygons: trace
//! intervals, uncovered length and dyadic trace-length counts across
//! resolutions.

use crate::geom::{GeodesicShape, IdealPolygon, Model};
use crate::tiling::Tiling;

/// Intersection of a disk polygon with the real-axis chord `[lo, hi]`, as an
/// interval (polygons are hyperbolically convex and the real axis is a
/// geodesic, so the trace is connected).
pub fn chord_trace(poly: &IdealPolygon, lo: f64, hi: f64) -> Option<(f64, f64)> {
    debug_assert_eq!(poly.model(), Model::Disk);
    let mut a = lo;
    let mut b = hi;
    let n = poly.apexes().len();
    for (i, edge) in poly.sides().enumerate() {
        let opposite = poly.apexes()[(i + 2) % n];
        match edge.shape() {
            GeodesicShape::Arc { center, radius } => {
                // The interior lies on the same side of the edge circle as
                // the opposite apex; the circle cuts the axis in
                // (cx - s, cx + s) with s^2 = cx^2 - (|c|^2 - r^2).
                let keep_inside = edge.side_of_boundary(opposite) < 0.0;
                let inside_term = center.norm_sqr() - radius * radius;
                let disc = center.re * center.re - inside_term;
                if disc <= 0.0 {
                    // The circle misses the axis entirely: no inside points.
                    if keep_inside {
                        return None;
                    }
                    continue;
                }
                let s = disc.sqrt();
                let (t_lo, t_hi) = (center.re - s, center.re + s);
                if keep_inside {
                    a = a.max(t_lo);
                    b = b.min(t_hi);
                } else if t_hi <= a || t_lo >= b {
                    // Removed interval misses the current window.
                } else if t_lo <= a && t_hi >= b {
                    return None;
                } else if t_lo <= a {
                    a = t_hi;
                } else if t_hi >= b {
                    b = t_lo;
                } else {
                    // A middle cut cannot happen for a connected trace; keep
                    // the longer side against floating-point noise.
                    if t_lo - a >= b - t_hi {
                        b = t_lo;
                    } else {
                        a = t_hi;
                    }
                }
            }
            GeodesicShape::Diameter { dir } => {
                if dir.im == 0.0 {
                    // Edge lies on the chord itself: no strict interior
                    // points on the axis.
                    return None;
                }
                // side(t) = -dir.im * t must match the opposite apex's side.
                let reference = edge.side_of_boundary(opposite);
                if reference > 0.0 {
                    // Need -dir.im * t > 0.
                    if dir.im < 0.0 {
                        a = a.max(0.0);
                    } else {
                        b = b.min(0.0);
                    }
                } else if dir.im < 0.0 {
                    b = b.min(0.0);
                } else {
                    a = a.max(0.0);
                }
            }
            GeodesicShape::Vertical { .. } => unreachable!("disk polygon"),
        }
        if a >= b {
            return None;
        }
    }
    (a < b).then_some((a, b))
}

/// Sorted disjoint covered intervals of the chord `[lo, hi]`.
pub fn chord_coverage(tiling: &Tiling, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut spans: Vec<(f64, f64)> = tiling
        .polygons
        .iter()
        .filter_map(|p| chord_trace(p, lo, hi))
        .collect();
    spans.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    // Polygons are disjoint; merge only to absorb endpoint noise.
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
    for (a, b) in spans {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    merged
}

/// Per-resolution coverage summary of one chord.
#[derive(Clone, Debug)]
pub struct CoverageScale {
    pub resolution: f64,
    pub uncovered_length: f64,
    /// Count of polygons whose trace length falls in `[2^{-n-1}, 2^{-n})`,
    /// keyed by `n`.
    pub dyadic_counts: Vec<(i32, usize)>,
    pub trace_total: f64,
}

/// Regenerate a tiling per resolution and profile the coverage of the chord
/// `[lo, hi]` on the real axis. `bins` selects the dyadic exponents reported.
pub fn coverage_profile(
    mut generate: impl FnMut(f64) -> Tiling,
    lo: f64,
    hi: f64,
    resolutions: &[f64],
    bins: std::ops::RangeInclusive<i32>,
) -> Vec<CoverageScale> {
    resolutions
        .iter()
        .map(|&resolution| {
            let tiling = generate(resolution);
            let mut counts: Vec<(i32, usize)> =
                bins.clone().map(|n| (n, 0usize)).collect();
            let mut trace_total = 0.0;
            for poly in &tiling.polygons {
                if let Some((a, b)) = chord_trace(poly, lo, hi) {
                    let len = b - a;
                    trace_total += len;
                    if len > 0.0 {
                        let n = (-len.log2()).floor() as i32;
                        if let Some(slot) = counts.iter_mut().find(|(k, _)| *k == n) {
                            slot.1 += 1;
                        }
                    }
                }
            }
            let covered: f64 = chord_coverage(&tiling, lo, hi)
                .iter()
                .map(|(a, b)| b - a)
                .sum();
            CoverageScale {
                resolution,
                uncovered_length: (hi - lo) - covered,
                dyadic_counts: counts,
                trace_total,
            }
        })
        .collect()
}
