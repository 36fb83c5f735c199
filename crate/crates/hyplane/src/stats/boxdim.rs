//! Box-counting dimension estimates for point sets and arc families.

use std::collections::HashSet;

use super::StatsError;
use crate::geom::{GeodesicShape, IdealPolygon, Model};

fn validate_scales(scales: &[f64]) -> Result<(), StatsError> {
    if scales.len() < 4 {
        return Err(StatsError::DegenerateScales);
    }
    let max = scales.iter().cloned().fold(f64::MIN, f64::max);
    let min = scales.iter().cloned().fold(f64::MAX, f64::min);
    if !(min > 0.0) || max / min < 8.0 {
        return Err(StatsError::DegenerateScales);
    }
    Ok(())
}

/// Least-squares slope of `ln N(eps)` against `ln(1/eps)`, with its standard
/// error.
fn fit_slope(scales: &[f64], counts: &[usize]) -> (f64, f64) {
    let xs: Vec<f64> = scales.iter().map(|e| (1.0 / e).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&n| (n.max(1) as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let residual: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let fit = my + slope * (x - mx);
            (y - fit) * (y - fit)
        })
        .sum();
    let stderr = if n > 2.0 {
        (residual / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    (slope, stderr)
}

/// Box-dimension estimate of a set of reals: slope of occupied interval
/// counts across scales.
pub fn boxdim_points_1d(points: &[f64], scales: &[f64]) -> Result<(f64, f64), StatsError> {
    validate_scales(scales)?;
    let counts: Vec<usize> = scales
        .iter()
        .map(|&eps| {
            let mut boxes: HashSet<i64> = HashSet::new();
            for &p in points {
                boxes.insert((p / eps).floor() as i64);
            }
            boxes.len()
        })
        .collect();
    Ok(fit_slope(scales, &counts))
}

/// Box-dimension estimate of a planar point set.
pub fn boxdim_points_2d(points: &[(f64, f64)], scales: &[f64]) -> Result<(f64, f64), StatsError> {
    validate_scales(scales)?;
    let counts: Vec<usize> = scales
        .iter()
        .map(|&eps| {
            let mut boxes: HashSet<(i64, i64)> = HashSet::new();
            for &(x, y) in points {
                boxes.insert(((x / eps).floor() as i64, (y / eps).floor() as i64));
            }
            boxes.len()
        })
        .collect();
    Ok(fit_slope(scales, &counts))
}

/// Points along a disk polygon's boundary arcs at the given spacing, for box
/// counting of edge unions.
pub fn polygon_boundary_points(poly: &IdealPolygon, spacing: f64) -> Vec<(f64, f64)> {
    debug_assert_eq!(poly.model(), Model::Disk);
    let mut out = Vec::new();
    for edge in poly.sides() {
        match edge.shape() {
            GeodesicShape::Arc { center, radius } => {
                let a = edge.a.complex().unwrap();
                let b = edge.b.complex().unwrap();
                let ang_a = (a - center).arg();
                let ang_b = (b - center).arg();
                // Shorter arc between the endpoints (the piece inside the
                // disk subtends less than a half turn).
                let mut sweep = ang_b - ang_a;
                if sweep > std::f64::consts::PI {
                    sweep -= std::f64::consts::TAU;
                } else if sweep < -std::f64::consts::PI {
                    sweep += std::f64::consts::TAU;
                }
                let len = radius * sweep.abs();
                let steps = (len / spacing).ceil().max(1.0) as usize;
                for k in 0..=steps {
                    let t = ang_a + sweep * k as f64 / steps as f64;
                    out.push((center.re + radius * t.cos(), center.im + radius * t.sin()));
                }
            }
            GeodesicShape::Diameter { dir } => {
                let steps = (2.0 / spacing).ceil().max(1.0) as usize;
                for k in 0..=steps {
                    let t = -1.0 + 2.0 * k as f64 / steps as f64;
                    out.push((dir.re * t, dir.im * t));
                }
            }
            GeodesicShape::Vertical { .. } => unreachable!("disk polygon"),
        }
    }
    out
}

/// Box-dimension estimate of the union of boundary arcs of a family of disk
/// polygons, each arc discretized at a quarter of the scale being counted.
pub fn boxdim_arcs(polys: &[IdealPolygon], scales: &[f64]) -> Result<(f64, f64), StatsError> {
    validate_scales(scales)?;
    let counts: Vec<usize> = scales
        .iter()
        .map(|&eps| {
            let mut boxes: HashSet<(i64, i64)> = HashSet::new();
            for poly in polys {
                for (x, y) in polygon_boundary_points(poly, eps / 4.0) {
                    boxes.insert(((x / eps).floor() as i64, (y / eps).floor() as i64));
                }
            }
            boxes.len()
        })
        .collect();
    Ok(fit_slope(scales, &counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomStream;

    fn octave_scales(lo: i32, hi: i32) -> Vec<f64> {
        (lo..=hi).map(|k| 2.0f64.powi(-k)).collect()
    }

    #[test]
    fn segment_has_dimension_one() {
        let mut rng = RandomStream::new(1);
        let points: Vec<f64> = (0..10_000).map(|_| rng.uniform()).collect();
        let (slope, _) = boxdim_points_1d(&points, &octave_scales(4, 12)).unwrap();
        assert!((slope - 1.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn finite_sets_have_dimension_zero() {
        let points: Vec<f64> = (0..10).map(|i| i as f64 * 0.083).collect();
        let (slope, _) = boxdim_points_1d(&points, &octave_scales(4, 12)).unwrap();
        assert!(slope.abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn planar_segment_dimension_one() {
        let points: Vec<(f64, f64)> = (0..20_000)
            .map(|i| (i as f64 / 20_000.0, 0.3))
            .collect();
        let (slope, _) = boxdim_points_2d(&points, &octave_scales(4, 12)).unwrap();
        assert!((slope - 1.0).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn degenerate_scale_lists_rejected() {
        assert!(boxdim_points_1d(&[0.0], &[0.5, 0.4]).is_err());
        assert!(boxdim_points_1d(&[0.0], &[0.5, 0.4, 0.45, 0.41]).is_err());
    }

    #[test]
    fn polygon_arc_points_lie_in_disk() {
        let poly = crate::measures::standard_triangle();
        for (x, y) in polygon_boundary_points(&poly, 0.01) {
            assert!(x * x + y * y <= 1.0 + 1e-9);
        }
    }
}
