//! The square variant: jump pairs of the square accordion, the origin
//! square, and the disk quadrangulation.
//!
//! A square jump is a pair `(x1, x2)` with `(-1, 1, x1, x2)` anticlockwise
//! and regular. In the flat coordinate `y = (x - 1)/(x + 1)` the regularity
//! relation is simply `y2 = 2 y1`, so the pair measure is the deterministic
//! pushforward of the jump intensity by `x1 -> (x1, x2(x1))`: its first
//! marginal is the triangle jump intensity, and so is its second (doubling
//! preserves `dy/y`).

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::accordion::AccordionConfig;
use crate::geom::{
    cross_ratio, gap_normalizer, BoundaryPoint, Gap, GeomError, IdealPolygon, MobiusMap,
};
use crate::measures::{self, MeasureError};
use crate::rng::RandomStream;
use crate::tiling::{Tiling, TilingError, TilingKind, TilingMeta};

#[derive(Debug, Error)]
pub enum NgonError {
    #[error("first apex must satisfy |x1| > 1, got {0}")]
    InvalidFirstApex(f64),
    #[error("x1 = {0} sits at the type boundary (second apex at infinity)")]
    TypeBoundary(f64),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Square jump types by apex ordering relative to the arch (-1, 1):
/// both new apexes right (`I2`), both left (`I1`), or straddling so that the
/// two arch feet jump simultaneously (`II`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareKind {
    I1,
    I2,
    II,
}

/// Normalized square jump: `(-1, 1, x1, x2)` anticlockwise and regular.
#[derive(Clone, Copy, Debug)]
pub struct SquareJump {
    pub x1: f64,
    pub x2: f64,
    pub kind: SquareKind,
}

/// The cross-ratio value shared by all regular ideal squares.
pub const SQUARE_CROSS_RATIO: f64 = 2.0;

/// Cross-ratio deviation of four anticlockwise apexes from a regular square;
/// zero exactly on regular squares, in any chart.
///
/// For disk apexes the chord lengths are evaluated from angle differences
/// (`|e^{ia} - e^{ib}| = 2 |sin((a-b)/2)|`), which stays accurate when two
/// apexes nearly coincide.
pub fn square_residual(apexes: &[BoundaryPoint]) -> f64 {
    debug_assert_eq!(apexes.len(), 4);
    if apexes.iter().all(|p| p.model() == crate::geom::Model::Disk) {
        let t: Vec<f64> = apexes.iter().map(|p| p.angle()).collect();
        let s = |i: usize, j: usize| ((t[i] - t[j]) / 2.0).sin();
        // The cross-ratio of anticlockwise cocircular points is real and
        // exceeds one; phases cancel pairwise.
        let chi = (s(0, 2) * s(1, 3) / (s(0, 3) * s(1, 2))).abs();
        (chi - SQUARE_CROSS_RATIO).abs()
    } else {
        (cross_ratio(apexes[0], apexes[1], apexes[2], apexes[3])
            - Complex64::new(SQUARE_CROSS_RATIO, 0.0))
        .norm()
    }
}

/// Complete a first apex into a square jump by the regularity relation
/// `y2 = 2 y1` in the flat coordinate. The type boundary (second apex through
/// infinity) sits at `y1 = 1/2`, that is `x1 = 3`.
pub fn rho4_pair(x1: f64) -> Result<SquareJump, NgonError> {
    if !(x1.abs() > 1.0) || !x1.is_finite() {
        return Err(NgonError::InvalidFirstApex(x1));
    }
    let y1 = (x1 - 1.0) / (x1 + 1.0);
    let y2 = 2.0 * y1;
    if (y2 - 1.0).abs() < 1e-12 {
        return Err(NgonError::TypeBoundary(x1));
    }
    let x2 = (1.0 + y2) / (1.0 - y2);
    let kind = if x1 > 1.0 {
        if x1 < 3.0 {
            SquareKind::I2
        } else {
            SquareKind::II
        }
    } else {
        SquareKind::I1
    };
    // Consistency of the classification with the apex ordering.
    debug_assert!(match kind {
        SquareKind::I2 => 1.0 < x1 && x1 < x2,
        SquareKind::I1 => x1 < x2 && x2 < -1.0,
        SquareKind::II => x2 < -1.0 && 1.0 < x1,
    });
    Ok(SquareJump { x1, x2, kind })
}

/// The standard square at the fourth roots of unity.
pub fn standard_square() -> IdealPolygon {
    IdealPolygon::new(vec![
        BoundaryPoint::disk(0.0),
        BoundaryPoint::disk(TAU / 4.0),
        BoundaryPoint::disk(TAU / 2.0),
        BoundaryPoint::disk(3.0 * TAU / 4.0),
    ])
    .expect("fixed nondegenerate apexes")
}

/// The unique fourth apex turning an anticlockwise triple into a regular
/// square: map the triple onto three corners of the standard square and pull
/// the remaining corner back.
pub fn fourth_vertex(
    a: BoundaryPoint,
    b: BoundaryPoint,
    c: BoundaryPoint,
) -> Result<BoundaryPoint, GeomError> {
    let map = MobiusMap::from_triples(
        [
            BoundaryPoint::disk(0.0),
            BoundaryPoint::disk(TAU / 4.0),
            BoundaryPoint::disk(TAU / 2.0),
        ],
        [a, b, c],
    )?;
    map.apply_boundary(BoundaryPoint::disk(3.0 * TAU / 4.0))
}

/// Marked regular square containing the origin, by the same recipe as the
/// origin triangle: an area-measure point of the standard square (two
/// triangle halves of area one each) and a uniform rotation.
pub fn sample_p0_square(rng: &mut RandomStream) -> IdealPolygon {
    let w = measures::sample_mu_halfplane_triangle(rng);
    // Either diagonal half of the standard square, each with area one.
    let half = if rng.coin() {
        [
            BoundaryPoint::disk(0.0),
            BoundaryPoint::disk(TAU / 4.0),
            BoundaryPoint::disk(TAU / 2.0),
        ]
    } else {
        [
            BoundaryPoint::disk(TAU / 2.0),
            BoundaryPoint::disk(3.0 * TAU / 4.0),
            BoundaryPoint::disk(0.0),
        ]
    };
    let chart = MobiusMap::from_triples(
        [
            BoundaryPoint::halfplane(0.0),
            BoundaryPoint::halfplane(1.0),
            BoundaryPoint::infinity(),
        ],
        half,
    )
    .expect("fixed triples");
    let z0 = chart.apply_interior(w);
    let theta = rng.uniform_in(0.0, TAU);
    let phi = MobiusMap::disk_automorphism(z0, theta);
    standard_square()
        .apply(&phi)
        .expect("automorphism preserves nondegeneracy")
}

/// One emitted square-accordion event in arch-normalized coordinates.
#[derive(Clone, Copy, Debug)]
pub struct SquareEvent {
    pub jump: SquareJump,
    pub wait: f64,
}

/// Stream of square jumps above the cutoff, with waiting times attached at
/// the rate of the first-apex intensity.
pub fn sample_square_jumps(
    rng: &mut RandomStream,
    jump_cutoff: f64,
    n: usize,
) -> Result<Vec<SquareEvent>, NgonError> {
    let cutoff = 1.0 + jump_cutoff;
    let rate = measures::zeta_tail_mass(cutoff)?;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let wait = rng.exponential(rate);
        let x1 = measures::sample_zeta(rng, cutoff)?;
        match rho4_pair(x1) {
            Ok(jump) => out.push(SquareEvent { jump, wait }),
            // The type boundary is a null set of the intensity; skip.
            Err(NgonError::TypeBoundary(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

struct SquareStep {
    arch: (f64, f64),
    corners: [f64; 4],
    sides: [(f64, f64); 2],
}

/// Arch update of the square accordion: the new arch joins the leftmost and
/// rightmost apexes, and the two edges that are neither the old nor the new
/// arch become side gaps.
fn apply_square_jump(arch: (f64, f64), jump: &SquareJump) -> SquareStep {
    let (l, r) = arch;
    let affine = |x: f64| ((r - l) * x + (l + r)) / 2.0;
    let w1 = affine(jump.x1);
    let w2 = affine(jump.x2);
    match jump.kind {
        SquareKind::I2 => SquareStep {
            arch: (l, w2),
            corners: [l, r, w1, w2],
            sides: [(r, w1), (w1, w2)],
        },
        SquareKind::I1 => SquareStep {
            arch: (w1, r),
            corners: [w1, w2, l, r],
            sides: [(w1, w2), (w2, l)],
        },
        SquareKind::II => SquareStep {
            arch: (w2, w1),
            corners: [w2, l, r, w1],
            sides: [(w2, l), (r, w1)],
        },
    }
}

struct SquareFillConfig {
    resolution: f64,
    accordion: AccordionConfig,
}

fn fill_square_gap(
    gap: &Gap,
    stream: &RandomStream,
    cfg: &SquareFillConfig,
) -> (Vec<IdealPolygon>, bool) {
    if gap.euclidean_diameter() < cfg.resolution {
        return (Vec::new(), false);
    }
    let normalizer = match gap_normalizer(gap) {
        Ok(n) => n,
        Err(_) => return (Vec::new(), false),
    };
    let map_back = normalizer.inverse();
    let to_disk = |x: f64| map_back.apply_boundary(BoundaryPoint::halfplane(x));
    let mut acc_rng = stream.split(0);
    let cutoff = 1.0 + cfg.accordion.jump_cutoff;
    let rate = measures::zeta_tail_mass(cutoff).expect("positive cutoff");
    let mut arch = (-1.0f64, 1.0f64);
    let mut polygons = Vec::new();
    let mut subgaps: Vec<(u64, Gap)> = Vec::new();
    let mut exhausted = true;
    for index in 0..cfg.accordion.max_jumps {
        let _wait = acc_rng.exponential(rate);
        let x1 = match measures::sample_zeta(&mut acc_rng, cutoff) {
            Ok(x) => x,
            Err(_) => continue,
        };
        let jump = match rho4_pair(x1) {
            Ok(j) => j,
            Err(_) => continue,
        };
        let step = apply_square_jump(arch, &jump);
        arch = step.arch;
        if let Ok(apexes) = step
            .corners
            .iter()
            .map(|&c| to_disk(c))
            .collect::<Result<Vec<_>, _>>()
        {
            if let Ok(square) = IdealPolygon::new(apexes) {
                if square.euclidean_diameter() >= cfg.resolution {
                    polygons.push(square);
                }
            }
        }
        for (k, side) in step.sides.iter().enumerate() {
            if let (Ok(from), Ok(to)) = (to_disk(side.0), to_disk(side.1)) {
                if let Ok(sub) = Gap::new(from, to) {
                    if sub.euclidean_diameter() >= cfg.resolution {
                        subgaps.push((1 + 2 * index + k as u64, sub));
                    }
                }
            }
        }
        if let (Ok(from), Ok(to)) = (to_disk(arch.1), to_disk(arch.0)) {
            match Gap::new(from, to) {
                Ok(rest) => {
                    if rest.euclidean_diameter() < cfg.resolution {
                        exhausted = false;
                        break;
                    }
                }
                Err(_) => {
                    exhausted = false;
                    break;
                }
            }
        }
    }
    let children: Vec<(Vec<IdealPolygon>, bool)> = subgaps
        .par_iter()
        .map(|(split_index, sub)| fill_square_gap(sub, &stream.split(*split_index), cfg))
        .collect();
    for (polys, child_exhausted) in children {
        polygons.extend(polys);
        exhausted |= child_exhausted;
    }
    (polygons, exhausted)
}

/// Sample the Markovian quadrangulation of the disk.
pub fn sample_disk_quadrangulation(
    seed: u64,
    resolution: f64,
    jump_cutoff: Option<f64>,
) -> Result<Tiling, TilingError> {
    if !(resolution > 0.0) {
        return Err(TilingError::BadResolution(resolution));
    }
    let cutoff = jump_cutoff.unwrap_or(resolution / 10.0);
    if !(cutoff > 0.0) {
        return Err(TilingError::BadJumpCutoff(cutoff));
    }
    let cfg = SquareFillConfig {
        resolution,
        accordion: AccordionConfig::new(cutoff),
    };
    let base = RandomStream::new(seed);
    let root = sample_p0_square(&mut base.split(0));
    let gaps: Vec<Gap> = (0..4)
        .map(|i| {
            Gap::new(root.apexes()[i], root.apexes()[(i + 1) % 4]).expect("root nondegenerate")
        })
        .collect();
    let results: Vec<(Vec<IdealPolygon>, bool)> = gaps
        .par_iter()
        .enumerate()
        .map(|(j, gap)| fill_square_gap(gap, &base.split(1 + j as u64), &cfg))
        .collect();
    let mut polygons = vec![root];
    let mut exhausted = false;
    for (polys, e) in results {
        polygons.extend(polys);
        exhausted |= e;
    }
    Ok(Tiling {
        polygons,
        kind: TilingKind::MarkovSquares,
        meta: TilingMeta {
            seed,
            resolution,
            jump_cutoff: cutoff,
            thin_p: None,
            budget_exhausted: exhausted,
            created_unix: crate::tiling::now_unix(),
        },
    })
}
