//! Geodesics, ideal polygons and gaps, with containment predicates.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::boundary::{canonical_angle, BoundaryPoint, Model};
use super::mobius::MobiusMap;
use super::GeomError;

/// Apexes closer than this (as disk angles) make a polygon degenerate.
pub const MIN_APEX_SEPARATION: f64 = 1e-12;

/// Hyperbolic line between two distinct boundary points.
#[derive(Clone, Copy, Debug)]
pub struct Geodesic {
    pub a: BoundaryPoint,
    pub b: BoundaryPoint,
}

/// Euclidean realization of a geodesic in its chart.
#[derive(Clone, Copy, Debug)]
pub enum GeodesicShape {
    /// Circular arc orthogonal to the boundary.
    Arc { center: Complex64, radius: f64 },
    /// Disk diameter through `dir` and `-dir`.
    Diameter { dir: Complex64 },
    /// Half-plane vertical line at `x`.
    Vertical { x: f64 },
}

impl Geodesic {
    pub fn new(a: BoundaryPoint, b: BoundaryPoint) -> Result<Self, GeomError> {
        if a.model() != b.model() {
            return Err(GeomError::ModelMismatch);
        }
        if super::boundary::angular_distance(a.angle(), b.angle()) < MIN_APEX_SEPARATION {
            return Err(GeomError::DegenerateApexes);
        }
        Ok(Geodesic { a, b })
    }

    pub fn model(&self) -> Model {
        self.a.model()
    }

    pub fn shape(&self) -> GeodesicShape {
        match self.model() {
            Model::Disk => {
                let u = self.a.complex().unwrap();
                let v = self.b.complex().unwrap();
                let denom = 1.0 + (u * v.conj()).re;
                if denom.abs() < 1e-12 {
                    GeodesicShape::Diameter { dir: u }
                } else {
                    // Center of the circle orthogonal to the unit circle
                    // through u and v.
                    let center = (u + v) / denom;
                    GeodesicShape::Arc {
                        center,
                        radius: (center.norm_sqr() - 1.0).max(0.0).sqrt(),
                    }
                }
            }
            Model::Halfplane => match (self.a.complex(), self.b.complex()) {
                (Some(u), Some(v)) => GeodesicShape::Arc {
                    center: (u + v) / 2.0,
                    radius: (u - v).norm() / 2.0,
                },
                (Some(u), None) | (None, Some(u)) => GeodesicShape::Vertical { x: u.re },
                (None, None) => unreachable!("endpoints are distinct"),
            },
        }
    }

    /// Signed side value of an interior chart point; points on the geodesic
    /// give zero, the two complementary components opposite signs.
    pub fn side_of(&self, z: Complex64) -> f64 {
        side_value(&self.shape(), z)
    }

    /// Signed side value of a boundary point of the same chart.
    pub fn side_of_boundary(&self, p: BoundaryPoint) -> f64 {
        match p.complex() {
            Some(z) => side_value(&self.shape(), z),
            // The half-plane point at infinity is outside every finite circle
            // and on no vertical line side in particular; treat verticals by
            // the sign of the unbounded end (irrelevant for our polygons,
            // where infinity is never opposite a vertical edge it belongs to).
            None => match self.shape() {
                GeodesicShape::Arc { .. } => 1.0,
                GeodesicShape::Vertical { .. } => 0.0,
                GeodesicShape::Diameter { .. } => 0.0,
            },
        }
    }
}

fn side_value(shape: &GeodesicShape, z: Complex64) -> f64 {
    match *shape {
        GeodesicShape::Arc { center, radius } => (z - center).norm_sqr() - radius * radius,
        GeodesicShape::Diameter { dir } => (dir.conj() * z).im,
        GeodesicShape::Vertical { x } => z.re - x,
    }
}

/// Ideal polygon (triangle or square) given by its boundary apexes in
/// anticlockwise order.
#[derive(Clone, Debug)]
pub struct IdealPolygon {
    apexes: Vec<BoundaryPoint>,
    model: Model,
}

impl IdealPolygon {
    pub fn new(apexes: Vec<BoundaryPoint>) -> Result<Self, GeomError> {
        let n = apexes.len();
        if !(3..=4).contains(&n) {
            return Err(GeomError::ApexCount(n));
        }
        let model = apexes[0].model();
        if apexes.iter().any(|p| p.model() != model) {
            return Err(GeomError::ModelMismatch);
        }
        let angles: Vec<f64> = apexes.iter().map(|p| p.angle()).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if super::boundary::angular_distance(angles[i], angles[j]) <= MIN_APEX_SEPARATION {
                    return Err(GeomError::DegenerateApexes);
                }
            }
        }
        // Sum of forward cyclic gaps is one full turn iff the apexes are in
        // anticlockwise cyclic order.
        let mut total = 0.0;
        for i in 0..n {
            total += canonical_angle(angles[(i + 1) % n] - angles[i]);
        }
        if total > 1.5 * TAU {
            return Err(GeomError::Orientation);
        }
        Ok(IdealPolygon { apexes, model })
    }

    pub fn triangle(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> Result<Self, GeomError> {
        IdealPolygon::new(vec![a, b, c])
    }

    pub fn apexes(&self) -> &[BoundaryPoint] {
        &self.apexes
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn sides(&self) -> impl Iterator<Item = Geodesic> + '_ {
        let n = self.apexes.len();
        (0..n).map(move |i| Geodesic {
            a: self.apexes[i],
            b: self.apexes[(i + 1) % n],
        })
    }

    /// Strict interior containment of a chart point. Points on an edge
    /// geodesic return false.
    pub fn contains(&self, z: Complex64) -> bool {
        let n = self.apexes.len();
        for i in 0..n {
            let edge = Geodesic {
                a: self.apexes[i],
                b: self.apexes[(i + 1) % n],
            };
            // The interior lies on the same side of every edge as the apex
            // opposite to it.
            let reference = edge.side_of_boundary(self.apexes[(i + 2) % n]);
            let side = edge.side_of(z);
            if side == 0.0 || side.signum() != reference.signum() {
                return false;
            }
        }
        true
    }

    /// Euclidean diameter of the polygon's closure in its chart. The region
    /// lies in the Euclidean convex hull of the apexes, so the diameter is
    /// the largest pairwise apex distance (infinite if an apex is at
    /// infinity).
    pub fn euclidean_diameter(&self) -> f64 {
        let pts: Vec<Option<Complex64>> = self.apexes.iter().map(|p| p.complex()).collect();
        let mut max = 0.0f64;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                match (pts[i], pts[j]) {
                    (Some(a), Some(b)) => max = max.max((a - b).norm()),
                    _ => return f64::INFINITY,
                }
            }
        }
        max
    }

    pub fn apply(&self, map: &MobiusMap) -> Result<IdealPolygon, GeomError> {
        let apexes = self
            .apexes
            .iter()
            .map(|p| map.apply_boundary(*p))
            .collect::<Result<Vec<_>, _>>()?;
        IdealPolygon::new(apexes)
    }

    pub fn to_model(&self, model: Model) -> Result<IdealPolygon, GeomError> {
        if model == self.model {
            return Ok(self.clone());
        }
        IdealPolygon::new(self.apexes.iter().map(|p| p.to_model(model)).collect())
    }
}

/// Harmonic measure at a disk interior point `z` of the anticlockwise
/// boundary arc from angle `start` spanning `width` radians (`width` may be
/// `2*pi` for the full circle).
pub fn harmonic_measure(z: Complex64, start: f64, width: f64) -> f64 {
    debug_assert!(z.norm() < 1.0);
    debug_assert!((0.0..=TAU).contains(&width));
    if width >= TAU {
        return 1.0;
    }
    if width == 0.0 {
        return 0.0;
    }
    // Normalized angular length of the image arc under the map centering z.
    let phi = MobiusMap::disk_automorphism(z, 0.0);
    let a = phi
        .apply_boundary(BoundaryPoint::disk(start))
        .expect("disk point")
        .angle();
    let b = phi
        .apply_boundary(BoundaryPoint::disk(start + width))
        .expect("disk point")
        .angle();
    canonical_angle(b - a) / TAU
}

/// Harmonic measures at `z` of a disk polygon's sides (the boundary arcs
/// between consecutive apexes), in side order. They sum to one.
pub fn harmonic_measures_at(z: Complex64, poly: &IdealPolygon) -> Vec<f64> {
    debug_assert_eq!(poly.model(), Model::Disk);
    let n = poly.apexes().len();
    (0..n)
        .map(|i| {
            let a = poly.apexes()[i].angle();
            let b = poly.apexes()[(i + 1) % n].angle();
            harmonic_measure(z, a, canonical_angle(b - a))
        })
        .collect()
}

/// One connected component of the complement of a partial tiling: bounded by
/// the geodesic `(from, to)` and the boundary arc traversed anticlockwise
/// from `from` to `to`.
#[derive(Clone, Copy, Debug)]
pub struct Gap {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
}

impl Gap {
    pub fn new(from: BoundaryPoint, to: BoundaryPoint) -> Result<Self, GeomError> {
        Geodesic::new(from, to)?;
        Ok(Gap { from, to })
    }

    pub fn model(&self) -> Model {
        self.from.model()
    }

    pub fn arch(&self) -> Geodesic {
        Geodesic {
            a: self.from,
            b: self.to,
        }
    }

    /// A boundary point strictly inside the gap's boundary arc.
    pub fn arc_midpoint(&self) -> BoundaryPoint {
        match self.model() {
            Model::Disk => {
                let a = self.from.angle();
                let width = canonical_angle(self.to.angle() - a);
                BoundaryPoint::disk(a + width / 2.0)
            }
            Model::Halfplane => {
                let (f, t) = (self.from.value(), self.to.value());
                if f.is_infinite() || t.is_infinite() || f > t {
                    // The anticlockwise arc passes through infinity (or
                    // starts/ends there); convert through the disk chart.
                    let d = Gap {
                        from: self.from.to_model(Model::Disk),
                        to: self.to.to_model(Model::Disk),
                    };
                    d.arc_midpoint().to_model(Model::Halfplane)
                } else {
                    BoundaryPoint::halfplane((f + t) / 2.0)
                }
            }
        }
    }

    /// Strict containment of an interior chart point.
    pub fn contains(&self, z: Complex64) -> bool {
        let arch = self.arch();
        let reference = arch.side_of_boundary(self.arc_midpoint());
        let side = arch.side_of(z);
        side != 0.0 && side.signum() == reference.signum()
    }

    /// Cheap upper bound for the Euclidean diameter of the gap's closure in
    /// the disk: distance between the arch feet plus the sagitta of the
    /// boundary arc.
    pub fn euclidean_diameter(&self) -> f64 {
        let (from, to) = match self.model() {
            Model::Disk => (self.from, self.to),
            Model::Halfplane => (
                self.from.to_model(Model::Disk),
                self.to.to_model(Model::Disk),
            ),
        };
        let width = canonical_angle(to.angle() - from.angle());
        2.0 * (width / 2.0).sin() + (1.0 - (width / 2.0).cos())
    }
}

/// The unique conformal map sending a gap onto the half-plane region
/// `{z : Im z > 0, |z| > 1}` with `from -> 1`, `to -> -1`, and unit
/// derivative modulus at `from` (measured in the source chart and the
/// half-plane chart).
pub fn gap_normalizer(gap: &Gap) -> Result<MobiusMap, GeomError> {
    let one = BoundaryPoint::halfplane(1.0);
    let minus_one = BoundaryPoint::halfplane(-1.0);
    let mid = gap.arc_midpoint();
    // (from, mid, to) is anticlockwise, and so is (1, infinity, -1) on the
    // half-plane boundary; the gap's boundary arc goes to the two infinite
    // rays, hence the gap interior to the region above the unit semicircle.
    let base = MobiusMap::from_triples(
        [gap.from, mid, gap.to],
        [one, BoundaryPoint::infinity(), minus_one],
    )?;
    let lambda = base.boundary_derivative_modulus(gap.from)?;
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(GeomError::DegenerateApexes);
    }
    MobiusMap::halfplane_fixing_pm1(lambda).compose(&base)
}
