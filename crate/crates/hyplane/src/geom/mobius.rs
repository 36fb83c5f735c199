//! Fractional-linear maps between the disk and half-plane charts.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::boundary::{canonical_angle, BoundaryPoint, Model};
use super::GeomError;

/// Determinants below this are treated as degenerate.
pub const DEGENERATE_DET: f64 = 1e-14;

/// `z -> (a z + b) / (c z + d)` read in the domain chart, producing a value
/// in the codomain chart. Maps between different charts (the Cayley map and
/// its conjugates) carry distinct domain/codomain tags; self-maps of one
/// model carry equal tags.
#[derive(Clone, Copy, Debug)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    domain: Model,
    codomain: Model,
}

impl MobiusMap {
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        domain: Model,
        codomain: Model,
    ) -> Result<Self, GeomError> {
        let det = a * d - b * c;
        if det.norm() < DEGENERATE_DET {
            return Err(GeomError::DegenerateMap);
        }
        // Normalize det to 1 (up to sign) to limit drift across compositions.
        let s = det.sqrt();
        Ok(MobiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
            domain,
            codomain,
        })
    }

    pub fn identity(model: Model) -> Self {
        MobiusMap {
            a: Complex64::ONE,
            b: Complex64::ZERO,
            c: Complex64::ZERO,
            d: Complex64::ONE,
            domain: model,
            codomain: model,
        }
    }

    /// The Cayley identification of the half-plane with the disk,
    /// `z -> (z - i)/(z + i)`; sends `i -> 0` and `infinity -> 1`.
    pub fn cayley_to_disk() -> Self {
        MobiusMap::new(
            Complex64::ONE,
            -Complex64::i(),
            Complex64::ONE,
            Complex64::i(),
            Model::Halfplane,
            Model::Disk,
        )
        .expect("cayley map is invertible")
    }

    /// Inverse Cayley map, `w -> i (1 + w)/(1 - w)`.
    pub fn cayley_to_halfplane() -> Self {
        MobiusMap::new(
            Complex64::i(),
            Complex64::i(),
            -Complex64::ONE,
            Complex64::ONE,
            Model::Disk,
            Model::Halfplane,
        )
        .expect("cayley map is invertible")
    }

    /// Disk automorphism `z -> e^{i theta} (z - z0) / (conj(z0) z - 1)`;
    /// sends `z0` to the origin.
    pub fn disk_automorphism(z0: Complex64, theta: f64) -> Self {
        let rot = Complex64::from_polar(1.0, theta);
        MobiusMap::new(
            rot,
            -rot * z0,
            z0.conj(),
            -Complex64::ONE,
            Model::Disk,
            Model::Disk,
        )
        .expect("|z0| < 1 gives an invertible matrix")
    }

    /// Half-plane self-map fixing -1 and 1 with multiplier `m > 0` measured
    /// along the geodesic; derivative at 1 is `1/m`, at -1 it is `m`.
    pub fn halfplane_fixing_pm1(m: f64) -> Self {
        MobiusMap::new(
            Complex64::new(m + 1.0, 0.0),
            Complex64::new(m - 1.0, 0.0),
            Complex64::new(m - 1.0, 0.0),
            Complex64::new(m + 1.0, 0.0),
            Model::Halfplane,
            Model::Halfplane,
        )
        .expect("m > 0 gives determinant 4m")
    }

    pub fn domain(&self) -> Model {
        self.domain
    }

    pub fn codomain(&self) -> Model {
        self.codomain
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &MobiusMap) -> Result<MobiusMap, GeomError> {
        if other.codomain != self.domain {
            return Err(GeomError::ModelMismatch);
        }
        MobiusMap::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            other.domain,
            self.codomain,
        )
    }

    pub fn inverse(&self) -> MobiusMap {
        // (d, -b; -c, a) inverts a det-1 matrix.
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            domain: self.codomain,
            codomain: self.domain,
        }
    }

    /// Image of an interior point of the domain chart.
    pub fn apply_interior(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Image of a boundary point. Infinity is first-class on the half-plane
    /// side; the map is applied projectively.
    pub fn apply_boundary(&self, p: BoundaryPoint) -> Result<BoundaryPoint, GeomError> {
        if p.model() != self.domain {
            return Err(GeomError::ModelMismatch);
        }
        let (z, w) = p.proj();
        let num = self.a * z + self.b * w;
        let den = self.c * z + self.d * w;
        Ok(match self.codomain {
            Model::Disk => BoundaryPoint::disk((num / den).arg()),
            Model::Halfplane => {
                if den.norm() * 1e13 <= num.norm() {
                    BoundaryPoint::infinity()
                } else {
                    BoundaryPoint::halfplane((num / den).re)
                }
            }
        })
    }

    /// Modulus of the complex derivative at a finite boundary point, read in
    /// the domain and codomain charts.
    pub fn boundary_derivative_modulus(&self, p: BoundaryPoint) -> Result<f64, GeomError> {
        if p.model() != self.domain {
            return Err(GeomError::ModelMismatch);
        }
        let z = p.complex().ok_or(GeomError::InfiniteDerivativeChart)?;
        // det is normalized to 1, so |phi'(z)| = 1 / |c z + d|^2.
        let den = self.c * z + self.d;
        Ok(1.0 / den.norm_sqr())
    }

    /// The unique orientation-preserving map sending one anticlockwise triple
    /// of boundary points onto another.
    pub fn from_triples(
        src: [BoundaryPoint; 3],
        dst: [BoundaryPoint; 3],
    ) -> Result<MobiusMap, GeomError> {
        let m_src = triple_to_standard(&src)?;
        let m_dst = triple_to_standard(&dst)?;
        let dst_model = dst[0].model();
        let src_model = src[0].model();
        // m_dst^{-1} composed with m_src, with the standard triple (0, 1, infinity) in
        // the middle.
        let inv = (m_dst[3], -m_dst[1], -m_dst[2], m_dst[0]);
        MobiusMap::new(
            inv.0 * m_src[0] + inv.1 * m_src[2],
            inv.0 * m_src[1] + inv.1 * m_src[3],
            inv.2 * m_src[0] + inv.3 * m_src[2],
            inv.2 * m_src[1] + inv.3 * m_src[3],
            src_model,
            dst_model,
        )
    }
}

/// Cross-ratio `((a-c)(b-d)) / ((a-d)(b-c))` of four boundary points of one
/// chart, computed projectively so the half-plane point at infinity is
/// handled exactly. Invariant under every Mobius map.
pub fn cross_ratio(
    a: BoundaryPoint,
    b: BoundaryPoint,
    c: BoundaryPoint,
    d: BoundaryPoint,
) -> Complex64 {
    let (za, wa) = a.proj();
    let (zb, wb) = b.proj();
    let (zc, wc) = c.proj();
    let (zd, wd) = d.proj();
    let pair = |z1: Complex64, w1: Complex64, z2: Complex64, w2: Complex64| z1 * w2 - z2 * w1;
    (pair(za, wa, zc, wc) * pair(zb, wb, zd, wd)) / (pair(za, wa, zd, wd) * pair(zb, wb, zc, wc))
}

/// Check that three boundary angles are in anticlockwise cyclic order and
/// pairwise separated.
fn check_anticlockwise(points: &[BoundaryPoint; 3]) -> Result<(), GeomError> {
    let angs: Vec<f64> = points.iter().map(|p| p.angle()).collect();
    let mut total = 0.0;
    for i in 0..3 {
        let gap = canonical_angle(angs[(i + 1) % 3] - angs[i]);
        if gap < 1e-12 || gap > TAU - 1e-12 {
            return Err(GeomError::DegenerateApexes);
        }
        total += gap;
    }
    // One full turn for anticlockwise triples, two for clockwise ones.
    if total > 1.5 * TAU {
        return Err(GeomError::Orientation);
    }
    Ok(())
}

/// Matrix of the map sending `(p, q, r)` to `(0, 1, infinity)`, as
/// `[a, b, c, d]`.
fn triple_to_standard(points: &[BoundaryPoint; 3]) -> Result<[Complex64; 4], GeomError> {
    let model = points[0].model();
    if points.iter().any(|p| p.model() != model) {
        return Err(GeomError::ModelMismatch);
    }
    check_anticlockwise(points)?;
    let [p, q, r] = [points[0], points[1], points[2]];
    let one = Complex64::ONE;
    Ok(match (p.complex(), q.complex(), r.complex()) {
        (Some(p), Some(q), Some(r)) => [q - r, -p * (q - r), q - p, -r * (q - p)],
        (None, Some(q), Some(r)) => [Complex64::ZERO, q - r, one, -r],
        (Some(p), None, Some(r)) => [one, -p, one, -r],
        (Some(p), Some(q), None) => [one, -p, Complex64::ZERO, q - p],
        _ => return Err(GeomError::DegenerateApexes),
    })
}
