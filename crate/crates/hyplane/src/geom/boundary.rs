//! Boundary points of the two charts of the hyperbolic plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Chart of the hyperbolic plane a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Poincare unit disk; boundary points are angles in `[0, 2*pi)`.
    Disk,
    /// Upper half-plane; boundary points are extended reals, with
    /// `f64::INFINITY` as the single point at infinity.
    Halfplane,
}

/// A point of the ideal boundary (`|z| = 1` in the disk, the extended real
/// line in the half-plane).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Disk(f64),
    Halfplane(f64),
}

/// Reduce an angle to `[0, 2*pi)`. Idempotent on canonical input.
pub fn canonical_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    // rem_euclid can return TAU when theta is a tiny negative number.
    if t >= TAU {
        t -= TAU;
    }
    t
}

/// Cyclic distance between two angles, in `[0, pi]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

impl BoundaryPoint {
    pub fn disk(angle: f64) -> Self {
        debug_assert!(angle.is_finite());
        BoundaryPoint::Disk(canonical_angle(angle))
    }

    pub fn halfplane(x: f64) -> Self {
        debug_assert!(!x.is_nan());
        // The two signed infinities are the same boundary point.
        BoundaryPoint::Halfplane(if x.is_infinite() { f64::INFINITY } else { x })
    }

    pub fn infinity() -> Self {
        BoundaryPoint::Halfplane(f64::INFINITY)
    }

    pub fn model(&self) -> Model {
        match self {
            BoundaryPoint::Disk(_) => Model::Disk,
            BoundaryPoint::Halfplane(_) => Model::Halfplane,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Halfplane(x) if x.is_infinite())
    }

    /// The angle of the corresponding disk boundary point, converting through
    /// the Cayley map when necessary.
    pub fn angle(&self) -> f64 {
        match *self {
            BoundaryPoint::Disk(theta) => theta,
            BoundaryPoint::Halfplane(x) => {
                if x.is_infinite() {
                    0.0
                } else {
                    // arg((x - i)/(x + i)) = atan2(-2x, x^2 - 1)
                    canonical_angle((-2.0 * x).atan2(x * x - 1.0))
                }
            }
        }
    }

    /// Convert to the requested chart through the Cayley identification.
    pub fn to_model(&self, model: Model) -> BoundaryPoint {
        match (self, model) {
            (BoundaryPoint::Disk(_), Model::Disk) => *self,
            (BoundaryPoint::Halfplane(_), Model::Halfplane) => *self,
            (BoundaryPoint::Halfplane(_), Model::Disk) => BoundaryPoint::Disk(self.angle()),
            (BoundaryPoint::Disk(theta), Model::Halfplane) => {
                let t = (theta / 2.0).tan();
                if t == 0.0 {
                    BoundaryPoint::infinity()
                } else {
                    BoundaryPoint::halfplane(-1.0 / t)
                }
            }
        }
    }

    /// Homogeneous coordinates `(z : w)` in the chart's complex plane.
    pub fn proj(&self) -> (Complex64, Complex64) {
        match *self {
            BoundaryPoint::Disk(theta) => (Complex64::from_polar(1.0, theta), Complex64::ONE),
            BoundaryPoint::Halfplane(x) => {
                if x.is_infinite() {
                    (Complex64::ONE, Complex64::ZERO)
                } else {
                    (Complex64::new(x, 0.0), Complex64::ONE)
                }
            }
        }
    }

    /// Finite chart coordinate; `None` for the half-plane point at infinity.
    pub fn complex(&self) -> Option<Complex64> {
        match *self {
            BoundaryPoint::Disk(theta) => Some(Complex64::from_polar(1.0, theta)),
            BoundaryPoint::Halfplane(x) => {
                if x.is_infinite() {
                    None
                } else {
                    Some(Complex64::new(x, 0.0))
                }
            }
        }
    }

    /// Half-plane coordinate as an extended real.
    pub fn value(&self) -> f64 {
        match self.to_model(Model::Halfplane) {
            BoundaryPoint::Halfplane(x) => x,
            BoundaryPoint::Disk(_) => unreachable!(),
        }
    }
}

/// Convert an interior point between charts through the Cayley map.
pub fn interior_to_model(z: Complex64, from: Model, to: Model) -> Complex64 {
    match (from, to) {
        (Model::Disk, Model::Disk) | (Model::Halfplane, Model::Halfplane) => z,
        (Model::Disk, Model::Halfplane) => {
            // psi(w) = i (1 + w) / (1 - w)
            Complex64::i() * (1.0 + z) / (1.0 - z)
        }
        (Model::Halfplane, Model::Disk) => (z - Complex64::i()) / (z + Complex64::i()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn canonicalization_is_idempotent() {
        for theta in [-7.3, -0.0, 0.0, 1.0, TAU, TAU + 0.5, 123.456] {
            let once = canonical_angle(theta);
            assert!((0.0..TAU).contains(&once), "{theta} -> {once}");
            assert_eq!(once, canonical_angle(once));
        }
    }

    #[test]
    fn cayley_pins() {
        // Half-plane i maps to the disk origin, infinity to the disk point 1.
        let z = interior_to_model(Complex64::i(), Model::Halfplane, Model::Disk);
        assert_abs_diff_eq!(z.norm(), 0.0, epsilon = 1e-15);
        assert_eq!(BoundaryPoint::infinity().angle(), 0.0);
        // Disk point -1 maps to half-plane 0, i to -1.
        assert_abs_diff_eq!(BoundaryPoint::disk(PI).value(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            BoundaryPoint::disk(PI / 2.0).value(),
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn model_round_trip_within_tolerance() {
        for k in 0..360 {
            let theta = k as f64 * TAU / 360.0;
            let p = BoundaryPoint::disk(theta);
            let back = p.to_model(Model::Halfplane).to_model(Model::Disk);
            assert!(
                angular_distance(back.angle(), theta) < 1e-12,
                "theta {theta}: round trip {}",
                back.angle()
            );
        }
        // The guaranteed round-trip tolerance is angular: huge half-plane
        // coordinates crowd together near the disk angle 0, so compare
        // angles, not coordinates.
        for x in [-1e6, -3.0, -1.0, -1e-8, 0.0, 0.5, 1.0, 42.0, 1e9] {
            let p = BoundaryPoint::halfplane(x);
            let back = p.to_model(Model::Disk).to_model(Model::Halfplane);
            assert!(
                angular_distance(back.angle(), p.angle()) < 1e-12,
                "x {x} -> {}",
                back.value()
            );
        }
    }

    #[test]
    fn negative_infinity_canonicalizes() {
        let p = BoundaryPoint::halfplane(f64::NEG_INFINITY);
        assert!(p.is_infinite());
        assert_eq!(p.value(), f64::INFINITY);
    }

    #[test]
    fn anticlockwise_matches_increasing_reals() {
        // Increasing half-plane coordinate means increasing disk angle.
        let xs = [-5.0, -1.0, 0.0, 1.0, 5.0];
        let mut prev = BoundaryPoint::halfplane(xs[0]).angle();
        for &x in &xs[1..] {
            let a = BoundaryPoint::halfplane(x).angle();
            assert!(a > prev, "angle not increasing at {x}");
            prev = a;
        }
    }
}
