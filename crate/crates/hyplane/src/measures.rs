//! Exact samplers and density evaluators for the measures driving the
//! construction: the hyperbolic area measure, the invariant measure on ideal
//! triangles restricted to those containing a point, the jump intensity on
//! the boundary, its interval conjugates, and the two-sided arch measure.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;
use thiserror::Error;

use crate::geom::{BoundaryPoint, GeomError, IdealPolygon, MobiusMap};
use crate::rng::RandomStream;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("cutoff {0} leaves infinite mass; it must exceed 1")]
    InfiniteMass(f64),
    #[error("truncated support is empty (eps = {0})")]
    EmptySupport(f64),
    #[error("interval requires u < v, got ({0}, {1})")]
    BadInterval(f64, f64),
    #[error("triple is not in arch form (u < v with w outside [u, v])")]
    NotArchForm,
    #[error("coincident arguments")]
    Coincident,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Side selector for the interval measures: supported inside `[u, v]` or on
/// its complement through infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentSide {
    Inside,
    Outside,
}

// ---------------------------------------------------------------------------
// Hyperbolic area sampling in the standard ideal triangle.
// ---------------------------------------------------------------------------

fn standard_triangle_chart() -> &'static MobiusMap {
    static MAP: OnceLock<MobiusMap> = OnceLock::new();
    MAP.get_or_init(|| {
        MobiusMap::from_triples(
            [
                BoundaryPoint::halfplane(0.0),
                BoundaryPoint::halfplane(1.0),
                BoundaryPoint::infinity(),
            ],
            [
                BoundaryPoint::disk(0.0),
                BoundaryPoint::disk(TAU / 3.0),
                BoundaryPoint::disk(2.0 * TAU / 3.0),
            ],
        )
        .expect("fixed nondegenerate triples")
    })
}

/// The standard ideal triangle with apexes at the cube roots of unity.
pub fn standard_triangle() -> IdealPolygon {
    IdealPolygon::new(vec![
        BoundaryPoint::disk(0.0),
        BoundaryPoint::disk(TAU / 3.0),
        BoundaryPoint::disk(2.0 * TAU / 3.0),
    ])
    .expect("fixed nondegenerate triple")
}

/// Point of the half-plane triangle (0, 1, infinity) distributed according to
/// the hyperbolic area measure restricted to it (total mass one).
///
/// The first coordinate has the arcsine law: above the unit semicircle the
/// area element `dx dy / (pi y^2)` integrates in `y` to
/// `1 / (pi sqrt(x (1 - x)))`. Conditioned on `x`, `1/y` is uniform on
/// `(0, 1/sqrt(x(1-x))]`.
pub fn sample_mu_halfplane_triangle(rng: &mut RandomStream) -> Complex64 {
    let x = 0.5 * (1.0 - (PI * rng.uniform()).cos());
    let floor = (x * (1.0 - x)).sqrt();
    let y = floor / rng.uniform_open();
    Complex64::new(x, y)
}

/// Point of the disk distributed as the hyperbolic area measure restricted to
/// the standard ideal triangle.
pub fn sample_mu_standard_triangle(rng: &mut RandomStream) -> Complex64 {
    let w = sample_mu_halfplane_triangle(rng);
    standard_triangle_chart().apply_interior(w)
}

/// Marked ideal triangle containing the origin, distributed as the invariant
/// triangle measure restricted to such triangles (a probability measure).
///
/// Sample a hyperbolic-area point `z0` of the standard triangle and a uniform
/// rotation, then push the standard triangle through the automorphism sending
/// `z0` to the origin: the image contains 0 exactly when `z0` was inside the
/// standard triangle.
pub fn sample_p0(rng: &mut RandomStream) -> IdealPolygon {
    let z0 = sample_mu_standard_triangle(rng);
    let theta = rng.uniform_in(0.0, TAU);
    let phi = MobiusMap::disk_automorphism(z0, theta);
    standard_triangle()
        .apply(&phi)
        .expect("automorphism preserves nondegeneracy")
}

// ---------------------------------------------------------------------------
// The jump intensity on the boundary and its conjugates.
// ---------------------------------------------------------------------------

/// Density `2 / (x^2 - 1)` on `|x| > 1`, zero elsewhere.
pub fn zeta_density(x: f64) -> f64 {
    if x.abs() > 1.0 {
        2.0 / (x * x - 1.0)
    } else {
        0.0
    }
}

/// Total mass of the jump intensity outside `[-x0, x0]`:
/// `2 ln((x0 + 1)/(x0 - 1))`.
pub fn zeta_tail_mass(x0: f64) -> Result<f64, MeasureError> {
    if x0 <= 1.0 {
        return Err(MeasureError::InfiniteMass(x0));
    }
    Ok(2.0 * ((x0 + 1.0) / (x0 - 1.0)).ln())
}

/// Exact sample of the jump intensity restricted to `|x| > x0`, normalized.
/// Sign by fair coin (the measure is symmetric), magnitude by inverse CDF.
pub fn sample_zeta(rng: &mut RandomStream, x0: f64) -> Result<f64, MeasureError> {
    if x0 <= 1.0 {
        return Err(MeasureError::InfiniteMass(x0));
    }
    let sign = if rng.coin() { 1.0 } else { -1.0 };
    Ok(sign * zeta_magnitude(rng.uniform(), x0))
}

/// Inverse CDF of the magnitude: `u = 1` returns the cutoff itself, `u = 0`
/// escapes to infinity.
pub fn zeta_magnitude(u: f64, x0: f64) -> f64 {
    let s = u * ((x0 + 1.0) / (x0 - 1.0)).ln();
    let e = s.exp();
    (e + 1.0) / (e - 1.0)
}

/// Density of the interval measure with parameters `u < v` at `w`:
/// `(v-u)/((v-w)(w-u))` inside `[u, v]`, `(v-u)/((w-v)(w-u))` outside.
pub fn zeta_interval_density(u: f64, v: f64, side: SegmentSide, w: f64) -> f64 {
    if u >= v {
        return 0.0;
    }
    match side {
        SegmentSide::Inside => {
            if w > u && w < v {
                (v - u) / ((v - w) * (w - u))
            } else {
                0.0
            }
        }
        SegmentSide::Outside => {
            if w < u || w > v {
                (v - u) / ((w - v) * (w - u))
            } else {
                0.0
            }
        }
    }
}

/// Logarithmic coordinate in which the interval measure is flat: the measure
/// of a parameter interval is the difference of this function at its ends.
/// Inside: `ln((w-u)/(v-w))` on `(u, v)`; outside: `ln((w-v)/(w-u))` on the
/// complement, increasing from the `v` end through infinity to the `u` end.
pub fn zeta_interval_log_coord(u: f64, v: f64, side: SegmentSide, w: f64) -> f64 {
    match side {
        SegmentSide::Inside => ((w - u) / (v - w)).ln(),
        SegmentSide::Outside => ((w - v) / (w - u)).ln(),
    }
}

/// Mass of `(a, b)` under the inside interval measure (requires
/// `u < a < b < v`).
pub fn zeta_interval_mass(u: f64, v: f64, a: f64, b: f64) -> f64 {
    zeta_interval_log_coord(u, v, SegmentSide::Inside, b)
        - zeta_interval_log_coord(u, v, SegmentSide::Inside, a)
}

/// The canonical conjugating map carrying the reference measure `dx/x` on
/// the positive axis onto the interval measure: inside sends
/// `(0, infinity) -> (u, v)`, outside sends it onto the complement.
pub fn zeta_interval_chart(u: f64, v: f64, side: SegmentSide, x: f64) -> f64 {
    match side {
        SegmentSide::Inside => (v * x + u) / (x + 1.0),
        SegmentSide::Outside => (u * x - v) / (x - 1.0),
    }
}

/// Sample the interval measure truncated in the conjugated `dx/x` coordinate
/// to `x` in `[eps, 1/eps]` and normalized. Truncating in this coordinate
/// keeps the truncated laws for different arches exact images of each other.
pub fn sample_zeta_interval(
    rng: &mut RandomStream,
    u: f64,
    v: f64,
    side: SegmentSide,
    eps: f64,
) -> Result<f64, MeasureError> {
    if u >= v {
        return Err(MeasureError::BadInterval(u, v));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(MeasureError::EmptySupport(eps));
    }
    let t = rng.uniform_in(eps.ln(), -eps.ln());
    Ok(zeta_interval_chart(u, v, side, t.exp()))
}

// ---------------------------------------------------------------------------
// Arch measure and the triangle density identity.
// ---------------------------------------------------------------------------

/// Unified density evaluator over the measure family used by the
/// construction. Each variant's density is nonnegative on its declared
/// support and zero off it; the 1-D segment masses have closed forms checked
/// against quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IntervalMeasure {
    /// Jump intensity `2 dx/(x^2 - 1)` on `|x| > 1`.
    Zeta,
    /// Interval measure supported inside `[u, v]`.
    ZetaInterval { u: f64, v: f64 },
    /// Interval measure supported on the complement of `[u, v]`.
    ZetaComplement { u: f64, v: f64 },
    /// Two-sided arch measure `du dv/(v-u)^2` on `{u < 0 < v}` (first
    /// coordinate of `density2` is `u`).
    Pi,
}

impl IntervalMeasure {
    /// Density of the 1-D members at `w`; zero for the 2-D arch measure.
    pub fn density(&self, w: f64) -> f64 {
        match *self {
            IntervalMeasure::Zeta => zeta_density(w),
            IntervalMeasure::ZetaInterval { u, v } => {
                zeta_interval_density(u, v, SegmentSide::Inside, w)
            }
            IntervalMeasure::ZetaComplement { u, v } => {
                zeta_interval_density(u, v, SegmentSide::Outside, w)
            }
            IntervalMeasure::Pi => 0.0,
        }
    }

    /// Density of the arch measure at `(u, v)`; zero for the 1-D members.
    pub fn density2(&self, u: f64, v: f64) -> f64 {
        match self {
            IntervalMeasure::Pi => pi_density(u, v),
            _ => 0.0,
        }
    }

    /// Closed-form mass of the parameter interval `(a, b)` within the
    /// support (for the two-sided jump intensity, of `(a, b)` on one side
    /// with `1 < a < b`).
    pub fn segment_mass(&self, a: f64, b: f64) -> Option<f64> {
        match *self {
            IntervalMeasure::Zeta => {
                (a > 1.0 && b > a).then(|| {
                    ((a + 1.0) / (a - 1.0)).ln() - ((b + 1.0) / (b - 1.0)).ln()
                })
            }
            IntervalMeasure::ZetaInterval { u, v } => {
                (u < a && a < b && b < v).then(|| zeta_interval_mass(u, v, a, b))
            }
            IntervalMeasure::ZetaComplement { u, v } => (a < b && (b < u || a > v)).then(|| {
                zeta_interval_log_coord(u, v, SegmentSide::Outside, b)
                    - zeta_interval_log_coord(u, v, SegmentSide::Outside, a)
            }),
            IntervalMeasure::Pi => None,
        }
    }
}

/// Density `1/(v-u)^2` of the two-sided arch measure on `{u < 0 < v}`.
pub fn pi_density(u: f64, v: f64) -> f64 {
    if u < 0.0 && v > 0.0 {
        1.0 / ((v - u) * (v - u))
    } else {
        0.0
    }
}

/// Invariant triangle density at an anticlockwise boundary triple, together
/// with the factorization residual
/// `|pi(u,v) * outside-interval(w) - 1/((w-v)(v-u)(w-u))|`, which vanishes
/// identically on arch-form triples (`u < v`, `w` outside `[u, v]`).
pub fn triple_density_and_duality(u: f64, v: f64, w: f64) -> Result<(f64, f64), MeasureError> {
    if u == v || v == w || w == u {
        return Err(MeasureError::Coincident);
    }
    if !anticlockwise_reals(u, v, w) {
        return Err(MeasureError::Geom(GeomError::Orientation));
    }
    let density =
        1.0 / (PI * PI) / ((u - v).abs() * (v - w).abs() * (w - u).abs());
    if u >= v || (w > u && w < v) {
        return Err(MeasureError::NotArchForm);
    }
    let factored = pi_density_unrestricted(u, v) * zeta_interval_density(u, v, SegmentSide::Outside, w);
    let direct = 1.0 / ((w - v) * (v - u) * (w - u));
    Ok((density, (factored - direct).abs()))
}

// The arch measure density without the `u < 0 < v` support restriction; the
// factorization identity is algebraic in (u, v, w).
fn pi_density_unrestricted(u: f64, v: f64) -> f64 {
    1.0 / ((v - u) * (v - u))
}

fn anticlockwise_reals(u: f64, v: f64, w: f64) -> bool {
    (u < v && v < w) || (v < w && w < u) || (w < u && u < v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Adaptive Simpson quadrature, used as an independent oracle for the
    /// closed-form masses.
    pub(crate) fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn rec(
            f: &impl Fn(f64) -> f64,
            a: f64,
            b: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let left = simpson(f, a, m);
            let right = simpson(f, m, b);
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol / 2.0, depth - 1)
                    + rec(f, m, b, right, tol / 2.0, depth - 1)
            }
        }
        rec(f, a, b, simpson(f, a, b), tol, 48)
    }

    #[test]
    fn tail_mass_matches_quadrature() {
        for x0 in [1.5, 2.0, 3.0, 10.0] {
            // One-sided tail via the substitution x = 1/t on (0, 1/x0].
            let oracle = 2.0
                * adaptive_simpson(
                    &|t: f64| 2.0 / (1.0 - t * t),
                    0.0,
                    1.0 / x0,
                    1e-12,
                );
            assert_abs_diff_eq!(zeta_tail_mass(x0).unwrap(), oracle, epsilon = 1e-8);
        }
        // Frozen value: both sides beyond 3 carry mass 2 ln 2.
        assert_abs_diff_eq!(
            zeta_tail_mass(3.0).unwrap(),
            2.0 * 2.0f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn tail_mass_rejects_unit_cutoff() {
        assert!(matches!(
            zeta_tail_mass(1.0),
            Err(MeasureError::InfiniteMass(_))
        ));
    }

    #[test]
    fn inverse_cdf_endpoints() {
        assert_abs_diff_eq!(zeta_magnitude(1.0, 3.0), 3.0, epsilon = 1e-12);
        // Closed-form inversion at the median of the one-sided tail,
        // cross-checked with the quadrature root below.
        let x = zeta_magnitude(0.5, 3.0);
        assert_abs_diff_eq!(x, 3.0 + 2.0 * 2.0f64.sqrt(), epsilon = 1e-12);
        let half_mass = ((3.0f64 + 1.0) / (3.0 - 1.0)).ln() / 2.0;
        let reached = adaptive_simpson(&|t: f64| 2.0 / (1.0 - t * t), 0.0, 1.0 / x, 1e-12);
        assert_abs_diff_eq!(reached, half_mass, epsilon = 1e-9);
    }

    #[test]
    fn interval_mass_matches_quadrature() {
        // Mass of (0, 1/2) under the inside measure on [-1, 1] is ln 3.
        let m = zeta_interval_mass(-1.0, 1.0, 0.0, 0.5);
        assert_abs_diff_eq!(m, 3.0f64.ln(), epsilon = 1e-12);
        let oracle = adaptive_simpson(&|w: f64| 2.0 / (1.0 - w * w), 0.0, 0.5, 1e-12);
        assert_abs_diff_eq!(m, oracle, epsilon = 1e-8);
        // Parameter grid.
        for (u, v, a, b) in [
            (-2.0, 3.0, -1.0, 2.0),
            (0.0, 1.0, 0.25, 0.75),
            (-5.0, -1.0, -4.0, -2.0),
        ] {
            let oracle = adaptive_simpson(
                &|w: f64| zeta_interval_density(u, v, SegmentSide::Inside, w),
                a,
                b,
                1e-12,
            );
            assert_abs_diff_eq!(zeta_interval_mass(u, v, a, b), oracle, epsilon = 1e-8);
        }
    }

    #[test]
    fn interval_reduces_to_reference_on_standard_parameters() {
        // Inside measure on (0, infinity)-like parameters: density at w = 2
        // of the measure conjugate to dx/x with (u, v) = (0, M), M large,
        // approaches 1/2... checked exactly instead through the chart: the
        // inside chart with u = 0 pulled back to x gives density dx/x.
        // Direct check of the quoted value: density of dw/w at w = 2 is 1/2;
        // the inside measure on [0, v] tends to it as v grows.
        let d = zeta_interval_density(0.0, 1e12, SegmentSide::Inside, 2.0);
        assert_abs_diff_eq!(d, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn outside_interval_is_image_of_zeta_under_inversion() {
        // The inside measure on [-1, 1] is the image of the outside one under
        // x -> -1/x: push outside samples through and compare the flat
        // log-coordinates (both uniform under truncation).
        let mut rng = RandomStream::new(2024);
        let eps = 1e-3;
        let n = 100_000;
        let mut pushed: Vec<f64> = Vec::with_capacity(n);
        let mut direct: Vec<f64> = Vec::with_capacity(n);
        for _ in 0..n {
            let x = sample_zeta_interval(&mut rng, -1.0, 1.0, SegmentSide::Outside, eps).unwrap();
            pushed.push(-1.0 / x);
            direct
                .push(sample_zeta_interval(&mut rng, -1.0, 1.0, SegmentSide::Inside, eps).unwrap());
        }
        let (_, p) = crate::stats::ks_two_sample(&pushed, &direct).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn interval_laws_are_mobius_images_of_each_other() {
        // Push (-1,1)-inside samples through the canonical triple map onto
        // (0,4) and compare against direct (0,4)-inside samples: the shared
        // dx/x truncation makes the two laws identical, not just close.
        use crate::geom::{BoundaryPoint, MobiusMap};
        let eps = 1e-4;
        let n = 100_000;
        let phi = MobiusMap::from_triples(
            [
                BoundaryPoint::halfplane(-1.0),
                BoundaryPoint::halfplane(0.0),
                BoundaryPoint::halfplane(1.0),
            ],
            [
                BoundaryPoint::halfplane(0.0),
                BoundaryPoint::halfplane(2.0),
                BoundaryPoint::halfplane(4.0),
            ],
        )
        .unwrap();
        let mut rng = RandomStream::new(99);
        let mut pushed = Vec::with_capacity(n);
        let mut direct = Vec::with_capacity(n);
        for _ in 0..n {
            let w = sample_zeta_interval(&mut rng, -1.0, 1.0, SegmentSide::Inside, eps).unwrap();
            pushed.push(
                phi.apply_boundary(BoundaryPoint::halfplane(w))
                    .unwrap()
                    .value(),
            );
            direct.push(sample_zeta_interval(&mut rng, 0.0, 4.0, SegmentSide::Inside, eps).unwrap());
        }
        let (_, p) = crate::stats::ks_two_sample(&pushed, &direct).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn zeta_invariance_under_boundary_fixing_maps() {
        // In the flat coordinate y = (x-1)/(x+1), the jump intensity is dy/y
        // and the boundary-fixing map with multiplier m acts as y -> y/m.
        // Push one-sided samples through and compare with direct samples on
        // the image window (m = 2 keeps the image on the same side).
        let m = 2.0;
        let x0 = 2.0;
        let y0 = (x0 - 1.0) / (x0 + 1.0);
        let n = 100_000;
        let mut rng = RandomStream::new(7);
        let mut pushed = Vec::with_capacity(n);
        let mut direct = Vec::with_capacity(n);
        let map = MobiusMap::halfplane_fixing_pm1(m);
        for _ in 0..n {
            let x = zeta_magnitude(rng.uniform(), x0);
            let w = map
                .apply_boundary(BoundaryPoint::halfplane(x))
                .unwrap()
                .value();
            pushed.push(w);
            // Direct: ln y uniform on (ln(y0/m), ln(1/m)).
            let t = rng.uniform_in((y0 / m).ln(), (1.0 / m).ln());
            direct.push((1.0 + t.exp()) / (1.0 - t.exp()));
        }
        let (_, p) = crate::stats::ks_two_sample(&pushed, &direct).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn duality_identity_fixed_points() {
        let (_, r) = triple_density_and_duality(-1.0, 1.0, 3.0).unwrap();
        assert!(r == 0.0 || r < 1e-16, "residual {r}");
        // (-1, 1, 3): factored pieces are 1/4 and 1/4, product 1/16.
        assert_abs_diff_eq!(pi_density(-1.0, 1.0), 0.25);
        assert_abs_diff_eq!(
            zeta_interval_density(-1.0, 1.0, SegmentSide::Outside, 3.0),
            0.25
        );
        let (_, r2) = triple_density_and_duality(-2.0, 1.0, 5.0).unwrap();
        assert!(r2 < 1e-16, "residual {r2}");
        assert_abs_diff_eq!(
            pi_density(-2.0, 1.0) * zeta_interval_density(-2.0, 1.0, SegmentSide::Outside, 5.0),
            1.0 / 84.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn duality_identity_random_sweep() {
        // Parameter scales bounded away from 0 and infinity keep the density
        // values of order one, so the absolute residual bound is meaningful.
        let mut rng = RandomStream::new(4242);
        let mut max_resid = 0.0f64;
        for _ in 0..10_000 {
            let u = -(10.0f64.powf(rng.uniform_in(-1.0, 1.0)));
            let v = 10.0f64.powf(rng.uniform_in(-1.0, 1.0));
            let gap = v - u;
            // Third apex on either side of the arch; both orders are
            // anticlockwise in arch form.
            let w = if rng.coin() {
                v + gap * 10.0f64.powf(rng.uniform_in(-1.0, 2.0))
            } else {
                u - gap * 10.0f64.powf(rng.uniform_in(-1.0, 2.0))
            };
            match triple_density_and_duality(u, v, w) {
                Ok((_, r)) => max_resid = max_resid.max(r),
                Err(e) => panic!("sampled triple should be admissible: {u} {v} {w}: {e}"),
            }
        }
        assert!(max_resid < 1e-12, "max residual {max_resid}");
    }

    #[test]
    fn duality_rejects_malformed_triples() {
        assert!(matches!(
            triple_density_and_duality(1.0, 1.0, 3.0),
            Err(MeasureError::Coincident)
        ));
        assert!(matches!(
            triple_density_and_duality(1.0, -1.0, 3.0),
            Err(MeasureError::Geom(GeomError::Orientation))
        ));
    }

    #[test]
    fn p0_triangles_contain_origin() {
        let mut rng = RandomStream::new(12);
        for _ in 0..500 {
            let t = sample_p0(&mut rng);
            assert!(t.contains(Complex64::ZERO));
        }
    }

    #[test]
    fn p0_law_is_rotation_invariant() {
        // Pooled apex angles before and after a uniform random rotation.
        let mut rng = RandomStream::new(40);
        let n = 30_000;
        let mut plain = Vec::with_capacity(n);
        let mut rotated = Vec::with_capacity(n);
        for _ in 0..n / 3 {
            let t = sample_p0(&mut rng);
            for p in t.apexes() {
                plain.push(p.angle());
            }
            let t = sample_p0(&mut rng);
            let spin = rng.uniform_in(0.0, TAU);
            for p in t.apexes() {
                rotated.push(crate::geom::canonical_angle(p.angle() + spin));
            }
        }
        let (_, p) = crate::stats::ks_two_sample(&plain, &rotated).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    /// Metropolis chain over triples on the half-plane boundary with the
    /// unnormalized invariant-triangle density, restricted to triangles
    /// containing i. An independent oracle for the origin-triangle sampler.
    fn mcmc_origin_triangle_oracle(steps: usize, thin: usize, seed: u64) -> Vec<[f64; 3]> {
        let mut rng = RandomStream::new(seed);
        let contains_i = |p: &[f64; 3]| -> bool {
            // Signed squared distance of i = (0, 1) to each edge semicircle:
            // inside the big one, outside the two small ones.
            let circ = |a: f64, b: f64| {
                let c = (a + b) / 2.0;
                let r = (b - a) / 2.0;
                c * c + 1.0 - r * r
            };
            circ(p[0], p[2]) < 0.0 && circ(p[0], p[1]) > 0.0 && circ(p[1], p[2]) > 0.0
        };
        let log_density = |p: &[f64; 3]| -> f64 {
            -((p[1] - p[0]).abs().ln() + (p[2] - p[1]).abs().ln() + (p[2] - p[0]).abs().ln())
        };
        // Feasible start: a wide triangle over i.
        let mut state = [-2.0f64, 0.3, 2.0];
        assert!(contains_i(&state));
        let mut log_pi = log_density(&state);
        let mut out = Vec::with_capacity(steps / thin);
        for step in 0..steps {
            let k = (rng.next_u64() % 3) as usize;
            let mut proposal = state;
            // Heavy-tailed proposal mixes across the unbounded domain.
            proposal[k] += (std::f64::consts::PI * (rng.uniform() - 0.5)).tan();
            proposal.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if proposal[0] != proposal[1] && proposal[1] != proposal[2] && contains_i(&proposal) {
                let cand = log_density(&proposal);
                if cand - log_pi >= rng.uniform_open().ln() {
                    state = proposal;
                    log_pi = cand;
                }
            }
            if step % thin == 0 {
                out.push(state);
            }
        }
        out
    }

    #[test]
    fn p0_apex_marginals_match_mcmc_oracle() {
        // Oracle states map to the disk through the Cayley identification
        // (half-plane i to the disk origin); compare each sorted apex-angle
        // marginal against the direct sampler.
        let samples = mcmc_origin_triangle_oracle(2_000_000, 20, 31);
        let n = samples.len();
        let mut oracle: Vec<Vec<f64>> = vec![Vec::with_capacity(n); 3];
        for s in &samples {
            let mut angles: Vec<f64> = s
                .iter()
                .map(|&x| BoundaryPoint::halfplane(x).angle())
                .collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in 0..3 {
                oracle[k].push(angles[k]);
            }
        }
        let mut rng = RandomStream::new(77);
        let mut direct: Vec<Vec<f64>> = vec![Vec::with_capacity(n); 3];
        for _ in 0..n {
            let t = sample_p0(&mut rng);
            let mut angles: Vec<f64> = t.apexes().iter().map(|p| p.angle()).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in 0..3 {
                direct[k].push(angles[k]);
            }
        }
        for k in 0..3 {
            let (d, _) = crate::stats::ks_two_sample(&oracle[k], &direct[k]).unwrap();
            assert!(d < 0.02, "sorted apex {k}: KS distance {d}");
        }
    }

    #[test]
    fn inside_interval_is_inversion_image_of_zeta() {
        // Push jump-intensity samples through x -> -1/x; with the cutoff
        // matched to the chart truncation the laws coincide exactly.
        let x0 = 1.5f64;
        let eps = (x0 - 1.0) / (x0 + 1.0);
        let n = 100_000;
        let mut rng = RandomStream::new(63);
        let mut pushed = Vec::with_capacity(n);
        let mut direct = Vec::with_capacity(n);
        for _ in 0..n {
            let x = sample_zeta(&mut rng, x0).unwrap();
            pushed.push(-1.0 / x);
            direct
                .push(sample_zeta_interval(&mut rng, -1.0, 1.0, SegmentSide::Inside, eps).unwrap());
        }
        let (_, p) = crate::stats::ks_two_sample(&pushed, &direct).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn interval_measure_evaluator_consistency() {
        let m = IntervalMeasure::Zeta;
        assert_eq!(m.density(0.5), 0.0);
        assert_abs_diff_eq!(m.density(3.0), 0.25);
        assert_abs_diff_eq!(
            m.segment_mass(2.0, 4.0).unwrap(),
            adaptive_simpson(&|x| 2.0 / (x * x - 1.0), 2.0, 4.0, 1e-12),
            epsilon = 1e-8
        );
        let m = IntervalMeasure::ZetaInterval { u: -1.0, v: 1.0 };
        assert_eq!(m.density(2.0), 0.0);
        assert!(m.density(0.0) > 0.0);
        assert_abs_diff_eq!(m.segment_mass(0.0, 0.5).unwrap(), 3.0f64.ln());
        let m = IntervalMeasure::ZetaComplement { u: -1.0, v: 1.0 };
        assert_eq!(m.density(0.0), 0.0);
        assert_abs_diff_eq!(
            m.segment_mass(2.0, 4.0).unwrap(),
            adaptive_simpson(
                &|w| zeta_interval_density(-1.0, 1.0, SegmentSide::Outside, w),
                2.0,
                4.0,
                1e-12
            ),
            epsilon = 1e-8
        );
        let m = IntervalMeasure::Pi;
        assert_eq!(m.density2(-1.0, 1.0), 0.25);
        assert_eq!(m.density2(1.0, 2.0), 0.0);
        assert!(m.segment_mass(0.0, 1.0).is_none());
    }

    #[test]
    fn mu_normalization_monte_carlo() {
        // The area measure of a hyperbolic ball of radius rho is
        // 4 sinh^2(rho/2) under our normalization (each ideal triangle has
        // area one). Estimate the standard triangle's area by the hit
        // fraction of ball samples and confirm it is one: this also confirms
        // that the product-measure mass of automorphisms whose image triangle
        // contains the origin equals one. The cusps extend beyond any ball,
        // so the estimate carries a small one-sided bias (about 0.019 at this
        // ball mass), well inside the tolerance.
        let mut rng = RandomStream::new(77);
        let ball_mass = 100.0f64;
        let sinh_half = (ball_mass / 4.0).sqrt();
        let n = 2_000_000;
        let mut hits = 0usize;
        let tri = standard_triangle();
        for _ in 0..n {
            let s = rng.uniform() * sinh_half * sinh_half;
            let rho = 2.0 * s.sqrt().asinh();
            let r = (rho / 2.0).tanh();
            let z0 = Complex64::from_polar(r, rng.uniform_in(0.0, TAU));
            if tri.contains(z0) {
                hits += 1;
            }
        }
        let estimate = ball_mass * hits as f64 / n as f64;
        assert!(
            (estimate - 1.0).abs() < 0.05 && estimate < 1.0 + 0.02,
            "triangle area estimate {estimate}"
        );
    }

    #[test]
    fn mu_marginal_in_halfplane_chart() {
        // The first coordinate of the half-plane triangle sampler follows the
        // arcsine law; check its CDF at a few quantiles.
        let mut rng = RandomStream::new(55);
        let n = 200_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|_| sample_mu_halfplane_triangle(&mut rng).re)
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let x = xs[(q * n as f64) as usize];
            let cdf = 2.0 / PI * x.sqrt().asin();
            assert!((cdf - q).abs() < 0.01, "q {q}: x {x} cdf {cdf}");
        }
    }
}
