//! Assembly of full disk tilings: the Markovian triangulation by recursive
//! gap filling, the Farey-Ford reflection tiling, and Bernoulli thinning.
//!
//! A tiling is built from a root polygon containing the origin; every
//! complementary gap is normalized onto the region above the unit semicircle
//! and filled by an accordion, whose side gaps are filled recursively on
//! split random streams. Recursion stops when a gap's Euclidean diameter in
//! the disk falls below the resolution, and only polygons at least that large
//! are returned, so a tiling is a finite, reproducible truncation of the
//! infinite object.

pub mod farey;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::accordion::{apply_jump_raw, AccordionConfig, AccordionState, JumpLaw, JumpSource, ZetaJumps};
use crate::geom::{gap_normalizer, BoundaryPoint, Gap, GeomError, IdealPolygon, MobiusMap};
use crate::measures::sample_p0;
use crate::rng::RandomStream;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("resolution must be positive, got {0}")]
    BadResolution(f64),
    #[error("jump cutoff must be positive, got {0}")]
    BadJumpCutoff(f64),
    #[error("thinning probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Accordion(#[from] crate::accordion::AccordionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TilingKind {
    MarkovTriangles,
    Farey,
    MarkovSquares,
}

#[derive(Clone, Debug)]
pub struct TilingMeta {
    pub seed: u64,
    pub resolution: f64,
    pub jump_cutoff: f64,
    pub thin_p: Option<f64>,
    /// Set when some accordion hit its jump budget; the tiling is then a
    /// partial sample.
    pub budget_exhausted: bool,
    /// Wall-clock creation time (unix seconds); informational only and not
    /// part of the serialized document.
    pub created_unix: u64,
}

/// Finite resolution-truncated sample of a random tiling of the disk.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub polygons: Vec<IdealPolygon>,
    pub kind: TilingKind,
    pub meta: TilingMeta,
}

impl Tiling {
    /// The polygon containing `z`, or none when `z` falls in a gap that is
    /// unresolved at this resolution.
    pub fn polygon_containing(&self, z: Complex64) -> Option<&IdealPolygon> {
        debug_assert!(z.norm() < 1.0);
        self.polygons.iter().find(|p| p.contains(z))
    }
}

/// The polygon of a tiling containing `z` (none in unresolved gaps).
pub fn triangle_containing(tiling: &Tiling, z: Complex64) -> Option<&IdealPolygon> {
    tiling.polygon_containing(z)
}

/// Independent Bernoulli(p) retention of each polygon.
pub fn thin(tiling: &Tiling, p: f64, rng: &mut RandomStream) -> Result<Tiling, TilingError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(TilingError::BadProbability(p));
    }
    let polygons = tiling
        .polygons
        .iter()
        .filter(|_| rng.uniform() < p)
        .cloned()
        .collect();
    let mut meta = tiling.meta.clone();
    meta.thin_p = Some(p);
    Ok(Tiling {
        polygons,
        kind: tiling.kind,
        meta,
    })
}

pub(crate) fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct FillConfig {
    pub resolution: f64,
    pub accordion: AccordionConfig,
}

impl FillConfig {
    fn new(resolution: f64, jump_cutoff: f64, law: JumpLaw) -> Self {
        FillConfig {
            resolution,
            accordion: AccordionConfig {
                jump_cutoff,
                max_jumps: 10_000_000,
                law,
            },
        }
    }
}

/// The three (or four) root gaps of a polygon, in apex order: the gap beyond
/// edge `(a_i, a_{i+1})` has its boundary arc from `a_i` anticlockwise to
/// `a_{i+1}`.
pub(crate) fn root_gaps(root: &IdealPolygon) -> Vec<Gap> {
    let n = root.apexes().len();
    (0..n)
        .map(|i| {
            Gap::new(root.apexes()[i], root.apexes()[(i + 1) % n]).expect("root is nondegenerate")
        })
        .collect()
}

fn halfplane_to_disk_point(map_back: &MobiusMap, x: f64) -> Result<BoundaryPoint, GeomError> {
    map_back.apply_boundary(BoundaryPoint::halfplane(x))
}

/// Map the corners of a chart triangle back to the disk and build the
/// polygon; corners are increasing, hence anticlockwise.
fn chart_triangle_to_disk(
    map_back: &MobiusMap,
    corners: &[f64],
) -> Result<IdealPolygon, GeomError> {
    let apexes = corners
        .iter()
        .map(|&c| halfplane_to_disk_point(map_back, c))
        .collect::<Result<Vec<_>, _>>()?;
    IdealPolygon::new(apexes)
}

/// Fill one disk gap with an accordion and recurse into its side gaps.
/// Returns the polygons in deterministic order (accordion triangles in jump
/// order, then each side gap's subtree in jump order) and whether any budget
/// was exhausted.
fn fill_gap(gap: &Gap, stream: &RandomStream, cfg: &FillConfig) -> (Vec<IdealPolygon>, bool) {
    if gap.euclidean_diameter() < cfg.resolution {
        return (Vec::new(), false);
    }
    let normalizer = match gap_normalizer(gap) {
        Ok(n) => n,
        Err(_) => return (Vec::new(), false), // degenerate gap below any resolution
    };
    let map_back = normalizer.inverse();
    let mut acc_rng = stream.split(0);
    let mut source = ZetaJumps::new(&mut acc_rng, cfg.accordion);
    let mut state = AccordionState::new(-1.0, 1.0).expect("unit arch");
    let mut polygons = Vec::new();
    let mut subgaps: Vec<(u64, Gap)> = Vec::new();
    let mut exhausted = true;
    for _ in 0..cfg.accordion.max_jumps {
        let jump = source.next_jump();
        let step = match apply_jump_raw(state, jump.x) {
            Ok(s) => s,
            Err(_) => continue,
        };
        state = step.state;
        // Emit the triangle when it meets the resolution; its disk diameter
        // is the largest pairwise apex distance.
        if let Ok(tri) = chart_triangle_to_disk(&map_back, &step.corners) {
            if tri.euclidean_diameter() >= cfg.resolution {
                polygons.push(tri);
            }
        }
        // Register the side gap for recursion when it is big enough.
        if let (Ok(from), Ok(to)) = (
            halfplane_to_disk_point(&map_back, step.side.0),
            halfplane_to_disk_point(&map_back, step.side.1),
        ) {
            if let Ok(sub) = Gap::new(from, to) {
                if sub.euclidean_diameter() >= cfg.resolution {
                    subgaps.push((jump.index, sub));
                }
            }
        }
        // Stop when the unfilled region beyond the arch drops below the
        // resolution in the disk.
        if let (Ok(from), Ok(to)) = (
            halfplane_to_disk_point(&map_back, state.right),
            halfplane_to_disk_point(&map_back, state.left),
        ) {
            match Gap::new(from, to) {
                Ok(rest) => {
                    if rest.euclidean_diameter() < cfg.resolution {
                        exhausted = false;
                        break;
                    }
                }
                // Arch feet collapsed in the disk: below any resolution.
                Err(_) => {
                    exhausted = false;
                    break;
                }
            }
        }
    }
    // Children run on streams split by the jump index of their creation, so
    // the work division is deterministic under any parallel schedule.
    let children: Vec<(Vec<IdealPolygon>, bool)> = subgaps
        .par_iter()
        .map(|(jump_index, sub)| fill_gap(sub, &stream.split(1 + jump_index), cfg))
        .collect();
    for (polys, child_exhausted) in children {
        polygons.extend(polys);
        exhausted |= child_exhausted;
    }
    (polygons, exhausted)
}

fn sample_markov_tiling(
    seed: u64,
    resolution: f64,
    jump_cutoff: Option<f64>,
    law: JumpLaw,
) -> Result<Tiling, TilingError> {
    if !(resolution > 0.0) {
        return Err(TilingError::BadResolution(resolution));
    }
    let cutoff = jump_cutoff.unwrap_or(resolution / 10.0);
    if !(cutoff > 0.0) {
        return Err(TilingError::BadJumpCutoff(cutoff));
    }
    let cfg = FillConfig::new(resolution, cutoff, law);
    let base = RandomStream::new(seed);
    let root = sample_p0(&mut base.split(0));
    let gaps = root_gaps(&root);
    let results: Vec<(Vec<IdealPolygon>, bool)> = gaps
        .par_iter()
        .enumerate()
        .map(|(j, gap)| fill_gap(gap, &base.split(1 + j as u64), &cfg))
        .collect();
    let mut polygons = vec![root];
    let mut exhausted = false;
    for (polys, e) in results {
        polygons.extend(polys);
        exhausted |= e;
    }
    Ok(Tiling {
        polygons,
        kind: TilingKind::MarkovTriangles,
        meta: TilingMeta {
            seed,
            resolution,
            jump_cutoff: cutoff,
            thin_p: None,
            budget_exhausted: exhausted,
            created_unix: now_unix(),
        },
    })
}

/// Sample the Markovian triangulation of the disk at the given resolution.
/// The jump cutoff defaults to a tenth of the resolution, so that discarded
/// jumps only produce triangles below rendering size.
pub fn sample_disk_triangulation(
    seed: u64,
    resolution: f64,
    jump_cutoff: Option<f64>,
) -> Result<Tiling, TilingError> {
    sample_markov_tiling(seed, resolution, jump_cutoff, JumpLaw::Zeta)
}

/// Same construction with a deliberately wrong jump law; used by the
/// verification suite to confirm its tests can reject.
pub fn sample_disk_triangulation_biased(
    seed: u64,
    resolution: f64,
    jump_cutoff: Option<f64>,
) -> Result<Tiling, TilingError> {
    sample_markov_tiling(seed, resolution, jump_cutoff, JumpLaw::InverseSquareTail)
}

fn contains_chart_triangle(corners: &[f64; 3], w: Complex64) -> bool {
    // Sorted corners p1 < p2 < p3: inside means under the (p1, p3) circle and
    // above the two smaller ones.
    let inside = |a: f64, b: f64, z: Complex64| {
        let c = (a + b) / 2.0;
        let r = (b - a) / 2.0;
        (z.re - c) * (z.re - c) + z.im * z.im - r * r
    };
    inside(corners[0], corners[2], w) < 0.0
        && inside(corners[0], corners[1], w) > 0.0
        && inside(corners[1], corners[2], w) > 0.0
}

fn chart_side_gap_contains(side: (f64, f64), w: Complex64) -> bool {
    let c = (side.0 + side.1) / 2.0;
    let r = (side.1 - side.0) / 2.0;
    (w.re - c) * (w.re - c) + w.im * w.im < r * r
}

fn descend(
    gap: &Gap,
    stream: &RandomStream,
    z: Complex64,
    cfg: &FillConfig,
) -> Option<IdealPolygon> {
    if gap.euclidean_diameter() < cfg.resolution {
        return None;
    }
    let normalizer = gap_normalizer(gap).ok()?;
    let map_back = normalizer.inverse();
    let w = normalizer.apply_interior(z);
    let mut acc_rng = stream.split(0);
    let mut source = ZetaJumps::new(&mut acc_rng, cfg.accordion);
    let mut state = AccordionState::new(-1.0, 1.0).expect("unit arch");
    for _ in 0..cfg.accordion.max_jumps {
        let jump = source.next_jump();
        let step = match apply_jump_raw(state, jump.x) {
            Ok(s) => s,
            Err(_) => continue,
        };
        state = step.state;
        if contains_chart_triangle(&step.corners, w) {
            let tri = chart_triangle_to_disk(&map_back, &step.corners).ok()?;
            return if tri.euclidean_diameter() >= cfg.resolution {
                Some(tri)
            } else {
                None
            };
        }
        if chart_side_gap_contains(step.side, w) {
            let from = halfplane_to_disk_point(&map_back, step.side.0).ok()?;
            let to = halfplane_to_disk_point(&map_back, step.side.1).ok()?;
            let sub = Gap::new(from, to).ok()?;
            return descend(&sub, &stream.split(1 + jump.index), z, cfg);
        }
        // Remaining-gap resolution check, as in the full construction.
        let from = halfplane_to_disk_point(&map_back, state.right).ok()?;
        let to = halfplane_to_disk_point(&map_back, state.left).ok()?;
        match Gap::new(from, to) {
            Ok(rest) => {
                if rest.euclidean_diameter() < cfg.resolution {
                    return None;
                }
            }
            Err(_) => return None,
        }
    }
    None
}

/// Sample only the tiling polygon containing `z`, by lazily expanding the
/// single recursion branch that reaches it. Distributionally this agrees
/// with building the whole tiling and selecting the polygon containing `z`;
/// with equal seeds it is bit-identical to that.
pub fn sample_triangle_at(
    seed: u64,
    z: Complex64,
    resolution: f64,
    jump_cutoff: Option<f64>,
) -> Result<Option<IdealPolygon>, TilingError> {
    sample_triangle_at_with_law(seed, z, resolution, jump_cutoff, JumpLaw::Zeta)
}

/// Targeted sampling with a configurable jump law (the wrong-law variant
/// exists for the suite's power checks).
pub fn sample_triangle_at_with_law(
    seed: u64,
    z: Complex64,
    resolution: f64,
    jump_cutoff: Option<f64>,
    law: JumpLaw,
) -> Result<Option<IdealPolygon>, TilingError> {
    if !(resolution > 0.0) {
        return Err(TilingError::BadResolution(resolution));
    }
    let cutoff = jump_cutoff.unwrap_or(resolution / 10.0);
    if !(cutoff > 0.0) {
        return Err(TilingError::BadJumpCutoff(cutoff));
    }
    let cfg = FillConfig::new(resolution, cutoff, law);
    let base = RandomStream::new(seed);
    let root = sample_p0(&mut base.split(0));
    if root.contains(z) {
        return Ok(Some(root));
    }
    for (j, gap) in root_gaps(&root).iter().enumerate() {
        if gap.contains(z) {
            return Ok(descend(gap, &base.split(1 + j as u64), z, &cfg));
        }
    }
    // z on the boundary of the root or a gap: measure zero.
    Ok(None)
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::geom::{canonical_angle, IdealPolygon};

    /// Two ideal disk polygons are disjoint iff some edge of one has all of
    /// the other's apexes inside its far boundary arc.
    pub(crate) fn disjoint_certificate(a: &IdealPolygon, b: &IdealPolygon) -> bool {
        separates(a, b) || separates(b, a)
    }

    fn separates(a: &IdealPolygon, b: &IdealPolygon) -> bool {
        // Slack absorbs near-shared apexes reached through different
        // normalizer chains (they agree only to roundoff).
        let slack = 1e-9;
        let n = a.apexes().len();
        for i in 0..n {
            let lo = a.apexes()[i].angle();
            let hi = a.apexes()[(i + 1) % n].angle();
            let width = canonical_angle(hi - lo);
            // The far arc of this edge is (lo, lo + width); b must fit inside.
            let all_in = b
                .apexes()
                .iter()
                .all(|p| canonical_angle(p.angle() - lo + slack) <= width + 2.0 * slack);
            if all_in {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::harmonic_measures_at;
    use test_support::disjoint_certificate;

    #[test]
    fn root_contains_origin_and_is_first() {
        let t = sample_disk_triangulation(7, 1e-2, None).unwrap();
        assert!(t.polygons[0].contains(Complex64::ZERO));
        assert!(std::ptr::eq(
            t.polygon_containing(Complex64::ZERO).unwrap(),
            &t.polygons[0]
        ));
    }

    #[test]
    fn determinism_bitwise() {
        let a = sample_disk_triangulation(42, 1e-3, None).unwrap();
        let b = sample_disk_triangulation(42, 1e-3, None).unwrap();
        assert_eq!(a.polygons.len(), b.polygons.len());
        for (p, q) in a.polygons.iter().zip(&b.polygons) {
            for (x, y) in p.apexes().iter().zip(q.apexes()) {
                assert_eq!(x.angle().to_bits(), y.angle().to_bits());
            }
        }
    }

    #[test]
    fn determinism_across_thread_counts() {
        let runs: Vec<Vec<u64>> = [1usize, 4, 8]
            .iter()
            .map(|&threads| {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .unwrap();
                let t = pool.install(|| sample_disk_triangulation(5, 1e-3, None).unwrap());
                t.polygons
                    .iter()
                    .flat_map(|p| p.apexes().iter().map(|a| a.angle().to_bits()))
                    .collect()
            })
            .collect();
        assert_eq!(runs[0], runs[1]);
        assert_eq!(runs[0], runs[2]);
    }

    #[test]
    fn polygons_meet_resolution() {
        let t = sample_disk_triangulation(3, 1e-2, None).unwrap();
        assert!(t.polygons.len() > 10);
        for p in &t.polygons {
            assert!(p.euclidean_diameter() >= 1e-2 * (1.0 - 1e-9));
        }
    }

    #[test]
    fn refinement_is_monotone() {
        // With equal seeds and a shared jump cutoff, refining the resolution
        // keeps every coarse polygon (the jump streams are then prefixes of
        // each other).
        let coarse = sample_disk_triangulation(11, 4e-2, Some(1e-3)).unwrap();
        let fine = sample_disk_triangulation(11, 1e-2, Some(1e-3)).unwrap();
        assert!(fine.polygons.len() > coarse.polygons.len());
        let keys: std::collections::HashSet<Vec<u64>> = fine
            .polygons
            .iter()
            .map(|p| p.apexes().iter().map(|a| a.angle().to_bits()).collect())
            .collect();
        for p in &coarse.polygons {
            let key: Vec<u64> = p.apexes().iter().map(|a| a.angle().to_bits()).collect();
            assert!(keys.contains(&key), "coarse polygon missing after refinement");
        }
    }

    #[test]
    fn pairwise_disjoint_on_sampled_pairs() {
        let t = sample_disk_triangulation(19, 1e-2, None).unwrap();
        let mut rng = RandomStream::new(5);
        let n = t.polygons.len();
        for _ in 0..1000 {
            let i = (rng.next_u64() % n as u64) as usize;
            let j = (rng.next_u64() % n as u64) as usize;
            if i == j {
                continue;
            }
            assert!(
                disjoint_certificate(&t.polygons[i], &t.polygons[j]),
                "polygons {i} and {j} overlap"
            );
        }
    }

    #[test]
    fn descent_matches_full_tiling() {
        // Same seed: the lazily expanded branch finds the same polygon the
        // full construction assigns to z.
        for seed in [1u64, 2, 3, 8, 13] {
            let z = Complex64::new(0.5, 0.1);
            let full = sample_disk_triangulation(seed, 1e-2, None).unwrap();
            let from_full = full.polygon_containing(z);
            let targeted = sample_triangle_at(seed, z, 1e-2, None).unwrap();
            match (from_full, targeted) {
                (Some(p), Some(q)) => {
                    let pk: Vec<u64> = p.apexes().iter().map(|a| a.angle().to_bits()).collect();
                    let qk: Vec<u64> = q.apexes().iter().map(|a| a.angle().to_bits()).collect();
                    assert_eq!(pk, qk, "seed {seed}");
                }
                (None, None) => {}
                (p, q) => panic!("seed {seed}: full {p:?} vs targeted {q:?}"),
            }
        }
    }

    #[test]
    fn coverage_improves_with_resolution() {
        // Euclidean length of [0, 0.9] not covered decreases as the
        // resolution refines over a shared jump cutoff.
        let covered_len = |t: &Tiling| -> f64 {
            crate::stats::chord_coverage(t, 0.0, 0.9)
                .iter()
                .map(|(a, b)| b - a)
                .sum()
        };
        let c1 = covered_len(&sample_disk_triangulation(23, 1e-1, Some(1e-4)).unwrap());
        let c2 = covered_len(&sample_disk_triangulation(23, 1e-2, Some(1e-4)).unwrap());
        let c3 = covered_len(&sample_disk_triangulation(23, 1e-3, Some(1e-4)).unwrap());
        assert!(c1 <= c2 && c2 <= c3, "coverage {c1} {c2} {c3}");
        assert!(c3 > 0.8, "coverage at 1e-3 only {c3}");
    }

    #[test]
    fn thinning_limits() {
        let t = sample_disk_triangulation(2, 1e-2, None).unwrap();
        let mut rng = RandomStream::new(1);
        let none = thin(&t, 0.0, &mut rng).unwrap();
        assert!(none.polygons.is_empty());
        assert_eq!(none.meta.thin_p, Some(0.0));
        let all = thin(&t, 1.0, &mut rng).unwrap();
        assert_eq!(all.polygons.len(), t.polygons.len());
        assert!(thin(&t, 1.5, &mut rng).is_err());
    }

    #[test]
    fn thinning_counts_are_binomial() {
        let t = sample_disk_triangulation(4, 2e-2, None).unwrap();
        let n = t.polygons.len();
        let mut rng = RandomStream::new(9);
        let reps = 400;
        let mut total = 0usize;
        let mut sq = 0.0f64;
        for _ in 0..reps {
            let kept = thin(&t, 0.5, &mut rng).unwrap().polygons.len();
            total += kept;
            sq += (kept as f64) * (kept as f64);
        }
        let mean = total as f64 / reps as f64;
        let var = sq / reps as f64 - mean * mean;
        let expect_mean = n as f64 * 0.5;
        let expect_var = n as f64 * 0.25;
        assert!(
            (mean - expect_mean).abs() < 4.0 * (expect_var / reps as f64).sqrt(),
            "mean {mean} vs {expect_mean}"
        );
        assert!(
            var > 0.5 * expect_var && var < 2.0 * expect_var,
            "var {var} vs {expect_var}"
        );
    }

    #[test]
    fn unresolved_points_hug_the_boundary() {
        // Every discarded gap's closure touches the boundary circle, so its
        // points sit within the resolution of the boundary. Probes just
        // inside the boundary find unresolved points; probes deeper than the
        // resolution never do.
        let resolution = 1e-2;
        let t = sample_disk_triangulation(6, resolution, None).unwrap();
        let mut found_unresolved = false;
        for k in 0..2000 {
            let theta = k as f64 * std::f64::consts::TAU / 2000.0;
            let z = Complex64::from_polar(1.0 - resolution / 4.0, theta);
            if t.polygon_containing(z).is_none() {
                found_unresolved = true;
                break;
            }
        }
        assert!(found_unresolved, "expected unresolved points near the boundary");
        for k in 0..500 {
            let theta = k as f64 * std::f64::consts::TAU / 500.0;
            let z = Complex64::from_polar(1.0 - 1.5 * resolution, theta);
            assert!(
                t.polygon_containing(z).is_some(),
                "point at depth 1.5x resolution should be resolved"
            );
        }
    }

    #[test]
    fn hit_fraction_at_fine_resolution() {
        let t = sample_disk_triangulation(14, 1e-3, None).unwrap();
        let mut rng = RandomStream::new(3);
        let mut hit = 0;
        let n = 1000;
        for _ in 0..n {
            let z = Complex64::from_polar(
                rng.uniform_in(0.0, 0.9),
                rng.uniform_in(0.0, std::f64::consts::TAU),
            );
            if t.polygon_containing(z).is_some() {
                hit += 1;
            }
        }
        assert!(hit as f64 / n as f64 >= 0.95, "hit fraction {hit}/{n}");
    }

    #[test]
    fn root_law_matches_direct_sampler() {
        // The root polygon of the tiling is the direct origin-triangle
        // sample on the same stream: compare conformal scalars across seeds.
        let mut a = Vec::new();
        let mut b = Vec::new();
        for seed in 0..2000u64 {
            let t = sample_disk_triangulation(seed, 1e-1, None).unwrap();
            let hs = harmonic_measures_at(Complex64::ZERO, &t.polygons[0]);
            a.push(hs.iter().cloned().fold(f64::MIN, f64::max));
            let p = sample_p0(&mut RandomStream::new(10_000 + seed).split(0));
            let hs2 = harmonic_measures_at(Complex64::ZERO, &p);
            b.push(hs2.iter().cloned().fold(f64::MIN, f64::max));
        }
        let (_, p) = crate::stats::ks_two_sample(&a, &b).unwrap();
        assert!(p > 0.01, "p = {p}");
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(matches!(
            sample_disk_triangulation(1, 0.0, None),
            Err(TilingError::BadResolution(_))
        ));
        assert!(matches!(
            sample_disk_triangulation(1, 1e-2, Some(0.0)),
            Err(TilingError::BadJumpCutoff(_))
        ));
    }
}
