//! Reflection closure of an ideal triangle: each neighbor's new apex is the
//! circle inversion of the opposite apex across the shared edge geodesic.
//! Starting from any nondegenerate triangle this generates the unique
//! triangulation in which every triangle has exactly three reflected
//! neighbors.

use std::collections::{HashSet, VecDeque};

use num_complex::Complex64;

use super::{now_unix, Tiling, TilingError, TilingKind, TilingMeta};
use crate::geom::{BoundaryPoint, Geodesic, GeodesicShape, IdealPolygon, Model};
use crate::measures::sample_p0;
use crate::rng::RandomStream;

/// Inversion of a boundary point across a geodesic of the same model.
pub fn reflect_across(edge: &Geodesic, p: BoundaryPoint) -> BoundaryPoint {
    match edge.shape() {
        GeodesicShape::Arc { center, radius } => match edge.model() {
            Model::Disk => {
                let z = p.complex().expect("disk points are finite");
                let w = center + radius * radius / (z - center).conj();
                BoundaryPoint::disk(w.arg())
            }
            Model::Halfplane => match p.complex() {
                Some(z) => {
                    let d = z.re - center.re;
                    if d == 0.0 {
                        BoundaryPoint::infinity()
                    } else {
                        BoundaryPoint::halfplane(center.re + radius * radius / d)
                    }
                }
                None => BoundaryPoint::halfplane(center.re),
            },
        },
        GeodesicShape::Diameter { dir } => {
            let z = p.complex().expect("disk points are finite");
            BoundaryPoint::disk((dir * dir * z.conj()).arg())
        }
        GeodesicShape::Vertical { x } => match p.complex() {
            Some(z) => BoundaryPoint::halfplane(2.0 * x - z.re),
            None => BoundaryPoint::infinity(),
        },
    }
}

/// The three reflected neighbors of a triangle, anticlockwise apexes.
pub fn neighbors(tri: &IdealPolygon) -> Vec<IdealPolygon> {
    let a = tri.apexes();
    debug_assert_eq!(a.len(), 3);
    (0..3)
        .filter_map(|i| {
            let p = a[i];
            let q = a[(i + 1) % 3];
            let opposite = a[(i + 2) % 3];
            let edge = Geodesic::new(p, q).ok()?;
            let w = reflect_across(&edge, opposite);
            // The new apex lies on the far arc from p to q, so (p, w, q) is
            // anticlockwise.
            IdealPolygon::new(vec![p, w, q]).ok()
        })
        .collect()
}

// Dedup key: apex angles quantized well below any separation that occurs at
// practical depths, sorted. The neighbor offsets absorb straddling at the
// quantization boundaries.
const KEY_QUANTUM: f64 = 1e-10;

fn key_of(tri: &IdealPolygon) -> [i64; 3] {
    let mut k: Vec<i64> = tri
        .apexes()
        .iter()
        .map(|p| (p.angle() / KEY_QUANTUM).round() as i64)
        .collect();
    k.sort_unstable();
    [k[0], k[1], k[2]]
}

fn seen_nearby(seen: &HashSet<[i64; 3]>, key: [i64; 3]) -> bool {
    // Check the 27 neighboring quantization cells.
    for da in -1..=1i64 {
        for db in -1..=1i64 {
            for dc in -1..=1i64 {
                if seen.contains(&[key[0] + da, key[1] + db, key[2] + dc]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Breadth-first reflection closure to a fixed generation depth; the seed
/// triangle is generation 1.
pub fn farey_ref_depth(tau: &IdealPolygon, depth: u32) -> Vec<IdealPolygon> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key_of(tau));
    queue.push_back((tau.clone(), 1u32));
    while let Some((tri, generation)) = queue.pop_front() {
        if generation < depth {
            for nb in neighbors(&tri) {
                let key = key_of(&nb);
                if !seen_nearby(&seen, key) {
                    seen.insert(key);
                    queue.push_back((nb, generation + 1));
                }
            }
        }
        out.push(tri);
    }
    out
}

/// Breadth-first reflection closure down to a Euclidean diameter floor in the
/// triangle's chart. Expansion continues a bit below the floor so that every
/// polygon above it is reached.
pub fn farey_ref(tau: &IdealPolygon, resolution: f64) -> Result<Vec<IdealPolygon>, TilingError> {
    if !(resolution > 0.0) {
        return Err(TilingError::BadResolution(resolution));
    }
    let expand_floor = resolution / 4.0;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(key_of(tau));
    queue.push_back(tau.clone());
    while let Some(tri) = queue.pop_front() {
        let diam = tri.euclidean_diameter();
        if diam >= expand_floor {
            for nb in neighbors(&tri) {
                let key = key_of(&nb);
                if !seen_nearby(&seen, key) {
                    seen.insert(key);
                    queue.push_back(nb);
                }
            }
        }
        if diam >= resolution {
            out.push(tri);
        }
    }
    Ok(out)
}

/// Assemble a reflection tiling of the disk. With a seed, the base triangle
/// is a random origin triangle; without one, it is the standard triangle at
/// the cube roots of unity.
pub fn farey_tiling(seed: Option<u64>, resolution: f64) -> Result<Tiling, TilingError> {
    let tau = match seed {
        Some(s) => sample_p0(&mut RandomStream::new(s).split(0)),
        None => crate::measures::standard_triangle(),
    };
    let polygons = farey_ref(&tau, resolution)?;
    Ok(Tiling {
        polygons,
        kind: TilingKind::Farey,
        meta: TilingMeta {
            seed: seed.unwrap_or(0),
            resolution,
            jump_cutoff: 0.0,
            thin_p: None,
            budget_exhausted: false,
            created_unix: now_unix(),
        },
    })
}

/// Walk the reflection tiling toward `z`: starting from `tau`, repeatedly
/// reflect across the edge that separates the current triangle from `z`.
/// Returns the triangle containing `z`.
pub fn farey_walk(tau: &IdealPolygon, z: Complex64, max_steps: usize) -> Option<IdealPolygon> {
    let mut current = tau.clone();
    for _ in 0..max_steps {
        if current.contains(z) {
            return Some(current);
        }
        let a = current.apexes().to_vec();
        let mut moved = false;
        for i in 0..3 {
            let p = a[i];
            let q = a[(i + 1) % 3];
            let opposite = a[(i + 2) % 3];
            let edge = Geodesic::new(p, q).ok()?;
            let side_z = edge.side_of(z);
            let side_in = edge.side_of_boundary(opposite);
            if side_z != 0.0 && side_z.signum() != side_in.signum() {
                let w = reflect_across(&edge, opposite);
                current = IdealPolygon::new(vec![p, w, q]).ok()?;
                moved = true;
                break;
            }
        }
        if !moved {
            // z sits on an edge; treat as unresolved.
            return None;
        }
    }
    None
}
