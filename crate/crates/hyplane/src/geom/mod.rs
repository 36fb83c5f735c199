//! Mobius-transformation algebra and ideal-polygon geometry in the Poincare
//! disk and upper half-plane models.
//!
//! All types are immutable values and every operation is pure, so everything
//! here can be shared freely across threads.

mod boundary;
mod mobius;
mod polygon;

pub use boundary::{
    angular_distance, canonical_angle, interior_to_model, BoundaryPoint, Model,
};
pub use mobius::{cross_ratio, MobiusMap, DEGENERATE_DET};
pub use polygon::{
    gap_normalizer, harmonic_measure, harmonic_measures_at, Gap, Geodesic, GeodesicShape,
    IdealPolygon, MIN_APEX_SEPARATION,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("matrix determinant below degeneracy floor")]
    DegenerateMap,
    #[error("operands live in different models")]
    ModelMismatch,
    #[error("boundary points are not in anticlockwise order")]
    Orientation,
    #[error("boundary points too close together")]
    DegenerateApexes,
    #[error("polygon must have 3 or 4 apexes, got {0}")]
    ApexCount(usize),
    #[error("derivative pin requires a finite chart coordinate")]
    InfiniteDerivativeChart,
}
