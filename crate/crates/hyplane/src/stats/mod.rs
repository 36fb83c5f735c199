//! Estimators and hypothesis tests used by the verification suite.

mod boxdim;
mod coverage;
pub mod special;
pub mod suite;
mod two_sample;

pub use boxdim::{
    boxdim_arcs, boxdim_points_1d, boxdim_points_2d, polygon_boundary_points,
};
pub use coverage::{chord_coverage, chord_trace, coverage_profile, CoverageScale};
pub use suite::{TestMember, TestReport};
pub use two_sample::{
    energy_permutation_test_2d, energy_statistic_2d, holm_reject, ks_two_sample, pearson_r,
    poisson_gof_pvalue,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("sample has zero variance")]
    DegenerateSample,
    #[error("need at least 4 scales spanning 3 octaves")]
    DegenerateScales,
    #[error("insufficient sample count for this test")]
    InsufficientSamples,
}
