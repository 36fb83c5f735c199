//! Random tilings of the hyperbolic disk by ideal polygons.
//!
//! This crate samples the Markovian Mobius-invariant triangulation of the
//! Poincare disk (and its quadrangulation analog), renders tilings to SVG,
//! and ships a statistical verification harness that turns the invariance,
//! reversibility and dimension properties of these tilings into falsifiable
//! hypothesis tests.
//!
//! Organization:
//! - [`geom`]: Mobius-transformation algebra and ideal-polygon geometry in
//!   the disk and half-plane models.
//! - [`rng`]: splittable counter-based random streams for reproducible
//!   parallel sampling.
//! - [`measures`]: exact samplers and density evaluators for the measures
//!   driving the construction.
//! - [`accordion`]: the pure-jump process growing a chain of triangles from
//!   an arch toward a boundary target.
//! - [`tiling`]: disk tiling assembly (Markovian triangulation, Farey-Ford
//!   reflection tiling, Bernoulli thinning).
//! - [`ngon`]: the square variant (jump pairs, square accordion, disk
//!   quadrangulation).
//! - [`stats`]: estimators and two-sample tests used by the verification
//!   suite.
//! - [`cli_io`]: command-line surface, JSON tiling documents, SVG rendering.

pub mod accordion;
pub mod cli_io;
pub mod geom;
pub mod measures;
pub mod ngon;
pub mod rng;
pub mod stats;
pub mod tiling;
