//! Which knot types a polygon reaches under inversion, and how many it
//! could reach at most.
//!
//! The knot type of `ρ̂(K)` depends only on the center: it is constant on
//! each complementary region of the sphere system and does not change with
//! the radius. Surveys therefore fix the radius at 1 and sample centers
//! on both sides of every sphere plus at random in a box around `K`.

mod bounds;
mod mobius;
mod sampler;

pub use bounds::{
    bound_knots, bound_matches_region_bound, crossover, crossover_with, lower_bound_knot_types,
    lower_bound_knot_types_integral, spheres_max, MAX_LOWER_BOUND_EDGES, BoundsTable, Crossover,
};
pub use mobius::{check_mobius_theorem, MobiusCheck, MobiusVerdict};
pub use sampler::{
    classify_center, polygon_digest, survey_centers, CenterOutcome, CenterSource, SurveyEntry, SurveyReport,
    SurveyStrategy, REPORT_SCHEMA,
};

use thiserror::Error;

use crate::arrangement::ArrangementError;
use crate::knots::KnotError;
use crate::polygon::PolygonError;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}
