//! Knot type identification for embedded polygons: generic projection to a
//! signed planar diagram, Kauffman bracket state sum, Jones polynomial,
//! determinant, and lookup in a small reference table.
//!
//! # Conventions
//!
//! A projection direction `d` points from the diagram towards the viewer;
//! the strand with larger height along `d` is the over-strand. A crossing is
//! positive when (over tangent, under tangent, `d`) is right-handed. The
//! right-handed trefoil is the one whose minimal diagram has writhe `+3`.
//! The Jones polynomial is carried in the bracket variable `A`
//! (`t = A⁻⁴`), so mirroring is `A ↦ A⁻¹`.

mod bracket;
mod classify;
mod diagram;
mod laurent;

pub use bracket::{determinant, jones, kauffman_bracket, MAX_STATE_CROSSINGS};
pub use classify::{
    classify, classify_diagram, classify_with, label_for, reference_table, KnotClass, KnotLabel, ReferenceEntry,
};
pub use diagram::{
    project_along, project_to_diagram, random_direction, Crossing, KnotDiagram, ProjectionIssue,
    MAX_PROJECTION_RETRIES,
};
pub use laurent::LaurentPolynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KnotError {
    #[error("state sum over {crossings} crossings exceeds the cap of {MAX_STATE_CROSSINGS}")]
    StateExplosion { crossings: usize },
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("no generic projection found after {MAX_PROJECTION_RETRIES} directions")]
    NoGenericProjection,
    #[error("polygon is singular: edges {edges:?} meet")]
    Singular { edges: (usize, usize) },
}
