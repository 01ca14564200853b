//! Polygonal inversion of knots through spheres.
//!
//! Inverting the vertices of a polygonal knot in a sphere and reconnecting
//! them with straight segments can change the knot type. The reachable types
//! are governed by an arrangement of spheres built from the polygon; this
//! crate builds that arrangement, counts its complementary regions exactly,
//! classifies knot types, and evaluates the counting bounds.

pub mod arrangement;
pub mod geom;
pub mod knots;
pub mod polygon;
pub mod survey;

pub use geom::{
    apply_mobius, invert_point, Circle3, InversionSpec, MobiusMap, Point3, QuadrupleShape, SphereOrPlane, Tolerance,
};
pub use knots::{classify, KnotClass, KnotLabel, LaurentPolynomial};
pub use polygon::Polygon;
pub use survey::{survey_centers, BoundsTable, SurveyReport};
