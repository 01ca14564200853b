//! Inversive-geometry primitives: point inversion, compositions of
//! inversions, spheres and planes through point quadruples, and
//! sphere/circle intersections.
//!
//! Every degeneracy predicate is controlled by one [`Tolerance`].

mod inversion;
mod point;
mod surface;
mod tolerance;

pub use inversion::{apply_mobius, invert_point, ExtendedPoint, InversionSpec, MobiusMap};
pub use point::{orient3d, Point3};
pub use surface::{
    canonical_normal, intersect_circle_sphere, intersect_spheres, shape_of_quadruple, Circle3,
    CircleSurfaceIntersection, QuadrupleShape, SphereOrPlane, SurfaceIntersection,
};
pub use tolerance::{Tolerance, DEFAULT_EPS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// The point coincides with the center of the inversion at `index`
    /// (0 for a single inversion).
    #[error("point hits the center of inversion #{index}")]
    CenterHit { index: usize },
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("non-finite or zero-length vector")]
    NonFinite,
    #[error("two non-parallel planes meet in a line; normalize planes away first")]
    PlanesMeetInLine,
}
