//! Spheres and planes determined by a polygon, and counting the connected
//! components of the complement of a finite set of round spheres.
//!
//! Planes are handled by conjugating the whole system with one inversion
//! whose center lies off every surface. An inversion is a homeomorphism of
//! the one-point compactification; it moves the point at infinity into one
//! region and removes its center from another, and removing a point from a
//! connected open subset of space leaves it connected, so component counts
//! are unchanged.

mod complex;
mod count;
mod generic;
mod poset;
mod system;
mod voxel;

pub use complex::{homology_ranks, rational_rank, BettiVector, OrderComplex};
pub use count::{circles_on_sphere_bound, euler_characteristic_generic, region_count_exact, region_count_upper};
pub use generic::{is_generic, random_generic_system};
pub use poset::{build_intersection_poset, IntersectionPoset, PosetElement, PosetGeometry};
pub use system::{
    format_sphere_system, parse_sphere_system, planarity_normalize, planarity_normalize_with, read_sphere_system,
    sphere_system, write_sphere_system, SkippedQuadruple, SphereSystem, NORMALIZATION_DRAWS,
};
pub use voxel::{
    voxel_region_count, voxel_region_count_stable, VoxelCount, MAX_RESOLUTION, MIN_RESOLUTION,
};

use thiserror::Error;

use crate::geom::GeomError;

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("no admissible inversion center found in {draws} draws")]
    NormalizationFailed { draws: usize },
    #[error("voxel counts did not stabilize: {history:?}")]
    Unresolved { history: Vec<(usize, usize)> },
    #[error("voxel resolution {0} is below the minimum of {MIN_RESOLUTION}")]
    InvalidResolution(usize),
    #[error("the poset is built from spheres only; normalize planes first")]
    PlanesPresent,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
