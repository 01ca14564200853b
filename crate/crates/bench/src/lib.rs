//! Shared fixtures for the benchmarks.

use polyinv_core::arrangement::{random_generic_system, sphere_system, SphereSystem};
use polyinv_core::polygon::{figure_eight_7, polygonal_inversion};
use polyinv_core::{InversionSpec, Point3, Polygon, Tolerance};
use rand::SeedableRng;

/// Images of the 7-edge figure-eight under the four tabulated centers.
pub fn figure_eight_images() -> Vec<(&'static str, Polygon)> {
    let k = figure_eight_7();
    [
        ("unknot", [0., 0., 0.]),
        ("trefoil_RH", [-6., -6., -6.]),
        ("trefoil_LH", [100., 100., 100.]),
        ("figure_eight", [1000., 1000., 1000.]),
    ]
    .into_iter()
    .map(|(name, c)| {
        let img = polygonal_inversion(&k, &InversionSpec::unit(Point3::from(c)), Tolerance::default())
            .expect("center off the vertices");
        (name, img)
    })
    .collect()
}

pub fn figure_eight_system() -> SphereSystem {
    sphere_system(&figure_eight_7(), Tolerance::default())
}

pub fn generic_system(m: usize) -> SphereSystem {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(m as u64);
    random_generic_system(m, 1e-2, &mut rng).expect("generic draw")
}
