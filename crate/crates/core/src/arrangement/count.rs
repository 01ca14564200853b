use super::{build_intersection_poset, homology_ranks, planarity_normalize, ArrangementError, SphereSystem};
use crate::geom::Tolerance;

/// Number of connected components of the complement of the system.
///
/// Computed from the intersection poset: one region outside everything,
/// one per sphere, `k − 1` for each circle lying on `k` spheres, and the
/// top-dimensional reduced Betti number of the order complex of the poset
/// without its top element. Planes are first removed by
/// [`planarity_normalize`].
pub fn region_count_exact(sys: &SphereSystem, tol: Tolerance) -> Result<usize, ArrangementError> {
    let sys = planarity_normalize(sys, tol)?;
    let poset = build_intersection_poset(&sys, tol)?;
    let circle_terms: usize = poset.elements.iter().filter(|e| e.dim() == 1).map(|e| e.spheres.len() - 1).sum();
    let top = homology_ranks(&poset.order_complex_below(poset.top()));
    Ok(1 + poset.sphere_count() + circle_terms + top.b2 as usize)
}

fn choose3(m: u128) -> u128 {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

fn choose2(m: u128) -> u128 {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Maximum number of complementary regions of `m` spheres: `2·C(m,3) + 2m`.
pub fn region_count_upper(m: u64) -> u128 {
    let m = m as u128;
    2 * choose3(m) + 2 * m
}

/// Maximum number of regions that `k` circles cut a sphere into.
pub fn circles_on_sphere_bound(k: u64) -> u64 {
    if k == 0 {
        1
    } else {
        k * k - k + 2
    }
}

/// Euler characteristic of the order complex of a generic arrangement of
/// `m` spheres: `2·C(m,3) − C(m,2) + m`.
pub fn euler_characteristic_generic(m: u64) -> i128 {
    let m = m as u128;
    2 * choose3(m) as i128 - choose2(m) as i128 + m as i128
}
