use serde::{Deserialize, Serialize};

use crate::arrangement::region_count_upper;

/// Upper bound on the number of knot types obtainable by single
/// inversions of an `n`-edge polygon:
/// `(n⁶ − 9n⁵ + 21n⁴ + 9n³ − 22n² − 96n) / 24`.
pub fn bound_knots(n: u64) -> u128 {
    let n = n as i128;
    let num = n.pow(6) - 9 * n.pow(5) + 21 * n.pow(4) + 9 * n.pow(3) - 22 * n.pow(2) - 96 * n;
    debug_assert_eq!(num.rem_euclid(24), 0);
    (num / 24).max(0) as u128
}

/// Maximum number of spheres in the system of an `n`-gon.
pub fn spheres_max(n: u64) -> u64 {
    n * n.saturating_sub(3) / 2
}

/// Largest edge count accepted by the lower bounds.
pub const MAX_LOWER_BOUND_EDGES: u32 = 127;

/// Lower bound on the number of knot types with at most `n` edges:
/// `⌊(√2ⁿ − 4) / 12⌋`, clamped at 0. For odd `n`, `√2ⁿ` is replaced by
/// its integer square root, which leaves the floor unchanged.
///
/// The bound comes from knots with `q = n/2` crossings, so for odd `n`
/// it strictly needs `q = (n − 1)/2`; see
/// [`lower_bound_knot_types_integral`].
///
/// # Panics
/// If `n > MAX_LOWER_BOUND_EDGES`.
pub fn lower_bound_knot_types(n: u32) -> u128 {
    assert!(n <= MAX_LOWER_BOUND_EDGES, "edge count {n} too large");
    let root = if n.is_multiple_of(2) { 1u128 << (n / 2) } else { (1u128 << n).isqrt() };
    root.saturating_sub(4) / 12
}

/// The same bound with the crossing number rounded down to an integer
/// for odd `n`, i.e. `⌊(2^⌊n/2⌋ − 4) / 12⌋`.
pub fn lower_bound_knot_types_integral(n: u32) -> u128 {
    assert!(n <= MAX_LOWER_BOUND_EDGES, "edge count {n} too large");
    (1u128 << (n / 2)).saturating_sub(4) / 12
}

/// Both bounds at one edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub n: u64,
    pub spheres_max: u64,
    pub knots_upper: u128,
    pub knots_upper_mobius: u128,
    pub knots_lower: u128,
}

impl BoundsTable {
    pub fn new(n: u64) -> Self {
        let upper = bound_knots(n);
        Self {
            n,
            spheres_max: spheres_max(n),
            knots_upper: upper,
            knots_upper_mobius: 2 * upper,
            knots_lower: lower_bound_knot_types(n as u32),
        }
    }
}

/// The first edge count at which the lower bound beats the (possibly
/// doubled) upper bound, with the values there and one step before.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossover {
    pub n: u64,
    pub factor: u128,
    pub upper_at: u128,
    pub lower_at: u128,
    pub upper_before: u128,
    pub lower_before: u128,
}

/// Scans `n = 4, 5, …` for the first `n` with
/// `lower(n) > factor · bound_knots(n)`, where `factor` is 2 when
/// compositions of inversions are allowed.
pub fn crossover(double_for_mobius: bool) -> Crossover {
    crossover_with(double_for_mobius, lower_bound_knot_types)
}

pub fn crossover_with(double_for_mobius: bool, lower: fn(u32) -> u128) -> Crossover {
    let factor = if double_for_mobius { 2 } else { 1 };
    let n = (4u32..120)
        .find(|&n| lower(n) > factor * bound_knots(n as u64))
        .expect("the lower bound is exponential");
    Crossover {
        n: n as u64,
        factor,
        upper_at: factor * bound_knots(n as u64),
        lower_at: lower(n),
        upper_before: factor * bound_knots(n as u64 - 1),
        lower_before: lower(n - 1),
    }
}

/// `bound_knots(n)` equals the region bound for the maximal sphere count.
pub fn bound_matches_region_bound(n: u64) -> bool {
    bound_knots(n) == region_count_upper(spheres_max(n))
}
