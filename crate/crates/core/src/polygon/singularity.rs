use serde::{Deserialize, Serialize};

use super::Polygon;
use crate::geom::{Point3, Tolerance};

/// Two non-adjacent edges that (nearly) meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityWitness {
    /// Edge indices; edge `i` joins vertices `i` and `i + 1`.
    pub edges: (usize, usize),
    pub point: Point3,
    pub gap: f64,
}

/// Minimal distance between segments `[p1, q1]` and `[p2, q2]` and the
/// parameters of the closest points.
pub fn segment_distance(p1: Point3, q1: Point3, p2: Point3, q2: Point3) -> (f64, f64, f64) {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.norm2();
    let e = d2.norm2();
    let f = d2.dot(r);
    let (s, t);
    if a <= f64::MIN_POSITIVE && e <= f64::MIN_POSITIVE {
        return (p1.dist(p2), 0.0, 0.0);
    }
    if a <= f64::MIN_POSITIVE {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(r);
        if e <= f64::MIN_POSITIVE {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let c1 = p1 + d1 * s;
    let c2 = p2 + d2 * t;
    (c1.dist(c2), s, t)
}

fn closest_pair(k: &Polygon) -> Option<SingularityWitness> {
    let mut best: Option<SingularityWitness> = None;
    for (i, j) in k.non_adjacent_pairs() {
        let (a, b) = k.edge(i);
        let (c, d) = k.edge(j);
        let (gap, s, t) = segment_distance(a, b, c, d);
        if best.is_none_or(|w| gap < w.gap) {
            let point = (a.lerp(b, s) + c.lerp(d, t)) * 0.5;
            best = Some(SingularityWitness { edges: (i, j), point, gap });
        }
    }
    best
}

/// Smallest distance between non-adjacent edges divided by the polygon's
/// diameter, or `None` for a triangle.
pub fn min_gap(k: &Polygon) -> Option<f64> {
    closest_pair(k).map(|w| w.gap / k.diameter())
}

/// The closest pair of non-adjacent edges, if they pass within
/// `ε · diameter` of each other.
pub fn find_singularity(k: &Polygon, tol: Tolerance) -> Option<SingularityWitness> {
    closest_pair(k).filter(|w| w.gap <= tol.eps * k.diameter())
}
