use rand::Rng;

use super::SphereSystem;
use crate::geom::{Point3, SphereOrPlane, Tolerance};

fn spheres(sys: &SphereSystem) -> Option<Vec<(Point3, f64)>> {
    sys.surfaces
        .iter()
        .map(|s| match *s {
            SphereOrPlane::Sphere { center, radius } => Some((center, radius)),
            SphereOrPlane::Plane { .. } => None,
        })
        .collect()
}

/// The two points common to three spheres, when they exist and are at
/// least `margin` apart. Solved directly from the two radical planes.
fn triple_points(a: (Point3, f64), b: (Point3, f64), c: (Point3, f64), margin: f64) -> Option<[Point3; 2]> {
    let plane = |s: (Point3, f64), t: (Point3, f64)| {
        let n = (t.0 - s.0) * 2.0;
        let rhs = t.0.norm2() - s.0.norm2() - t.1 * t.1 + s.1 * s.1;
        (n, rhs)
    };
    let (n1, d1) = plane(a, b);
    let (n2, d2) = plane(a, c);
    let u = n1.cross(n2);
    let uu = u.norm2();
    if uu.sqrt() <= margin * n1.norm() * n2.norm() {
        return None;
    }
    // Point on both planes closest to the origin.
    let x0 = (n2.cross(u) * d1 + u.cross(n1) * d2) / uu;
    let w = x0 - a.0;
    let (qa, qb, qc) = (uu, 2.0 * u.dot(w), w.norm2() - a.1 * a.1);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let (t1, t2) = ((-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa));
    let (p, q) = (x0 + u * t1, x0 + u * t2);
    (p.dist(q) > margin).then_some([p, q])
}

/// Whether every pair of spheres meets in a circle, every triple in two
/// points, and no four share a point, each with slack `margin` relative to
/// the largest radius.
pub fn is_generic(sys: &SphereSystem, margin: f64) -> bool {
    let Some(s) = spheres(sys) else { return false };
    let scale = sys.max_radius();
    let m = margin * scale;
    let n = s.len();
    for i in 0..n {
        for j in i + 1..n {
            let d = s[i].0.dist(s[j].0);
            if d >= s[i].1 + s[j].1 - m || d <= (s[i].1 - s[j].1).abs() + m {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let Some(pts) = triple_points(s[i], s[j], s[k], m) else { return false };
                for q in pts {
                    let on_fourth = (0..n)
                        .filter(|&l| l != i && l != j && l != k)
                        .any(|l| (q.dist(s[l].0) - s[l].1).abs() <= m);
                    if on_fourth {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Draws random configurations of `m` spheres of radius near 1 with
/// centers in a small ball until one passes [`is_generic`] with the given
/// margin. Gives up after 10 000 draws.
pub fn random_generic_system<R: Rng + ?Sized>(m: usize, margin: f64, rng: &mut R) -> Option<SphereSystem> {
    for _ in 0..10_000 {
        let surfaces: Vec<SphereOrPlane> = (0..m)
            .map(|_| {
                let c = loop {
                    let c = Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    if c.norm() <= 1.0 {
                        break c * 0.6;
                    }
                };
                SphereOrPlane::sphere(c, rng.gen_range(0.85..1.15)).expect("positive radius")
            })
            .collect();
        let sys = SphereSystem::from_surfaces(surfaces, Tolerance::default());
        if sys.len() == m && is_generic(&sys, margin) {
            return Some(sys);
        }
    }
    None
}
