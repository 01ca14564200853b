use serde::{Deserialize, Serialize};

use super::{GeomError, InversionSpec, Point3, Tolerance};

/// A round sphere or an affine plane (a sphere through ∞).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SphereOrPlane {
    Sphere { center: Point3, radius: f64 },
    /// Points `x` with `⟨unit_normal, x⟩ = offset`.
    Plane { unit_normal: Point3, offset: f64 },
}

/// A round circle: the points at distance `radius` from `center` in the
/// plane through `center` orthogonal to `unit_normal`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle3 {
    pub center: Point3,
    pub radius: f64,
    pub unit_normal: Point3,
}

/// Classification of four points by the spheres passing through them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum QuadrupleShape {
    UniqueSphere(SphereOrPlane),
    Concyclic(Circle3),
    Colinear,
    Coincident,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SurfaceIntersection {
    Empty,
    TangentPoint(Point3),
    Circle(Circle3),
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CircleSurfaceIntersection {
    Empty,
    OnePoint(Point3),
    TwoPoints(Point3, Point3),
    Contained,
}

/// Flips `n` so that its first non-negligible coordinate is positive.
pub fn canonical_normal(n: Point3) -> Point3 {
    let lead = [n.x, n.y, n.z]
        .into_iter()
        .find(|c| c.abs() > 1e-12)
        .unwrap_or(0.0);
    if lead < 0.0 {
        -n
    } else {
        n
    }
}

impl SphereOrPlane {
    pub fn sphere(center: Point3, radius: f64) -> Result<Self, GeomError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidRadius(radius));
        }
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self::Sphere { center, radius })
    }

    /// Plane `⟨normal, x⟩ = offset`; the normal need not be unit length.
    pub fn plane(normal: Point3, offset: f64) -> Result<Self, GeomError> {
        let len = normal.norm();
        let unit = normal.normalized().ok_or(GeomError::NonFinite)?;
        let c = canonical_normal(unit);
        let sign = if c == unit { 1.0 } else { -1.0 };
        Ok(Self::Plane { unit_normal: c, offset: sign * offset / len })
    }

    pub fn is_plane(&self) -> bool {
        matches!(self, Self::Plane { .. })
    }

    /// Signed distance: for a sphere, `|x − c| − r` (negative inside); for a
    /// plane, `⟨n, x⟩ − offset`.
    pub fn signed_distance(&self, x: Point3) -> f64 {
        match *self {
            Self::Sphere { center, radius } => x.dist(center) - radius,
            Self::Plane { unit_normal, offset } => unit_normal.dot(x) - offset,
        }
    }

    /// Magnitude used to scale tolerances for this surface.
    pub fn scale(&self) -> f64 {
        match *self {
            Self::Sphere { center, radius } => radius.max(center.max_abs().min(radius * 1e3)),
            Self::Plane { offset, .. } => offset.abs(),
        }
    }

    pub fn contains_point(&self, x: Point3, tol: Tolerance) -> bool {
        let scale = match *self {
            Self::Sphere { radius, .. } => radius,
            Self::Plane { offset, .. } => offset.abs().max(x.norm()),
        };
        self.signed_distance(x).abs() <= tol.at(scale)
    }

    pub fn approx_eq(&self, other: &SphereOrPlane, tol: Tolerance) -> bool {
        match (*self, *other) {
            (Self::Sphere { center: c1, radius: r1 }, Self::Sphere { center: c2, radius: r2 }) => {
                let t = tol.at(r1.max(r2));
                c1.dist(c2) <= t && (r1 - r2).abs() <= t
            }
            (Self::Plane { unit_normal: n1, offset: o1 }, Self::Plane { unit_normal: n2, offset: o2 }) => {
                n1.dist(n2) <= tol.at(1.0) && (o1 - o2).abs() <= tol.at(o1.abs().max(o2.abs()))
            }
            _ => false,
        }
    }

    /// Image of this surface under an inversion whose center is not on it.
    pub fn invert(&self, spec: &InversionSpec, tol: Tolerance) -> Result<SphereOrPlane, GeomError> {
        let p = spec.center;
        let k2 = spec.radius * spec.radius;
        match *self {
            Self::Sphere { center, radius } => {
                let d = center - p;
                let pow = d.norm2() - radius * radius;
                if pow.abs() <= tol.at(radius * radius) {
                    // Sphere through the center maps to a plane.
                    let n = d.normalized().ok_or(GeomError::NonFinite)?;
                    // Farthest point p + 2d maps to the plane's foot point.
                    let foot = p + n * (k2 / (2.0 * d.norm()));
                    return SphereOrPlane::plane(n, n.dot(foot));
                }
                SphereOrPlane::sphere(p + d * (k2 / pow), k2 * radius / pow.abs())
            }
            Self::Plane { unit_normal, offset } => {
                let s = offset - unit_normal.dot(p);
                if s.abs() <= tol.at(offset.abs().max(p.norm())) {
                    return Ok(*self);
                }
                SphereOrPlane::sphere(p + unit_normal * (k2 / (2.0 * s)), k2 / (2.0 * s.abs()))
            }
        }
    }
}

impl Circle3 {
    pub fn new(center: Point3, radius: f64, normal: Point3) -> Result<Self, GeomError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidRadius(radius));
        }
        let unit_normal = canonical_normal(normal.normalized().ok_or(GeomError::NonFinite)?);
        Ok(Self { center, radius, unit_normal })
    }

    /// Circle through three non-colinear points.
    pub fn through(a: Point3, b: Point3, c: Point3) -> Option<Circle3> {
        let ab = b - a;
        let ac = c - a;
        let n = ab.cross(ac);
        let n2 = n.norm2();
        if n2 == 0.0 || !n2.is_finite() {
            return None;
        }
        let offset = (n.cross(ab) * ac.norm2() + ac.cross(n) * ab.norm2()) / (2.0 * n2);
        let center = a + offset;
        Circle3::new(center, offset.norm(), n).ok()
    }

    /// Orthonormal basis `(e1, e2)` of the circle's plane.
    pub fn basis(&self) -> (Point3, Point3) {
        let e1 = self.unit_normal.any_orthogonal();
        (e1, self.unit_normal.cross(e1))
    }

    pub fn point_at(&self, angle: f64) -> Point3 {
        let (e1, e2) = self.basis();
        self.center + (e1 * angle.cos() + e2 * angle.sin()) * self.radius
    }

    /// Distance from `x` to the circle.
    pub fn distance_to(&self, x: Point3) -> f64 {
        let d = x - self.center;
        let h = d.dot(self.unit_normal);
        let radial = (d - self.unit_normal * h).norm();
        ((radial - self.radius).powi(2) + h * h).sqrt()
    }

    pub fn contains_point(&self, x: Point3, tol: Tolerance) -> bool {
        self.distance_to(x) <= tol.at(self.radius)
    }

    pub fn approx_eq(&self, other: &Circle3, tol: Tolerance) -> bool {
        let t = tol.at(self.radius.max(other.radius));
        self.center.dist(other.center) <= t
            && (self.radius - other.radius).abs() <= t
            && self.unit_normal.dist(other.unit_normal) <= tol.at(1.0) * 1e3
    }
}

/// Classifies four points: most degenerate case first.
pub fn shape_of_quadruple(pts: [Point3; 4], tol: Tolerance) -> QuadrupleShape {
    let scale = pts
        .iter()
        .flat_map(|a| pts.iter().map(move |b| a.dist(*b)))
        .fold(0.0f64, f64::max);
    let t = tol.at(scale);

    // Coincident: fewer than three distinct points.
    let mut distinct: Vec<Point3> = Vec::with_capacity(4);
    for p in pts {
        if distinct.iter().all(|q| q.dist(p) > t) {
            distinct.push(p);
        }
    }
    if distinct.len() < 3 {
        return QuadrupleShape::Coincident;
    }

    // The triple spanning the largest triangle anchors the remaining tests.
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let area = |(i, j, k): (usize, usize, usize)| (pts[j] - pts[i]).cross(pts[k] - pts[i]).norm();
    let (i, j, k) = triples
        .into_iter()
        .max_by(|a, b| area(*a).total_cmp(&area(*b)))
        .unwrap();
    let l = 6 - i - j - k;
    let max_area = area((i, j, k));

    // Colinear: twice the largest triangle area vanishes relative to scale².
    if max_area <= tol.at(scale) * scale {
        return QuadrupleShape::Colinear;
    }

    let circle = Circle3::through(pts[i], pts[j], pts[k]).expect("non-colinear triple");
    let height = (pts[l] - circle.center).dot(circle.unit_normal);
    let coplanar = height.abs() <= t;
    if coplanar {
        if circle.contains_point(pts[l], tol) {
            return QuadrupleShape::Concyclic(circle);
        }
        let normal = circle.unit_normal;
        let plane = SphereOrPlane::plane(normal, normal.dot(circle.center))
            .expect("unit normal");
        return QuadrupleShape::UniqueSphere(plane);
    }
    match sphere_through(pts) {
        Some(s) => QuadrupleShape::UniqueSphere(s),
        None => {
            let normal = circle.unit_normal;
            QuadrupleShape::UniqueSphere(
                SphereOrPlane::plane(normal, normal.dot(circle.center)).expect("unit normal"),
            )
        }
    }
}

/// Sphere through four affinely spanning points, from the 3×3 linear
/// system obtained by subtracting the sphere equations pairwise.
fn sphere_through(pts: [Point3; 4]) -> Option<SphereOrPlane> {
    let o = pts[0];
    let a = pts[1] - o;
    let b = pts[2] - o;
    let c = pts[3] - o;
    // 2⟨q, c'⟩ = |q|² for q in {a, b, c}, c' = center − o.
    let det = a.dot(b.cross(c));
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let rhs = Point3::new(a.norm2(), b.norm2(), c.norm2()) * 0.5;
    let center = (b.cross(c) * rhs.x + c.cross(a) * rhs.y + a.cross(b) * rhs.z) / det;
    let radius = center.norm();
    SphereOrPlane::sphere(o + center, radius).ok()
}

/// Intersection of two spheres or planes.
pub fn intersect_spheres(
    a: &SphereOrPlane,
    b: &SphereOrPlane,
    tol: Tolerance,
) -> Result<SurfaceIntersection, GeomError> {
    use SphereOrPlane::*;
    match (*a, *b) {
        (Sphere { center: c1, radius: r1 }, Sphere { center: c2, radius: r2 }) => {
            Ok(sphere_sphere(c1, r1, c2, r2, tol))
        }
        (Sphere { center, radius }, Plane { unit_normal, offset })
        | (Plane { unit_normal, offset }, Sphere { center, radius }) => {
            let h = unit_normal.dot(center) - offset;
            let t = tol.at(radius);
            let foot = center - unit_normal * h;
            if h.abs() > radius + t {
                Ok(SurfaceIntersection::Empty)
            } else if (h.abs() - radius).abs() <= t {
                Ok(SurfaceIntersection::TangentPoint(foot))
            } else {
                let rr = (radius * radius - h * h).sqrt();
                Ok(SurfaceIntersection::Circle(Circle3::new(foot, rr, unit_normal)?))
            }
        }
        (Plane { unit_normal: n1, offset: o1 }, Plane { unit_normal: n2, offset: o2 }) => {
            if n1.cross(n2).norm() <= tol.at(1.0) {
                let o2 = if n1.dot(n2) < 0.0 { -o2 } else { o2 };
                if (o1 - o2).abs() <= tol.at(o1.abs().max(o2.abs())) {
                    Ok(SurfaceIntersection::Equal)
                } else {
                    Ok(SurfaceIntersection::Empty)
                }
            } else {
                Err(GeomError::PlanesMeetInLine)
            }
        }
    }
}

fn sphere_sphere(c1: Point3, r1: f64, c2: Point3, r2: f64, tol: Tolerance) -> SurfaceIntersection {
    let t = tol.at(r1.max(r2));
    let d = c1.dist(c2);
    if d <= t {
        return if (r1 - r2).abs() <= t {
            SurfaceIntersection::Equal
        } else {
            SurfaceIntersection::Empty
        };
    }
    let u = (c2 - c1) / d;
    if (d - (r1 + r2)).abs() <= t {
        return SurfaceIntersection::TangentPoint(c1 + u * r1);
    }
    if d > r1 + r2 {
        return SurfaceIntersection::Empty;
    }
    if (d - (r1 - r2).abs()).abs() <= t {
        // Internal tangency, on the far side of the smaller sphere.
        let p = if r1 >= r2 { c1 + u * r1 } else { c1 - u * r1 };
        return SurfaceIntersection::TangentPoint(p);
    }
    if d < (r1 - r2).abs() {
        return SurfaceIntersection::Empty;
    }
    // Ordering the pair makes the computation symmetric in its arguments.
    let (c1, r1, c2, r2) = if (r1, c1.x, c1.y, c1.z) <= (r2, c2.x, c2.y, c2.z) {
        (c1, r1, c2, r2)
    } else {
        (c2, r2, c1, r1)
    };
    let u = (c2 - c1) / d;
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let rr = (r1 * r1 - a * a).max(0.0).sqrt();
    match Circle3::new(c1 + u * a, rr, u) {
        Ok(c) => SurfaceIntersection::Circle(c),
        Err(_) => SurfaceIntersection::TangentPoint(c1 + u * a),
    }
}

/// Intersection of a circle with a sphere or plane.
pub fn intersect_circle_sphere(c: &Circle3, s: &SphereOrPlane, tol: Tolerance) -> CircleSurfaceIntersection {
    let n = c.unit_normal;
    match *s {
        SphereOrPlane::Sphere { center, radius } => {
            let t = tol.at(radius.max(c.radius));
            let h = (center - c.center).dot(n);
            let foot = center - n * h;
            let r2 = radius * radius - h * h;
            if r2 < -t * (radius + c.radius) {
                return CircleSurfaceIntersection::Empty;
            }
            let rs = r2.max(0.0).sqrt();
            coplanar_circles(c, foot, rs, t)
        }
        SphereOrPlane::Plane { unit_normal, offset } => {
            let t = tol.at(c.radius.max(offset.abs()));
            let dir = n.cross(unit_normal);
            let dn = dir.norm();
            if dn <= tol.at(1.0) {
                // Parallel planes.
                let h = unit_normal.dot(c.center) - offset;
                return if h.abs() <= t {
                    CircleSurfaceIntersection::Contained
                } else {
                    CircleSurfaceIntersection::Empty
                };
            }
            let dir = dir / dn;
            // Direction within the circle plane orthogonal to the line.
            let w = n.cross(dir);
            let s = (offset - unit_normal.dot(c.center)) / unit_normal.dot(w);
            line_circle(c, c.center + w * s, dir, t)
        }
    }
}

/// Intersection of circle `c` with the circle of center `o`, radius `r`
/// lying in the same plane.
fn coplanar_circles(c: &Circle3, o: Point3, r: f64, t: f64) -> CircleSurfaceIntersection {
    let d = c.center.dist(o);
    if d <= t {
        return if (r - c.radius).abs() <= t {
            CircleSurfaceIntersection::Contained
        } else {
            CircleSurfaceIntersection::Empty
        };
    }
    let u = (o - c.center) / d;
    let (r1, r2) = (c.radius, r);
    if (d - (r1 + r2)).abs() <= t {
        return CircleSurfaceIntersection::OnePoint(c.center + u * r1);
    }
    if (d - (r1 - r2).abs()).abs() <= t {
        let p = if r1 >= r2 { c.center + u * r1 } else { c.center - u * r1 };
        return CircleSurfaceIntersection::OnePoint(p);
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return CircleSurfaceIntersection::Empty;
    }
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let v = c.unit_normal.cross(u);
    let m = c.center + u * a;
    CircleSurfaceIntersection::TwoPoints(m + v * h, m - v * h)
}

fn line_circle(c: &Circle3, q: Point3, dir: Point3, t: f64) -> CircleSurfaceIntersection {
    // Closest point of the line to the circle center.
    let foot = q + dir * (c.center - q).dot(dir);
    let d = foot.dist(c.center);
    if (d - c.radius).abs() <= t {
        CircleSurfaceIntersection::OnePoint(foot)
    } else if d > c.radius {
        CircleSurfaceIntersection::Empty
    } else {
        let h = (c.radius * c.radius - d * d).sqrt();
        CircleSurfaceIntersection::TwoPoints(foot + dir * h, foot - dir * h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn unit(c: Point3) -> SphereOrPlane {
        SphereOrPlane::sphere(c, 1.0).unwrap()
    }

    #[test]
    fn quadruple_on_unit_sphere() {
        let s = shape_of_quadruple([p(1., 0., 0.), p(-1., 0., 0.), p(0., 1., 0.), p(0., 0., 1.)], tol());
        match s {
            QuadrupleShape::UniqueSphere(SphereOrPlane::Sphere { center, radius }) => {
                assert!(center.norm() < 1e-12);
                assert!((radius - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coplanar_quadruple_gives_plane() {
        let s = shape_of_quadruple([p(0., 0., 0.), p(1., 0., 0.), p(0., 1., 0.), p(3., 3., 0.)], tol());
        assert_eq!(
            s,
            QuadrupleShape::UniqueSphere(SphereOrPlane::Plane { unit_normal: p(0., 0., 1.), offset: 0.0 })
        );
        // The corners of a square are concyclic, not a unique plane.
        let sq = shape_of_quadruple([p(0., 0., 0.), p(1., 0., 0.), p(0., 1., 0.), p(1., 1., 0.)], tol());
        assert!(matches!(sq, QuadrupleShape::Concyclic(_)));
    }

    #[test]
    fn concyclic_colinear_coincident() {
        match shape_of_quadruple([p(1., 0., 0.), p(0., 1., 0.), p(-1., 0., 0.), p(0., -1., 0.)], tol()) {
            QuadrupleShape::Concyclic(c) => {
                assert!(c.center.norm() < 1e-12);
                assert!((c.radius - 1.0).abs() < 1e-12);
                assert!(c.unit_normal.dist(p(0., 0., 1.)) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            shape_of_quadruple([p(0., 0., 0.), p(1., 1., 1.), p(2., 2., 2.), p(-5., -5., -5.)], tol()),
            QuadrupleShape::Colinear
        );
        assert_eq!(
            shape_of_quadruple([p(0., 0., 0.), p(0., 0., 0.), p(1., 0., 0.), p(1., 0., 0.)], tol()),
            QuadrupleShape::Coincident
        );
        // Three distinct, non-colinear points lie on a circle.
        assert!(matches!(
            shape_of_quadruple([p(0., 0., 0.), p(0., 0., 0.), p(1., 0., 0.), p(0., 1., 0.)], tol()),
            QuadrupleShape::Concyclic(_)
        ));
    }

    #[test]
    fn sphere_pairs() {
        let a = unit(Point3::ORIGIN);
        match intersect_spheres(&a, &unit(p(1., 0., 0.)), tol()).unwrap() {
            SurfaceIntersection::Circle(c) => {
                assert!(c.center.dist(p(0.5, 0., 0.)) < 1e-12);
                assert!((c.radius - 3f64.sqrt() / 2.0).abs() < 1e-12);
                assert!(c.unit_normal.dist(p(1., 0., 0.)) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            intersect_spheres(&a, &unit(p(2., 0., 0.)), tol()).unwrap(),
            SurfaceIntersection::TangentPoint(p(1., 0., 0.))
        );
        assert_eq!(intersect_spheres(&a, &unit(p(3., 0., 0.)), tol()).unwrap(), SurfaceIntersection::Empty);
        assert_eq!(intersect_spheres(&a, &a, tol()).unwrap(), SurfaceIntersection::Equal);
        // Nested and internally tangent.
        let big = SphereOrPlane::sphere(Point3::ORIGIN, 3.0).unwrap();
        assert_eq!(intersect_spheres(&big, &a, tol()).unwrap(), SurfaceIntersection::Empty);
        assert_eq!(
            intersect_spheres(&big, &unit(p(2., 0., 0.)), tol()).unwrap(),
            SurfaceIntersection::TangentPoint(p(3., 0., 0.))
        );
    }

    #[test]
    fn planes() {
        let z0 = SphereOrPlane::plane(p(0., 0., -2.), 0.0).unwrap();
        assert_eq!(z0, SphereOrPlane::Plane { unit_normal: p(0., 0., 1.), offset: 0.0 });
        let z1 = SphereOrPlane::plane(p(0., 0., 1.), 1.0).unwrap();
        let x0 = SphereOrPlane::plane(p(1., 0., 0.), 0.0).unwrap();
        assert_eq!(intersect_spheres(&z0, &z1, tol()).unwrap(), SurfaceIntersection::Empty);
        assert_eq!(intersect_spheres(&z0, &z0, tol()).unwrap(), SurfaceIntersection::Equal);
        assert_eq!(intersect_spheres(&z0, &x0, tol()), Err(GeomError::PlanesMeetInLine));
        match intersect_spheres(&z0, &unit(Point3::ORIGIN), tol()).unwrap() {
            SurfaceIntersection::Circle(c) => assert!((c.radius - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            intersect_spheres(&unit(p(0., 0., 1.)), &z0, tol()).unwrap(),
            SurfaceIntersection::TangentPoint(Point3::ORIGIN)
        );
    }

    #[test]
    fn circle_against_sphere() {
        let c = Circle3::new(Point3::ORIGIN, 1.0, p(0., 0., 1.)).unwrap();
        assert_eq!(intersect_circle_sphere(&c, &unit(Point3::ORIGIN), tol()), CircleSurfaceIntersection::Contained);
        match intersect_circle_sphere(&c, &unit(p(1., 0., 0.)), tol()) {
            CircleSurfaceIntersection::TwoPoints(a, b) => {
                let h = 3f64.sqrt() / 2.0;
                let (a, b) = if a.y > b.y { (a, b) } else { (b, a) };
                assert!(a.dist(p(0.5, h, 0.)) < 1e-12);
                assert!(b.dist(p(0.5, -h, 0.)) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(intersect_circle_sphere(&c, &unit(p(0., 0., 5.)), tol()), CircleSurfaceIntersection::Empty);
        // Sphere touching the circle's plane away from the circle.
        assert_eq!(intersect_circle_sphere(&c, &unit(p(0., 0., 1.)), tol()), CircleSurfaceIntersection::Empty);
        // Sphere touching the plane exactly on the circle.
        assert_eq!(
            intersect_circle_sphere(&c, &unit(p(1., 0., 1.)), tol()),
            CircleSurfaceIntersection::OnePoint(p(1., 0., 0.))
        );
    }

    #[test]
    fn circle_against_plane() {
        let c = Circle3::new(Point3::ORIGIN, 1.0, p(0., 0., 1.)).unwrap();
        let x_half = SphereOrPlane::plane(p(1., 0., 0.), 0.5).unwrap();
        match intersect_circle_sphere(&c, &x_half, tol()) {
            CircleSurfaceIntersection::TwoPoints(a, b) => {
                assert!((a.x - 0.5).abs() < 1e-12 && (b.x - 0.5).abs() < 1e-12);
                assert!((a.y.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let z0 = SphereOrPlane::plane(p(0., 0., 1.), 0.0).unwrap();
        assert_eq!(intersect_circle_sphere(&c, &z0, tol()), CircleSurfaceIntersection::Contained);
        let x1 = SphereOrPlane::plane(p(1., 0., 0.), 1.0).unwrap();
        assert!(matches!(intersect_circle_sphere(&c, &x1, tol()), CircleSurfaceIntersection::OnePoint(_)));
    }

    #[test]
    fn inverting_surfaces() {
        let spec = InversionSpec::unit(Point3::ORIGIN);
        // Plane z = 1 maps to the sphere of radius 1/2 about (0,0,1/2).
        let img = SphereOrPlane::plane(p(0., 0., 1.), 1.0).unwrap().invert(&spec, tol()).unwrap();
        assert!(img.approx_eq(&SphereOrPlane::sphere(p(0., 0., 0.5), 0.5).unwrap(), tol()));
        // And back.
        let back = img.invert(&spec, tol()).unwrap();
        assert!(back.approx_eq(&SphereOrPlane::plane(p(0., 0., 1.), 1.0).unwrap(), tol()), "{back:?}");
    }

    fn arb_point() -> impl Strategy<Value = Point3> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| p(x, y, z))
    }

    fn same_shape(a: &QuadrupleShape, b: &QuadrupleShape) -> bool {
        let t = Tolerance::new(1e-6);
        match (a, b) {
            (QuadrupleShape::UniqueSphere(x), QuadrupleShape::UniqueSphere(y)) => x.approx_eq(y, t),
            (QuadrupleShape::Concyclic(x), QuadrupleShape::Concyclic(y)) => x.approx_eq(y, t),
            _ => std::mem::discriminant(a) == std::mem::discriminant(b),
        }
    }

    proptest! {
        #[test]
        fn quadruple_shape_is_permutation_invariant(pts in proptest::array::uniform4(arb_point()), perm in 0usize..24) {
            let mut idx = [0usize, 1, 2, 3];
            // Decode a permutation from its Lehmer code.
            let mut code = perm;
            let mut pool = vec![0usize, 1, 2, 3];
            for (k, slot) in idx.iter_mut().enumerate() {
                let f = [6, 2, 1, 1][k];
                *slot = pool.remove(code / f);
                code %= f;
            }
            let permuted = [pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]]];
            let a = shape_of_quadruple(pts, tol());
            let b = shape_of_quadruple(permuted, tol());
            prop_assert!(same_shape(&a, &b), "{:?} vs {:?}", a, b);
        }

        #[test]
        fn planar_quadruples_are_permutation_invariant(xy in proptest::array::uniform4((-3.0..3.0f64, -3.0..3.0f64)), rot in 0usize..4) {
            let pts = xy.map(|(x, y)| p(x, y, 0.5 * x - y + 1.0));
            let mut permuted = pts;
            permuted.rotate_left(rot);
            prop_assert!(same_shape(&shape_of_quadruple(pts, tol()), &shape_of_quadruple(permuted, tol())));
        }

        #[test]
        fn sphere_intersection_is_symmetric(c1 in arb_point(), r1 in 0.2..3.0f64, c2 in arb_point(), r2 in 0.2..3.0f64) {
            let a = SphereOrPlane::sphere(c1, r1).unwrap();
            let b = SphereOrPlane::sphere(c2, r2).unwrap();
            let ab = intersect_spheres(&a, &b, tol()).unwrap();
            let ba = intersect_spheres(&b, &a, tol()).unwrap();
            match (ab, ba) {
                (SurfaceIntersection::Circle(x), SurfaceIntersection::Circle(y)) => prop_assert!(x.approx_eq(&y, tol())),
                (SurfaceIntersection::TangentPoint(x), SurfaceIntersection::TangentPoint(y)) => prop_assert!(x.dist(y) < 1e-9),
                (x, y) => prop_assert_eq!(x, y),
            }
        }

        #[test]
        fn circle_points_lie_on_both(c1 in arb_point(), r1 in 0.5..3.0f64, c2 in arb_point(), r2 in 0.5..3.0f64, c3 in arb_point(), r3 in 0.5..3.0f64) {
            let a = SphereOrPlane::sphere(c1, r1).unwrap();
            let b = SphereOrPlane::sphere(c2, r2).unwrap();
            let s = SphereOrPlane::sphere(c3, r3).unwrap();
            if let SurfaceIntersection::Circle(c) = intersect_spheres(&a, &b, tol()).unwrap() {
                let pts = match intersect_circle_sphere(&c, &s, tol()) {
                    CircleSurfaceIntersection::TwoPoints(x, y) => vec![x, y],
                    CircleSurfaceIntersection::OnePoint(x) => vec![x],
                    _ => vec![],
                };
                for q in pts {
                    for surf in [a, b, s] {
                        prop_assert!(surf.signed_distance(q).abs() < 1e-7);
                    }
                }
            }
        }
    }
}
