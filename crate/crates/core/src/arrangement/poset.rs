use serde::{Deserialize, Serialize};

use super::{ArrangementError, OrderComplex, SphereSystem};
use crate::geom::{
    intersect_circle_sphere, intersect_spheres, Circle3, CircleSurfaceIntersection, Point3, SphereOrPlane,
    SurfaceIntersection, Tolerance,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PosetGeometry {
    Sphere(SphereOrPlane),
    Circle(Circle3),
    Point(Point3),
    /// The empty intersection, above every other element.
    Top,
}

/// A connected component of an intersection of spheres, with the indices
/// of every sphere of the system that contains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosetElement {
    pub geometry: PosetGeometry,
    pub spheres: Vec<usize>,
}

impl PosetElement {
    /// Dimension of the component; `-1` for the top element.
    pub fn dim(&self) -> i32 {
        match self.geometry {
            PosetGeometry::Sphere(_) => 2,
            PosetGeometry::Circle(_) => 1,
            PosetGeometry::Point(_) => 0,
            PosetGeometry::Top => -1,
        }
    }
}

/// Components of all intersections of subsets of a sphere system, ordered
/// by reverse inclusion. Elements are sorted spheres, circles, points, and
/// the top element last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoset {
    pub elements: Vec<PosetElement>,
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    fn count_dim(&self, d: i32) -> usize {
        self.elements.iter().filter(|e| e.dim() == d).count()
    }

    pub fn sphere_count(&self) -> usize {
        self.count_dim(2)
    }

    pub fn circle_count(&self) -> usize {
        self.count_dim(1)
    }

    pub fn point_count(&self) -> usize {
        self.count_dim(0)
    }

    /// `a < b`: `a` strictly contains `b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.elements[a], &self.elements[b]);
        match (&ea.geometry, &eb.geometry) {
            (PosetGeometry::Top, _) => false,
            (_, PosetGeometry::Top) => true,
            _ => ea.dim() > eb.dim() && ea.spheres.iter().all(|s| eb.spheres.contains(s)),
        }
    }

    /// Elements strictly below `p`.
    pub fn below(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.less(q, p)).collect()
    }

    /// Order complex of the elements strictly below `p`, with vertices
    /// renumbered in the order of [`below`](Self::below).
    pub fn order_complex_below(&self, p: usize) -> OrderComplex {
        let verts = self.below(p);
        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if !self.less(a, b) {
                    continue;
                }
                edges.push([i, j]);
                for (k, &c) in verts.iter().enumerate() {
                    if self.less(b, c) {
                        triangles.push([i, j, k]);
                    }
                }
            }
        }
        OrderComplex::new(verts.len(), &edges, &triangles)
    }
}

/// Builds the intersection poset of a system of spheres. Every
/// intersection of spheres is a sphere, a circle, one or two points, or
/// empty, so the components are the spheres, the circles of pairs, the
/// tangency points of pairs, and the points where a circle meets another
/// sphere.
pub fn build_intersection_poset(sys: &SphereSystem, tol: Tolerance) -> Result<IntersectionPoset, ArrangementError> {
    if sys.has_planes() {
        return Err(ArrangementError::PlanesPresent);
    }
    let spheres = &sys.surfaces;
    let scale = sys.max_radius();
    let close = tol.at(scale);
    let mut circles: Vec<Circle3> = Vec::new();
    let mut points: Vec<Point3> = Vec::new();
    let push_point = |points: &mut Vec<Point3>, q: Point3| {
        if !points.iter().any(|p| p.dist(q) <= close) {
            points.push(q);
        }
    };
    for i in 0..spheres.len() {
        for j in i + 1..spheres.len() {
            match intersect_spheres(&spheres[i], &spheres[j], tol)? {
                SurfaceIntersection::Circle(c) => {
                    if !circles.iter().any(|d| same_circle(d, &c, close)) {
                        circles.push(c);
                    }
                }
                SurfaceIntersection::TangentPoint(q) => push_point(&mut points, q),
                SurfaceIntersection::Empty | SurfaceIntersection::Equal => {}
            }
        }
    }
    for c in &circles {
        for s in spheres {
            match intersect_circle_sphere(c, s, tol) {
                CircleSurfaceIntersection::OnePoint(q) => push_point(&mut points, q),
                CircleSurfaceIntersection::TwoPoints(q, r) => {
                    push_point(&mut points, q);
                    push_point(&mut points, r);
                }
                CircleSurfaceIntersection::Empty | CircleSurfaceIntersection::Contained => {}
            }
        }
    }

    let mut elements: Vec<PosetElement> = spheres
        .iter()
        .enumerate()
        .map(|(i, &s)| PosetElement { geometry: PosetGeometry::Sphere(s), spheres: vec![i] })
        .collect();
    for c in circles {
        let on: Vec<usize> = (0..spheres.len())
            .filter(|&k| intersect_circle_sphere(&c, &spheres[k], tol) == CircleSurfaceIntersection::Contained)
            .collect();
        elements.push(PosetElement { geometry: PosetGeometry::Circle(c), spheres: on });
    }
    for q in points {
        let on: Vec<usize> =
            (0..spheres.len()).filter(|&k| spheres[k].signed_distance(q).abs() <= close).collect();
        elements.push(PosetElement { geometry: PosetGeometry::Point(q), spheres: on });
    }
    elements.push(PosetElement { geometry: PosetGeometry::Top, spheres: (0..spheres.len()).collect() });
    Ok(IntersectionPoset { elements })
}

fn same_circle(a: &Circle3, b: &Circle3, close: f64) -> bool {
    a.center.dist(b.center) <= close
        && (a.radius - b.radius).abs() <= close
        && a.unit_normal.dist(b.unit_normal) * a.radius.max(b.radius) <= close
}
