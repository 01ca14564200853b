//! Closed polygonal curves in R³ and their polygonal inversions.

mod arcs;
mod io;
mod singularity;

pub use arcs::{circle_arc_image, Arc, ArcPolygon};
pub use io::{format_polygon, parse_polygon, read_polygon, write_polygon};
pub use singularity::{find_singularity, min_gap, segment_distance, SingularityWitness};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{InversionSpec, MobiusMap, Point3, Tolerance};

#[derive(Debug, Error)]
pub enum PolygonError {
    #[error("vertex {vertex} coincides with the center of inversion")]
    CenterHit { vertex: usize },
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("edge {edge} is colinear with the center of inversion")]
    DegenerateArc { edge: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A closed polygon: edge `i` joins vertex `i` to vertex `(i + 1) mod n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point3>,
}

impl Polygon {
    /// Checks `n ≥ 3`, finiteness and that consecutive vertices are distinct.
    pub fn new(vertices: Vec<Point3>, tol: Tolerance) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::DegeneratePolygon(format!("{n} vertices, need at least 3")));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(PolygonError::DegeneratePolygon(format!("vertex {i} is not finite")));
        }
        let poly = Self { vertices };
        let scale = poly.diameter();
        for i in 0..n {
            let (a, b) = poly.edge(i);
            if a.dist(b) <= tol.eps * scale {
                return Err(PolygonError::DegeneratePolygon(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point3, Point3) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// Whether edges `i` and `j` share no vertex.
    pub fn non_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        i != j && (i + 1) % n != j && (j + 1) % n != i
    }

    /// Unordered pairs of non-adjacent edges `(i, j)` with `i < j`;
    /// there are `n(n − 3)/2` of them.
    pub fn non_adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| ((i + 2)..n).filter(move |&j| self.non_adjacent(i, j)).map(move |j| (i, j)))
    }

    pub fn bounding_box(&self) -> (Point3, Point3) {
        let mut lo = self.vertices[0];
        let mut hi = lo;
        for v in &self.vertices {
            lo = Point3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Point3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    /// Length of the bounding-box diagonal.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    pub fn centroid(&self) -> Point3 {
        let sum = self.vertices.iter().fold(Point3::ORIGIN, |a, &v| a + v);
        sum / self.len() as f64
    }

    /// Translated to the centroid and scaled to unit diameter. Knot type is
    /// unchanged.
    pub fn normalized(&self) -> Polygon {
        let c = self.centroid();
        let d = self.diameter();
        Polygon { vertices: self.vertices.iter().map(|&v| (v - c) / d).collect() }
    }

    pub fn map_vertices(&self, f: impl FnMut(&Point3) -> Point3) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(f).collect() }
    }

    /// Mirror image through the plane x = 0.
    pub fn reflect_x(&self) -> Polygon {
        self.map_vertices(|v| Point3::new(-v.x, v.y, v.z))
    }

    /// Cyclic relabeling: vertex `k` becomes vertex 0.
    pub fn rotated(&self, k: usize) -> Polygon {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(k % self.len());
        Polygon { vertices }
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point3>) -> Polygon {
        Polygon { vertices }
    }
}

/// Inverts every vertex and reconnects them in the same order.
pub fn polygonal_inversion(k: &Polygon, spec: &InversionSpec, tol: Tolerance) -> Result<Polygon, PolygonError> {
    let vertices = k
        .vertices
        .iter()
        .enumerate()
        .map(|(vertex, &v)| spec.apply(v, tol).map_err(|_| PolygonError::CenterHit { vertex }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polygon { vertices })
}

/// Applies a Möbius map to the vertices and reconnects them.
pub fn polygonal_mobius(k: &Polygon, map: &MobiusMap, tol: Tolerance) -> Result<Polygon, PolygonError> {
    let vertices = k
        .vertices
        .iter()
        .enumerate()
        .map(|(vertex, &v)| map.apply(v, tol).map_err(|_| PolygonError::CenterHit { vertex }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polygon { vertices })
}

/// The 7-edge figure-eight polygon whose inversions reach every knot type
/// with at most seven edges.
pub fn figure_eight_7() -> Polygon {
    const V: [[f64; 3]; 7] = [
        [-1.0, -13.0, 24.0],
        [-9.0, 24.0, 19.0],
        [-27.0, -15.0, -20.0],
        [45.0, 3.0, -2.0],
        [-23.0, 7.0, 34.0],
        [30.0, -15.0, -37.0],
        [-16.0, 10.0, -17.0],
    ];
    Polygon { vertices: V.iter().map(|&a| Point3::from(a)).collect() }
}

/// A 6-edge trefoil with every vertex on the unit sphere.
pub fn inscribed_trefoil_6() -> Polygon {
    const V: [[f64; 3]; 6] = [
        [0.36, 0.93, 0.06],
        [-0.48, -0.17, -0.86],
        [-0.44, 0.11, 0.89],
        [0.47, 0.49, -0.73],
        [-0.6, 0.7, -0.38],
        [0.23, -0.55, 0.8],
    ];
    on_unit_sphere(&V)
}

/// A 10-edge unknot zig-zagging around the equator of the unit sphere.
pub fn inscribed_unknot_10() -> Polygon {
    let v: Vec<[f64; 3]> = (0..10)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / 10.0;
            let z = if i % 2 == 0 { 0.3 } else { -0.3 };
            [a.cos(), a.sin(), z]
        })
        .collect();
    on_unit_sphere(&v)
}

fn on_unit_sphere(v: &[[f64; 3]]) -> Polygon {
    Polygon::from_vertices_unchecked(v.iter().map(|&a| Point3::from(a).normalized().expect("nonzero")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn rejects_degenerate_polygons() {
        let tol = Tolerance::default();
        assert!(matches!(
            Polygon::new(vec![p(0., 0., 0.), p(1., 0., 0.)], tol),
            Err(PolygonError::DegeneratePolygon(_))
        ));
        assert!(matches!(
            Polygon::new(vec![p(0., 0., 0.), p(1., 0., 0.), p(1., 0., 0.), p(0., 1., 0.)], tol),
            Err(PolygonError::DegeneratePolygon(_))
        ));
        assert!(matches!(
            Polygon::new(vec![p(0., 0., 0.), p(1., 0., 0.), p(0., 1., 0.), p(0., 0., 0.)], tol),
            Err(PolygonError::DegeneratePolygon(_))
        ));
    }

    #[test]
    fn counts_non_adjacent_pairs() {
        let k = figure_eight_7();
        assert_eq!(k.non_adjacent_pairs().count(), 7 * 4 / 2);
        let sq = Polygon::new(vec![p(1., 1., 0.), p(-1., 1., 0.), p(-1., -1., 0.), p(1., -1., 0.)], Tolerance::default()).unwrap();
        assert_eq!(sq.non_adjacent_pairs().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn center_hit_names_vertex() {
        let k = figure_eight_7();
        let spec = InversionSpec::unit(k.vertices()[3]);
        assert!(matches!(
            polygonal_inversion(&k, &spec, Tolerance::default()),
            Err(PolygonError::CenterHit { vertex: 3 })
        ));
    }

    #[test]
    fn far_sphere_approaches_reflection() {
        let k = figure_eight_7();
        let r = 1e6;
        let spec = InversionSpec::new(p(r, 0., 0.), r).unwrap();
        let img = polygonal_inversion(&k, &spec, Tolerance::default()).unwrap();
        for (a, b) in img.vertices().iter().zip(k.reflect_x().vertices()) {
            assert!(a.dist(*b) <= 1e-2, "{a} vs {b}");
        }
    }

    #[test]
    fn inversion_is_an_involution_and_index_stable() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(3..12);
            let verts: Vec<Point3> = (0..n)
                .map(|_| p(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
                .collect();
            let k = Polygon::new(verts, tol).unwrap();
            let c = p(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            if k.vertices().iter().any(|v| v.dist(c) < 1e-2) {
                continue;
            }
            let spec = InversionSpec::new(c, rng.gen_range(0.1..10.0)).unwrap();
            let once = polygonal_inversion(&k, &spec, tol).unwrap();
            for (i, v) in once.vertices().iter().enumerate() {
                assert_eq!(*v, spec.apply(k.vertices()[i], tol).unwrap());
            }
            let twice = polygonal_inversion(&once, &spec, tol).unwrap();
            for (a, b) in twice.vertices().iter().zip(k.vertices()) {
                assert!(a.dist(*b) <= 1e-6 * b.norm().max(1.0));
            }
        }
    }
}
