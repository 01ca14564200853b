use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{Polygon, PolygonError};
use crate::geom::{Circle3, InversionSpec, Point3, Tolerance};

/// Arc of `circle` from `start` to `end`, swept by `sweep` radians from
/// `start_angle` (angles measured in [`Circle3::basis`]). The sign of
/// `sweep` selects which of the two arcs between the endpoints is meant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub start: Point3,
    pub end: Point3,
    pub circle: Circle3,
    pub start_angle: f64,
    pub sweep: f64,
}

impl Arc {
    pub fn point_at(&self, t: f64) -> Point3 {
        self.circle.point_at(self.start_angle + self.sweep * t)
    }

    /// `samples + 1` points from `start` to `end` inclusive.
    pub fn sample(&self, samples: usize) -> Vec<Point3> {
        let samples = samples.max(1);
        let mut pts: Vec<Point3> = (0..=samples).map(|k| self.point_at(k as f64 / samples as f64)).collect();
        pts[0] = self.start;
        pts[samples] = self.end;
        pts
    }

    /// Whether `x` lies on this arc (not merely on its circle).
    pub fn contains(&self, x: Point3, tol: f64) -> bool {
        if self.circle.distance_to(x) > tol {
            return false;
        }
        let a = angle_of(&self.circle, x) - self.start_angle;
        let a = if self.sweep >= 0.0 { a.rem_euclid(TAU) } else { -((-a).rem_euclid(TAU)) };
        let slack = tol / self.circle.radius;
        if self.sweep >= 0.0 {
            a <= self.sweep + slack || a >= TAU - slack
        } else {
            a >= self.sweep - slack || a <= -TAU + slack
        }
    }
}

fn angle_of(c: &Circle3, x: Point3) -> f64 {
    let (e1, e2) = c.basis();
    let d = x - c.center;
    d.dot(e2).atan2(d.dot(e1))
}

/// The circle-arc curve obtained by replacing every edge with an arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcPolygon {
    pub arcs: Vec<Arc>,
}

impl ArcPolygon {
    /// Closed sampled polyline, `samples` points per arc (the end point of
    /// each arc is the start of the next and is not repeated).
    pub fn sample(&self, samples: usize) -> Vec<Point3> {
        self.arcs
            .iter()
            .flat_map(|a| {
                let mut pts = a.sample(samples);
                pts.pop();
                pts
            })
            .collect()
    }
}

/// Replaces each edge `[x, y]` of `k` by the arc of the circle through
/// `x`, `y` and the inversion center that does not pass through the center.
pub fn circle_arc_image(k: &Polygon, spec: &InversionSpec, tol: Tolerance) -> Result<ArcPolygon, PolygonError> {
    let p = spec.center;
    let arcs = (0..k.len())
        .map(|i| {
            let (x, y) = k.edge(i);
            let scale = x.dist(y).max(x.dist(p)).max(y.dist(p));
            let area2 = (y - x).cross(p - x).norm();
            if area2 <= tol.at(scale) * scale {
                return Err(PolygonError::DegenerateArc { edge: i });
            }
            let circle = Circle3::through(x, y, p).ok_or(PolygonError::DegenerateArc { edge: i })?;
            let ax = angle_of(&circle, x);
            let ccw = (angle_of(&circle, y) - ax).rem_euclid(TAU);
            // The image of a segment that misses p is the arc avoiding p.
            let through_p = (angle_of(&circle, p) - ax).rem_euclid(TAU) < ccw;
            let sweep = if through_p { ccw - TAU } else { ccw };
            Ok(Arc { start: x, end: y, circle, start_angle: ax, sweep })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ArcPolygon { arcs })
}
