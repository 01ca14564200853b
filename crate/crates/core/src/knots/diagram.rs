use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::KnotError;
use crate::geom::{Point3, Tolerance};
use crate::polygon::{find_singularity, Polygon};

/// Projection attempts before giving up.
pub const MAX_PROJECTION_RETRIES: usize = 1000;

/// One crossing in planar-diagram form `X[i, j, k, l]`: strand labels read
/// counter-clockwise starting from the incoming under-strand, so the
/// under-strand runs `i → k`.
///
/// `sign` is `+1` when (over tangent, under tangent, direction towards the
/// viewer) is a right-handed frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub pd: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    /// The same crossing with over and under exchanged.
    pub fn mirror(&self) -> Crossing {
        let [i, j, k, l] = self.pd;
        if self.sign > 0 {
            // Over ran l → j; it becomes the under-strand.
            Crossing { pd: [l, i, j, k], sign: -1 }
        } else {
            Crossing { pd: [j, k, l, i], sign: 1 }
        }
    }
}

/// Planar diagram of an oriented knot (or link) with signed crossings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotDiagram {
    pub crossings: Vec<Crossing>,
    /// Components without any crossing.
    pub free_loops: usize,
    /// Direction towards the viewer, when the diagram came from a projection.
    pub direction: Option<Point3>,
}

impl KnotDiagram {
    /// Crossingless diagram of `loops` disjoint circles.
    pub fn unlink(loops: usize) -> Self {
        Self { crossings: Vec::new(), free_loops: loops, direction: None }
    }

    /// From PD quadruples with explicit signs.
    pub fn from_pd_signed(codes: &[[usize; 4]], signs: &[i8]) -> Result<Self, KnotError> {
        if codes.len() != signs.len() {
            return Err(KnotError::MalformedDiagram("sign count differs from crossing count".into()));
        }
        let d = Self {
            crossings: codes.iter().zip(signs).map(|(&pd, &sign)| Crossing { pd, sign }).collect(),
            free_loops: 0,
            direction: None,
        };
        d.validate()?;
        Ok(d)
    }

    /// From PD quadruples of a knot whose arcs are labelled `1..=2c`
    /// consecutively along the orientation; signs are read off the labels.
    pub fn from_pd(codes: &[[usize; 4]]) -> Result<Self, KnotError> {
        let m = 2 * codes.len();
        let next = |x: usize| x % m + 1;
        let signs = codes
            .iter()
            .map(|&[_, j, _, l]| match (j == next(l), l == next(j)) {
                (true, false) => Ok(1),
                (false, true) => Ok(-1),
                _ => Err(KnotError::MalformedDiagram(format!("cannot infer sign of {:?}", [j, l]))),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        Self::from_pd_signed(codes, &signs)
    }

    /// Every label must occur exactly twice.
    pub fn validate(&self) -> Result<(), KnotError> {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(KnotError::MalformedDiagram(format!("crossing sign {}", c.sign)));
            }
            for &l in &c.pd {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((l, n)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(KnotError::MalformedDiagram(format!("label {l} occurs {n} times")));
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Diagram of the mirror image.
    pub fn mirror(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::mirror).collect(),
            free_loops: self.free_loops,
            direction: None,
        }
    }

    /// Dense relabelling of the strand labels to `0..m`.
    pub(crate) fn dense_pd(&self) -> (Vec<[usize; 4]>, usize) {
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let pd = self
            .crossings
            .iter()
            .map(|c| {
                c.pd.map(|l| {
                    let n = ids.len();
                    *ids.entry(l).or_insert(n)
                })
            })
            .collect();
        (pd, ids.len())
    }
}

/// Why a projection direction was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionIssue {
    EdgeAlongDirection,
    VertexOnEdge,
    TangentialCrossing,
    CloseHeights,
}

/// Projects `k` along `direction` (pointing towards the viewer).
///
/// Works on the normalized polygon; all genericity thresholds are the
/// near-degenerate band `10³ε` relative to unit diameter.
pub fn project_along(k: &Polygon, direction: Point3, tol: Tolerance) -> Result<KnotDiagram, ProjectionIssue> {
    let k = k.normalized();
    let band = tol.band().eps;
    let d = direction.normalized().ok_or(ProjectionIssue::EdgeAlongDirection)?;
    let e1 = d.any_orthogonal();
    let e2 = d.cross(e1);
    let n = k.len();
    let flat: Vec<(f64, f64)> = k.vertices().iter().map(|v| (v.dot(e1), v.dot(e2))).collect();
    let height: Vec<f64> = k.vertices().iter().map(|v| v.dot(d)).collect();
    let sub = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0, a.1 - b.1);
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
    let len = |a: (f64, f64)| a.0.hypot(a.1);
    let edge = |i: usize| (flat[i], flat[(i + 1) % n]);

    for i in 0..n {
        let (a, b) = edge(i);
        if len(sub(b, a)) <= band {
            return Err(ProjectionIssue::EdgeAlongDirection);
        }
    }
    for (v, &pv) in flat.iter().enumerate() {
        for i in 0..n {
            if i == v || (i + 1) % n == v {
                continue;
            }
            let (a, b) = edge(i);
            let ab = sub(b, a);
            let t = ((pv.0 - a.0) * ab.0 + (pv.1 - a.1) * ab.1) / (ab.0 * ab.0 + ab.1 * ab.1);
            let t = t.clamp(0.0, 1.0);
            let foot = (a.0 + ab.0 * t, a.1 + ab.1 * t);
            if len(sub(pv, foot)) <= band {
                return Err(ProjectionIssue::VertexOnEdge);
            }
        }
    }

    // (edge, parameter, crossing id, is_over)
    let mut events: Vec<(usize, f64, usize, bool)> = Vec::new();
    // (over direction, under direction)
    let mut dirs: Vec<((f64, f64), (f64, f64))> = Vec::new();
    for (i, j) in k.non_adjacent_pairs() {
        let (a, b) = edge(i);
        let (c, e) = edge(j);
        let r = sub(b, a);
        let s = sub(e, c);
        let denom = cross(r, s);
        let ac = sub(c, a);
        let t_i = cross(ac, s) / denom;
        let t_j = cross(ac, r) / denom;
        if denom.abs() <= band * len(r) * len(s) {
            // Near-parallel: fine unless the segments overlap.
            if cross(ac, r).abs() / len(r) <= band {
                return Err(ProjectionIssue::TangentialCrossing);
            }
            continue;
        }
        if !(0.0..=1.0).contains(&t_i) || !(0.0..=1.0).contains(&t_j) {
            continue;
        }
        let hi = height[i] + (height[(i + 1) % n] - height[i]) * t_i;
        let hj = height[j] + (height[(j + 1) % n] - height[j]) * t_j;
        if (hi - hj).abs() <= band {
            return Err(ProjectionIssue::CloseHeights);
        }
        let id = dirs.len();
        let i_over = hi > hj;
        events.push((i, t_i, id, i_over));
        events.push((j, t_j, id, !i_over));
        dirs.push(if i_over { (r, s) } else { (s, r) });
    }

    if dirs.is_empty() {
        return Ok(KnotDiagram { crossings: Vec::new(), free_loops: 1, direction: Some(d) });
    }

    events.sort_by(|x, y| (x.0, x.1).partial_cmp(&(y.0, y.1)).unwrap());
    let m = events.len();
    // Arc `e` leaves event `e`; labels are 1-based.
    let mut under = vec![0usize; dirs.len()];
    let mut over = vec![0usize; dirs.len()];
    for (pos, ev) in events.iter().enumerate() {
        if ev.3 {
            over[ev.2] = pos;
        } else {
            under[ev.2] = pos;
        }
    }
    let incoming = |pos: usize| (pos + m - 1) % m + 1;
    let outgoing = |pos: usize| pos + 1;
    let crossings = (0..dirs.len())
        .map(|c| {
            let (o, u) = dirs[c];
            let sign: i8 = if cross(o, u) > 0.0 { 1 } else { -1 };
            let (ui, uo) = (incoming(under[c]), outgoing(under[c]));
            let (oi, oo) = (incoming(over[c]), outgoing(over[c]));
            let pd = if sign > 0 { [ui, oo, uo, oi] } else { [ui, oi, uo, oo] };
            Crossing { pd, sign }
        })
        .collect();
    Ok(KnotDiagram { crossings, free_loops: 0, direction: Some(d) })
}

/// Uniformly random unit vector.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> Point3 {
    loop {
        let v = Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n2 = v.norm2();
        if n2 > 1e-4 && n2 <= 1.0 {
            return v / n2.sqrt();
        }
    }
}

/// Projects along random directions until the projection is generic.
pub fn project_to_diagram<R: Rng + ?Sized>(k: &Polygon, rng: &mut R, tol: Tolerance) -> Result<KnotDiagram, KnotError> {
    if let Some(w) = find_singularity(k, tol) {
        return Err(KnotError::Singular { edges: w.edges });
    }
    for _ in 0..MAX_PROJECTION_RETRIES {
        if let Ok(d) = project_along(k, random_direction(rng), tol) {
            return Ok(d);
        }
    }
    Err(KnotError::NoGenericProjection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn pd_sign_inference() {
        let lh = KnotDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_eq!(lh.writhe(), -3);
        let fig8 = KnotDiagram::from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]).unwrap();
        assert_eq!(fig8.writhe(), 0);
        assert!(KnotDiagram::from_pd(&[[1, 1, 2, 2]]).is_err());
        assert!(KnotDiagram::from_pd_signed(&[[1, 2, 3, 4]], &[1]).is_err());
    }

    #[test]
    fn mirror_flips_signs_and_keeps_labels() {
        let lh = KnotDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let rh = lh.mirror();
        assert_eq!(rh.writhe(), 3);
        rh.validate().unwrap();
        assert_eq!(rh.mirror(), lh);
        // Mirrored PD is again a consistently labelled knot diagram.
        let codes: Vec<[usize; 4]> = rh.crossings.iter().map(|c| c.pd).collect();
        assert_eq!(KnotDiagram::from_pd(&codes).unwrap(), rh);
    }

    #[test]
    fn square_projects_without_crossings() {
        let sq = Polygon::new(vec![p(1., 1., 0.), p(-1., 1., 0.), p(-1., -1., 0.), p(1., -1., 0.)], Tolerance::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = project_to_diagram(&sq, &mut rng, Tolerance::default()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.free_loops, 1);
    }

    #[test]
    fn degenerate_directions_are_rejected() {
        let sq = Polygon::new(vec![p(1., 1., 0.), p(-1., 1., 0.), p(-1., -1., 0.), p(1., -1., 0.)], Tolerance::default()).unwrap();
        // Looking edge-on folds the square onto a segment.
        assert!(project_along(&sq, p(0., 1., 0.), Tolerance::default()).is_err());
        assert!(project_along(&sq, p(0., 0., 1.), Tolerance::default()).is_ok());
    }

    #[test]
    fn singular_polygons_are_refused() {
        let bowtie = Polygon::new(vec![p(0., 0., 0.), p(1., 1., 0.), p(1., 0., 0.), p(0., 1., 0.)], Tolerance::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            project_to_diagram(&bowtie, &mut rng, Tolerance::default()),
            Err(KnotError::Singular { edges: (0, 2) })
        ));
    }
}
