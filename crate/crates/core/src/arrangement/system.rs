use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ArrangementError;
use crate::geom::{shape_of_quadruple, InversionSpec, Point3, QuadrupleShape, SphereOrPlane, Tolerance};
use crate::polygon::Polygon;

/// Draw budget for [`planarity_normalize`].
pub const NORMALIZATION_DRAWS: usize = 10_000;

/// An edge pair whose four endpoints determine no unique sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkippedQuadruple {
    pub edges: (usize, usize),
    pub shape: QuadrupleShape,
}

/// A deduplicated list of spheres and planes, with the edge pairs of the
/// source polygon that produced each one.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SphereSystem {
    pub surfaces: Vec<SphereOrPlane>,
    pub provenance: Vec<Vec<(usize, usize)>>,
    pub skipped: Vec<SkippedQuadruple>,
}

impl SphereSystem {
    /// A hand-built system; equal surfaces are merged.
    pub fn from_surfaces(surfaces: impl IntoIterator<Item = SphereOrPlane>, tol: Tolerance) -> Self {
        let mut sys = Self::default();
        for s in surfaces {
            sys.insert(s, None, tol);
        }
        sys
    }

    fn insert(&mut self, s: SphereOrPlane, pair: Option<(usize, usize)>, tol: Tolerance) {
        let slot = match self.surfaces.iter().position(|t| t.approx_eq(&s, tol)) {
            Some(i) => i,
            None => {
                self.surfaces.push(s);
                self.provenance.push(Vec::new());
                self.surfaces.len() - 1
            }
        };
        if let Some(p) = pair {
            self.provenance[slot].push(p);
        }
    }

    pub fn len(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surfaces.is_empty()
    }

    pub fn has_planes(&self) -> bool {
        self.surfaces.iter().any(SphereOrPlane::is_plane)
    }

    /// Largest sphere radius, or 1 when there are no spheres.
    pub fn max_radius(&self) -> f64 {
        self.surfaces
            .iter()
            .filter_map(|s| match s {
                SphereOrPlane::Sphere { radius, .. } => Some(*radius),
                SphereOrPlane::Plane { .. } => None,
            })
            .fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))))
            .unwrap_or(1.0)
    }
}

/// The spheres and planes through the endpoints of each pair of
/// non-adjacent edges.
pub fn sphere_system(k: &Polygon, tol: Tolerance) -> SphereSystem {
    let mut sys = SphereSystem::default();
    for (i, j) in k.non_adjacent_pairs() {
        let (a, b) = k.edge(i);
        let (c, d) = k.edge(j);
        match shape_of_quadruple([a, b, c, d], tol) {
            QuadrupleShape::UniqueSphere(s) => sys.insert(s, Some((i, j)), tol),
            shape => sys.skipped.push(SkippedQuadruple { edges: (i, j), shape }),
        }
    }
    sys
}

/// Replaces a system containing planes by its image under one inversion
/// centered off every surface, so that every surface becomes a sphere.
/// Systems without planes are returned unchanged.
pub fn planarity_normalize(sys: &SphereSystem, tol: Tolerance) -> Result<SphereSystem, ArrangementError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_55ed);
    planarity_normalize_with(sys, &mut rng, tol)
}

pub fn planarity_normalize_with<R: Rng + ?Sized>(
    sys: &SphereSystem,
    rng: &mut R,
    tol: Tolerance,
) -> Result<SphereSystem, ArrangementError> {
    if !sys.has_planes() {
        return Ok(sys.clone());
    }
    let (lo, hi) = extent(sys);
    let mid = (lo + hi) * 0.5;
    let half = ((hi - lo) * 0.5).max_abs().max(1.0);
    let band = tol.band();
    // Keep the best of the first few admissible draws, by clearance from
    // the nearest surface.
    let mut best: Option<(f64, Point3)> = None;
    let mut admissible = 0;
    for _ in 0..NORMALIZATION_DRAWS {
        let p = mid
            + Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * half;
        let clearance = sys
            .surfaces
            .iter()
            .map(|s| s.signed_distance(p).abs() / band.at(s.scale().max(half)))
            .fold(f64::INFINITY, f64::min);
        if clearance <= 1.0 {
            continue;
        }
        admissible += 1;
        if best.is_none_or(|(c, _)| clearance > c) {
            best = Some((clearance, p));
        }
        if admissible == 16 {
            break;
        }
    }
    let (_, center) = best.ok_or(ArrangementError::NormalizationFailed { draws: NORMALIZATION_DRAWS })?;
    let spec = InversionSpec::new(center, half)?;
    let surfaces = sys.surfaces.iter().map(|s| s.invert(&spec, tol)).collect::<Result<Vec<_>, _>>()?;
    if surfaces.iter().any(SphereOrPlane::is_plane) {
        return Err(ArrangementError::NormalizationFailed { draws: NORMALIZATION_DRAWS });
    }
    Ok(SphereSystem { surfaces, provenance: sys.provenance.clone(), skipped: sys.skipped.clone() })
}

/// Box around the spheres and the feet of the planes from the origin.
pub(crate) fn extent(sys: &SphereSystem) -> (Point3, Point3) {
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    let mut grow = |a: Point3, b: Point3| {
        lo = Point3::new(lo.x.min(a.x), lo.y.min(a.y), lo.z.min(a.z));
        hi = Point3::new(hi.x.max(b.x), hi.y.max(b.y), hi.z.max(b.z));
    };
    for s in &sys.surfaces {
        match *s {
            SphereOrPlane::Sphere { center, radius } => {
                let r = Point3::new(radius, radius, radius);
                grow(center - r, center + r);
            }
            SphereOrPlane::Plane { unit_normal, offset } => {
                let foot = unit_normal * offset;
                grow(foot, foot);
            }
        }
    }
    if sys.is_empty() {
        return (Point3::new(-1.0, -1.0, -1.0), Point3::new(1.0, 1.0, 1.0));
    }
    (lo, hi)
}

/// Parses `S cx cy cz r` and `P nx ny nz d` lines; `#` starts a comment.
pub fn parse_sphere_system(text: &str, tol: Tolerance) -> Result<SphereSystem, ArrangementError> {
    let mut surfaces = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| ArrangementError::Parse { line, message };
        let mut fields = body.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let nums = fields
            .map(|f| f.parse::<f64>().map_err(|e| err(format!("{f:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if nums.len() != 4 {
            return Err(err(format!("expected 4 numbers after {tag:?}, found {}", nums.len())));
        }
        let surface = match tag {
            "S" | "s" => SphereOrPlane::sphere(Point3::new(nums[0], nums[1], nums[2]), nums[3]),
            "P" | "p" => SphereOrPlane::plane(Point3::new(nums[0], nums[1], nums[2]), nums[3]),
            other => return Err(err(format!("unknown surface tag {other:?}"))),
        }
        .map_err(|e| err(e.to_string()))?;
        surfaces.push(surface);
    }
    Ok(SphereSystem::from_surfaces(surfaces, tol))
}

pub fn format_sphere_system(sys: &SphereSystem) -> String {
    let mut out = String::new();
    for (s, prov) in sys.surfaces.iter().zip(&sys.provenance) {
        match *s {
            SphereOrPlane::Sphere { center: c, radius } => {
                let _ = write!(out, "S {:.16e} {:.16e} {:.16e} {:.16e}", c.x, c.y, c.z, radius);
            }
            SphereOrPlane::Plane { unit_normal: n, offset } => {
                let _ = write!(out, "P {:.16e} {:.16e} {:.16e} {:.16e}", n.x, n.y, n.z, offset);
            }
        }
        if !prov.is_empty() {
            let pairs: Vec<String> = prov.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let _ = write!(out, "  # edges {}", pairs.join(" "));
        }
        out.push('\n');
    }
    for sk in &sys.skipped {
        let kind = match sk.shape {
            QuadrupleShape::Concyclic(_) => "concyclic",
            QuadrupleShape::Colinear => "colinear",
            QuadrupleShape::Coincident => "coincident",
            QuadrupleShape::UniqueSphere(_) => "sphere",
        };
        let _ = writeln!(out, "# skipped edges {}-{}: {kind}", sk.edges.0, sk.edges.1);
    }
    out
}

pub fn read_sphere_system(path: impl AsRef<Path>, tol: Tolerance) -> Result<SphereSystem, ArrangementError> {
    parse_sphere_system(&std::fs::read_to_string(path)?, tol)
}

pub fn write_sphere_system(sys: &SphereSystem, path: impl AsRef<Path>) -> Result<(), ArrangementError> {
    std::fs::write(path, format_sphere_system(sys))?;
    Ok(())
}
