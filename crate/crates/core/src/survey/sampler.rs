use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::bounds::bound_knots;
use crate::arrangement::{region_count_exact, region_count_upper, sphere_system, SphereSystem};
use crate::geom::{InversionSpec, Point3, QuadrupleShape, SphereOrPlane, Tolerance};
use crate::knots::{classify_with, random_direction, KnotClass, KnotLabel, LaurentPolynomial};
use crate::polygon::{format_polygon, min_gap, polygonal_inversion, Polygon};

/// Version of the serialized [`SurveyReport`] layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyStrategy {
    /// Centers drawn uniformly from the enlarged bounding box.
    pub random_centers: usize,
    /// Surface points per sphere; each gives one center on either side.
    pub surface_samples: usize,
    /// Displacement off a sphere, relative to its radius.
    pub near_sphere_offset: f64,
    /// Enlargement of the polygon's bounding box for random centers.
    pub box_scale: f64,
    pub extra_centers: Vec<Point3>,
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for SurveyStrategy {
    fn default() -> Self {
        Self {
            random_centers: 500,
            surface_samples: 16,
            near_sphere_offset: 1e-2,
            box_scale: 3.0,
            extra_centers: Vec::new(),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterSource {
    Inside { surface: usize },
    Outside { surface: usize },
    Box,
    User,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CenterOutcome {
    Classified { class: KnotClass, reliable: bool },
    /// Two non-adjacent edges of the image touch.
    Singular,
    Failed { message: String },
}

/// One knot type found by a survey.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub key: String,
    pub label: KnotLabel,
    pub jones: LaurentPolynomial,
    pub determinant: u64,
    /// First center yielding this type, preferring reliable ones.
    pub representative: Point3,
    pub count: usize,
    pub reliable_count: usize,
    pub reliable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub schema: u32,
    /// SHA-256 of the polygon in file format.
    pub polygon_digest: String,
    pub edges: usize,
    pub seed: u64,
    pub strategy: SurveyStrategy,
    pub radius: f64,
    pub sphere_count: usize,
    pub skipped_quadruples: usize,
    pub region_count_exact: Option<usize>,
    pub region_count_error: Option<String>,
    pub region_bound: u128,
    pub knots_bound: u128,
    pub centers_generated: usize,
    pub centers_discarded: usize,
    pub singular: usize,
    pub failed: usize,
    pub failures: Vec<(Point3, String)>,
    pub entries: Vec<SurveyEntry>,
}

impl SurveyReport {
    pub fn reliable_labels(&self) -> usize {
        self.entries.iter().filter(|e| e.reliable).count()
    }

    pub fn labels(&self) -> Vec<KnotLabel> {
        let mut v: Vec<KnotLabel> = self.entries.iter().map(|e| e.label).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn entry(&self, label: KnotLabel) -> Option<&SurveyEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

pub fn polygon_digest(k: &Polygon) -> String {
    format!("{:x}", Sha256::digest(format_polygon(k).as_bytes()))
}

/// Inverts `k` in the unit sphere about `p` and classifies the image.
/// Images whose closest non-adjacent edges are within `10³ε` of touching,
/// relative to the diameter, are classified but marked unreliable.
pub fn classify_center<R: Rng + ?Sized>(k: &Polygon, p: Point3, rng: &mut R, tol: Tolerance) -> CenterOutcome {
    let image = match polygonal_inversion(k, &InversionSpec::unit(p), tol) {
        Ok(img) => img,
        Err(e) => return CenterOutcome::Failed { message: e.to_string() },
    };
    let gap = min_gap(&image).unwrap_or(f64::INFINITY);
    if gap <= tol.eps {
        return CenterOutcome::Singular;
    }
    match classify_with(&image, rng, tol) {
        Ok(class) => CenterOutcome::Classified { class, reliable: gap > tol.band().eps },
        Err(e) => CenterOutcome::Failed { message: e.to_string() },
    }
}

fn candidates(k: &Polygon, sys: &SphereSystem, strategy: &SurveyStrategy, rng: &mut ChaCha8Rng) -> Vec<(Point3, CenterSource)> {
    let mut out = Vec::new();
    let (lo, hi) = k.bounding_box();
    let mid = (lo + hi) * 0.5;
    let floor = 0.05 * k.diameter();
    for (n, s) in sys.surfaces.iter().enumerate() {
        for _ in 0..strategy.surface_samples {
            let dir = random_direction(rng);
            match *s {
                SphereOrPlane::Sphere { center, radius } => {
                    let off = strategy.near_sphere_offset * radius;
                    out.push((center + dir * (radius - off), CenterSource::Inside { surface: n }));
                    out.push((center + dir * (radius + off), CenterSource::Outside { surface: n }));
                }
                SphereOrPlane::Plane { unit_normal, offset } => {
                    let foot = mid - unit_normal * (unit_normal.dot(mid) - offset);
                    let along = dir - unit_normal * dir.dot(unit_normal);
                    let q = foot + along * (k.diameter() * rng.gen_range(0.0..1.0));
                    let off = unit_normal * (strategy.near_sphere_offset * k.diameter());
                    out.push((q - off, CenterSource::Inside { surface: n }));
                    out.push((q + off, CenterSource::Outside { surface: n }));
                }
            }
        }
    }
    let h = (hi - lo) * 0.5;
    let half = Point3::new(h.x.max(floor), h.y.max(floor), h.z.max(floor)) * strategy.box_scale;
    for _ in 0..strategy.random_centers {
        let q = Point3::new(
            rng.gen_range(-1.0..=1.0) * half.x,
            rng.gen_range(-1.0..=1.0) * half.y,
            rng.gen_range(-1.0..=1.0) * half.z,
        );
        out.push((mid + q, CenterSource::Box));
    }
    out.extend(strategy.extra_centers.iter().map(|&p| (p, CenterSource::User)));
    out
}

/// Whether a center sits on (or too close to) a surface, a skipped
/// concyclic circle, or a vertex, where the knot type is not locally
/// constant or the inversion blows up.
fn near_degenerate(p: Point3, k: &Polygon, sys: &SphereSystem, tol: Tolerance) -> bool {
    let band = tol.band();
    sys.surfaces.iter().any(|s| s.signed_distance(p).abs() <= band.at(s.scale()))
        || sys.skipped.iter().any(|q| match q.shape {
            QuadrupleShape::Concyclic(c) => c.distance_to(p) <= band.at(c.radius.max(c.center.max_abs())),
            _ => false,
        })
        || k.vertices().iter().any(|v| v.dist(p) <= band.at(v.max_abs()))
}

/// Samples inversion centers and groups the resulting knot types.
///
/// Per-center failures are tallied in the report rather than aborting.
/// Each center draws projection directions from its own stream of the
/// seeded generator, so results do not depend on scheduling.
pub fn survey_centers(k: &Polygon, strategy: &SurveyStrategy, seed: u64, tol: Tolerance) -> SurveyReport {
    let sys = sphere_system(k, tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = candidates(k, &sys, strategy, &mut rng);
    let generated = all.len();
    let kept: Vec<(Point3, CenterSource)> =
        all.into_iter().filter(|&(p, _)| !near_degenerate(p, k, &sys, tol)).collect();

    let eval = |(idx, &(p, _)): (usize, &(Point3, CenterSource))| {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(idx as u64 + 1);
        (p, classify_center(k, p, &mut r, tol))
    };
    let outcomes: Vec<(Point3, CenterOutcome)> = if strategy.parallel {
        kept.par_iter().enumerate().map(eval).collect()
    } else {
        kept.iter().enumerate().map(eval).collect()
    };

    let mut entries: Vec<SurveyEntry> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let (mut singular, mut failures) = (0, Vec::new());
    for (p, outcome) in outcomes {
        match outcome {
            CenterOutcome::Singular => singular += 1,
            CenterOutcome::Failed { message } => failures.push((p, message)),
            CenterOutcome::Classified { class, reliable } => {
                let key = class.key();
                let i = *index.entry(key.clone()).or_insert_with(|| {
                    entries.push(SurveyEntry {
                        key,
                        label: class.label,
                        jones: class.jones.clone(),
                        determinant: class.determinant,
                        representative: p,
                        count: 0,
                        reliable_count: 0,
                        reliable: false,
                    });
                    entries.len() - 1
                });
                let e = &mut entries[i];
                e.count += 1;
                if reliable {
                    if !e.reliable {
                        e.representative = p;
                    }
                    e.reliable = true;
                    e.reliable_count += 1;
                }
            }
        }
    }

    let (region_count, region_error) = match region_count_exact(&sys, tol) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    SurveyReport {
        schema: REPORT_SCHEMA,
        polygon_digest: polygon_digest(k),
        edges: k.len(),
        seed,
        strategy: strategy.clone(),
        radius: 1.0,
        sphere_count: sys.len(),
        skipped_quadruples: sys.skipped.len(),
        region_count_exact: region_count,
        region_count_error: region_error,
        region_bound: region_count_upper(sys.len() as u64),
        knots_bound: bound_knots(k.len() as u64),
        centers_generated: generated,
        centers_discarded: generated - kept.len(),
        singular,
        failed: failures.len(),
        failures,
        entries,
    }
}
