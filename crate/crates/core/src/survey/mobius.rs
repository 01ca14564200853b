use serde::{Deserialize, Serialize};

use super::SurveyError;
use crate::arrangement::sphere_system;
use crate::geom::{ExtendedPoint, InversionSpec, MobiusMap, Point3, Tolerance};
use crate::knots::classify;
use crate::polygon::{min_gap, polygonal_inversion, polygonal_mobius, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MobiusVerdict {
    Consistent,
    Violated,
    SkippedDegenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobiusCheck {
    pub verdict: MobiusVerdict,
    /// `μ⁻¹(∞)`, or `None` when the map fixes ∞.
    pub pole: Option<Point3>,
    pub image: Option<String>,
    pub reference: Option<String>,
    pub reason: Option<String>,
}

impl MobiusCheck {
    fn skipped(pole: Option<Point3>, reason: String) -> Self {
        Self { verdict: MobiusVerdict::SkippedDegenerate, pole, image: None, reference: None, reason: Some(reason) }
    }
}

/// Checks that `μ̂(K)` has the type of `K` (if `μ` fixes ∞) or of
/// `ρ̂[p,1](K)` with `p = μ⁻¹(∞)`, up to mirror image. In both cases `μ`
/// differs from the reference map by an affine similarity.
///
/// Poles on or next to a sphere of the system, and polygons within the
/// near-singular band, are skipped.
pub fn check_mobius_theorem(k: &Polygon, map: &MobiusMap, tol: Tolerance) -> Result<MobiusCheck, SurveyError> {
    let image = polygonal_mobius(k, map, tol)?;
    let band = tol.band();
    let pole = match map.preimage_of_infinity(tol) {
        ExtendedPoint::Infinity => None,
        ExtendedPoint::Finite(p) => Some(p),
    };
    let reference = match pole {
        None => k.clone(),
        Some(p) => {
            let sys = sphere_system(k, tol);
            if let Some(s) = sys.surfaces.iter().find(|s| s.signed_distance(p).abs() <= band.at(s.scale())) {
                return Ok(MobiusCheck::skipped(pole, format!("pole lies on {s:?}")));
            }
            if k.vertices().iter().any(|v| v.dist(p) <= band.at(v.max_abs())) {
                return Ok(MobiusCheck::skipped(pole, "pole lies on a vertex".into()));
            }
            polygonal_inversion(k, &InversionSpec::unit(p), tol)?
        }
    };
    for (name, poly) in [("image", &image), ("reference", &reference)] {
        if min_gap(poly).is_some_and(|g| g <= band.eps) {
            return Ok(MobiusCheck::skipped(pole, format!("{name} is near-singular")));
        }
    }
    let a = classify(&image, tol)?;
    let b = classify(&reference, tol)?;
    let same = a.jones == b.jones || a.jones == b.jones.mirror();
    Ok(MobiusCheck {
        verdict: if same { MobiusVerdict::Consistent } else { MobiusVerdict::Violated },
        pole,
        image: Some(a.key()),
        reference: Some(b.key()),
        reason: None,
    })
}
