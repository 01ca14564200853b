//! Checks shared by the property tests and the acceptance runner. Each
//! returns a short summary on success and a description on failure.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyinv_core::arrangement::{
    build_intersection_poset, euler_characteristic_generic, is_generic, random_generic_system, region_count_exact,
    region_count_upper, sphere_system, voxel_region_count_stable, SphereSystem,
};
use polyinv_core::knots::{classify, KnotLabel};
use polyinv_core::polygon::{figure_eight_7, polygonal_inversion, Polygon};
use polyinv_core::survey::{bound_knots, classify_center, survey_centers, CenterOutcome, SurveyStrategy};
use polyinv_core::{InversionSpec, Point3, SphereOrPlane, Tolerance};

pub type Check = Result<String, String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn system(spheres: &[([f64; 3], f64)]) -> SphereSystem {
    SphereSystem::from_surfaces(
        spheres.iter().map(|&(c, r)| SphereOrPlane::sphere(Point3::from(c), r).unwrap()),
        Tolerance::default(),
    )
}

/// S₁, S₂, S₃ meet pairwise in circles and all three in two points; S₄
/// touches S₃ from outside and misses S₁ and S₂.
pub fn nine_region_system() -> SphereSystem {
    system(&[([0., 0., 0.], 1.), ([1., 0., 0.], 1.), ([0.5, 0.8, 0.], 1.), ([0.5, 3.8, 0.], 2.)])
}

/// Configurations with at most six spheres, degenerate ones included,
/// with their hand-counted number of regions.
pub fn small_systems() -> Vec<(&'static str, SphereSystem, usize)> {
    let tol = Tolerance::default();
    vec![
        ("single", system(&[([0., 0., 0.], 1.)]), 2),
        ("two crossing", system(&[([0., 0., 0.], 1.), ([1., 0., 0.], 1.)]), 4),
        ("two disjoint", system(&[([0., 0., 0.], 1.), ([3., 0., 0.], 1.)]), 3),
        ("externally tangent", system(&[([0., 0., 0.], 1.), ([2., 0., 0.], 1.)]), 3),
        ("internally tangent", system(&[([0., 0., 0.], 2.), ([1., 0., 0.], 1.)]), 3),
        ("nested", system(&[([0., 0., 0.], 1.), ([0., 0., 0.], 2.), ([5., 0., 0.], 1.)]), 4),
        ("colinear triple", system(&[([0., 0., 0.], 1.), ([1., 0., 0.], 1.), ([2., 0., 0.], 1.)]), 6),
        ("generic triple", system(&[([0., 0., 0.], 1.), ([1., 0., 0.], 1.), ([0.5, 0.8, 0.], 1.)]), 8),
        (
            "shared circle",
            system(&[([0., 0., 0.], 1.), ([0., 0., 1.], 2f64.sqrt()), ([0., 0., -2.], 5f64.sqrt())]),
            6,
        ),
        ("nine regions", nine_region_system(), 9),
        (
            "plane and sphere",
            SphereSystem::from_surfaces(
                [
                    SphereOrPlane::plane(Point3::new(0., 0., 1.), 0.).unwrap(),
                    SphereOrPlane::sphere(Point3::ORIGIN, 1.).unwrap(),
                ],
                tol,
            ),
            4,
        ),
        (
            "six with a far pair",
            system(&[
                ([0., 0., 0.], 1.),
                ([1., 0., 0.], 1.),
                ([0.5, 0.8, 0.], 1.),
                ([8., 0., 0.], 1.),
                ([9., 0., 0.], 1.),
                ([7.6, 0., 0.], 0.2),
            ]),
            12,
        ),
    ]
}

/// A random polygon with 4 to 11 vertices in a box of half-width 10.
pub fn random_polygon(rng: &mut impl Rng) -> Polygon {
    let n = rng.gen_range(4..12);
    let v = (0..n).map(|_| random_point(rng, 10.0)).collect();
    Polygon::new(v, Tolerance::default()).unwrap()
}

pub fn random_point(rng: &mut impl Rng, half: f64) -> Point3 {
    Point3::new(rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half))
}

fn random_in_ball(rng: &mut impl Rng, lo: f64, hi: f64) -> Point3 {
    let dir = polyinv_core::knots::random_direction(rng);
    dir * rng.gen_range(lo..hi)
}

/// Relative error of a double polygonal inversion, over `trials` random
/// polygons, centers and radii.
pub fn double_inversion(trials: usize, seed: u64) -> Check {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..trials {
        let k = random_polygon(&mut rng);
        let spec = InversionSpec::new(random_point(&mut rng, 15.0), rng.gen_range(0.1..20.0)).unwrap();
        let back = polygonal_inversion(&polygonal_inversion(&k, &spec, tol).unwrap(), &spec, tol).unwrap();
        for (a, b) in k.vertices().iter().zip(back.vertices()) {
            worst = worst.max(a.dist(*b) / a.norm().max(1e-300));
        }
    }
    ensure(worst <= 1e-6, || format!("relative error {worst:e}"))?;
    Ok(format!("{trials} trials, worst relative error {worst:.1e}"))
}

/// Inversion in the sphere of radius `r` about `(r, 0, 0)` for `r = 10⁶`
/// against reflection in the plane `x = 0`.
pub fn large_radius_limit(points: usize, seed: u64) -> Check {
    let tol = Tolerance::default();
    let r = 1e6;
    let spec = InversionSpec::new(Point3::new(r, 0., 0.), r).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..points {
        let x = random_point(&mut rng, 10.0);
        let y = spec.apply(x, tol).unwrap();
        worst = worst.max(y.dist(Point3::new(-x.x, x.y, x.z)));
    }
    ensure(worst <= 1e-3, || format!("distance {worst:e}"))?;
    Ok(format!("{points} points, worst distance {worst:.1e}"))
}

/// Inverting an inscribed polygon about a center inside its sphere keeps
/// its type; a center outside mirrors it.
pub fn inscribed_invariance(k: &Polygon, samples: usize, seed: u64) -> Check {
    let tol = Tolerance::default();
    let base = classify(k, tol).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (inside, want) in [(true, base.label), (false, base.label.mirror())] {
        for _ in 0..samples {
            let p = if inside { random_in_ball(&mut rng, 0.0, 0.95) } else { random_in_ball(&mut rng, 1.05, 10.0) };
            let img = polygonal_inversion(k, &InversionSpec::unit(p), tol).map_err(|e| e.to_string())?;
            let got = classify(&img, tol).map_err(|e| format!("center {p}: {e}"))?;
            ensure(got.label == want, || format!("center {p} gave {} instead of {want}", got.label))?;
        }
    }
    Ok(format!("{}: {samples} inside, {samples} outside", base.label))
}

pub fn exact_matches_voxel(sys: &SphereSystem) -> Check {
    let tol = Tolerance::default();
    let exact = region_count_exact(sys, tol).map_err(|e| e.to_string())?;
    let vox = voxel_region_count_stable(sys, 32, 512).map_err(|e| e.to_string())?;
    ensure(exact == vox.regions, || format!("exact {exact} vs voxel {:?}", vox.history))?;
    Ok(format!("{exact} at resolution {}", vox.resolution))
}

/// Region count and poset census of random generic configurations.
pub fn generic_maximality(m: usize, trials: usize, seed: u64) -> Check {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = region_count_upper(m as u64) as usize;
    let (c2, c3) = (m * (m - 1) / 2, m * (m - 1) * (m - 2) / 6);
    for t in 0..trials {
        let sys = random_generic_system(m, 1e-2, &mut rng).ok_or("no generic configuration found")?;
        ensure(is_generic(&sys, 1e-2), || format!("trial {t}: sampler returned a non-generic system"))?;
        let got = region_count_exact(&sys, tol).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("trial {t}: {got} regions, expected {want}"))?;
        let poset = build_intersection_poset(&sys, tol).map_err(|e| e.to_string())?;
        let census = [poset.sphere_count(), poset.circle_count(), poset.point_count()];
        ensure(census == [m, c2, 2 * c3], || format!("trial {t}: census {census:?}"))?;
        let chi = poset.order_complex_below(poset.top()).euler_characteristic();
        let expected = euler_characteristic_generic(m as u64);
        ensure(chi as i128 == expected, || format!("trial {t}: Euler characteristic {chi} vs {expected}"))?;
    }
    Ok(format!("m={m}: {trials} trials, {want} regions"))
}

/// Adding a sphere far from everything adds exactly one region.
pub fn disjoint_sphere_adds_one(sys: &SphereSystem) -> Check {
    let tol = Tolerance::default();
    let before = region_count_exact(sys, tol).map_err(|e| e.to_string())?;
    let far = Point3::new(1e3, 1e3, 1e3);
    ensure(sys.surfaces.iter().all(|s| s.signed_distance(far).abs() > 1.0), || "added sphere is not disjoint".into())?;
    let mut surfaces = sys.surfaces.clone();
    surfaces.push(SphereOrPlane::sphere(far, 0.5).unwrap());
    let after = region_count_exact(&SphereSystem::from_surfaces(surfaces, tol), tol).map_err(|e| e.to_string())?;
    ensure(after == before + 1, || format!("{before} then {after}"))?;
    Ok(format!("{before} -> {after}"))
}

/// Labels agree for radii 0.1, 1 and 10 at random centers.
pub fn radius_independence(k: &Polygon, centers: usize, seed: u64) -> Check {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = k.bounding_box();
    let sys = sphere_system(k, tol);
    let mut done = 0;
    while done < centers {
        let p = lo + Point3::new(
            rng.gen_range(-1.0..2.0) * (hi.x - lo.x),
            rng.gen_range(-1.0..2.0) * (hi.y - lo.y),
            rng.gen_range(-1.0..2.0) * (hi.z - lo.z),
        );
        if sys.surfaces.iter().any(|s| s.signed_distance(p).abs() < 1e-3 * s.scale()) {
            continue;
        }
        let labels: Vec<String> = [0.1, 1.0, 10.0]
            .iter()
            .map(|&r| {
                let img = polygonal_inversion(k, &InversionSpec::new(p, r).unwrap(), tol).map_err(|e| e.to_string())?;
                classify(&img, tol).map(|c| c.key()).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        ensure(labels.iter().all(|l| *l == labels[0]), || format!("center {p}: {labels:?}"))?;
        done += 1;
    }
    Ok(format!("{centers} centers"))
}

/// Every reliable entry's center maps its representative back to `k`.
pub fn involution_symmetry(k: &Polygon, strategy: &SurveyStrategy, seed: u64) -> Check {
    let tol = Tolerance::default();
    let base = classify(k, tol).map_err(|e| e.to_string())?;
    let report = survey_centers(k, strategy, seed, tol);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in report.entries.iter().filter(|e| e.reliable) {
        let image = polygonal_inversion(k, &InversionSpec::unit(e.representative), tol).map_err(|e| e.to_string())?;
        match classify_center(&image, e.representative, &mut rng, tol) {
            CenterOutcome::Classified { class, .. } if class.jones == base.jones => {}
            other => return Err(format!("{}: surveying the image gave {other:?}", e.key)),
        }
    }
    Ok(format!("{} labels", report.reliable_labels()))
}

/// `reliable labels ≤ exact regions ≤ region bound ≤ polynomial bound`.
pub fn bound_chain(k: &Polygon, strategy: &SurveyStrategy, seed: u64) -> Result<(usize, usize, u128, u128), String> {
    let tol = Tolerance::default();
    let report = survey_centers(k, strategy, seed, tol);
    let labels = report.reliable_labels();
    let exact = report.region_count_exact.ok_or_else(|| format!("{:?}", report.region_count_error))?;
    let upper = region_count_upper(report.sphere_count as u64);
    let poly = bound_knots(k.len() as u64);
    ensure(labels <= exact && exact as u128 <= upper && upper <= poly, || {
        format!("chain broken: {labels} <= {exact} <= {upper} <= {poly}")
    })?;
    Ok((labels, exact, upper, poly))
}

pub fn survey_is_deterministic(k: &Polygon, strategy: &SurveyStrategy, seed: u64) -> Check {
    let tol = Tolerance::default();
    let a = serde_json::to_vec(&survey_centers(k, strategy, seed, tol)).unwrap();
    let b = serde_json::to_vec(&survey_centers(k, strategy, seed, tol)).unwrap();
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} bytes", a.len()))
}

pub fn tabulated_centers() -> [([f64; 3], KnotLabel); 4] {
    [
        ([0., 0., 0.], KnotLabel::Unknot),
        ([-6., -6., -6.], KnotLabel::TrefoilRh),
        ([100., 100., 100.], KnotLabel::TrefoilLh),
        ([1000., 1000., 1000.], KnotLabel::FigureEight),
    ]
}

pub fn figure_eight() -> Polygon {
    figure_eight_7()
}
