use serde::{Deserialize, Serialize};

use super::{GeomError, Point3, Tolerance};

/// Inversion in the sphere of radius `radius` about `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionSpec {
    pub center: Point3,
    pub radius: f64,
}

impl InversionSpec {
    pub fn new(center: Point3, radius: f64) -> Result<Self, GeomError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidRadius(radius));
        }
        if !center.is_finite() {
            return Err(GeomError::NonFinite);
        }
        Ok(Self { center, radius })
    }

    /// Unit-radius inversion about `center`.
    pub fn unit(center: Point3) -> Self {
        Self { center, radius: 1.0 }
    }

    /// `p + r²(x − p)/|x − p|²`.
    pub fn apply(&self, x: Point3, tol: Tolerance) -> Result<Point3, GeomError> {
        let d = x - self.center;
        let d2 = d.norm2();
        if d2.sqrt() <= tol.at(self.center.max_abs().max(self.radius)) {
            return Err(GeomError::CenterHit { index: 0 });
        }
        Ok(self.center + d * (self.radius * self.radius / d2))
    }

    /// Image of a point of the one-point compactification.
    pub fn apply_extended(&self, x: ExtendedPoint, tol: Tolerance) -> ExtendedPoint {
        match x {
            ExtendedPoint::Infinity => ExtendedPoint::Finite(self.center),
            ExtendedPoint::Finite(p) => match self.apply(p, tol) {
                Ok(q) => ExtendedPoint::Finite(q),
                Err(_) => ExtendedPoint::Infinity,
            },
        }
    }
}

/// Inverts a single point. See [`InversionSpec::apply`].
pub fn invert_point(spec: &InversionSpec, x: Point3, tol: Tolerance) -> Result<Point3, GeomError> {
    spec.apply(x, tol)
}

/// A point of R³ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedPoint {
    Finite(Point3),
    Infinity,
}

/// Finite composition of sphere inversions, applied left to right.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MobiusMap {
    pub inversions: Vec<InversionSpec>,
}

impl MobiusMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(inversions: Vec<InversionSpec>) -> Self {
        Self { inversions }
    }

    pub fn then(mut self, spec: InversionSpec) -> Self {
        self.inversions.push(spec);
        self
    }

    pub fn apply(&self, x: Point3, tol: Tolerance) -> Result<Point3, GeomError> {
        self.inversions
            .iter()
            .enumerate()
            .try_fold(x, |y, (index, spec)| {
                spec.apply(y, tol).map_err(|_| GeomError::CenterHit { index })
            })
    }

    /// The point sent to ∞, i.e. `μ⁻¹(∞)`.
    ///
    /// Each inversion is an involution, so the preimage is obtained by
    /// pulling ∞ back through the inversions in reverse order.
    pub fn preimage_of_infinity(&self, tol: Tolerance) -> ExtendedPoint {
        self.inversions
            .iter()
            .rev()
            .fold(ExtendedPoint::Infinity, |q, spec| spec.apply_extended(q, tol))
    }
}

/// Applies `map` to `x`. See [`MobiusMap::apply`].
pub fn apply_mobius(map: &MobiusMap, x: Point3, tol: Tolerance) -> Result<Point3, GeomError> {
    map.apply(x, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Point3, b: Point3, t: f64) -> bool {
        a.dist(b) <= t
    }

    #[test]
    fn inverts_simple_points() {
        let tol = Tolerance::default();
        let s = InversionSpec::new(Point3::ORIGIN, 1.0).unwrap();
        assert_eq!(s.apply(Point3::new(2.0, 0.0, 0.0), tol).unwrap(), Point3::new(0.5, 0.0, 0.0));
        assert_eq!(s.apply(Point3::new(1.0, 0.0, 0.0), tol).unwrap(), Point3::new(1.0, 0.0, 0.0));
        let s = InversionSpec::new(Point3::new(1.0, 0.0, 0.0), 2.0).unwrap();
        assert_eq!(s.apply(Point3::new(5.0, 0.0, 0.0), tol).unwrap(), Point3::new(2.0, 0.0, 0.0));
    }

    #[test]
    fn center_is_rejected() {
        let s = InversionSpec::unit(Point3::new(1.0, 2.0, 3.0));
        assert_eq!(
            s.apply(Point3::new(1.0, 2.0, 3.0), Tolerance::default()),
            Err(GeomError::CenterHit { index: 0 })
        );
        assert!(InversionSpec::new(Point3::ORIGIN, 0.0).is_err());
        assert!(InversionSpec::new(Point3::ORIGIN, -1.0).is_err());
    }

    #[test]
    fn mobius_examples() {
        let tol = Tolerance::default();
        let x = Point3::new(3.0, 1.0, 4.0);
        assert_eq!(MobiusMap::identity().apply(x, tol).unwrap(), x);

        let m = MobiusMap::new(vec![
            InversionSpec::unit(Point3::ORIGIN),
            InversionSpec::new(Point3::ORIGIN, 2.0).unwrap(),
        ]);
        assert!(close(m.apply(Point3::new(1.0, 1.0, 0.0), tol).unwrap(), Point3::new(4.0, 4.0, 0.0), 1e-12));

        let r = 1e6;
        let far = MobiusMap::new(vec![InversionSpec::new(Point3::new(r, 0.0, 0.0), r).unwrap()]);
        let y = far.apply(Point3::new(1.0, 2.0, 3.0), tol).unwrap();
        assert!(close(y, Point3::new(-1.0, 2.0, 3.0), 1e-3), "{y}");
    }

    #[test]
    fn mobius_reports_offending_index() {
        let m = MobiusMap::new(vec![
            InversionSpec::unit(Point3::ORIGIN),
            InversionSpec::unit(Point3::new(0.5, 0.0, 0.0)),
        ]);
        // (2,0,0) -> (0.5,0,0), the second center.
        assert_eq!(
            m.apply(Point3::new(2.0, 0.0, 0.0), Tolerance::default()),
            Err(GeomError::CenterHit { index: 1 })
        );
    }

    #[test]
    fn preimage_of_infinity() {
        let tol = Tolerance::default();
        let a = InversionSpec::unit(Point3::ORIGIN);
        let b = InversionSpec::unit(Point3::new(2.0, 0.0, 0.0));
        // a then b: b sends (2,0,0) to ∞ and a sends (0.5,0,0) to (2,0,0).
        let m = MobiusMap::new(vec![a, b]);
        let p = m.preimage_of_infinity(tol);
        assert_eq!(p, ExtendedPoint::Finite(Point3::new(0.5, 0.0, 0.0)));
        let same = MobiusMap::new(vec![a, InversionSpec::new(Point3::ORIGIN, 3.0).unwrap()]);
        assert_eq!(same.preimage_of_infinity(tol), ExtendedPoint::Infinity);
        assert_eq!(MobiusMap::identity().preimage_of_infinity(tol), ExtendedPoint::Infinity);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn point() -> impl Strategy<Value = Point3> {
        (coord(), coord(), coord()).prop_map(|(x, y, z)| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn inversion_is_an_involution(c in point(), r in 0.1..10.0f64, x in point()) {
            prop_assume!(x.dist(c) > 1e-3);
            let tol = Tolerance::default();
            let s = InversionSpec::new(c, r).unwrap();
            let back = s.apply(s.apply(x, tol).unwrap(), tol).unwrap();
            prop_assert!(back.dist(x) <= 1e-9 * (1.0 + x.norm()));
        }

        #[test]
        fn same_center_pair_is_a_dilation(c in point(), r1 in 0.1..5.0f64, r2 in 0.1..5.0f64, x in point()) {
            prop_assume!(x.dist(c) > 1e-3);
            let tol = Tolerance::default();
            let m = MobiusMap::new(vec![InversionSpec::new(c, r1).unwrap(), InversionSpec::new(c, r2).unwrap()]);
            let k = (r2 / r1).powi(2);
            let expect = c + (x - c) * k;
            let got = m.apply(x, tol).unwrap();
            prop_assert!(got.dist(expect) <= 1e-9 * (1.0 + expect.norm()));
        }

        #[test]
        fn spheres_map_to_spheres(c in point(), r in 0.5..3.0f64, sc in point(), sr in 0.5..3.0f64, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            // Center of inversion off the sphere being mapped.
            prop_assume!((c.dist(sc) - sr).abs() > 0.3);
            let tol = Tolerance::default();
            let s = InversionSpec::new(c, r).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let images: Vec<Point3> = (0..20)
                .map(|_| {
                    let d = Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        .normalized()
                        .unwrap();
                    s.apply(sc + d * sr, tol).unwrap()
                })
                .collect();
            // Expected image sphere, from the closed-form image of a sphere.
            let d = sc - c;
            let pow = d.norm2() - sr * sr;
            let center = c + d * (r * r / pow);
            let radius = r * r * sr / pow.abs();
            for q in images {
                prop_assert!((q.dist(center) - radius).abs() <= 1e-7 * (1.0 + radius));
            }
        }
    }
}
