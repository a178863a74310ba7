//! Automorphisms of the unit disk in the form `m(z) = c (z − α)/(1 − ᾱz)`.

use core::fmt;

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gdomain::{monic_quadratic_roots, DiskPoint, DiskTangent};

/// A fixed point counts as lying on the circle within this distance.
pub const ON_CIRCLE_TOL: f64 = 1e-10;
/// Two fixed points are distinct when further apart than this.
pub const DISTINCT_TOL: f64 = 1e-8;
const PARABOLIC_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `z ↦ c (z − α)/(1 − ᾱz)` with `|c| = 1`, `|α| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    c: Complex64,
    alpha: Complex64,
}

impl MobiusMap {
    /// `c` is renormalized to the unit circle; it must be nonzero.
    pub fn new(c: Complex64, alpha: Complex64) -> Result<Self> {
        let r = c.norm();
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument("rotation factor must be nonzero"));
        }
        if !(alpha.norm_sqr() < 1.0) {
            return Err(Error::NotInDisk(alpha));
        }
        Ok(MobiusMap { c: c / r, alpha })
    }

    pub const IDENTITY: MobiusMap = MobiusMap { c: ONE, alpha: ZERO };

    pub fn rotation(c: Complex64) -> Result<Self> {
        MobiusMap::new(c, ZERO)
    }

    #[inline]
    pub fn c(&self) -> Complex64 {
        self.c
    }

    #[inline]
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.c * (z - self.alpha) / (1.0 - self.alpha.conj() * z)
    }

    #[inline]
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = 1.0 - self.alpha.conj() * z;
        self.c * (1.0 - self.alpha.norm_sqr()) / (d * d)
    }

    /// `m⁻¹(z) = c̄ (z + cα)/(1 + c̄ᾱz)`.
    pub fn invert(&self) -> MobiusMap {
        MobiusMap { c: self.c.conj(), alpha: -self.c * self.alpha }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MobiusMap) -> MobiusMap {
        // the zero of the composite is inner⁻¹(α_outer); the rotation factor
        // follows from the chain rule at that zero: m'(α) = c / (1 − |α|²)
        let alpha = inner.invert().apply(self.alpha);
        let slope = self.derivative(inner.apply(alpha)) * inner.derivative(alpha);
        let c = slope * (1.0 - alpha.norm_sqr());
        MobiusMap { c: c / c.norm(), alpha }
    }

    /// Pushforward of a disk tangent: `(m(z), m'(z) v)`.
    pub fn push(&self, t: &DiskTangent) -> Result<DiskTangent> {
        let z = t.base.value();
        Ok(DiskTangent::new(DiskPoint::new(self.apply(z))?, self.derivative(z) * t.v))
    }

    pub fn classify(&self) -> MobiusType {
        classify(self)
    }

    /// Max distance between parameters, for comparisons in tests.
    pub fn param_distance(&self, other: &MobiusMap) -> f64 {
        (self.c - other.c).norm().max((self.alpha - other.alpha).norm())
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (z - {}) / (1 - conj({}) z)", self.c, self.alpha, self.alpha)
    }
}

/// Dynamical type of a disk automorphism, with its fixed points in `D⁻`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MobiusType {
    Identity,
    /// One fixed point inside `D` (its reflection `1/z̄` is not listed).
    Elliptic {
        fixed: Complex64,
    },
    /// A double fixed point on the circle.
    Parabolic {
        fixed: Complex64,
    },
    /// Two distinct fixed points on the circle, sorted by angle in `[0, 2π)`.
    Hyperbolic {
        fixed: [Complex64; 2],
    },
}

impl MobiusType {
    pub fn tag(&self) -> &'static str {
        match self {
            MobiusType::Identity => "identity",
            MobiusType::Elliptic { .. } => "elliptic",
            MobiusType::Parabolic { .. } => "parabolic",
            MobiusType::Hyperbolic { .. } => "hyperbolic",
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, MobiusType::Hyperbolic { .. })
    }
}

impl fmt::Display for MobiusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobiusType::Identity => write!(f, "identity"),
            MobiusType::Elliptic { fixed } => write!(f, "elliptic, fixed point {fixed}"),
            MobiusType::Parabolic { fixed } => write!(f, "parabolic, fixed point {fixed}"),
            MobiusType::Hyperbolic { fixed } => {
                write!(f, "hyperbolic, fixed points {} and {}", fixed[0], fixed[1])
            }
        }
    }
}

/// Angle of `z` in `[0, 2π)`.
pub fn angle_of(z: Complex64) -> f64 {
    crate::magic::wrap_angle(z.arg())
}

/// Fixed points from `ᾱz² + (c − 1)z − cα = 0`.
pub fn classify(m: &MobiusMap) -> MobiusType {
    let (c, alpha) = (m.c, m.alpha);
    if alpha == ZERO {
        return if (c - ONE).norm() < 1e-15 { MobiusType::Identity } else { MobiusType::Elliptic { fixed: ZERO } };
    }
    // tr²/det of the matrix [[c, −cα], [−ᾱ, 1]] is 4cos²(θ/2)/(1 − |α|²) with
    // c = e^{iθ}; it is < 4, = 4, > 4 for elliptic, parabolic, hyperbolic
    let tau = (c + 1.0).norm_sqr() / (1.0 - alpha.norm_sqr());
    let lead = alpha.conj();
    if (tau - 4.0).abs() <= PARABOLIC_TOL {
        let f = -(c - 1.0) / (2.0 * lead);
        return MobiusType::Parabolic { fixed: f / f.norm() };
    }
    let [z1, z2] = monic_quadratic_roots((c - 1.0) / lead, -c * alpha / lead);
    if tau > 4.0 {
        let on_circle = |z: Complex64| (z.norm() - 1.0).abs() < ON_CIRCLE_TOL;
        if (z1 - z2).norm() <= DISTINCT_TOL || !on_circle(z1) || !on_circle(z2) {
            let f = (z1 + z2) / 2.0;
            return MobiusType::Parabolic { fixed: f / f.norm() };
        }
        let mut fixed = [z1 / z1.norm(), z2 / z2.norm()];
        if angle_of(fixed[0]) > angle_of(fixed[1]) {
            fixed.swap(0, 1);
        }
        MobiusType::Hyperbolic { fixed }
    } else {
        let fixed = if z1.norm() < z2.norm() { z1 } else { z2 };
        MobiusType::Elliptic { fixed }
    }
}

/// The unique automorphism with `m(z) = 0` and `m'(z)·vc > 0`; it pushes
/// `(z, vc)` to `(0, |vc|/(1 − |z|²))`.
pub fn aligning_map(z: DiskPoint, vc: Complex64) -> Result<MobiusMap> {
    let r = vc.norm();
    if !(r > 0.0) {
        return Err(Error::DegenerateDirection);
    }
    // m'(z) = c / (1 − |z|²), so c = v̄c/|vc| makes m'(z)·vc = |vc|/(1 − |z|²)
    Ok(MobiusMap { c: vc.conj() / r, alpha: z.value() })
}

/// A general linear fractional map `(az + b)/(cz + d)`, used to test whether
/// sampled data come from a degree-one rational map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFractional {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl LinearFractional {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Matrix of the map sending `z1, z2, z3` to `0, ∞, 1`.
    fn cross_ratio(z: [Complex64; 3]) -> LinearFractional {
        let (k1, k2) = (z[2] - z[1], z[2] - z[0]);
        LinearFractional { a: k1, b: -z[0] * k1, c: k2, d: -z[1] * k2 }
    }

    fn inverse(&self) -> LinearFractional {
        LinearFractional { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    fn then(&self, outer: &LinearFractional) -> LinearFractional {
        LinearFractional {
            a: outer.a * self.a + outer.b * self.c,
            b: outer.a * self.b + outer.b * self.d,
            c: outer.c * self.a + outer.d * self.c,
            d: outer.c * self.b + outer.d * self.d,
        }
    }

    /// The unique map with `f(z_i) = w_i`; `None` when points repeat.
    pub fn through_points(z: [Complex64; 3], w: [Complex64; 3]) -> Option<LinearFractional> {
        let distinct = |p: [Complex64; 3]| {
            (p[0] - p[1]).norm() > 1e-12 && (p[1] - p[2]).norm() > 1e-12 && (p[0] - p[2]).norm() > 1e-12
        };
        if !distinct(z) || !distinct(w) {
            return None;
        }
        let m = Self::cross_ratio(z).then(&Self::cross_ratio(w).inverse());
        let det = m.a * m.d - m.b * m.c;
        if det.norm() == 0.0 || !det.norm().is_finite() {
            return None;
        }
        let k = det.sqrt();
        Some(LinearFractional { a: m.a / k, b: m.b / k, c: m.c / k, d: m.d / k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::gdomain::poincare_metric;

    fn m(c: Complex64, a: Complex64) -> MobiusMap {
        MobiusMap::new(c, a).unwrap()
    }

    #[test]
    fn apply_examples() {
        let z = c64(0.3, -0.2);
        assert_eq!(MobiusMap::IDENTITY.apply(z), z);
        assert!((m(c64(1.0, 0.0), c64(-0.5, 0.0)).apply(c64(0.0, 0.0)) - c64(0.5, 0.0)).norm() < 1e-16);
        let g = m(c64(0.6, 0.8), c64(0.2, 0.4));
        assert_eq!(g.apply(g.alpha()), c64(0.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(MobiusMap::IDENTITY.derivative(c64(0.4, 0.1)), c64(1.0, 0.0));
        let d = m(c64(1.0, 0.0), c64(-0.5, 0.0)).derivative(c64(0.0, 0.0));
        assert!((d - c64(0.75, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn construction_normalizes_and_validates() {
        let g = m(c64(3.0, 4.0), c64(0.1, 0.0));
        assert!((g.c().norm() - 1.0).abs() < 1e-16);
        assert!(MobiusMap::new(c64(0.0, 0.0), c64(0.0, 0.0)).is_err());
        assert!(MobiusMap::new(c64(1.0, 0.0), c64(1.0, 0.0)).is_err());
    }

    #[test]
    fn inverse_and_composition_examples() {
        assert_eq!(MobiusMap::IDENTITY.invert(), MobiusMap::IDENTITY);
        let g = m(c64(1.0, 0.0), c64(0.5, 0.0));
        assert!((g.invert().apply(c64(0.0, 0.0)) - c64(0.5, 0.0)).norm() < 1e-16);
        let h = m(c64(0.0, 1.0), c64(-0.3, 0.45));
        assert!(h.compose(&h.invert()).param_distance(&MobiusMap::IDENTITY) < 1e-14);
        assert!(h.invert().compose(&h).param_distance(&MobiusMap::IDENTITY) < 1e-14);
    }

    #[test]
    fn classify_examples() {
        let hyp = m(c64(1.0, 0.0), c64(-0.5, 0.0));
        match classify(&hyp) {
            MobiusType::Hyperbolic { fixed } => {
                assert!((fixed[0] - c64(1.0, 0.0)).norm() < 1e-12);
                assert!((fixed[1] - c64(-1.0, 0.0)).norm() < 1e-12);
            }
            other => panic!("expected hyperbolic, got {other}"),
        }
        assert_eq!(classify(&m(c64(0.0, 1.0), c64(0.0, 0.0))), MobiusType::Elliptic { fixed: c64(0.0, 0.0) });
        assert_eq!(classify(&MobiusMap::IDENTITY), MobiusType::Identity);
        let ell = m(c64(0.0, 1.0), c64(0.1, 0.0));
        match classify(&ell) {
            MobiusType::Elliptic { fixed } => {
                assert!(fixed.norm() < 1.0);
                assert!((ell.apply(fixed) - fixed).norm() < 1e-14);
            }
            other => panic!("expected elliptic, got {other}"),
        }
    }

    #[test]
    fn parabolic_is_detected() {
        // translation w ↦ w + t of the upper half plane, moved to the disk
        let t = 0.3;
        let lf = |z: Complex64| {
            let w = c64(0.0, 1.0) * (1.0 + z) / (1.0 - z);
            let w2 = w + t;
            (w2 - c64(0.0, 1.0)) / (w2 + c64(0.0, 1.0))
        };
        // α is the preimage of 0 and m(0) = −cα
        let alpha = {
            let w = c64(0.0, 1.0) - t;
            (w - c64(0.0, 1.0)) / (w + c64(0.0, 1.0))
        };
        let d = lf(c64(0.0, 0.0));
        let c = -d / alpha;
        let g = m(c, alpha);
        assert!((g.apply(c64(0.2, 0.1)) - lf(c64(0.2, 0.1))).norm() < 1e-12);
        assert!(matches!(classify(&g), MobiusType::Parabolic { .. }));
    }

    #[test]
    fn aligning_map_examples() {
        let vc = c64(0.3, -0.4);
        let a = aligning_map(DiskPoint::ORIGIN, vc).unwrap();
        assert!(a.param_distance(&MobiusMap::rotation(vc.conj()).unwrap()) < 1e-16);
        let a = aligning_map(DiskPoint::new(c64(0.5, 0.0)).unwrap(), c64(1.0, 0.0)).unwrap();
        assert!(a.param_distance(&m(c64(1.0, 0.0), c64(0.5, 0.0))) < 1e-16);
        assert!((a.derivative(c64(0.5, 0.0)) - c64(4.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(aligning_map(DiskPoint::ORIGIN, c64(0.0, 0.0)), Err(Error::DegenerateDirection));

        let z = DiskPoint::new(c64(-0.2, 0.7)).unwrap();
        let vc = c64(-1.3, 0.2);
        let pushed = aligning_map(z, vc).unwrap().push(&DiskTangent::new(z, vc)).unwrap();
        let expected = poincare_metric(&DiskTangent::new(z, vc));
        assert!(pushed.base.value().norm() < 1e-15);
        assert!((pushed.v - c64(expected, 0.0)).norm() < 1e-13 * expected);
    }

    #[test]
    fn three_point_fit_recovers_automorphism() {
        let g = m(c64(0.6, -0.8), c64(0.3, 0.1));
        let z = [c64(0.0, 0.0), c64(0.5, 0.0), c64(0.0, -0.5)];
        let f = LinearFractional::through_points(z, z.map(|x| g.apply(x))).unwrap();
        for k in 0..16 {
            let p = Complex64::from_polar(0.9, k as f64);
            assert!((f.apply(p) - g.apply(p)).norm() < 1e-12);
        }
        assert!(LinearFractional::through_points([z[0], z[0], z[1]], z).is_none());
    }
}
