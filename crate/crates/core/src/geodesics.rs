//! Complex geodesics of `G`: the royal disc, the flat discs `F_β` and the
//! purely balanced discs `h_m`, with the tangents they carry.

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::GFunction;
use crate::gdomain::{sample_disk, DiskPoint, SymPoint, Tangent};
use crate::mobius::{LinearFractional, MobiusMap, MobiusType};

/// A holomorphic map `k : D → G` from one of the three constructible families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicDisc {
    /// `z ↦ (2z, z²)`.
    Royal,
    /// `w ↦ (β + β̄w, w)`.
    Flat { beta: DiskPoint },
    /// `z ↦ (z + m(z), z·m(z))` for a hyperbolic `m`.
    PurelyBalanced { m: MobiusMap },
}

pub fn royal_disc() -> GeodesicDisc {
    GeodesicDisc::Royal
}

pub fn flat_disc(beta: DiskPoint) -> GeodesicDisc {
    GeodesicDisc::Flat { beta }
}

pub fn h_m_disc(m: MobiusMap) -> Result<GeodesicDisc> {
    match m.classify() {
        MobiusType::Hyperbolic { .. } => Ok(GeodesicDisc::PurelyBalanced { m }),
        other => Err(Error::NotHyperbolic(other)),
    }
}

impl GeodesicDisc {
    pub fn tag(&self) -> &'static str {
        match self {
            GeodesicDisc::Royal => "royal",
            GeodesicDisc::Flat { .. } => "flat",
            GeodesicDisc::PurelyBalanced { .. } => "pb",
        }
    }

    /// `k(z)`; fails only if rounding pushes the image out of `G`.
    pub fn eval(&self, z: DiskPoint) -> Result<SymPoint> {
        let z = z.value();
        match self {
            GeodesicDisc::Royal => SymPoint::new(2.0 * z, z * z),
            GeodesicDisc::Flat { beta } => {
                let b = beta.value();
                SymPoint::new(b + b.conj() * z, z)
            }
            GeodesicDisc::PurelyBalanced { m } => {
                let w = m.apply(z);
                SymPoint::new(z + w, z * w)
            }
        }
    }

    /// `k'(z)`.
    pub fn derivative(&self, z: DiskPoint) -> [Complex64; 2] {
        let z = z.value();
        match self {
            GeodesicDisc::Royal => [Complex64::new(2.0, 0.0), 2.0 * z],
            GeodesicDisc::Flat { beta } => [beta.value().conj(), Complex64::new(1.0, 0.0)],
            GeodesicDisc::PurelyBalanced { m } => {
                let d = m.derivative(z);
                [1.0 + d, m.apply(z) + z * d]
            }
        }
    }

    /// `(k(z), c·k'(z))`.
    pub fn tangent(&self, z: DiskPoint, c: Complex64) -> Result<Tangent> {
        if c == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateTangent);
        }
        let d = self.derivative(z);
        Ok(Tangent::new(self.eval(z)?, c * d[0], c * d[1]))
    }
}

/// `((2z, z²), 2c(1, z))`.
pub fn royal_tangent(z: DiskPoint, c: Complex64) -> Result<Tangent> {
    royal_disc().tangent(z, c)
}

/// `((β + β̄z, z), c(β̄, 1))`.
pub fn flat_tangent(beta: DiskPoint, z: DiskPoint, c: Complex64) -> Result<Tangent> {
    flat_disc(beta).tangent(z, c)
}

/// `(h_m(z), c·h_m'(z))`.
pub fn pb_tangent(m: MobiusMap, z: DiskPoint, c: Complex64) -> Result<Tangent> {
    h_m_disc(m)?.tangent(z, c)
}

/// The single point `(2ζ, ζ²) = (β + β̄η, η)` of the royal disc on `F_β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoyalFlatIntersection {
    pub zeta: DiskPoint,
    pub eta: DiskPoint,
}

/// `ζ = β/(1 + √(1 − |β|²))`, the root of `β̄ζ² − 2ζ + β` inside `D`, and `η = ζ²`.
pub fn royal_flat_intersection(beta: DiskPoint) -> RoyalFlatIntersection {
    let b = beta.value();
    let zeta = b / (1.0 + (1.0 - b.norm_sqr()).sqrt());
    // |ζ| ≤ |β| < 1, so both constructors succeed
    RoyalFlatIntersection {
        zeta: DiskPoint::new(zeta).unwrap_or(DiskPoint::ORIGIN),
        eta: DiskPoint::new(zeta * zeta).unwrap_or(DiskPoint::ORIGIN),
    }
}

/// What [`verify_geodesic`] checks about `F ∘ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicMode {
    /// `F ∘ k = id`.
    LeftInverse,
    /// `F ∘ k` is an automorphism of `D`.
    Automorphism,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicReport {
    pub mode: GeodesicMode,
    /// Largest deviation of `F ∘ k` from the identity or from the fitted map.
    pub max_residual: f64,
    /// Aut mode: the map fitted through three points.
    pub fitted: Option<LinearFractional>,
    pub pass: bool,
}

/// Pass threshold for [`verify_geodesic`].
pub const GEODESIC_TOL: f64 = 1e-9;

/// Samples stay inside this radius, where `k(z)` is still in `G` after rounding.
const SAMPLE_RADIUS: f64 = 0.999;

const FIT_POINTS: [Complex64; 3] = [Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)];

/// Samples `n` points of `D` and compares `F ∘ k` with the identity, or in
/// automorphism mode with the linear fractional map through three fixed
/// points, which must also preserve the unit circle.
pub fn verify_geodesic<F: GFunction + ?Sized>(
    k: &GeodesicDisc,
    f: &F,
    seed: u64,
    n: usize,
    mode: GeodesicMode,
) -> GeodesicReport {
    let compose = |z: Complex64| -> Option<Complex64> {
        let z = DiskPoint::new(z).ok()?;
        f.value(&k.eval(z).ok()?).ok()
    };
    let failed = GeodesicReport { mode, max_residual: f64::INFINITY, fitted: None, pass: false };
    let fitted = match mode {
        GeodesicMode::LeftInverse => None,
        GeodesicMode::Automorphism => {
            let mut w = [Complex64::new(0.0, 0.0); 3];
            for (slot, z) in w.iter_mut().zip(FIT_POINTS) {
                match compose(z) {
                    Some(v) => *slot = v,
                    None => return failed,
                }
            }
            match LinearFractional::through_points(FIT_POINTS, w) {
                Some(l) => Some(l),
                None => return failed,
            }
        }
    };
    let reference = |z: Complex64| fitted.map_or(z, |l| l.apply(z));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let z = sample_disk(&mut rng).value() * SAMPLE_RADIUS;
        match compose(z) {
            Some(v) => worst = worst.max((v - reference(z)).norm()),
            None => return failed,
        }
    }
    if let Some(l) = fitted {
        for j in 0..16 {
            let t = Complex64::from_polar(1.0, core::f64::consts::TAU * j as f64 / 16.0);
            worst = worst.max((l.apply(t).norm() - 1.0).abs());
        }
    }
    GeodesicReport { mode, max_residual: worst, fitted, pass: worst < GEODESIC_TOL }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::function::Closure;
    use crate::gdomain::contains;
    use crate::magic::{phi, CirclePoint};

    fn dp(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(c64(re, im)).unwrap()
    }

    fn hyp() -> MobiusMap {
        MobiusMap::new(c64(1.0, 0.0), c64(-0.5, 0.0)).unwrap()
    }

    #[test]
    fn tangent_examples() {
        let t = royal_tangent(dp(0.0, 0.0), c64(0.5, 0.0)).unwrap();
        assert_eq!((t.base, t.v), (SymPoint::ORIGIN, [c64(1.0, 0.0), c64(0.0, 0.0)]));
        let t = royal_tangent(dp(0.5, 0.0), c64(1.0, 0.0)).unwrap();
        assert_eq!((t.base.s(), t.base.p(), t.v), (c64(1.0, 0.0), c64(0.25, 0.0), [c64(2.0, 0.0), c64(1.0, 0.0)]));
        assert_eq!(royal_tangent(dp(0.1, 0.0), c64(0.0, 0.0)), Err(Error::DegenerateTangent));

        let t = flat_tangent(dp(0.0, 0.0), dp(0.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert_eq!(t.v, [c64(0.0, 0.0), c64(1.0, 0.0)]);
        let t = flat_tangent(dp(0.5, 0.0), dp(0.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert_eq!((t.base.s(), t.v), (c64(0.5, 0.0), [c64(0.5, 0.0), c64(1.0, 0.0)]));

        let t = pb_tangent(hyp(), dp(0.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert!((t.base.s() - c64(0.5, 0.0)).norm() < 1e-16 && t.base.p() == c64(0.0, 0.0));
        assert!((t.v[0] - c64(1.75, 0.0)).norm() < 1e-15 && (t.v[1] - c64(0.5, 0.0)).norm() < 1e-15);
        let ell = MobiusMap::new(c64(0.0, 1.0), c64(0.1, 0.0)).unwrap();
        assert!(matches!(
            pb_tangent(ell, dp(0.0, 0.0), c64(1.0, 0.0)),
            Err(Error::NotHyperbolic(MobiusType::Elliptic { .. }))
        ));
    }

    #[test]
    fn intersection_examples() {
        let o = royal_flat_intersection(DiskPoint::ORIGIN);
        assert_eq!((o.zeta, o.eta), (DiskPoint::ORIGIN, DiskPoint::ORIGIN));
        let r = royal_flat_intersection(dp(0.5, 0.0));
        assert!((r.zeta.value() - c64(0.267_949_192_431_122_7, 0.0)).norm() < 1e-15);
        assert!((r.eta.value() - c64(0.071_796_769_724_490_8, 0.0)).norm() < 1e-15);
        assert!((2.0 * r.zeta.value() - (0.5 + 0.5 * r.eta.value())).norm() < 1e-15);
    }

    #[test]
    fn discs_stay_in_g() {
        let discs = [royal_disc(), flat_disc(dp(0.3, -0.6)), h_m_disc(hyp()).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let z = sample_disk(&mut rng);
            for k in &discs {
                let l = k.eval(z).unwrap();
                assert!(contains(l.s(), l.p()));
            }
        }
    }

    #[test]
    fn verify_examples() {
        let half_s = Closure::new("s/2", |l: &SymPoint| l.s() / 2.0);
        assert!(verify_geodesic(&royal_disc(), &half_s, 1, 200, GeodesicMode::LeftInverse).pass);
        let p = Closure::new("p", |l: &SymPoint| l.p());
        assert!(verify_geodesic(&flat_disc(DiskPoint::ORIGIN), &p, 1, 200, GeodesicMode::LeftInverse).pass);
        assert!(!verify_geodesic(&royal_disc(), &p, 1, 200, GeodesicMode::LeftInverse).pass);

        // m has fixed points ±1, so Φ_1 and Φ_{-1} restrict to automorphisms on h_m
        let k = h_m_disc(hyp()).unwrap();
        for theta in [0.0, core::f64::consts::PI] {
            let w = CirclePoint::new(theta);
            let f = Closure::new("phi", move |l: &SymPoint| phi(w, l));
            let r = verify_geodesic(&k, &f, 2, 500, GeodesicMode::Automorphism);
            assert!(r.pass, "{r:?}");
        }
        let w = CirclePoint::new(1.0);
        let f = Closure::new("phi", move |l: &SymPoint| phi(w, l));
        assert!(verify_geodesic(&k, &f, 2, 500, GeodesicMode::Automorphism).max_residual > 1e-3);
    }
}
