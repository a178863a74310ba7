//! Random tangents and automorphisms shared by the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use symbidisc_core::gdomain::{sample_point, Tangent};
use symbidisc_core::geodesics::{flat_tangent, pb_tangent, royal_tangent};
use symbidisc_core::mobius::angle_of;
use symbidisc_core::{c64, Complex64, DiskPoint, MobiusMap, MobiusType};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the disk of radius `r`.
pub fn disk(rng: &mut ChaCha8Rng, r: f64) -> DiskPoint {
    let rho = r * rng.gen::<f64>().sqrt();
    DiskPoint::new(Complex64::from_polar(rho, std::f64::consts::TAU * rng.gen::<f64>())).unwrap()
}

/// Modulus in `[0.1, 2]`, uniform argument.
pub fn scale(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.1..2.0), std::f64::consts::TAU * rng.gen::<f64>())
}

pub struct Royal {
    pub z: DiskPoint,
    pub c: Complex64,
    pub tangent: Tangent,
}

pub fn royal(rng: &mut ChaCha8Rng) -> Royal {
    let (z, c) = (disk(rng, 0.95), scale(rng));
    Royal { z, c, tangent: royal_tangent(z, c).unwrap() }
}

pub struct Flat {
    pub beta: DiskPoint,
    pub z: DiskPoint,
    pub c: Complex64,
    pub tangent: Tangent,
}

pub fn flat(rng: &mut ChaCha8Rng) -> Flat {
    let (beta, z, c) = (disk(rng, 0.95), disk(rng, 0.95), scale(rng));
    Flat { beta, z, c, tangent: flat_tangent(beta, z, c).unwrap() }
}

/// A hyperbolic automorphism whose fixed points are at least `0.3` rad apart.
pub fn hyperbolic(rng: &mut ChaCha8Rng) -> (MobiusMap, [Complex64; 2]) {
    loop {
        let alpha = disk(rng, 0.85).value();
        let c = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.gen::<f64>());
        let m = MobiusMap::new(c, alpha).unwrap();
        if let MobiusType::Hyperbolic { fixed } = m.classify() {
            let gap = (angle_of(fixed[0]) - angle_of(fixed[1])).abs();
            if gap.min(std::f64::consts::TAU - gap) > 0.3 {
                return (m, fixed);
            }
        }
    }
}

pub struct Balanced {
    pub m: MobiusMap,
    pub fixed: [Complex64; 2],
    pub z: DiskPoint,
    pub c: Complex64,
    pub tangent: Tangent,
}

pub fn balanced(rng: &mut ChaCha8Rng) -> Balanced {
    let (m, fixed) = hyperbolic(rng);
    let (z, c) = (disk(rng, 0.8), scale(rng));
    Balanced { m, fixed, z, c, tangent: pb_tangent(m, z, c).unwrap() }
}

/// Base point from [`sample_point`], Gaussian-like direction.
pub fn generic(rng: &mut ChaCha8Rng) -> Tangent {
    let base = sample_point(rng);
    let mut v = || c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    Tangent::new(base, v(), v())
}

/// Conjugates of the fixed points, as sorted angles.
pub fn conjugate_angles(fixed: &[Complex64; 2]) -> [f64; 2] {
    let mut a = [angle_of(fixed[0].conj()), angle_of(fixed[1].conj())];
    a.sort_by(f64::total_cmp);
    a
}

pub fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
