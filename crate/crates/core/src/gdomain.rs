//! Points and tangents of the unit disk `D` and the symmetrized bidisc `G`.

use alloc::vec::Vec;

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.norm_sqr() < 1.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(DiskPoint(z))
        } else {
            Err(Error::NotInDisk(z))
        }
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// A point `(s, p)` of `G`, i.e. `|s − s̄p| < 1 − |p|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymPoint {
    s: Complex64,
    p: Complex64,
}

impl SymPoint {
    pub fn new(s: Complex64, p: Complex64) -> Result<Self> {
        if contains(s, p) {
            Ok(SymPoint { s, p })
        } else {
            Err(Error::NotInDomain { s, p })
        }
    }

    pub const ORIGIN: SymPoint = SymPoint { s: Complex64::new(0.0, 0.0), p: Complex64::new(0.0, 0.0) };

    #[inline]
    pub fn s(&self) -> Complex64 {
        self.s
    }

    #[inline]
    pub fn p(&self) -> Complex64 {
        self.p
    }

    /// Euclidean length of `(s, p)` in `C²`.
    pub fn norm(&self) -> f64 {
        (self.s.norm_sqr() + self.p.norm_sqr()).sqrt()
    }

    /// `self + t·v`, if it stays in `G`.
    pub fn offset(&self, t: Complex64, v: [Complex64; 2]) -> Result<SymPoint> {
        SymPoint::new(self.s + t * v[0], self.p + t * v[1])
    }

    /// Lies on the royal variety `s² = 4p`.
    pub fn royal_defect(&self) -> f64 {
        (self.s * self.s - 4.0 * self.p).norm()
    }
}

/// Strict membership test for `G`.
pub fn contains(s: Complex64, p: Complex64) -> bool {
    let lhs = (s - s.conj() * p).norm();
    let rhs = 1.0 - p.norm_sqr();
    lhs.is_finite() && lhs < rhs
}

/// `(z, w) ↦ (z + w, zw)`.
pub fn symmetrize(z: DiskPoint, w: DiskPoint) -> SymPoint {
    let (z, w) = (z.value(), w.value());
    SymPoint { s: z + w, p: z * w }
}

/// The roots of `ζ² − sζ + p = 0`, i.e. the preimage of `λ` under
/// [`symmetrize`], as an unordered pair.
pub fn unsymmetrize(lambda: &SymPoint) -> Result<[DiskPoint; 2]> {
    let [a, b] = monic_quadratic_roots(-lambda.s, lambda.p);
    let inside = |z: Complex64| DiskPoint::new(z).map_err(|_| Error::RootOutsideDisk(z));
    Ok([inside(a)?, inside(b)?])
}

/// Roots of `z² + bz + c` without cancellation: the larger root comes from
/// `−(b + sign·√disc)/2`, the other from `c / root`.
pub(crate) fn monic_quadratic_roots(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let sq = (b * b - 4.0 * c).sqrt();
    // pick the sign that maximizes |b + sign·sq|
    let q = if (b.conj() * sq).re >= 0.0 { -(b + sq) / 2.0 } else { -(b - sq) / 2.0 };
    if q == Complex64::new(0.0, 0.0) {
        [q, q]
    } else {
        [q, c / q]
    }
}

/// A tangent `δ = (λ, v)` to `G`. May be degenerate (`v = 0`); solvers reject
/// those through [`Tangent::ensure_nondegenerate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangent {
    pub base: SymPoint,
    pub v: [Complex64; 2],
}

impl Tangent {
    pub fn new(base: SymPoint, v_s: Complex64, v_p: Complex64) -> Self {
        Tangent { base, v: [v_s, v_p] }
    }

    pub fn is_degenerate(&self) -> bool {
        self.v[0] == Complex64::new(0.0, 0.0) && self.v[1] == Complex64::new(0.0, 0.0)
    }

    pub fn ensure_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateTangent)
        } else {
            Ok(())
        }
    }

    /// Same base point, direction scaled by `t`.
    pub fn scaled(&self, t: Complex64) -> Tangent {
        Tangent { base: self.base, v: [t * self.v[0], t * self.v[1]] }
    }

    pub fn direction_norm(&self) -> f64 {
        (self.v[0].norm_sqr() + self.v[1].norm_sqr()).sqrt()
    }
}

/// A tangent `(z, v)` to the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskTangent {
    pub base: DiskPoint,
    pub v: Complex64,
}

impl DiskTangent {
    pub fn new(base: DiskPoint, v: Complex64) -> Self {
        DiskTangent { base, v }
    }
}

/// Poincaré length `|v| / (1 − |z|²)`.
pub fn poincare_metric(t: &DiskTangent) -> f64 {
    t.v.norm() / (1.0 - t.base.value().norm_sqr())
}

/// Pseudo-hyperbolic distance `|(z − w)/(1 − w̄z)|`.
pub fn pseudo_hyperbolic(z: Complex64, w: Complex64) -> f64 {
    if z == w {
        return 0.0;
    }
    ((z - w) / (1.0 - w.conj() * z)).norm()
}

/// Poincaré distance `tanh⁻¹ |(z − w)/(1 − w̄z)|`.
pub fn poincare_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    pseudo_hyperbolic(z.value(), w.value()).atanh()
}

/// Uniform-in-area draw from the open disk.
pub fn sample_disk<R: Rng + ?Sized>(rng: &mut R) -> DiskPoint {
    loop {
        let r = rng.gen::<f64>().sqrt();
        let theta = core::f64::consts::TAU * rng.gen::<f64>();
        if let Ok(z) = DiskPoint::new(Complex64::from_polar(r, theta)) {
            return z;
        }
    }
}

/// One point of `G` from two independent uniform disk draws.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R) -> SymPoint {
    loop {
        let (z, w) = (sample_disk(rng), sample_disk(rng));
        let l = symmetrize(z, w);
        // guard against rounding pushing a near-boundary point out of G
        if contains(l.s, l.p) {
            return l;
        }
    }
}

/// `n` points of `G`, reproducible for a fixed seed.
pub fn sample_g(seed: u64, n: usize) -> Vec<SymPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_point(&mut rng)).collect()
}
