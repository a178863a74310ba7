//! The functions `Φ_ω(s, p) = (2ωp − s)/(2 − ωs)`, `ω ∈ T`.
//!
//! For every non-degenerate tangent at least one `Φ_ω` is a Carathéodory
//! extremal, so the metric, the distance and the extremal set on `G` are all
//! computed through this family. Gradients are closed form.

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Result;
use crate::gdomain::{DiskPoint, DiskTangent, SymPoint, Tangent};

/// A point `ω = e^{iθ}` of the unit circle, stored by its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    theta: f64,
}

impl CirclePoint {
    pub fn new(theta: f64) -> Self {
        CirclePoint { theta: wrap_angle(theta) }
    }

    /// The circle point with the argument of `w` (which must be nonzero).
    pub fn from_complex(w: Complex64) -> Self {
        CirclePoint::new(w.arg())
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn conj(&self) -> CirclePoint {
        CirclePoint::new(-self.theta)
    }
}

/// `θ` reduced to `[0, 2π)`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let tau = core::f64::consts::TAU;
    let t = theta - tau * (theta / tau).floor();
    // the reduction can round up to exactly 2π
    if t >= tau || t < 0.0 {
        0.0
    } else {
        t
    }
}

/// `Φ_ω(λ)`.
#[inline]
pub fn phi(omega: CirclePoint, lambda: &SymPoint) -> Complex64 {
    phi_at(omega.omega(), lambda)
}

#[inline]
pub(crate) fn phi_at(w: Complex64, lambda: &SymPoint) -> Complex64 {
    let (s, p) = (lambda.s(), lambda.p());
    (2.0 * w * p - s) / (2.0 - w * s)
}

/// `(∂Φ_ω/∂s, ∂Φ_ω/∂p) = (2(ω²p − 1)/(2 − ωs)², 2ω/(2 − ωs))`.
#[inline]
pub fn grad_phi(omega: CirclePoint, lambda: &SymPoint) -> [Complex64; 2] {
    grad_phi_at(omega.omega(), lambda)
}

#[inline]
pub(crate) fn grad_phi_at(w: Complex64, lambda: &SymPoint) -> [Complex64; 2] {
    let (s, p) = (lambda.s(), lambda.p());
    let q = 2.0 - w * s;
    [2.0 * (w * w * p - 1.0) / (q * q), 2.0 * w / q]
}

/// `D_v Φ_ω(λ)`.
#[inline]
pub(crate) fn directional_at(w: Complex64, delta: &Tangent) -> Complex64 {
    let g = grad_phi_at(w, &delta.base);
    delta.v[0] * g[0] + delta.v[1] * g[1]
}

/// `(Φ_ω)_*(δ) = (Φ_ω(λ), D_v Φ_ω(λ))`.
pub fn push(omega: CirclePoint, delta: &Tangent) -> Result<DiskTangent> {
    delta.ensure_nondegenerate()?;
    let w = omega.omega();
    let base = DiskPoint::new(phi_at(w, &delta.base))?;
    Ok(DiskTangent::new(base, directional_at(w, delta)))
}

/// Poincaré length of `(Φ_ω)_*(δ)`, without the degeneracy check.
#[inline]
pub(crate) fn pushed_length_at(w: Complex64, delta: &Tangent) -> f64 {
    let f = phi_at(w, &delta.base);
    directional_at(w, delta).norm() / (1.0 - f.norm_sqr())
}

/// The image circle of `η ↦ Φ_η(λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaCircle {
    pub center: Complex64,
    pub radius: f64,
}

/// Center `2(s̄p − s)/(4 − |s|²)` and radius `|s² − 4p|/(4 − |s|²)`.
pub fn eta_circle(lambda: &SymPoint) -> EtaCircle {
    let (s, p) = (lambda.s(), lambda.p());
    let denom = 4.0 - s.norm_sqr();
    EtaCircle { center: 2.0 * (s.conj() * p - s) / denom, radius: (s * s - 4.0 * p).norm() / denom }
}

/// `sup_η |Φ_η(λ)| = (2|s − s̄p| + |s² − 4p|)/(4 − |s|²)`.
pub fn sup_abs_phi(lambda: &SymPoint) -> f64 {
    let c = eta_circle(lambda);
    c.center.norm() + c.radius
}

/// `(4 − |s|²) / ((4 − |s|²)² − (2|s − s̄p| + |s² − 4p|)²)^{1/2}`, the bound on
/// `‖u(λ)‖` for any unitary `G`-model.
pub fn model_vector_bound(lambda: &SymPoint) -> f64 {
    let (s, p) = (lambda.s(), lambda.p());
    let a = 4.0 - s.norm_sqr();
    let b = 2.0 * (s - s.conj() * p).norm() + (s * s - 4.0 * p).norm();
    a / ((a - b) * (a + b)).sqrt()
}
