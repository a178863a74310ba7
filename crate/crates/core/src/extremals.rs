//! Explicit Carathéodory extremals.
//!
//! * Royal tangents: `F = m(s/2 + ¼(s² − 4p) ψ/(1 − ½sψ))` for an automorphism
//!   `m` and a Schur function `ψ`.
//! * Purely balanced tangents: with `φ_j = m_j ∘ Φ_{ω_j}` well aligned,
//!   `F = rφ₁ + (1 − r)φ₂ + r(1 − r)(φ₁ − φ₂)²ψ/(1 − [(1 − r)φ₁ + rφ₂]ψ)`,
//!   evaluated as the linear fractional map of `U_r diag(φ₁, φ₂) U_r` at `ψ`.
//! * For any well-aligned extremal at a purely balanced tangent, the pair
//!   `(u₁, u₂)` with `Σ K_j u_j = 1` and `Σ K_j φ_j u_j = F` is recovered
//!   pointwise and checked against the model bound.
//! * Flat tangents: only the interpolation data an extremal must satisfy.

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::caratheodory::{classify_with, extremal_set_with, TangentClass, Tolerances};
use crate::error::{Error, Result};
use crate::function::{GFunction, Gradient, SharedFn};
use crate::gdomain::{DiskPoint, SymPoint, Tangent};
use crate::geodesics::royal_flat_intersection;
use crate::magic::{directional_at, grad_phi_at, model_vector_bound, phi_at, CirclePoint};
use crate::mobius::{aligning_map, MobiusMap};
use crate::realization::lft_eval_scalar;

/// Values of `ψ` up to this modulus are accepted.
pub const PSI_SLACK: f64 = 1e-12;
/// `recover_coefficients` needs `|φ₁(μ) − φ₂(μ)|` at least this large.
pub const SEPARATION_TOL: f64 = 1e-8;
/// Slack in the model bound `|u₁|² + |u₂|² ≤ bound²`.
pub const BOUND_SLACK: f64 = 1e-9;
/// Tolerance of the frame invariants `φ_j(λ) = 0`, `D_vφ_j(λ) = c(δ)`.
pub const FRAME_TOL: f64 = 1e-10;

fn psi_value(psi: &SharedFn, at: &SymPoint) -> Result<Complex64> {
    let v = psi.value(at)?;
    if v.norm() <= 1.0 + PSI_SLACK {
        Ok(v)
    } else {
        Err(Error::NotSchur { label: psi.label(), value: v })
    }
}

/// `m(s/2 + ¼(s² − 4p) ψ/(1 − ½sψ))`.
#[derive(Debug, Clone)]
pub struct RoyalExtremal {
    pub m: MobiusMap,
    pub psi: SharedFn,
}

pub fn royal_extremal(m: MobiusMap, psi: SharedFn) -> RoyalExtremal {
    RoyalExtremal { m, psi }
}

impl RoyalExtremal {
    /// The argument of `m`, with `q = ψ/(1 − ½sψ)`.
    fn inner(&self, at: &SymPoint) -> Result<(Complex64, Complex64, Complex64)> {
        let (s, p) = (at.s(), at.p());
        let psi = psi_value(&self.psi, at)?;
        let q = psi / (1.0 - 0.5 * s * psi);
        Ok((0.5 * s + 0.25 * (s * s - 4.0 * p) * q, psi, q))
    }
}

impl GFunction for RoyalExtremal {
    fn label(&self) -> String {
        format!("royal[m={}, psi={}]", self.m, self.psi.label())
    }

    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        Ok(self.m.apply(self.inner(at)?.0))
    }

    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        let Some(dpsi) = self.psi.gradient(at)? else {
            return Ok(None);
        };
        let (s, p) = (at.s(), at.p());
        let (x, psi, q) = self.inner(at)?;
        let den = (1.0 - 0.5 * s * psi).powi(2);
        let q_s = (dpsi[0] + 0.5 * psi * psi) / den;
        let q_p = dpsi[1] / den;
        let disc = s * s - 4.0 * p;
        let x_s = 0.5 + 0.5 * s * q + 0.25 * disc * q_s;
        let x_p = -q + 0.25 * disc * q_p;
        let k = self.m.derivative(x);
        Ok(Some([k * x_s, k * x_p]))
    }
}

/// The two well-aligned `φ_j = m_j ∘ Φ_{ω_j}` at a purely balanced tangent.
#[derive(Debug, Clone, PartialEq)]
pub struct PbFrame {
    pub delta: Tangent,
    /// `c(δ)`.
    pub cara: f64,
    /// `ω₁, ω₂`, by increasing angle.
    pub omegas: [CirclePoint; 2],
    /// `m_j(z) = c_j (z − α_j)/(1 − ᾱ_j z)`.
    pub maps: [MobiusMap; 2],
}

impl PbFrame {
    /// `φ_j(μ)` for `j ∈ {0, 1}`.
    pub fn phi(&self, j: usize, mu: &SymPoint) -> Complex64 {
        self.maps[j].apply(phi_at(self.omegas[j].omega(), mu))
    }

    pub fn phi_gradient(&self, j: usize, mu: &SymPoint) -> Gradient {
        let w = self.omegas[j].omega();
        let k = self.maps[j].derivative(phi_at(w, mu));
        let g = grad_phi_at(w, mu);
        [k * g[0], k * g[1]]
    }

    /// `D_vφ_j(λ)` at the base of the frame's tangent.
    pub fn aligned_derivative(&self, j: usize) -> Complex64 {
        let w = self.omegas[j].omega();
        self.maps[j].derivative(phi_at(w, &self.delta.base)) * directional_at(w, &self.delta)
    }
}

/// `φ_j` as a standalone function.
#[derive(Debug, Clone)]
pub struct FramePhi {
    pub frame: PbFrame,
    pub j: usize,
}

impl GFunction for FramePhi {
    fn label(&self) -> String {
        format!("phi{}[omega={}]", self.j + 1, self.frame.omegas[self.j].theta())
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        Ok(self.frame.phi(self.j, at))
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        Ok(Some(self.frame.phi_gradient(self.j, at)))
    }
}

pub fn pb_frame(delta: &Tangent) -> Result<PbFrame> {
    pb_frame_with(delta, &Tolerances::default())
}

pub fn pb_frame_with(delta: &Tangent, tol: &Tolerances) -> Result<PbFrame> {
    match classify_with(delta, tol)? {
        TangentClass::PurelyBalanced { .. } => {}
        other => return Err(Error::NotPurelyBalanced(other.tag())),
    }
    let set = extremal_set_with(delta, tol)?;
    let omegas = [CirclePoint::new(set.angles[0]), CirclePoint::new(set.angles[1])];
    let align = |w: CirclePoint| -> Result<MobiusMap> {
        let w = w.omega();
        aligning_map(DiskPoint::new(phi_at(w, &delta.base))?, directional_at(w, delta))
    };
    let frame = PbFrame { delta: *delta, cara: set.cara_value, omegas, maps: [align(omegas[0])?, align(omegas[1])?] };
    for j in 0..2 {
        let value = frame.phi(j, &delta.base);
        let derivative = frame.aligned_derivative(j);
        let scale = frame.cara.max(1.0);
        if value.norm() > FRAME_TOL || (derivative - frame.cara).norm() > FRAME_TOL * scale {
            return Err(Error::AlignmentFailed { value, derivative });
        }
    }
    Ok(frame)
}

/// `U_r diag(a, b) U_r` with `U_r = [[√r, √(1−r)], [√(1−r), −√r]]`.
pub fn conjugated_diagonal(r: f64, a: Complex64, b: Complex64) -> [[Complex64; 2]; 2] {
    let off = (r * (1.0 - r)).sqrt() * (a - b);
    [[r * a + (1.0 - r) * b, off], [off, (1.0 - r) * a + r * b]]
}

/// The purely balanced extremal for parameters `r` and `ψ`.
#[derive(Debug, Clone)]
pub struct PbExtremal {
    pub frame: PbFrame,
    pub r: f64,
    pub psi: SharedFn,
}

pub fn pb_extremal(frame: PbFrame, r: f64, psi: SharedFn) -> Result<PbExtremal> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::ParameterOutOfRange(r));
    }
    Ok(PbExtremal { frame, r, psi })
}

impl PbExtremal {
    /// The closed-form expression, for cross-checking the LFT evaluation.
    pub fn value_direct(&self, at: &SymPoint) -> Result<Complex64> {
        let (p1, p2) = (self.frame.phi(0, at), self.frame.phi(1, at));
        let psi = psi_value(&self.psi, at)?;
        let r = self.r;
        let d = (1.0 - r) * p1 + r * p2;
        Ok(r * p1 + (1.0 - r) * p2 + r * (1.0 - r) * (p1 - p2) * (p1 - p2) * psi / (1.0 - d * psi))
    }
}

impl GFunction for PbExtremal {
    fn label(&self) -> String {
        format!("pb[r={}, psi={}]", self.r, self.psi.label())
    }

    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        let t = conjugated_diagonal(self.r, self.frame.phi(0, at), self.frame.phi(1, at));
        lft_eval_scalar(t, psi_value(&self.psi, at)?)
    }

    /// With `A`, `BC = r(1−r)(φ₁−φ₂)²` and `D` the entries of the conjugated
    /// diagonal: `dF = dA + d(BC)ψ/(1−Dψ) + BC(dψ + ψ² dD)/(1−Dψ)²`.
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        let Some(dpsi) = self.psi.gradient(at)? else {
            return Ok(None);
        };
        let r = self.r;
        let (p1, p2) = (self.frame.phi(0, at), self.frame.phi(1, at));
        let (g1, g2) = (self.frame.phi_gradient(0, at), self.frame.phi_gradient(1, at));
        let psi = psi_value(&self.psi, at)?;
        let d = (1.0 - r) * p1 + r * p2;
        let bc = r * (1.0 - r) * (p1 - p2) * (p1 - p2);
        let den = 1.0 - d * psi;
        let mut out = [Complex64::new(0.0, 0.0); 2];
        for k in 0..2 {
            let da = r * g1[k] + (1.0 - r) * g2[k];
            let dd = (1.0 - r) * g1[k] + r * g2[k];
            let dbc = 2.0 * r * (1.0 - r) * (p1 - p2) * (g1[k] - g2[k]);
            out[k] = da + dbc * psi / den + bc * (dpsi[k] + psi * psi * dd) / (den * den);
        }
        Ok(Some(out))
    }
}

/// Normalized Szegő kernel `K_α(z) = (1 − |α|²)^{1/2}/(1 − ᾱz)`.
pub fn szego_kernel(alpha: DiskPoint, z: Complex64) -> Complex64 {
    let a = alpha.value();
    (1.0 - a.norm_sqr()).sqrt() / (1.0 - a.conj() * z)
}

/// `(u₁(μ), u₂(μ))` with the residuals of the two defining equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelCoefficients {
    pub mu: SymPoint,
    pub u: [Complex64; 2],
    /// `|Σ K_j u_j − 1|`.
    pub residual_sum: f64,
    /// `|Σ K_j φ_j u_j − F(μ)|`.
    pub residual_value: f64,
}

impl ModelCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.u[0].norm_sqr() + self.u[1].norm_sqr()
    }

    pub fn residual(&self) -> f64 {
        self.residual_sum.max(self.residual_value)
    }
}

/// `K_j = (1 − |α_j|²)^{1/2}/(1 + ᾱ_j c̄_j φ_j(μ))`, i.e. the Szegő kernel at
/// `−c_jα_j`.
pub fn model_weights(frame: &PbFrame, mu: &SymPoint) -> Result<[Complex64; 2]> {
    let weight = |j: usize| -> Result<Complex64> {
        let m = frame.maps[j];
        Ok(szego_kernel(DiskPoint::new(-m.c() * m.alpha())?, frame.phi(j, mu)))
    };
    Ok([weight(0)?, weight(1)?])
}

/// Solves `K₁u₁ + K₂u₂ = 1`, `K₁φ₁u₁ + K₂φ₂u₂ = F(μ)`.
pub fn recover_coefficients<F: GFunction + ?Sized>(f: &F, frame: &PbFrame, mu: &SymPoint) -> Result<ModelCoefficients> {
    let (p1, p2) = (frame.phi(0, mu), frame.phi(1, mu));
    let gap = (p1 - p2).norm();
    if gap < SEPARATION_TOL {
        return Err(Error::NotIdentifiable(gap));
    }
    let value = f.value(mu)?;
    let k = model_weights(frame, mu)?;
    let u = [(p2 - value) / (k[0] * (p2 - p1)), (value - p1) / (k[1] * (p2 - p1))];
    let residual_sum = (k[0] * u[0] + k[1] * u[1] - 1.0).norm();
    let residual_value = (k[0] * p1 * u[0] + k[1] * p2 * u[1] - value).norm();
    Ok(ModelCoefficients { mu: *mu, u, residual_sum, residual_value })
}

/// `|u₁|² + |u₂|² ≤ model_vector_bound(μ)² + BOUND_SLACK`.
pub fn check_coefficient_bound(coef: &ModelCoefficients) -> bool {
    let b = model_vector_bound(&coef.mu);
    coef.norm_sqr() <= b * b + BOUND_SLACK
}

/// Interpolation data for extremals at the flat tangent `((β + β̄z, z), c(β̄, 1))`:
/// `(2ζ, ζ²) = (β + β̄η, η)`, the automorphism `m` with `m_*(z, c) = (0, c(δ))`,
/// and the value `m(η)` any `h` on the royal disc must take at `ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatExtremalData {
    pub beta: DiskPoint,
    pub zeta: DiskPoint,
    pub eta: DiskPoint,
    pub m: MobiusMap,
    pub target: Complex64,
}

pub fn flat_extremal_data(beta: DiskPoint, z: DiskPoint, c: Complex64) -> Result<FlatExtremalData> {
    let m = aligning_map(z, c)?;
    let cross = royal_flat_intersection(beta);
    Ok(FlatExtremalData { beta, zeta: cross.zeta, eta: cross.eta, m, target: m.apply(cross.eta.value()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::caratheodory::{push_general, verify_extremal};
    use crate::function::{Closure, Constant};
    use crate::gdomain::{poincare_metric, sample_g};
    use crate::geodesics::{pb_tangent, royal_tangent};
    use crate::realization::{random_colligation, schur_from_colligation};
    use alloc::sync::Arc;

    fn pb() -> Tangent {
        let m = MobiusMap::new(c64(1.0, 0.0), c64(-0.5, 0.0)).unwrap();
        pb_tangent(m, DiskPoint::ORIGIN, c64(1.0, 0.0)).unwrap()
    }

    fn zero() -> SharedFn {
        Arc::new(Constant(c64(0.0, 0.0)))
    }

    #[test]
    fn royal_examples() {
        let f = royal_extremal(MobiusMap::IDENTITY, zero());
        for l in sample_g(1, 20) {
            assert!((f.value(&l).unwrap() - l.s() / 2.0).norm() < 1e-16);
        }
        let delta = royal_tangent(DiskPoint::new(c64(0.5, 0.0)).unwrap(), c64(1.0, 0.0)).unwrap();
        let r = verify_extremal(&f, &delta, 1, 2000).unwrap();
        assert!(r.pass && (r.metric - 4.0 / 3.0).abs() < 1e-12, "{r:?}");

        let one = royal_extremal(MobiusMap::IDENTITY, Arc::new(Constant(c64(1.0, 0.0))));
        for k in 0..20 {
            let z = c64(0.04 * k as f64, -0.02 * k as f64);
            let at = SymPoint::new(2.0 * z, z * z).unwrap();
            assert!((one.value(&at).unwrap() - z).norm() < 1e-15);
        }
        let bad = royal_extremal(MobiusMap::IDENTITY, Arc::new(Constant(c64(1.5, 0.0))));
        assert!(matches!(bad.value(&SymPoint::ORIGIN), Err(Error::NotSchur { .. })));
    }

    #[test]
    fn royal_gradient_is_exact() {
        let psi = schur_from_colligation(random_colligation(3, 2, 0.9).unwrap());
        let m = MobiusMap::new(c64(0.6, 0.8), c64(0.2, -0.3)).unwrap();
        let f = royal_extremal(m, psi);
        let numeric = Closure::new("copy", {
            let f = f.clone();
            move |l: &SymPoint| f.value(l).unwrap()
        });
        for l in sample_g(2, 10) {
            let t = Tangent::new(l, c64(0.3, -0.1), c64(0.2, 0.4));
            let a = push_general(&f, &t).unwrap().v;
            let b = push_general(&numeric, &t).unwrap().v;
            assert!((a - b).norm() < 1e-7 * (1.0 + a.norm()), "{a} {b}");
        }
    }

    #[test]
    fn frame_examples() {
        let frame = pb_frame(&pb()).unwrap();
        assert!(frame.omegas[0].theta().abs() < 1e-8);
        assert!((frame.omegas[1].theta() - core::f64::consts::PI).abs() < 1e-8);
        for j in 0..2 {
            assert!(frame.phi(j, &frame.delta.base).norm() < 1e-12);
            assert!((frame.aligned_derivative(j) - 1.0).norm() < 1e-10);
        }
        assert!((frame.cara - 1.0).abs() < 1e-10);
        let royal = royal_tangent(DiskPoint::new(c64(0.5, 0.0)).unwrap(), c64(1.0, 0.0)).unwrap();
        assert_eq!(pb_frame(&royal), Err(Error::NotPurelyBalanced("royal")));
    }

    #[test]
    fn pb_examples() {
        let frame = pb_frame(&pb()).unwrap();
        let psi = schur_from_colligation(random_colligation(4, 2, 0.8).unwrap());
        let pts = sample_g(3, 50);
        let one = pb_extremal(frame.clone(), 1.0, psi.clone()).unwrap();
        let zero_r = pb_extremal(frame.clone(), 0.0, psi.clone()).unwrap();
        for l in &pts {
            assert!((one.value(l).unwrap() - frame.phi(0, l)).norm() < 1e-14);
            assert!((zero_r.value(l).unwrap() - frame.phi(1, l)).norm() < 1e-14);
        }
        let half = pb_extremal(frame.clone(), 0.5, zero()).unwrap();
        for l in &pts {
            let want = (frame.phi(0, l) + frame.phi(1, l)) / 2.0;
            assert!((half.value(l).unwrap() - want).norm() < 1e-15);
        }
        assert!(verify_extremal(&half, &frame.delta, 5, 2000).unwrap().pass);
        assert_eq!(pb_extremal(frame.clone(), 1.5, zero()).err(), Some(Error::ParameterOutOfRange(1.5)));

        let f = pb_extremal(frame.clone(), 0.3, psi).unwrap();
        for l in &pts {
            assert!((f.value(l).unwrap() - f.value_direct(l).unwrap()).norm() < 1e-12);
        }
        let t = push_general(&f, &frame.delta).unwrap();
        assert!(t.base.value().norm() < 1e-10);
        assert!((poincare_metric(&t) - frame.cara).abs() < 1e-8 * frame.cara);
    }

    #[test]
    fn szego_examples() {
        let z = c64(0.3, 0.2);
        assert_eq!(szego_kernel(DiskPoint::ORIGIN, z), c64(1.0, 0.0));
        let k = szego_kernel(DiskPoint::new(c64(0.5, 0.0)).unwrap(), c64(0.0, 0.0));
        assert!((k.re - 0.75f64.sqrt()).abs() < 1e-16);
        let a = DiskPoint::new(c64(0.1, -0.4)).unwrap();
        let k = szego_kernel(a, a.value());
        assert!((k - c64(1.0 / (1.0 - a.value().norm_sqr()).sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        let frame = pb_frame(&pb()).unwrap();
        let phi1 = FramePhi { frame: frame.clone(), j: 0 };
        let phi2 = FramePhi { frame: frame.clone(), j: 1 };
        let (m1, m2) = (frame.maps[0], frame.maps[1]);
        for mu in sample_g(6, 50) {
            let c = recover_coefficients(&phi1, &frame, &mu).unwrap();
            let want =
                (1.0 + m1.alpha().conj() * m1.c().conj() * frame.phi(0, &mu)) / (1.0 - m1.alpha().norm_sqr()).sqrt();
            assert!((c.u[0] - want).norm() < 1e-12 && c.u[1].norm() < 1e-12);
            assert!(check_coefficient_bound(&c));
            let c = recover_coefficients(&phi2, &frame, &mu).unwrap();
            let want =
                (1.0 + m2.alpha().conj() * m2.c().conj() * frame.phi(1, &mu)) / (1.0 - m2.alpha().norm_sqr()).sqrt();
            assert!(c.u[0].norm() < 1e-12 && (c.u[1] - want).norm() < 1e-12);

            let half = pb_extremal(frame.clone(), 0.5, zero()).unwrap();
            let c = recover_coefficients(&half, &frame, &mu).unwrap();
            assert!(c.residual() < 1e-12);
            assert!(check_coefficient_bound(&c));
            let scaled =
                ModelCoefficients { u: [c.u[0] * 2.0 * model_vector_bound(&mu) / c.norm_sqr().sqrt(), c.u[1]], ..c };
            assert!(!check_coefficient_bound(&scaled));
        }
        assert!(matches!(recover_coefficients(&phi1, &frame, &frame.delta.base), Err(Error::NotIdentifiable(_))));
    }

    #[test]
    fn flat_data() {
        let beta = DiskPoint::new(c64(0.5, 0.0)).unwrap();
        let z = DiskPoint::new(c64(0.2, 0.1)).unwrap();
        let d = flat_extremal_data(beta, z, c64(0.0, 2.0)).unwrap();
        assert!(d.m.apply(z.value()).norm() < 1e-15);
        let k = d.m.derivative(z.value()) * c64(0.0, 2.0);
        assert!(k.im.abs() < 1e-15 && (k.re - 2.0 / (1.0 - z.value().norm_sqr())).abs() < 1e-14);
        assert!((d.target - d.m.apply(d.eta.value())).norm() == 0.0);
    }
}
