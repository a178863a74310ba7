//! The Carathéodory extremal problem on `G`.
//!
//! Since some `Φ_ω` always solves the problem, the metric of a tangent `δ` is
//! the maximum over the circle of the ω-profile `θ ↦ |(Φ_{e^{iθ}})_*(δ)|`.
//! The profile is sampled on a uniform grid, every candidate maximum is
//! refined by golden-section search and then polished on the sign change of
//! the closed-form θ-derivative. The set of maximizers is a single angle, two
//! angles, or (when the profile is constant) the whole circle.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::{checked_value, Composed, GFunction, SharedFn};
use crate::gdomain::{
    poincare_metric, pseudo_hyperbolic, sample_point, unsymmetrize, DiskPoint, DiskTangent, SymPoint, Tangent,
};
use crate::magic::{directional_at, phi_at, pushed_length_at, wrap_angle};
use crate::mobius::{aligning_map, angle_of, MobiusMap, MobiusType};
use crate::search::{bisect, golden_max};

/// Numerical thresholds of the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative spread below which the ω-profile counts as constant.
    pub constancy: f64,
    /// Refined maxima within this relative gap of the best are all extremal.
    pub cluster: f64,
    /// Refined angles closer than this (radians) are the same angle.
    pub angle: f64,
    /// Relative gap allowed between `|F_*(δ)|` and the metric.
    pub extremality: f64,
    /// Minimum `|φ₁(μ) − φ₂(μ)|` for coefficient recovery.
    pub separation: f64,
    /// Number of grid angles for the ω-profile.
    pub grid: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { constancy: 1e-10, cluster: 1e-7, angle: 1e-6, extremality: 1e-7, separation: 1e-8, grid: 4096 }
    }
}

/// Tolerance of the algebraic royal/flat tests.
pub const ALGEBRAIC_TOL: f64 = 1e-10;

/// `F_*(δ) = (F(λ), D_v F(λ))`, from the exact gradient when `F` has one and
/// otherwise from a Richardson-extrapolated central difference.
pub fn push_general<F: GFunction + ?Sized>(f: &F, delta: &Tangent) -> Result<DiskTangent> {
    delta.ensure_nondegenerate()?;
    let value = checked_value(f, &delta.base)?;
    let derivative = match f.gradient(&delta.base)? {
        Some(g) => delta.v[0] * g[0] + delta.v[1] * g[1],
        None => numerical_directional(f, &delta.base, delta.v)?,
    };
    Ok(DiskTangent::new(DiskPoint::new(value)?, derivative))
}

/// Central differences with steps `h` and `h/2` along the real line through
/// `at` in direction `v`, combined by one Richardson step.
fn numerical_directional<F: GFunction + ?Sized>(f: &F, at: &SymPoint, v: [Complex64; 2]) -> Result<Complex64> {
    let vn = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let mut h = 1e-5 * (1.0 + at.norm()) / vn;
    for _ in 0..60 {
        let eval = |t: f64| at.offset(Complex64::new(t, 0.0), v).and_then(|q| f.value(&q));
        match (eval(h), eval(-h), eval(h / 2.0), eval(-h / 2.0)) {
            (Ok(a), Ok(b), Ok(c), Ok(d)) => {
                let wide = (a - b) / (2.0 * h);
                let narrow = (c - d) / h;
                return Ok((4.0 * narrow - wide) / 3.0);
            }
            (Err(Error::NotInDomain { .. }), ..)
            | (_, Err(Error::NotInDomain { .. }), ..)
            | (_, _, Err(Error::NotInDomain { .. }), _)
            | (.., Err(Error::NotInDomain { .. })) => h /= 2.0,
            (Err(e), ..) | (_, Err(e), ..) | (_, _, Err(e), _) | (.., Err(e)) => return Err(e),
        }
    }
    Err(Error::InvalidArgument("no admissible difference step inside G"))
}

/// Grid angles `2πk/n`.
pub fn grid_angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

/// The ω-profile `f(θ) = |(Φ_{e^{iθ}})_*(δ)|` on the uniform grid of `n` angles.
pub fn profile(delta: &Tangent, n: usize) -> Result<Vec<f64>> {
    delta.ensure_nondegenerate()?;
    Ok(grid_angles(n).map(|t| pushed_length_at(Complex64::from_polar(1.0, t), delta)).collect())
}

#[inline]
fn profile_at(delta: &Tangent, theta: f64) -> f64 {
    pushed_length_at(Complex64::from_polar(1.0, theta), delta)
}

/// Quantity with the sign of `f'(θ)` for the ω-profile.
fn profile_slope(delta: &Tangent, theta: f64) -> f64 {
    let w = Complex64::from_polar(1.0, theta);
    let (s, p) = (delta.base.s(), delta.base.p());
    let q = 2.0 - w * s;
    let (q2, q3) = (q * q, q * q * q);
    let f = phi_at(w, &delta.base);
    let df = (4.0 * p - s * s) / q2;
    let g = directional_at(w, delta);
    let dg =
        delta.v[0] * (4.0 * w * p / q2 + 4.0 * s * (w * w * p - 1.0) / q3) + delta.v[1] * (2.0 / q + 2.0 * w * s / q2);
    let iw = Complex64::new(0.0, 1.0) * w;
    (g.conj() * dg * iw).re * (1.0 - f.norm_sqr()) + 2.0 * g.norm_sqr() * (f.conj() * df * iw).re
}

/// Indices of circular local maxima of `values` whose value is at least
/// `floor`.
fn local_maxima(values: &[f64], floor: f64) -> Vec<usize> {
    let n = values.len();
    (0..n)
        .filter(|&k| {
            let (prev, next) = (values[(k + n - 1) % n], values[(k + 1) % n]);
            values[k] >= floor && values[k] >= prev && values[k] > next
        })
        .collect()
}

/// Refines the grid maximum at index `k` of an `n`-point grid.
fn refine_profile_max(delta: &Tangent, k: usize, n: usize) -> (f64, f64) {
    let step = TAU / n as f64;
    let (a, b) = (step * (k as f64 - 1.0), step * (k as f64 + 1.0));
    let (tg, fg) = golden_max(|t| profile_at(delta, t), a, b, 1e-12);
    let polished = bisect(|t| profile_slope(delta, t), a, b)
        .map(|t| (t, profile_at(delta, t)))
        .filter(|&(_, fp)| fp >= fg * (1.0 - 1e-13));
    let (t, f) = polished.unwrap_or((tg, fg));
    (wrap_angle(t), f)
}

/// Refined maxima of the profile that come within 1% of the grid maximum.
fn candidate_maxima(delta: &Tangent, values: &[f64]) -> Vec<(f64, f64)> {
    let top = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    local_maxima(values, top * 0.99).into_iter().map(|k| refine_profile_max(delta, k, values.len())).collect()
}

fn spread(values: &[f64]) -> (f64, f64) {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    (max, (max - min) / max)
}

/// Carathéodory metric `c(δ) = max_ω |(Φ_ω)_*(δ)|`.
pub fn metric(delta: &Tangent) -> Result<f64> {
    metric_with(delta, &Tolerances::default())
}

pub fn metric_with(delta: &Tangent, tol: &Tolerances) -> Result<f64> {
    let values = profile(delta, tol.grid)?;
    let (max, rel_spread) = spread(&values);
    if rel_spread < tol.constancy {
        return Ok(max);
    }
    Ok(candidate_maxima(delta, &values).into_iter().map(|(_, f)| f).fold(max, f64::max))
}

/// Carathéodory distance `max_ω tanh⁻¹ |(Φ_ω(λ) − Φ_ω(μ))/(1 − conj(Φ_ω(μ)) Φ_ω(λ))|`.
pub fn distance(lambda: &SymPoint, mu: &SymPoint) -> f64 {
    distance_with(lambda, mu, &Tolerances::default())
}

pub fn distance_with(lambda: &SymPoint, mu: &SymPoint, tol: &Tolerances) -> f64 {
    if lambda == mu {
        return 0.0;
    }
    let rho = |t: f64| {
        let w = Complex64::from_polar(1.0, t);
        pseudo_hyperbolic(phi_at(w, lambda), phi_at(w, mu))
    };
    let n = tol.grid;
    let values: Vec<f64> = grid_angles(n).map(rho).collect();
    let top = values.iter().cloned().fold(0.0, f64::max);
    let step = TAU / n as f64;
    let best = local_maxima(&values, top * 0.99)
        .into_iter()
        .map(|k| golden_max(rho, step * (k as f64 - 1.0), step * (k as f64 + 1.0), 1e-12).1)
        .fold(top, f64::max);
    best.atanh()
}

/// Which of the three alternatives the extremal set realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    Single,
    Pair,
    All,
}

impl ExtremalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremalKind::Single => "single",
            ExtremalKind::Pair => "pair",
            ExtremalKind::All => "all",
        }
    }
}

impl fmt::Display for ExtremalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `E_δ = {ω : Φ_ω is extremal for δ}` together with `c(δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSet {
    pub cara_value: f64,
    pub kind: ExtremalKind,
    /// Sorted angles in `[0, 2π)`; empty when `kind` is `All`.
    pub angles: Vec<f64>,
}

pub fn extremal_set(delta: &Tangent) -> Result<ExtremalSet> {
    extremal_set_with(delta, &Tolerances::default())
}

pub fn extremal_set_with(delta: &Tangent, tol: &Tolerances) -> Result<ExtremalSet> {
    let values = profile(delta, tol.grid)?;
    let (max, rel_spread) = spread(&values);
    if rel_spread < tol.constancy {
        return Ok(ExtremalSet { cara_value: max, kind: ExtremalKind::All, angles: Vec::new() });
    }
    let candidates = candidate_maxima(delta, &values);
    let best = candidates.iter().map(|c| c.1).fold(max, f64::max);
    let mut top: Vec<(f64, f64)> = candidates.into_iter().filter(|&(_, f)| (best - f) <= tol.cluster * best).collect();
    top.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(top.len());
    for (t, f) in top {
        match merged.last_mut() {
            Some(last) if circular_gap(last.0, t) < tol.angle => {
                if f > last.1 {
                    *last = (t, f);
                }
            }
            _ => merged.push((t, f)),
        }
    }
    if merged.len() > 1 && circular_gap(merged[0].0, merged[merged.len() - 1].0) < tol.angle {
        let last = merged.pop().unwrap();
        if last.1 > merged[0].1 {
            merged[0] = last;
        }
        merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    let angles: Vec<f64> = merged.iter().map(|m| m.0).collect();
    let kind = match angles.len() {
        1 => ExtremalKind::Single,
        2 => ExtremalKind::Pair,
        count => return Err(Error::TrichotomyViolated { count }),
    };
    Ok(ExtremalSet { cara_value: best, kind, angles })
}

/// Distance between two angles on the circle.
pub fn circular_gap(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

/// Type of a tangent with the parameters that reproduce it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentClass {
    /// `δ = ((2z, z²), 2c(1, z))`.
    Royal { z: Complex64, c: Complex64 },
    /// `δ = ((β + β̄z, z), c(β̄, 1))`.
    Flat { beta: Complex64, z: Complex64, c: Complex64 },
    /// `δ = (h_m(z), c·h_m'(z))` with `h_m(z) = (z + m(z), z·m(z))`.
    PurelyBalanced { m: MobiusMap, z: Complex64, c: Complex64 },
    /// Exactly one extremal `Φ_ω` (purely unbalanced or exceptional).
    UniqueExtremal { angle: f64 },
}

impl TangentClass {
    pub fn tag(&self) -> &'static str {
        match self {
            TangentClass::Royal { .. } => "royal",
            TangentClass::Flat { .. } => "flat",
            TangentClass::PurelyBalanced { .. } => "purely_balanced",
            TangentClass::UniqueExtremal { .. } => "unique_extremal",
        }
    }
}

/// `|a₁b₂ − a₂b₁| / (|a||b|)`.
fn cross(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    let n = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt() * (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    (a[0] * b[1] - a[1] * b[0]).norm() / n
}

fn royal_params(delta: &Tangent) -> Option<TangentClass> {
    let s = delta.base.s();
    let dir = [Complex64::new(1.0, 0.0), s / 2.0];
    if delta.base.royal_defect() < ALGEBRAIC_TOL && cross(delta.v, dir) < ALGEBRAIC_TOL {
        Some(TangentClass::Royal { z: s / 2.0, c: delta.v[0] / 2.0 })
    } else {
        None
    }
}

/// Solves `s = β + β̄p` for `β` as a real 2×2 system; its determinant is
/// `1 − |p|² > 0`.
pub fn flat_beta(lambda: &SymPoint) -> Complex64 {
    let (s, p) = (lambda.s(), lambda.p());
    let det = 1.0 - p.norm_sqr();
    let (a11, a12, a21, a22) = (1.0 + p.re, p.im, p.im, 1.0 - p.re);
    let x = (a22 * s.re - a12 * s.im) / det;
    let y = (-a21 * s.re + a11 * s.im) / det;
    Complex64::new(x, y)
}

fn flat_params(delta: &Tangent) -> Option<TangentClass> {
    let beta = flat_beta(&delta.base);
    if beta.norm_sqr() >= 1.0 {
        return None;
    }
    let dir = [beta.conj(), Complex64::new(1.0, 0.0)];
    if cross(delta.v, dir) < ALGEBRAIC_TOL {
        Some(TangentClass::Flat { beta, z: delta.base.p(), c: delta.v[1] })
    } else {
        None
    }
}

/// Recovers `(m, z, c)` with `δ = (h_m(z), c·h_m'(z))`: `z` and `m(z)` are the
/// roots of `ζ² − sζ + p`, and the direction fixes `c` and `m'(z)`.
fn purely_balanced_params(delta: &Tangent) -> Option<(MobiusMap, Complex64, Complex64)> {
    let roots = unsymmetrize(&delta.base).ok()?;
    let (mut z, mut w) = (roots[0].value(), roots[1].value());
    if w.norm() < z.norm() {
        core::mem::swap(&mut z, &mut w);
    }
    if (z - w).norm() < 1e-12 {
        return None;
    }
    // v = (a + b, a·w + b·z) with a = c, b = c·m'(z)
    let b = (delta.v[1] - w * delta.v[0]) / (z - w);
    let a = delta.v[0] - b;
    if a.norm() == 0.0 {
        return None;
    }
    let slope = b / a;
    // m = A_w⁻¹ ∘ rotation(κ) ∘ A_z, m'(z) = κ (1 − |w|²)/(1 − |z|²)
    let kappa = slope * (1.0 - z.norm_sqr()) / (1.0 - w.norm_sqr());
    if (kappa.norm() - 1.0).abs() > 1e-6 {
        return None;
    }
    let to_origin = MobiusMap::new(Complex64::new(1.0, 0.0), z).ok()?;
    let from_origin = MobiusMap::new(Complex64::new(1.0, 0.0), w).ok()?.invert();
    let m = from_origin.compose(&MobiusMap::rotation(kappa).ok()?.compose(&to_origin));
    Some((m, z, a))
}

pub fn classify(delta: &Tangent) -> Result<TangentClass> {
    classify_with(delta, &Tolerances::default())
}

pub fn classify_with(delta: &Tangent, tol: &Tolerances) -> Result<TangentClass> {
    delta.ensure_nondegenerate()?;
    let algebraic = royal_params(delta).or_else(|| flat_params(delta));
    let set = extremal_set_with(delta, tol)?;
    let inconsistent = |algebraic: &'static str| Error::InconsistentClassification { algebraic, kind: set.kind };
    match (algebraic, set.kind) {
        (Some(class), ExtremalKind::All) => Ok(class),
        (Some(class), _) => Err(inconsistent(class.tag())),
        (None, ExtremalKind::All) => Err(inconsistent("neither royal nor flat")),
        (None, ExtremalKind::Single) => Ok(TangentClass::UniqueExtremal { angle: set.angles[0] }),
        (None, ExtremalKind::Pair) => {
            let (m, z, c) = purely_balanced_params(delta).ok_or_else(|| inconsistent("no purely balanced data"))?;
            let MobiusType::Hyperbolic { fixed } = m.classify() else {
                return Err(inconsistent("recovered automorphism not hyperbolic"));
            };
            // the extremal ω are the conjugates of the fixed points of m
            let matches = fixed.iter().all(|f| {
                let theta = angle_of(f.conj());
                set.angles.iter().any(|&a| circular_gap(a, theta) < 1e-6)
            });
            if !matches {
                return Err(inconsistent("fixed points do not match extremal angles"));
            }
            Ok(TangentClass::PurelyBalanced { m, z, c })
        }
    }
}

/// `m ∘ F` well aligned at `δ`, with the automorphism used.
#[derive(Debug, Clone)]
pub struct Alignment {
    pub map: MobiusMap,
    pub function: Composed<SharedFn>,
}

pub fn align(f: SharedFn, delta: &Tangent) -> Result<Alignment> {
    let tol = Tolerances::default();
    align_with(f, delta, metric_with(delta, &tol)?, &tol)
}

/// Aligns `F` given a known metric value `cara` of `δ`.
pub fn align_with(f: SharedFn, delta: &Tangent, cara: f64, tol: &Tolerances) -> Result<Alignment> {
    let pushed = push_general(&f, delta)?;
    let length = poincare_metric(&pushed);
    if !((length - cara).abs() <= tol.extremality * cara) {
        return Err(Error::NotExtremal { pushed: length, metric: cara });
    }
    let map = aligning_map(pushed.base, pushed.v)?;
    let function = Composed::new(map, f);
    let check = push_general(&function, delta)?;
    let (value, derivative) = (check.base.value(), check.v);
    if value.norm() > 1e-12 || derivative.re <= 0.0 || derivative.im.abs() > 1e-10 * derivative.norm() {
        return Err(Error::AlignmentFailed { value, derivative });
    }
    Ok(Alignment { map, function })
}

/// Numerical certificate that `F` solves the problem for `δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityReport {
    /// `max |F|` over the sample of `G`.
    pub max_modulus: f64,
    /// `|F_*(δ)|`, NaN when the pushforward could not be formed.
    pub pushed: f64,
    pub metric: f64,
    /// `|pushed − metric| / metric`.
    pub relative_gap: f64,
    pub pass: bool,
}

pub fn verify_extremal<F: GFunction + ?Sized>(
    f: &F,
    delta: &Tangent,
    seed: u64,
    n: usize,
) -> Result<ExtremalityReport> {
    let tol = Tolerances::default();
    let cara = metric_with(delta, &tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<SymPoint> = (0..n).map(|_| sample_point(&mut rng)).collect();
    Ok(verify_extremal_on(f, delta, cara, &samples, &tol))
}

/// As [`verify_extremal`] with a precomputed metric and sample set.
pub fn verify_extremal_on<F: GFunction + ?Sized>(
    f: &F,
    delta: &Tangent,
    cara: f64,
    samples: &[SymPoint],
    tol: &Tolerances,
) -> ExtremalityReport {
    let max_modulus = samples.iter().map(|l| f.value(l).map(|v| v.norm()).unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    let pushed = push_general(f, delta).map(|t| poincare_metric(&t)).unwrap_or(f64::NAN);
    let relative_gap = (pushed - cara).abs() / cara;
    let pass = max_modulus < 1.0 && relative_gap < tol.extremality;
    ExtremalityReport { max_modulus, pushed, metric: cara, relative_gap, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::function::{Closure, Magic};
    use crate::magic::{push, CirclePoint};
    use alloc::sync::Arc;
    use core::f64::consts::PI;

    fn tangent(s: (f64, f64), p: (f64, f64), vs: (f64, f64), vp: (f64, f64)) -> Tangent {
        let base = SymPoint::new(c64(s.0, s.1), c64(p.0, p.1)).unwrap();
        Tangent::new(base, c64(vs.0, vs.1), c64(vp.0, vp.1))
    }

    fn royal() -> Tangent {
        tangent((1.0, 0.0), (0.25, 0.0), (2.0, 0.0), (1.0, 0.0))
    }

    fn pb() -> Tangent {
        tangent((0.5, 0.0), (0.0, 0.0), (1.75, 0.0), (0.5, 0.0))
    }

    #[test]
    fn push_general_examples() {
        let delta = tangent((0.3, 0.1), (-0.1, 0.2), (0.4, -0.2), (0.1, 0.5));
        let w = CirclePoint::new(0.9);
        let exact = push(w, &delta).unwrap();
        let via = push_general(&Magic(w), &delta).unwrap();
        assert!((via.v - exact.v).norm() < 1e-15);
        let numeric = Closure::new("phi", move |l: &SymPoint| crate::magic::phi(w, l));
        let via = push_general(&numeric, &delta).unwrap();
        assert!((via.v - exact.v).norm() < 1e-9, "{} vs {}", via.v, exact.v);

        let konst = Closure::new("const", |_: &SymPoint| c64(0.2, 0.1));
        assert!(push_general(&konst, &delta).unwrap().v.norm() < 1e-12);

        let half_s = Closure::new("s/2", |l: &SymPoint| l.s() / 2.0);
        let t = push_general(&half_s, &royal()).unwrap();
        assert!((t.base.value() - c64(0.5, 0.0)).norm() < 1e-15);
        assert!((t.v - c64(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn push_general_near_boundary_shrinks_step() {
        let near = |x: f64| crate::gdomain::DiskPoint::new(c64(x, 0.0)).unwrap();
        let base = crate::gdomain::symmetrize(near(0.9999), near(0.99));
        let delta = Tangent::new(base, c64(1.0, 0.0), c64(0.0, 0.0));
        let w = CirclePoint::new(2.0);
        let numeric = Closure::new("phi", move |l: &SymPoint| crate::magic::phi(w, l));
        let got = push_general(&numeric, &delta).unwrap().v;
        let want = push(w, &delta).unwrap().v;
        assert!((got - want).norm() < 1e-6 * want.norm(), "{got} {want}");
    }

    #[test]
    fn push_general_rejects_non_schur_values() {
        let s = Closure::new("s", |l: &SymPoint| l.s());
        let delta = tangent((1.5, 0.0), (0.56, 0.0), (1.0, 0.0), (0.0, 0.0));
        assert!(matches!(push_general(&s, &delta), Err(Error::NotSchur { .. })));
    }

    #[test]
    fn metric_examples() {
        assert!((metric(&royal()).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        let flat = tangent((0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0));
        assert!((metric(&flat).unwrap() - 1.0).abs() < 1e-12);
        assert!((metric(&pb()).unwrap() - 1.0).abs() < 1e-12);
        let degenerate = tangent((0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0));
        assert_eq!(metric(&degenerate), Err(Error::DegenerateTangent));
    }

    #[test]
    fn distance_examples() {
        let l = SymPoint::new(c64(0.2, 0.3), c64(0.1, -0.1)).unwrap();
        assert_eq!(distance(&l, &l), 0.0);
        let p = c64(0.3, 0.4);
        let mu = SymPoint::new(c64(0.0, 0.0), p).unwrap();
        assert!((distance(&SymPoint::ORIGIN, &mu) - p.norm().atanh()).abs() < 1e-13);
        assert!((distance(&l, &mu) - distance(&mu, &l)).abs() < 1e-12);
    }

    #[test]
    fn extremal_set_examples() {
        let e = extremal_set(&royal()).unwrap();
        assert_eq!(e.kind, ExtremalKind::All);
        assert!(e.angles.is_empty());
        assert!((e.cara_value - 4.0 / 3.0).abs() < 1e-12);

        let e = extremal_set(&pb()).unwrap();
        assert_eq!(e.kind, ExtremalKind::Pair);
        assert!(circular_gap(e.angles[0], 0.0) < 1e-8, "{:?}", e.angles);
        assert!(circular_gap(e.angles[1], PI) < 1e-8, "{:?}", e.angles);
        let off = poincare_metric(&push(CirclePoint::new(PI / 2.0), &pb()).unwrap());
        assert!((off - 0.9014).abs() < 1e-4, "{off}");

        let single = tangent((0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.0));
        let e = extremal_set(&single).unwrap();
        assert_eq!(e.kind, ExtremalKind::Single);
        assert!(circular_gap(e.angles[0], PI) < 1e-8);
        assert!((e.cara_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        match classify(&royal()).unwrap() {
            TangentClass::Royal { z, c } => {
                assert!((z - c64(0.5, 0.0)).norm() < 1e-15);
                assert!((c - c64(1.0, 0.0)).norm() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let flat = tangent((0.5, 0.0), (0.0, 0.0), (0.5, 0.0), (1.0, 0.0));
        match classify(&flat).unwrap() {
            TangentClass::Flat { beta, z, c } => {
                assert!((beta - c64(0.5, 0.0)).norm() < 1e-15);
                assert!(z.norm() < 1e-15);
                assert!((c - c64(1.0, 0.0)).norm() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        match classify(&pb()).unwrap() {
            TangentClass::PurelyBalanced { m, z, c } => {
                assert!(z.norm() < 1e-15);
                assert!((c - c64(1.0, 0.0)).norm() < 1e-14);
                let expected = MobiusMap::new(c64(1.0, 0.0), c64(-0.5, 0.0)).unwrap();
                assert!(m.param_distance(&expected) < 1e-14, "{m}");
            }
            other => panic!("{other:?}"),
        }
        let single = tangent((0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.0));
        assert!(matches!(classify(&single).unwrap(), TangentClass::UniqueExtremal { .. }));
    }

    #[test]
    fn flat_beta_solves_linear_system() {
        let beta = c64(0.3, -0.6);
        let p = c64(-0.2, 0.5);
        let l = SymPoint::new(beta + beta.conj() * p, p).unwrap();
        assert!((flat_beta(&l) - beta).norm() < 1e-15);
    }

    #[test]
    fn align_examples() {
        let single = tangent((0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.0));
        let f: SharedFn = Arc::new(Magic(CirclePoint::new(PI)));
        let a = align(f, &single).unwrap();
        assert!(a.map.param_distance(&MobiusMap::rotation(c64(-1.0, 0.0)).unwrap()) < 1e-15);

        let aligned: SharedFn = Arc::new(a.function.clone());
        let again = align(aligned, &single).unwrap();
        assert!(again.map.param_distance(&MobiusMap::IDENTITY) < 1e-13);

        let loser: SharedFn = Arc::new(Magic(CirclePoint::new(0.0)));
        assert!(matches!(align(loser, &single), Err(Error::NotExtremal { .. })));
    }

    #[test]
    fn verify_extremal_examples() {
        let single = tangent((0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.5, 0.0));
        let e = extremal_set(&single).unwrap();
        let star = Magic(CirclePoint::new(e.angles[0]));
        assert!(verify_extremal(&star, &single, 3, 500).unwrap().pass);

        let half_s = Closure::new("s/2", |l: &SymPoint| l.s() / 2.0);
        let r = verify_extremal(&half_s, &royal(), 3, 500).unwrap();
        assert!(r.pass, "{r:?}");

        let p = Closure::new("p", |l: &SymPoint| l.p());
        let origin = tangent((0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, 0.0));
        let r = verify_extremal(&p, &origin, 3, 500).unwrap();
        assert!(!r.pass);
        assert!((r.metric - 1.0).abs() < 1e-12);
    }
}
