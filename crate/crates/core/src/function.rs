//! Holomorphic functions on `G` as evaluable objects.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gdomain::SymPoint;
use crate::magic::{grad_phi, phi, CirclePoint};
use crate::mobius::MobiusMap;

/// `(∂F/∂s, ∂F/∂p)`.
pub type Gradient = [Complex64; 2];

/// A map `G → C`, with an exact gradient when one is available.
///
/// Implementations do not check `|F| < 1`; callers that need a Schur-class
/// value go through [`checked_value`].
pub trait GFunction: Send + Sync {
    fn label(&self) -> String;

    fn value(&self, at: &SymPoint) -> Result<Complex64>;

    /// `Ok(None)` when no closed-form gradient is known.
    fn gradient(&self, _at: &SymPoint) -> Result<Option<Gradient>> {
        Ok(None)
    }
}

pub type SharedFn = Arc<dyn GFunction>;

impl core::fmt::Debug for dyn GFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GFunction({})", self.label())
    }
}

impl<F: GFunction + ?Sized> GFunction for Arc<F> {
    fn label(&self) -> String {
        (**self).label()
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        (**self).value(at)
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        (**self).gradient(at)
    }
}

impl<F: GFunction + ?Sized> GFunction for &F {
    fn label(&self) -> String {
        (**self).label()
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        (**self).value(at)
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        (**self).gradient(at)
    }
}

/// `F(λ)`, rejected unless `|F(λ)| < 1`.
pub fn checked_value<F: GFunction + ?Sized>(f: &F, at: &SymPoint) -> Result<Complex64> {
    let value = f.value(at)?;
    if value.norm_sqr() < 1.0 {
        Ok(value)
    } else {
        Err(Error::NotSchur { label: f.label(), value })
    }
}

/// `Φ_ω` as a [`GFunction`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magic(pub CirclePoint);

impl GFunction for Magic {
    fn label(&self) -> String {
        format!("Phi[theta={}]", self.0.theta())
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        Ok(phi(self.0, at))
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        Ok(Some(grad_phi(self.0, at)))
    }
}

/// `m ∘ F` for a disk automorphism `m`.
#[derive(Debug, Clone)]
pub struct Composed<F> {
    pub outer: MobiusMap,
    pub inner: F,
}

impl<F> Composed<F> {
    pub fn new(outer: MobiusMap, inner: F) -> Self {
        Composed { outer, inner }
    }
}

impl<F: GFunction> GFunction for Composed<F> {
    fn label(&self) -> String {
        format!("m[c={}, alpha={}] o {}", self.outer.c(), self.outer.alpha(), self.inner.label())
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        Ok(self.outer.apply(self.inner.value(at)?))
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        let Some(g) = self.inner.gradient(at)? else {
            return Ok(None);
        };
        let k = self.outer.derivative(self.inner.value(at)?);
        Ok(Some([k * g[0], k * g[1]]))
    }
}

/// A constant function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub Complex64);

impl GFunction for Constant {
    fn label(&self) -> String {
        format!("const[{}]", self.0)
    }
    fn value(&self, _at: &SymPoint) -> Result<Complex64> {
        Ok(self.0)
    }
    fn gradient(&self, _at: &SymPoint) -> Result<Option<Gradient>> {
        Ok(Some([Complex64::new(0.0, 0.0); 2]))
    }
}

type ValueFn = dyn Fn(&SymPoint) -> Complex64 + Send + Sync;
type GradFn = dyn Fn(&SymPoint) -> Gradient + Send + Sync;

/// A function given by closures, e.g. `(s, p) ↦ s/2`.
pub struct Closure {
    label: String,
    value: Box<ValueFn>,
    gradient: Option<Box<GradFn>>,
}

impl Closure {
    pub fn new(label: impl Into<String>, value: impl Fn(&SymPoint) -> Complex64 + Send + Sync + 'static) -> Self {
        Closure { label: label.into(), value: Box::new(value), gradient: None }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&SymPoint) -> Gradient + Send + Sync + 'static) -> Self {
        self.gradient = Some(Box::new(gradient));
        self
    }
}

impl GFunction for Closure {
    fn label(&self) -> String {
        self.label.clone()
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        Ok((self.value)(at))
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        Ok(self.gradient.as_ref().map(|g| g(at)))
    }
}

impl core::fmt::Debug for Closure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Closure").field("label", &self.label).finish_non_exhaustive()
    }
}
