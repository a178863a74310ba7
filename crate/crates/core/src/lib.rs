//! Carathéodory extremal problems on the symmetrized bidisc
//!
//! `G = {(z + w, zw) : |z| < 1, |w| < 1}`.
//!
//! The crate computes the Carathéodory metric and distance on `G` through the
//! family `Φ_ω(s, p) = (2ωp − s)/(2 − ωs)`, determines the set of extremal
//! `ω` for a tangent (one point, two points or the whole circle), classifies
//! tangents, and builds the explicit extremal functions known for royal and
//! purely balanced tangents. The [`realization`] module carries the operator
//! linear-fractional calculus and the finite-dimensional `G`-models used to
//! produce and certify Schur-class functions on `G`.
//!
//! Everything here is pure computation over `alloc`; IO, the command line and
//! wire formats live in the `symbidisc` crate.

#![no_std]
#![allow(clippy::many_single_char_names)]
// `!(x < bound)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod caratheodory;
pub mod error;
pub mod extremals;
pub mod function;
pub mod gdomain;
pub mod geodesics;
pub mod linalg;
pub mod magic;
pub mod mobius;
pub mod realization;
mod search;

pub use num_complex::Complex64;

pub use caratheodory::{ExtremalKind, ExtremalSet, TangentClass, Tolerances};
pub use error::{Error, Result};
pub use function::{GFunction, SharedFn};
pub use gdomain::{DiskPoint, DiskTangent, SymPoint, Tangent};
pub use magic::CirclePoint;
pub use mobius::{MobiusMap, MobiusType};

/// Shorthand for a complex number from its real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
