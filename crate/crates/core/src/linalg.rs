//! Dense complex matrices: norms, guarded solves, random unitaries.

use nalgebra::DMatrix;
// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Solves are rejected above this 1-norm condition estimate.
pub const MAX_CONDITION: f64 = 1e12;

/// Largest singular value; 0 for an empty matrix.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.nrows() == 1 || m.ncols() == 1 {
        return m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Largest absolute column sum.
pub fn norm_1(m: &CMatrix) -> f64 {
    m.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `A⁻¹`, or [`Error::Singular`] carrying `‖A‖₁‖A⁻¹‖₁` when that exceeds
/// [`MAX_CONDITION`].
pub fn inverse_checked(a: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::Dimension("inverse of a non-square matrix"));
    }
    if a.is_empty() {
        return Ok(a.clone());
    }
    let inv = if a.nrows() == 1 {
        let z = a[(0, 0)];
        if z.norm() == 0.0 {
            return Err(Error::Singular(f64::INFINITY));
        }
        CMatrix::from_element(1, 1, 1.0 / z)
    } else {
        a.clone().lu().try_inverse().ok_or(Error::Singular(f64::INFINITY))?
    };
    let cond = norm_1(a) * norm_1(&inv);
    if cond.is_finite() && cond <= MAX_CONDITION {
        Ok(inv)
    } else {
        Err(Error::Singular(cond))
    }
}

/// `X` with `A X = B`, under the same guard as [`inverse_checked`].
pub fn solve_checked(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::Dimension("solve: A and B do not conform"));
    }
    Ok(inverse_checked(a)? * b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn hermitian_min_eigenvalue(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().min()
}

/// `‖U*U − I‖`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    op_norm(&(u.adjoint() * u - identity(u.ncols())))
}

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts
/// `N(0, 1/2)`).
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let scale = core::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(scale * re, scale * im)
    })
}

/// Haar-distributed unitary: QR of a Gaussian matrix, with the phases of
/// `diag(R)` moved into `Q` so the factorization is unique.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = gaussian(rng, n, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A matrix with operator norm exactly `norm` (up to rounding) and a
/// Gaussian direction.
pub fn random_with_norm<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, norm: f64) -> CMatrix {
    loop {
        let g = gaussian(rng, rows, cols);
        let n = op_norm(&g);
        if n > 0.0 {
            return g * Complex64::new(norm / n, 0.0);
        }
    }
}
