//! Operator linear-fractional maps, colligations and `G`-models.
//!
//! A colligation `[[A, B], [C, D]]` together with a unitary `T` realizes
//!
//! ```text
//! φ(λ) = A + B λ_T (1 − D λ_T)⁻¹ C,    λ_T = (2pT − s)(2 − sT)⁻¹,
//! ```
//!
//! which is a Schur function on `G` whenever the block matrix is a
//! contraction. This is the sampler used for the free parameter `ψ` of the
//! explicit extremal families. When the block matrix is unitary,
//! `u(λ) = (1 − D λ_T)⁻¹ C` is a `G`-model:
//! `1 − φ̄(μ)φ(λ) = ⟨(1 − μ_T* λ_T) u(λ), u(μ)⟩`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

// f64 math without std comes from libm through this trait
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::{GFunction, Gradient};
use crate::gdomain::{unsymmetrize, SymPoint};
use crate::linalg::{
    hermitian_min_eigenvalue, identity, inverse_checked, op_norm, random_unitary, random_with_norm, unitarity_defect,
    CMatrix, MAX_CONDITION,
};
use crate::magic::phi_at;

/// Largest colligation state dimension accepted.
pub const MAX_DIMENSION: usize = 64;
/// Tolerance on `‖T*T − I‖` and on the contraction bound.
pub const UNITARY_TOL: f64 = 1e-12;
/// `pick_check` passes when the minimum eigenvalue is at least `−PICK_TOL`.
pub const PICK_TOL: f64 = 1e-10;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `P = [[P₁₁, P₁₂], [P₂₁, P₂₂]] : H ⊕ U → G ⊕ V`, stored as one matrix with
/// the split points `dim G` (rows) and `dim H` (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    matrix: CMatrix,
    g: usize,
    h: usize,
}

impl BlockOperator {
    pub fn new(matrix: CMatrix, g: usize, h: usize) -> Result<Self> {
        if g > matrix.nrows() || h > matrix.ncols() {
            return Err(Error::Dimension("block split exceeds matrix size"));
        }
        Ok(BlockOperator { matrix, g, h })
    }

    pub fn from_blocks(p11: &CMatrix, p12: &CMatrix, p21: &CMatrix, p22: &CMatrix) -> Result<Self> {
        let (g, h) = p11.shape();
        let (v, u) = p22.shape();
        if p12.shape() != (g, u) || p21.shape() != (v, h) {
            return Err(Error::Dimension("blocks do not conform"));
        }
        let mut m = CMatrix::zeros(g + v, h + u);
        m.view_mut((0, 0), (g, h)).copy_from(p11);
        m.view_mut((0, h), (g, u)).copy_from(p12);
        m.view_mut((g, 0), (v, h)).copy_from(p21);
        m.view_mut((g, h), (v, u)).copy_from(p22);
        Ok(BlockOperator { matrix: m, g, h })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `(dim H, dim U, dim G, dim V)`.
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.h, self.matrix.ncols() - self.h, self.g, self.matrix.nrows() - self.g)
    }

    pub fn p11(&self) -> CMatrix {
        let (h, _, g, _) = self.dims();
        self.matrix.view((0, 0), (g, h)).into_owned()
    }

    pub fn p12(&self) -> CMatrix {
        let (h, u, g, _) = self.dims();
        self.matrix.view((0, h), (g, u)).into_owned()
    }

    pub fn p21(&self) -> CMatrix {
        let (h, _, g, v) = self.dims();
        self.matrix.view((g, 0), (v, h)).into_owned()
    }

    pub fn p22(&self) -> CMatrix {
        let (h, u, g, v) = self.dims();
        self.matrix.view((g, h), (v, u)).into_owned()
    }

    pub fn norm(&self) -> f64 {
        op_norm(&self.matrix)
    }
}

fn check_x(p: &BlockOperator, x: &CMatrix) -> Result<()> {
    let (_, u, _, v) = p.dims();
    if x.shape() != (u, v) {
        return Err(Error::Dimension("X must map V to U"));
    }
    Ok(())
}

/// `F_P(X) = P₁₁ + P₁₂ X (I − P₂₂X)⁻¹ P₂₁`.
pub fn lft_eval(p: &BlockOperator, x: &CMatrix) -> Result<CMatrix> {
    check_x(p, x)?;
    let v = p.dims().3;
    let resolvent = inverse_checked(&(identity(v) - p.p22() * x))?;
    Ok(p.p11() + p.p12() * x * resolvent * p.p21())
}

/// [`lft_eval`] with all four blocks `1 × 1`.
pub fn lft_eval_scalar(p: [[Complex64; 2]; 2], x: Complex64) -> Result<Complex64> {
    let resolvent = 1.0 - p[1][1] * x;
    if resolvent.norm() < 1.0 / MAX_CONDITION {
        return Err(Error::Singular(1.0 / resolvent.norm()));
    }
    Ok(p[0][0] + p[0][1] * x * p[1][0] / resolvent)
}

/// Norm of the difference of the two sides of
///
/// ```text
/// I − F_Q(Y)* F_P(X) = Q₂₁*(I − Y*Q₂₂*)⁻¹(I − Y*X)(I − P₂₂X)⁻¹P₂₁
///                      + [I, Q₂₁*(I − Y*Q₂₂*)⁻¹Y*] (I − Q*P) [I ; X(I − P₂₂X)⁻¹P₂₁].
/// ```
///
/// Requires `dim G = dim H` only through the identity on the left.
pub fn lft_identity_residual(p: &BlockOperator, q: &BlockOperator, x: &CMatrix, y: &CMatrix) -> Result<f64> {
    if p.dims() != q.dims() {
        return Err(Error::Dimension("P and Q must have the same block structure"));
    }
    check_x(p, x)?;
    check_x(q, y)?;
    let (h, u, _, v) = p.dims();
    let lhs = identity(h) - lft_eval(q, y)?.adjoint() * lft_eval(p, x)?;

    let rp = inverse_checked(&(identity(v) - p.p22() * x))? * p.p21(); // (I − P₂₂X)⁻¹P₂₁
    let ys = y.adjoint();
    let lq = q.p21().adjoint() * inverse_checked(&(identity(v) - &ys * q.p22().adjoint()))?; // Q₂₁*(I − Y*Q₂₂*)⁻¹
    let first = &lq * (identity(v) - &ys * x) * &rp;

    let mut left = CMatrix::zeros(h, h + u);
    left.view_mut((0, 0), (h, h)).copy_from(&identity(h));
    left.view_mut((0, h), (h, u)).copy_from(&(&lq * &ys));
    let mut right = CMatrix::zeros(h + u, h);
    right.view_mut((0, 0), (h, h)).copy_from(&identity(h));
    right.view_mut((h, 0), (u, h)).copy_from(&(x * &rp));
    let middle = identity(h + u) - q.matrix.adjoint() * &p.matrix;
    let second = left * middle * right;

    Ok(op_norm(&(lhs - first - second)))
}

/// `z ↦ F_P(zI)` with `z = x + iy`: a Richardson-extrapolated central-difference
/// estimate of `‖∂F/∂x + i ∂F/∂y‖` (twice the `∂/∂z̄` derivative), maximized
/// over an `n × n` grid of the square `[−r, r]²` intersected with `|z| ≤ r`.
pub fn cauchy_riemann_residual(p: &BlockOperator, radius: f64, n: usize) -> Result<f64> {
    let (_, u, _, v) = p.dims();
    if u != v {
        return Err(Error::Dimension("F_P(zI) needs U = V"));
    }
    let f = |z: Complex64| lft_eval(p, &(identity(u) * z));
    let dbar = |z: Complex64, h: f64| -> Result<CMatrix> {
        let dx = (f(z + h)? - f(z - h)?) / Complex64::new(2.0 * h, 0.0);
        let dy = (f(z + Complex64::new(0.0, h))? - f(z - Complex64::new(0.0, h))?) / Complex64::new(2.0 * h, 0.0);
        Ok(dx + dy * Complex64::new(0.0, 1.0))
    };
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let t = |k: usize| if n == 1 { 0.0 } else { -radius + 2.0 * radius * k as f64 / (n - 1) as f64 };
            let z = Complex64::new(t(i), t(j));
            if z.norm() > radius {
                continue;
            }
            let r = (dbar(z, h / 2.0)? * Complex64::new(4.0, 0.0) - dbar(z, h)?) / Complex64::new(3.0, 0.0);
            worst = worst.max(op_norm(&r));
        }
    }
    Ok(worst)
}

/// `λ_T = (2pT − s)(2 − sT)⁻¹`.
pub fn lambda_t(lambda: &SymPoint, t: &CMatrix) -> Result<CMatrix> {
    if t.nrows() != t.ncols() {
        return Err(Error::Dimension("T must be square"));
    }
    let (s, p) = (lambda.s(), lambda.p());
    let id = identity(t.nrows());
    let num = t * (2.0 * p) - &id * s;
    Ok(num * inverse_checked(&(id * Complex64::new(2.0, 0.0) - t * s))?)
}

/// A contractive colligation `[[A, B], [C, D]]` (`A` scalar, `D` of size `n`)
/// with a unitary `T` of size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Colligation {
    block: BlockOperator,
    t: CMatrix,
}

impl Colligation {
    pub fn new(abcd: CMatrix, t: CMatrix) -> Result<Self> {
        let n = t.nrows();
        if t.ncols() != n || abcd.shape() != (n + 1, n + 1) {
            return Err(Error::Dimension("ABCD must be (n+1)x(n+1) and T nxn"));
        }
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::Dimension("state dimension must be in 1..=64"));
        }
        let norm = op_norm(&abcd);
        if !(norm <= 1.0 + UNITARY_TOL) {
            return Err(Error::NotContractive(norm));
        }
        let defect = unitarity_defect(&t);
        if !(defect < UNITARY_TOL) {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Colligation { block: BlockOperator::new(abcd, 1, 1)?, t })
    }

    pub fn n(&self) -> usize {
        self.t.nrows()
    }

    pub fn abcd(&self) -> &CMatrix {
        self.block.matrix()
    }

    pub fn t(&self) -> &CMatrix {
        &self.t
    }

    pub fn block(&self) -> &BlockOperator {
        &self.block
    }

    pub fn a(&self) -> Complex64 {
        self.block.matrix[(0, 0)]
    }

    pub fn b(&self) -> CMatrix {
        self.block.p12()
    }

    pub fn c(&self) -> CMatrix {
        self.block.p21()
    }

    pub fn d(&self) -> CMatrix {
        self.block.p22()
    }

    pub fn evaluate(&self, lambda: &SymPoint) -> Result<Complex64> {
        Ok(lft_eval(&self.block, &lambda_t(lambda, &self.t)?)?[(0, 0)])
    }

    /// `dφ = B(1 − XD)⁻¹ dX (1 − DX)⁻¹C` with `dX/ds = (XT − 1)(2 − sT)⁻¹`
    /// and `dX/dp = 2T(2 − sT)⁻¹`.
    pub fn gradient_at(&self, lambda: &SymPoint) -> Result<Gradient> {
        let n = self.n();
        let id = identity(n);
        let s = lambda.s();
        let q_inv = inverse_checked(&(&id * Complex64::new(2.0, 0.0) - &self.t * s))?;
        let x = (&self.t * (2.0 * lambda.p()) - &id * s) * &q_inv;
        let d = self.d();
        let left = self.b() * inverse_checked(&(&id - &x * &d))?;
        let right = inverse_checked(&(&id - &d * &x))? * self.c();
        let dxs = (&x * &self.t - &id) * &q_inv;
        let dxp = &self.t * &q_inv * Complex64::new(2.0, 0.0);
        Ok([(&left * dxs * &right)[(0, 0)], (&left * dxp * &right)[(0, 0)]])
    }

    /// `u(λ) = (1 − Dλ_T)⁻¹C`; a `G`-model for the realized function when the
    /// colligation is unitary.
    pub fn canonical_model(&self) -> GModel {
        GModel { t: self.t.clone(), u: ModelVector::Canonical { c: self.c(), d: self.d() } }
    }

    pub fn is_unitary(&self) -> bool {
        unitarity_defect(self.block.matrix()) < UNITARY_TOL
    }
}

impl GFunction for Colligation {
    fn label(&self) -> String {
        format!("realization[n={}]", self.n())
    }
    fn value(&self, at: &SymPoint) -> Result<Complex64> {
        self.evaluate(at)
    }
    fn gradient(&self, at: &SymPoint) -> Result<Option<Gradient>> {
        self.gradient_at(at).map(Some)
    }
}

/// The realized function `λ ↦ A + Bλ_T(1 − Dλ_T)⁻¹C`.
pub fn schur_from_colligation(col: Colligation) -> crate::function::SharedFn {
    alloc::sync::Arc::new(col)
}

/// Block matrix of operator norm `strictness`, Gaussian direction, and a
/// Haar-random `T`; the same seed always gives the same colligation.
pub fn random_colligation(seed: u64, n: usize, strictness: f64) -> Result<Colligation> {
    if !(strictness > 0.0 && strictness <= 1.0) {
        return Err(Error::InvalidArgument("strictness must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let abcd = random_with_norm(&mut rng, n + 1, n + 1, strictness);
    let t = random_unitary(&mut rng, n.max(1));
    Colligation::new(abcd, t)
}

/// A colligation whose block matrix is itself Haar-random unitary.
pub fn random_unitary_colligation(seed: u64, n: usize) -> Result<Colligation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let abcd = random_unitary(&mut rng, n + 1);
    let t = random_unitary(&mut rng, n.max(1));
    Colligation::new(abcd, t)
}

/// The map `u : G → Cⁿ` of a model.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelVector {
    Constant(CMatrix),
    /// `(1 − Dλ_T)⁻¹C`.
    Canonical {
        c: CMatrix,
        d: CMatrix,
    },
}

/// A finite-dimensional `G`-model `(Cⁿ, T, u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GModel {
    t: CMatrix,
    u: ModelVector,
}

impl GModel {
    pub fn new(t: CMatrix, u: ModelVector) -> Result<Self> {
        let n = t.nrows();
        let ok = match &u {
            ModelVector::Constant(v) => v.shape() == (n, 1),
            ModelVector::Canonical { c, d } => c.shape() == (n, 1) && d.shape() == (n, n),
        };
        if !ok || t.ncols() != n {
            return Err(Error::Dimension("model vector does not match T"));
        }
        let defect = unitarity_defect(&t);
        if !(defect < UNITARY_TOL) {
            return Err(Error::NotUnitary(defect));
        }
        Ok(GModel { t, u })
    }

    /// `(C, [ω̄], u ≡ 1)`, the model of `Φ_ω̄`.
    pub fn scalar(t: Complex64) -> Result<Self> {
        GModel::new(CMatrix::from_element(1, 1, t), ModelVector::Constant(CMatrix::from_element(1, 1, ONE)))
    }

    pub fn dimension(&self) -> usize {
        self.t.nrows()
    }

    pub fn t(&self) -> &CMatrix {
        &self.t
    }

    pub fn u(&self, lambda: &SymPoint) -> Result<CMatrix> {
        match &self.u {
            ModelVector::Constant(v) => Ok(v.clone()),
            ModelVector::Canonical { c, d } => {
                let x = lambda_t(lambda, &self.t)?;
                Ok(inverse_checked(&(identity(self.dimension()) - d * x))? * c)
            }
        }
    }
}

/// `max |1 − F̄(μ)F(λ) − ⟨(1 − μ_T*λ_T)u(λ), u(μ)⟩|` over the pairs.
pub fn model_residual<F: GFunction + ?Sized>(model: &GModel, f: &F, pairs: &[(SymPoint, SymPoint)]) -> Result<f64> {
    let n = model.dimension();
    let mut worst: f64 = 0.0;
    for (lambda, mu) in pairs {
        let left = 1.0 - f.value(mu)?.conj() * f.value(lambda)?;
        let (xl, xm) = (lambda_t(lambda, &model.t)?, lambda_t(mu, &model.t)?);
        let right = (model.u(mu)?.adjoint() * (identity(n) - xm.adjoint() * xl) * model.u(lambda)?)[(0, 0)];
        worst = worst.max((left - right).norm());
    }
    Ok(worst)
}

/// Outcome of a kernel-positivity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PickReport {
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Points closer than this are treated as duplicates.
const DUPLICATE_TOL: f64 = 1e-12;

/// Positivity of the kernel `(1 − F̄(λᵢ)F(λⱼ)) / ((1 − z̄ᵢzⱼ)(1 − w̄ᵢwⱼ))`, where
/// `(zᵢ, wᵢ)` is a preimage of `λᵢ` in the bidisc. For a Schur function on `G`
/// this is positive semidefinite; the matrix is scaled to unit diagonal
/// before taking its smallest eigenvalue.
pub fn pick_check<F: GFunction + ?Sized>(f: &F, points: &[SymPoint]) -> Result<PickReport> {
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| (a.s() - b.s()).norm() + (a.p() - b.p()).norm() < DUPLICATE_TOL) {
            return Err(Error::DuplicatePoint(i));
        }
    }
    let values = points.iter().map(|l| f.value(l)).collect::<Result<Vec<_>>>()?;
    let roots = points.iter().map(unsymmetrize).collect::<Result<Vec<_>>>()?;
    let k = points.len();
    let mut m = CMatrix::from_fn(k, k, |i, j| {
        let [zi, wi] = roots[i].map(|d| d.value());
        let [zj, wj] = roots[j].map(|d| d.value());
        (1.0 - values[i].conj() * values[j]) / ((1.0 - zi.conj() * zj) * (1.0 - wi.conj() * wj))
    });
    // diagonal congruence keeps the inertia and makes the tolerance scale-free
    let scale: Vec<f64> = (0..k).map(|i| 1.0 / m[(i, i)].norm().sqrt().max(f64::MIN_POSITIVE)).collect();
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] *= scale[i] * scale[j];
        }
    }
    let min_eigenvalue = hermitian_min_eigenvalue(&m);
    Ok(PickReport { min_eigenvalue, pass: min_eigenvalue >= -PICK_TOL })
}

/// [`pick_check`] for `Φ_η` at `n` equally spaced `η`, reporting the worst.
pub fn pick_check_phi_grid(points: &[SymPoint], n: usize) -> Result<PickReport> {
    let mut worst = PickReport { min_eigenvalue: f64::INFINITY, pass: true };
    for k in 0..n {
        let w = Complex64::from_polar(1.0, core::f64::consts::TAU * k as f64 / n as f64);
        let f = crate::function::Closure::new("phi", move |l: &SymPoint| phi_at(w, l));
        let r = pick_check(&f, points)?;
        if r.min_eigenvalue < worst.min_eigenvalue {
            worst = r;
        }
    }
    Ok(worst)
}
