//! Dense complex Hermitian operators and the handful of linear-algebra
//! primitives the rest of the crate is built on.
//!
//! Eigenvalues come from nalgebra's Hermitian (symmetric) eigensolver; ranks of
//! operator families are read off the singular values of the real Gram matrix
//! `G_ij = Tr(A_i A_j)`.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Hermiticity tolerance enforced when an operator is constructed.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default tolerance for verifiers.
pub const DEFAULT_TOL: f64 = 1e-10;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A `d x d` complex Hermitian matrix, `d >= 2`.
///
/// The stored matrix is exactly Hermitian: inputs within [`HERMITIAN_TOL`] of
/// Hermitian are symmetrized as `(A + A^dagger) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let d = m.nrows();
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let e = (m[(i, j)] - m[(j, i)].conj()).norm();
                if !e.is_finite() {
                    return Err(Error::NotHermitian(f64::INFINITY));
                }
                dev = dev.max(e);
            }
        }
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::symmetrized(m))
    }

    /// Row-major construction.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        let flat: Vec<Complex64> = rows.into_iter().flatten().collect();
        Self::from_matrix(DMatrix::from_row_slice(d, d, &flat))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let d = diag.len();
        let m = DMatrix::from_fn(d, d, |i, j| if i == j { c64(diag[i], 0.0) } else { c64(0.0, 0.0) });
        Self::from_matrix(m)
    }

    /// `|psi><psi|` (not normalized).
    pub fn projector(psi: &[Complex64]) -> Result<Self> {
        let d = psi.len();
        Self::from_matrix(DMatrix::from_fn(d, d, |i, j| psi[i] * psi[j].conj()))
    }

    pub fn identity(d: usize) -> Self {
        assert!(d >= 2, "dimension must be at least 2");
        Self { m: DMatrix::identity(d, d) }
    }

    pub fn zeros(d: usize) -> Self {
        assert!(d >= 2, "dimension must be at least 2");
        Self { m: DMatrix::zeros(d, d) }
    }

    fn symmetrized(m: DMatrix<Complex64>) -> Self {
        let h = (&m + m.adjoint()).scale(0.5);
        Self { m: h }
    }

    // Closed operations on Hermitian matrices skip the tolerance check.
    fn wrap(m: DMatrix<Complex64>) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.m[(i, i)].re).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::wrap(self.m.map(|z| z * s))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Tensor product `self ⊗ other` on dimension `d1 * d2`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::wrap(self.m.kronecker(&other.m))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.m.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Eigen-decomposition with eigenvalues ascending and matching eigenvector columns.
    pub fn eigh(&self) -> (Vec<f64>, DMatrix<Complex64>) {
        let eig = self.m.clone().symmetric_eigen();
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |r, c| eig.eigenvectors[(r, idx[c])]);
        (values, vectors)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Rebuilds `V diag(values) V^dagger`.
    pub fn from_spectrum(values: &[f64], vectors: &DMatrix<Complex64>) -> Self {
        let d = values.len();
        let mut m = DMatrix::zeros(d, d);
        for (k, &lam) in values.iter().enumerate() {
            if lam == 0.0 {
                continue;
            }
            let v = vectors.column(k);
            for i in 0..d {
                for j in 0..d {
                    m[(i, j)] += v[i] * v[j].conj() * lam;
                }
            }
        }
        Self::symmetrized(m)
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianOperator::wrap(&self.m + &rhs.m)
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianOperator::wrap(&self.m - &rhs.m)
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, s: f64) -> HermitianOperator {
        self.scale(s)
    }
}

/// `Tr(A B)` as a complex number. For Hermitian arguments the imaginary
/// part is roundoff.
pub fn trace_product(a: &HermitianOperator, b: &HermitianOperator) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij)
    Ok(a.m.iter().zip(b.m.iter()).map(|(x, y)| x * y.conj()).sum())
}

/// Hilbert-Schmidt inner product `Tr(A B)`.
pub fn hs_inner(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    trace_product(a, b).map(|z| z.re)
}

/// Sum of operators; `None` for an empty slice.
pub fn sum_operators<'a, I>(ops: I) -> Option<HermitianOperator>
where
    I: IntoIterator<Item = &'a HermitianOperator>,
{
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, op| &acc + op))
}

/// The swap `F_d = sum_{m,n} |m><n| ⊗ |n><m|` on `C^d ⊗ C^d`.
pub fn flip_operator(d: usize) -> HermitianOperator {
    assert!(d >= 2, "dimension must be at least 2");
    let mut m = DMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            m[(a * d + b, b * d + a)] = c64(1.0, 0.0);
        }
    }
    HermitianOperator::wrap(m)
}

/// Real symmetric Gram matrix `G_ij = Tr(ops_i ops_j)`.
pub fn gram_matrix(ops: &[HermitianOperator], exec: Exec) -> Result<DMatrix<f64>> {
    let n = ops.len();
    if n == 0 {
        return Err(Error::EmptyList);
    }
    let d = ops[0].dim();
    if let Some(bad) = ops.iter().find(|o| o.dim() != d) {
        return Err(Error::DimensionMismatch(d, bad.dim()));
    }
    let rows = exec.map_range(n, |i| {
        (0..n)
            .map(|j| hs_inner(&ops[i], &ops[j]).expect("dimensions checked"))
            .collect::<Vec<f64>>()
    });
    let mut g = DMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            g[(i, j)] = v;
        }
    }
    // exact symmetry for the SVD
    Ok((&g + g.transpose()) * 0.5)
}

/// Number of linearly independent operators: singular values of the Gram
/// matrix above `tol * sigma_max`.
pub fn gram_rank(ops: &[HermitianOperator], tol: f64) -> Result<usize> {
    gram_rank_with(ops, tol, Exec::default())
}

pub fn gram_rank_with(ops: &[HermitianOperator], tol: f64, exec: Exec) -> Result<usize> {
    let g = gram_matrix(ops, exec)?;
    let sv = g.svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * max).count())
}

/// Trace distance `||A - B||_1 / 2`.
pub fn trace_distance(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(0.5 * (a - b).eigenvalues().iter().map(|l| l.abs()).sum::<f64>())
}

/// A Hermitian operator with unit trace and no eigenvalue below `-1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(HermitianOperator);

impl DensityOperator {
    pub const TRACE_TOL: f64 = 1e-12;
    pub const EIGEN_TOL: f64 = 1e-12;

    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        let min = op.min_eigenvalue();
        if min < -Self::EIGEN_TOL {
            return Err(Error::NotDensity(format!("min eigenvalue {min:e}")));
        }
        Ok(Self(op))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self(HermitianOperator::identity(d).scale(1.0 / d as f64))
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if n == 0.0 {
            return Err(Error::NotDensity("zero vector".into()));
        }
        Self::new(HermitianOperator::projector(psi)?.scale(1.0 / n))
    }

    /// Computational basis state `|k><k|`.
    pub fn basis_state(d: usize, k: usize) -> Self {
        let mut psi = vec![c64(0.0, 0.0); d];
        psi[k] = c64(1.0, 0.0);
        Self::pure(&psi).expect("unit vector")
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn purity(&self) -> f64 {
        hs_inner(&self.0, &self.0).expect("same operator")
    }

    /// Projects a Hermitian estimate onto the state space by clipping negative
    /// eigenvalues at zero and renormalizing the trace.
    pub fn project(op: &HermitianOperator) -> Result<Self> {
        let (mut values, vectors) = op.eigh();
        for v in values.iter_mut() {
            *v = v.max(0.0);
        }
        let total: f64 = values.iter().sum();
        if total <= 0.0 {
            return Err(Error::NotDensity("no positive spectrum to project onto".into()));
        }
        for v in values.iter_mut() {
            *v /= total;
        }
        Self::new(HermitianOperator::from_spectrum(&values, &vectors))
    }
}

impl TryFrom<HermitianOperator> for DensityOperator {
    type Error = Error;
    fn try_from(op: HermitianOperator) -> Result<Self> {
        Self::new(op)
    }
}

impl AsRef<HermitianOperator> for DensityOperator {
    fn as_ref(&self) -> &HermitianOperator {
        &self.0
    }
}

/// Seeded random mixed state of the given rank.
///
/// Draws `A` of shape `d x rank` with entries `(x + iy)/sqrt(2)`, `x, y` i.i.d.
/// standard normal, filled row-major with the real part drawn before the
/// imaginary part, from `ChaCha20Rng::seed_from_u64(seed)` (rand_chacha;
/// normals via `rand_distr::StandardNormal`). Returns `A A^dagger / Tr(A A^dagger)`.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityOperator> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if rank == 0 || rank > d {
        return Err(Error::RankOutOfRange { rank, dim: d });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = DMatrix::<Complex64>::zeros(d, rank);
    for i in 0..d {
        for j in 0..rank {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            a[(i, j)] = c64(re * s, im * s);
        }
    }
    let m = &a * a.adjoint();
    let tr: f64 = (0..d).map(|i| m[(i, i)].re).sum();
    DensityOperator::new(HermitianOperator::symmetrized(m.map(|z| z / tr)))
}

/// Pauli matrices, handy for qubit fixtures and tests.
pub mod pauli {
    use super::{c64, HermitianOperator};

    pub fn x() -> HermitianOperator {
        HermitianOperator::from_rows(vec![
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap()
    }

    pub fn y() -> HermitianOperator {
        HermitianOperator::from_rows(vec![
            vec![c64(0.0, 0.0), c64(0.0, -1.0)],
            vec![c64(0.0, 1.0), c64(0.0, 0.0)],
        ])
        .unwrap()
    }

    pub fn z() -> HermitianOperator {
        HermitianOperator::from_real_diagonal(&[1.0, -1.0]).unwrap()
    }
}
