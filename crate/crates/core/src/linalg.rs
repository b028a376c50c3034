//! Dense complex matrices of dimension 3 and 4.
//!
//! Storage is a fixed `[C64; 16]` buffer so every matrix is `Copy` and no
//! operation allocates. Hermitian eigen-decomposition uses cyclic complex
//! Jacobi rotations; the matrices met in this crate almost always carry a
//! zero eigenvalue, and Jacobi keeps full relative accuracy there where the
//! analytic cubic does not.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const MAX_DIM: usize = 4;

/// Relative Hermiticity tolerance accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute unitarity tolerance accepted by [`UnitaryMatrix::new`].
pub const UNITARY_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;
const JACOBI_TARGET: f64 = 1e-14;

pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 3 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension(dim))
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, data: [C64::new(0.0, 0.0); 16] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix entry by entry. Panics on a dimension other than 3 or
    /// 4 or on a non-finite entry; use [`ComplexMatrix::from_row_major`] for
    /// untrusted input.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim).expect("dimension must be 3 or 4");
        for i in 0..dim {
            for j in 0..dim {
                let z = f(i, j);
                assert!(z.re.is_finite() && z.im.is_finite(), "non-finite entry at ({i}, {j})");
                m[(i, j)] = z;
            }
        }
        m
    }

    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount { expected: dim * dim, got: entries.len() });
        }
        let mut m = Self::zeros(dim)?;
        for (idx, z) in entries.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: idx / dim, col: idx % dim });
            }
            m.data[idx] = *z;
        }
        Ok(m)
    }

    pub fn new3(rows: [[C64; 3]; 3]) -> Self {
        Self::from_fn(3, |i, j| rows[i][j])
    }

    pub fn new4(rows: [[C64; 4]; 4]) -> Self {
        Self::from_fn(4, |i, j| rows[i][j])
    }

    pub fn diag(values: &[C64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        Ok(m)
    }

    pub fn real_diag(values: &[f64]) -> Result<Self> {
        let v: Vec<C64> = values.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major view of the `dim * dim` live entries.
    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= s;
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Matrix product; panics on dimension mismatch (see [`ComplexMatrix::try_mul`]).
    pub fn matmul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix dimensions must agree")
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        same_dim(self, rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Frobenius norm of the anti-Hermitian part, `‖M − M†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖M†M − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let g = self.adjoint().matmul(self);
        let id = Self::identity(self.dim).expect("valid dim");
        (g - id).frobenius_norm()
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal_norm() <= tol
    }

    /// Determinant by cofactor expansion (exact formula for n ≤ 4).
    pub fn det(&self) -> C64 {
        let m = |i: usize, j: usize| self[(i, j)];
        let det3 = |r: [usize; 3], c: [usize; 3]| {
            m(r[0], c[0]) * (m(r[1], c[1]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[1]))
                - m(r[0], c[1]) * (m(r[1], c[0]) * m(r[2], c[2]) - m(r[1], c[2]) * m(r[2], c[0]))
                + m(r[0], c[2]) * (m(r[1], c[0]) * m(r[2], c[1]) - m(r[1], c[1]) * m(r[2], c[0]))
        };
        match self.dim {
            3 => det3([0, 1, 2], [0, 1, 2]),
            _ => {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..4 {
                    let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
                    let minor = det3([1, 2, 3], [cols[0], cols[1], cols[2]]);
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    acc += m(0, j) * minor * sign;
                }
                acc
            }
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim == b.dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a.dim, right: b.dim })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.data[i * self.dim + j]
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let mut out = self;
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        out
    }
}

impl AddAssign for ComplexMatrix {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let mut out = self;
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> Self {
        self.matmul(&rhs)
    }
}

impl Mul<C64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: C64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> Self {
        self.scale_re(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>10.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            entries: self.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let entries: Vec<C64> = raw.entries.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        ComplexMatrix::from_row_major(raw.dim, &entries).map_err(serde::de::Error::custom)
    }
}

/// Hermitian matrix, `‖M − M†‖_F ≤ 1e−12·max(1, ‖M‖_F)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let residual = m.hermiticity_residual();
        if residual <= HERMITIAN_TOL * m.frobenius_norm().max(1.0) {
            Ok(Self(m))
        } else {
            Err(Error::NotHermitian { residual })
        }
    }

    /// Wraps a matrix Hermitian by construction. Debug builds still check.
    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(
            m.hermiticity_residual() <= 1e-9 * m.frobenius_norm().max(1.0),
            "not Hermitian: {m:?}"
        );
        Self(m)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Ok(Self(ComplexMatrix::zeros(dim)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        HermitianMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Deref for HermitianMatrix {
    type Target = ComplexMatrix;
    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// Unitary matrix, `‖U†U − I‖_F ≤ 1e−10`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitaryMatrix(ComplexMatrix);

impl UnitaryMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let residual = m.unitarity_residual();
        if residual <= UNITARY_TOL {
            Ok(Self(m))
        } else {
            Err(Error::NotUnitary { residual })
        }
    }

    pub(crate) fn new_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(m.unitarity_residual() <= 1e-8, "not unitary: {m:?}");
        Self(m)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self(ComplexMatrix::identity(dim)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        Self(self.0.adjoint())
    }

    /// Product of two unitaries; unitarity is closed under multiplication.
    pub fn compose(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        Ok(Self(self.0.try_mul(&rhs.0)?))
    }
}

impl std::ops::Deref for UnitaryMatrix {
    type Target = ComplexMatrix;
    fn deref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// `ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(a.try_mul(b)? - b.try_mul(a)?)
}

/// `ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(a.try_mul(b)? + b.try_mul(a)?)
}

pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    same_dim(a, b)?;
    Ok((*a - *b).frobenius_norm())
}

/// `u·a·u†`.
pub fn conjugate_by(u: &UnitaryMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(u.try_mul(a)?.matmul(&u.adjoint()))
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching eigenvectors as columns of a unitary matrix. Column order within
/// a degenerate eigenspace is unspecified.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

pub fn eigh(h: &HermitianMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    let mut a = *h.matrix();
    let mut v = ComplexMatrix::identity(n)?;
    let scale = a.frobenius_norm();
    let mut off = a.off_diagonal_norm();
    let mut sweeps = 0;
    if scale > 0.0 {
        while off > JACOBI_TARGET * scale {
            if sweeps == JACOBI_MAX_SWEEPS {
                return Err(Error::EigenNoConvergence { sweeps, off_norm: off });
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
            off = a.off_diagonal_norm();
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`. The rotation is a
/// phase on column `q` followed by a real Givens rotation in the (p, q) plane.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.dim;
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // W = D·G with D = diag(.., e^{-iφ} at q, ..):
    // W_pp = c, W_pq = s, W_qp = -s e^{-iφ}, W_qq = c e^{-iφ}
    let wpp = C64::new(c, 0.0);
    let wpq = C64::new(s, 0.0);
    let wqp = -phase.conj() * s;
    let wqq = phase.conj() * c;

    // A ← A W (columns p, q)
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * wpp + aiq * wqp;
        a[(i, q)] = aip * wpq + aiq * wqq;
    }
    // A ← W† A (rows p, q)
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = wpp.conj() * apj + wqp.conj() * aqj;
        a[(q, j)] = wpq.conj() * apj + wqq.conj() * aqj;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    // V ← V W
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * wpp + viq * wqp;
        v[(i, q)] = vip * wpq + viq * wqq;
    }
}

/// `exp(−i·scale·h)` through the spectral decomposition of `h`.
pub fn expm_hermitian(h: &HermitianMatrix, scale: f64) -> Result<UnitaryMatrix> {
    let eig = eigh(h)?;
    let n = h.dim();
    let phases: Vec<C64> = eig.values.iter().map(|&l| C64::from_polar(1.0, -scale * l)).collect();
    let v = &eig.vectors;
    let u = ComplexMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum()
    });
    Ok(UnitaryMatrix::new_unchecked(u))
}

/// Residual of the rank-reduced precondition `a³ = ν²·a`.
pub fn rank_reduced_residual(a: &ComplexMatrix, nu: f64) -> f64 {
    let a2 = a.matmul(a);
    (a2.matmul(a) - a.scale_re(nu * nu)).frobenius_norm()
}

/// `exp(−i·scale·a)` for matrices with `a³ = ν²·a`:
/// `1 − i·a·sin(ν s)/ν + (cos(ν s) − 1)·a²/ν²`.
pub fn expm_rank_reduced(a: &HermitianMatrix, nu: f64, scale: f64) -> Result<UnitaryMatrix> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    let m = a.matrix();
    let residual = rank_reduced_residual(m, nu);
    if residual > 1e-10 * (nu * nu * m.frobenius_norm()).max(1.0) {
        return Err(Error::RankReducedPrecondition { residual });
    }
    let phi = nu * scale;
    let id = ComplexMatrix::identity(a.dim())?;
    let a2 = m.matmul(m);
    let u = id + m.scale(C64::new(0.0, -phi.sin() / nu)) + a2.scale_re((phi.cos() - 1.0) / (nu * nu));
    Ok(UnitaryMatrix::new_unchecked(u))
}
