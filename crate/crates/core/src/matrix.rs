//! Dense complex matrices and the spectral primitives used throughout the crate.
//!
//! Everything spectral goes through the Hermitian path: eigendecompositions are
//! only ever taken of Hermitian inputs. Singular values come from an SVD and
//! singular vectors from a Hermitian dilation.
//! Tolerances are explicit values carried by [`Tolerance`]; nothing in here
//! compares floats against a hard-coded epsilon.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SPECTRAL_ITERATIONS: usize = 10_000;

/// Numerical slack used when deciding exact-arithmetic predicates in floating point.
///
/// `sym_tol` bounds symmetry and Hermiticity defects, `psd_tol` is the
/// eigenvalue threshold for semidefiniteness and the relative rank cut, and
/// `eq_tol` bounds entrywise matrix equalities. All three are scaled by
/// `max(1, ‖m‖)` of whatever matrix they are applied to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    sym_tol: f64,
    psd_tol: f64,
    eq_tol: f64,
}

impl Tolerance {
    pub const MAX: f64 = 1e-3;

    pub fn new(sym_tol: f64, psd_tol: f64, eq_tol: f64) -> Result<Self> {
        for (name, value) in [("sym_tol", sym_tol), ("psd_tol", psd_tol), ("eq_tol", eq_tol)] {
            if !(value > 0.0 && value <= Self::MAX) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(Self {
            sym_tol,
            psd_tol,
            eq_tol,
        })
    }

    /// The same value for all three tolerances.
    pub fn uniform(value: f64) -> Result<Self> {
        Self::new(value, value, value)
    }

    pub fn sym_tol(&self) -> f64 {
        self.sym_tol
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    pub fn eq_tol(&self) -> f64 {
        self.eq_tol
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            sym_tol: 1e-9,
            psd_tol: 1e-9,
            eq_tol: 1e-9,
        }
    }
}

/// Dense complex matrix with at least one row and column and finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Builds a matrix from separate row-major real and imaginary parts.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::EntryCount {
                expected: re.len(),
                found: im.len(),
            });
        }
        let entries = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Self::from_row_major(rows, cols, entries)
    }

    pub fn from_real(rows: usize, cols: usize, re: &[f64]) -> Result<Self> {
        let entries = re.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        Self::from_row_major(rows, cols, entries)
    }

    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::Empty);
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NotFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Wraps the result of arithmetic on already validated matrices.
    pub(crate) fn wrap(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.nrows() > 0 && m.ncols() > 0);
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::wrap(DMatrix::zeros(rows, cols))
    }

    pub fn scalar_identity(n: usize, c: Complex64) -> Self {
        Self::wrap(DMatrix::from_diagonal_element(n, n, c))
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        Self::wrap(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn real_diagonal(d: &[f64]) -> Self {
        let d: Vec<Complex64> = d.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows())
        } else {
            Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            })
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::wrap(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        Self::wrap(self.0.map(|z| z.conj()))
    }

    /// Entrywise real part, as a matrix with zero imaginary part.
    pub fn re_part(&self) -> Self {
        Self::wrap(self.0.map(|z| Complex64::new(z.re, 0.0)))
    }

    /// Entrywise imaginary part, as a matrix with zero imaginary part.
    pub fn im_part(&self) -> Self {
        Self::wrap(self.0.map(|z| Complex64::new(z.im, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::wrap(self.0.map(|z| z * c))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self::wrap(self.0.map(|z| z * c))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_re_abs(&self) -> f64 {
        self.0.iter().map(|z| z.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_im_abs(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|m_ij - m_ji|` and where it occurs.
    pub fn symmetry_defect(&self) -> (f64, usize, usize) {
        self.pair_defect(|a, b| a - b)
    }

    /// Largest `|m_ij - conj(m_ji)|` and where it occurs.
    pub fn hermitian_defect(&self) -> (f64, usize, usize) {
        self.pair_defect(|a, b| a - b.conj())
    }

    fn pair_defect(&self, f: impl Fn(Complex64, Complex64) -> Complex64) -> (f64, usize, usize) {
        assert!(self.is_square(), "defect of a non-square matrix");
        let mut worst = (0.0, 0, 0);
        for i in 0..self.rows() {
            for j in i..self.cols() {
                let d = f(self.0[(i, j)], self.0[(j, i)]).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    /// `(m + mᵗ) / 2`
    pub fn symmetrized(&self) -> Self {
        Self::wrap((&self.0 + self.0.transpose()) * Complex64::new(0.5, 0.0))
    }

    /// `(m + m*) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::wrap((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        Self::wrap(self.0.view((row, col), (rows, cols)).into_owned())
    }

    /// Assembles `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows();
        for m in [a, b, c, d] {
            assert_eq!(m.0.shape(), (n, n), "blocks must share one square shape");
        }
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        out.view_mut((0, 0), (n, n)).copy_from(&a.0);
        out.view_mut((0, n), (n, n)).copy_from(&b.0);
        out.view_mut((n, 0), (n, n)).copy_from(&c.0);
        out.view_mut((n, n), (n, n)).copy_from(&d.0);
        Self::wrap(out)
    }

    /// Solves `self · x = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        let n = self.square_dim()?;
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.rows(),
            });
        }
        let x = self.0.clone().lu().solve(&rhs.0).ok_or(Error::Singular)?;
        Self::from_dmatrix(x).map_err(|_| Error::Singular)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.square_dim()?;
        self.solve(&Self::identity(n))
    }

    pub fn determinant(&self) -> Result<Complex64> {
        self.square_dim()?;
        Ok(self.0.clone().lu().determinant())
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let svd = SVD::try_new(self.0.clone(), false, false, f64::EPSILON, MAX_SPECTRAL_ITERATIONS)
            .ok_or(Error::NoConvergence { op: "svd" })?;
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }

    /// `σ_max / σ_min`; infinite for singular input.
    pub fn condition_number(&self) -> Result<f64> {
        let s = self.singular_values()?;
        let max = s[0];
        let min = *s.last().unwrap();
        Ok(if min > 0.0 { max / min } else { f64::INFINITY })
    }

    pub fn from_real_dmatrix(m: &DMatrix<f64>) -> Result<Self> {
        Self::from_dmatrix(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.0.column(j).iter().copied().collect()
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix::wrap(&self.0 * &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix::wrap(-&self.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: Self) -> ComplexMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `V · diag(f(λ)) · V*`
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_dmatrix();
        let d = DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| Complex64::new(f(l), 0.0)),
        );
        let mut scaled = v.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= d[j];
        }
        ComplexMatrix::wrap(scaled * v.adjoint())
    }
}

pub(crate) fn check_hermitian(m: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    m.square_dim()?;
    let (defect, _, _) = m.hermitian_defect();
    if defect > tol.sym_tol * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

pub fn hermitian_eigen(m: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    check_hermitian(m, tol)?;
    let h = m.hermitian_part();
    let eig = SymmetricEigen::try_new(h.0, f64::EPSILON, MAX_SPECTRAL_ITERATIONS).ok_or(Error::NoConvergence {
        op: "hermitian eigendecomposition",
    })?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |i, j| {
        eig.eigenvectors[(i, order[j])]
    });
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: ComplexMatrix::wrap(vectors),
    })
}

/// Eigendecomposition of the real part of a real symmetric matrix, with real
/// orthonormal eigenvectors. Eigenvalues ascending.
pub fn real_symmetric_eigen(m: &ComplexMatrix, tol: &Tolerance) -> Result<(Vec<f64>, DMatrix<f64>)> {
    check_hermitian(m, tol)?;
    if m.max_im_abs() > tol.sym_tol * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect: m.max_im_abs() });
    }
    let re = m.0.map(|z| z.re);
    let re = (&re + re.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(re, f64::EPSILON, MAX_SPECTRAL_ITERATIONS).ok_or(Error::NoConvergence {
        op: "symmetric eigendecomposition",
    })?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |i, j| {
        eig.eigenvectors[(i, order[j])]
    });
    Ok((values, vectors))
}

fn positive_definite_eigen(p: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    let eig = hermitian_eigen(p, tol)?;
    let threshold = tol.psd_tol * eig.spectral_radius();
    if eig.min().is_nan() || eig.min() <= threshold {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.min(),
        });
    }
    Ok(eig)
}

/// Principal square root of a positive definite Hermitian matrix.
pub fn spd_sqrt(p: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    Ok(positive_definite_eigen(p, tol)?.apply(f64::sqrt))
}

/// `(√p, √p⁻¹)` from a single eigendecomposition.
pub fn spd_sqrt_and_inverse(p: &ComplexMatrix, tol: &Tolerance) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = positive_definite_eigen(p, tol)?;
    Ok((eig.apply(f64::sqrt), eig.apply(|l| 1.0 / l.sqrt())))
}

/// Singular triples from the Hermitian dilation `[[O, M], [M*, O]]`, whose
/// eigenpairs are `±σ` with vectors `(u, ±v)/√2`. nalgebra's complex SVD
/// returns accurate singular values but inconsistent singular vectors on
/// rank-deficient input, so vectors are taken from here instead.
struct DilationSvd {
    /// Descending, clamped at zero.
    sigma: Vec<f64>,
    /// Columns are `√2·(upper half)` and `√2·(lower half)` of the eigenvectors.
    u: DMatrix<Complex64>,
    v: DMatrix<Complex64>,
}

fn dilation_svd(m: &ComplexMatrix) -> Result<DilationSvd> {
    let (r, c) = (m.rows(), m.cols());
    let mut h = DMatrix::<Complex64>::zeros(r + c, r + c);
    h.view_mut((0, r), (r, c)).copy_from(&m.0);
    h.view_mut((r, 0), (c, r)).copy_from(&m.0.adjoint());
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, MAX_SPECTRAL_ITERATIONS).ok_or(Error::NoConvergence {
        op: "dilation eigendecomposition",
    })?;
    let mut order: Vec<usize> = (0..r + c).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order.truncate(r.min(c));
    let root2 = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    let u = DMatrix::from_fn(r, order.len(), |i, k| eig.eigenvectors[(i, order[k])] * root2);
    let v = DMatrix::from_fn(c, order.len(), |i, k| eig.eigenvectors[(r + i, order[k])] * root2);
    let sigma = order.iter().map(|&k| eig.eigenvalues[k].max(0.0)).collect();
    Ok(DilationSvd { sigma, u, v })
}

/// Moore–Penrose pseudo-inverse; singular values below `psd_tol · σ_max` are dropped.
pub fn pseudo_inverse(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let mut out = DMatrix::<Complex64>::zeros(m.cols(), m.rows());
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(ComplexMatrix::wrap(out));
    }
    let svd = dilation_svd(m)?;
    let cut = tol.psd_tol * svd.sigma[0];
    for (k, &s) in svd.sigma.iter().enumerate() {
        if s > cut && s > 0.0 {
            out += (svd.v.column(k) * svd.u.column(k).adjoint()) * Complex64::new(1.0 / s, 0.0);
        }
    }
    Ok(ComplexMatrix::wrap(out))
}

/// Largest and smallest singular values with a unit right singular vector for
/// the smallest. The vector is the bottom eigenvector of `M*M`, whose null
/// space is exactly that of `M`.
pub fn singular_extremes(m: &ComplexMatrix) -> Result<(f64, f64, Vec<Complex64>)> {
    let s = m.singular_values()?;
    let gram = ComplexMatrix::wrap(m.0.adjoint() * &m.0).hermitian_part();
    let eig = SymmetricEigen::try_new(gram.0, f64::EPSILON, MAX_SPECTRAL_ITERATIONS).ok_or(Error::NoConvergence {
        op: "gram eigendecomposition",
    })?;
    let imin = (0..eig.eigenvalues.len())
        .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .ok_or(Error::Empty)?;
    let witness = eig.eigenvectors.column(imin).iter().copied().collect();
    Ok((s[0], *s.last().ok_or(Error::Empty)?, witness))
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(m.singular_values()?[0])
}

#[derive(Debug, Clone, PartialEq)]
pub enum PsdVerdict {
    Yes { min_eigenvalue: f64 },
    No { eigenvalue: f64, vector: Vec<Complex64> },
}

impl PsdVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PsdVerdict::Yes { .. })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        match self {
            PsdVerdict::Yes { min_eigenvalue } => *min_eigenvalue,
            PsdVerdict::No { eigenvalue, .. } => *eigenvalue,
        }
    }
}

/// `min λ ≥ -psd_tol · max(1, ρ(m))`.
pub fn is_psd(m: &ComplexMatrix, tol: &Tolerance) -> Result<PsdVerdict> {
    is_psd_at_scale(m, tol, 0.0)
}

/// As [`is_psd`], with the threshold scale raised to at least `scale`. Used
/// when `m` is known to be a difference of much larger quantities.
pub fn is_psd_at_scale(m: &ComplexMatrix, tol: &Tolerance, scale: f64) -> Result<PsdVerdict> {
    let eig = hermitian_eigen(m, tol)?;
    let threshold = tol.psd_tol * eig.spectral_radius().max(scale).max(1.0);
    if eig.min() >= -threshold {
        Ok(PsdVerdict::Yes {
            min_eigenvalue: eig.min(),
        })
    } else {
        Ok(PsdVerdict::No {
            eigenvalue: eig.min(),
            vector: eig.eigenvectors.column(0),
        })
    }
}
