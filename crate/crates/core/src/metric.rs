//! The Finsler norm `F_Z(W) = ‖Y^{-1/2} W Y^{-1/2}‖`, the distance it induces
//! on the upper space together with its closed form `2 ln ‖S_{Z₁}⁻¹ S_{Z₂}‖`,
//! the mirrored distance on the lower space, the quotient distance on
//! `SP₂ₙ(ℝ)/K`, and executable checks of the isometry, contraction and
//! compression properties.
//!
//! The closed form is the distance. Discretized path lengths exist only as an
//! upper-bound cross-check; no infimum over paths is ever computed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{operator_norm, real_symmetric_eigen, spd_sqrt_and_inverse, ComplexMatrix, Tolerance};
use crate::siegel::{make_siegel, mobius_apply, ActionStatus, LowerSiegelPoint, SiegelPoint};
use crate::symplectic::{
    is_purely_imaginary, is_real_symplectic, is_symplectic, standard_j, upper_witness, BlockSymplectic,
};

/// A complex symmetric `W` in the tangent space at a point.
#[derive(Debug, Clone)]
pub struct TangentVector {
    at: SiegelPoint,
    w: ComplexMatrix,
}

impl TangentVector {
    pub fn new(at: SiegelPoint, w: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let n = w.square_dim()?;
        if n != at.n() {
            return Err(Error::DimensionMismatch {
                expected: at.n(),
                found: n,
            });
        }
        let (defect, row, col) = w.symmetry_defect();
        if defect > tol.sym_tol() * w.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { defect, row, col });
        }
        Ok(Self { at, w: w.symmetrized() })
    }

    pub fn at(&self) -> &SiegelPoint {
        &self.at
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }
}

pub fn finsler_norm(t: &TangentVector, tol: &Tolerance) -> Result<f64> {
    finsler_norm_at(t.at.y(), &t.w, tol)
}

fn finsler_norm_at(y: &ComplexMatrix, w: &ComplexMatrix, tol: &Tolerance) -> Result<f64> {
    let (_, inv_sqrt) = spd_sqrt_and_inverse(y, tol)?;
    operator_norm(&(&(&inv_sqrt * w) * &inv_sqrt))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMethod {
    ClosedForm,
    PathUpperBound,
}

#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub value: f64,
    pub method: DistanceMethod,
    /// `S_{Z₁}`
    pub s1_norm_arg: BlockSymplectic,
    /// `S_{Z₂}`
    pub s2_norm_arg: BlockSymplectic,
    /// `‖S_{Z₁}⁻¹ S_{Z₂}‖` after clamping to at least 1.
    pub operator_norm_used: f64,
}

/// `2 ln ‖S₁⁻¹ S₂‖`, with the norm clamped to `≥ 1` (it is `≥ 1` exactly for
/// symplectic arguments).
fn log_norm_of_quotient(s1: &BlockSymplectic, s2: &BlockSymplectic) -> Result<(f64, f64)> {
    let q = s1.matrix().solve(s2.matrix())?;
    let norm = operator_norm(&q)?.max(1.0);
    Ok((2.0 * norm.ln(), norm))
}

pub fn siegel_distance(z1: &SiegelPoint, z2: &SiegelPoint, tol: &Tolerance) -> Result<DistanceReport> {
    if z1.n() != z2.n() {
        return Err(Error::DimensionMismatch {
            expected: z1.n(),
            found: z2.n(),
        });
    }
    let s1 = upper_witness(z1, tol)?;
    let s2 = upper_witness(z2, tol)?;
    let (value, norm) = log_norm_of_quotient(&s1, &s2)?;
    Ok(DistanceReport {
        value,
        method: DistanceMethod::ClosedForm,
        s1_norm_arg: s1,
        s2_norm_arg: s2,
        operator_norm_used: norm,
    })
}

/// `d₋(Z₁, Z₂) = d∞(Z̄₁, Z̄₂)`
pub fn lower_distance(z1: &LowerSiegelPoint, z2: &LowerSiegelPoint, tol: &Tolerance) -> Result<DistanceReport> {
    siegel_distance(&z1.conjugate(), &z2.conjugate(), tol)
}

/// `d^S(S₁K, S₂K) = 2 ln ‖S₁⁻¹ S₂‖` on real symplectic representatives.
pub fn quotient_distance(s1: &BlockSymplectic, s2: &BlockSymplectic, tol: &Tolerance) -> Result<f64> {
    if !is_real_symplectic(s1, tol) || !is_real_symplectic(s2, tol) {
        return Err(Error::NotRealSymplectic);
    }
    if s1.n() != s2.n() {
        return Err(Error::DimensionMismatch {
            expected: s1.n(),
            found: s2.n(),
        });
    }
    Ok(log_norm_of_quotient(s1, s2)?.0)
}

/// Samples `Z(t₀), …, Z(t_k)` of a path at uniform `t ∈ [0, 1]`.
#[derive(Debug, Clone)]
pub struct PathSample {
    points: Vec<SiegelPoint>,
}

impl PathSample {
    pub fn new(points: Vec<SiegelPoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::ShortPath);
        }
        let n = points[0].n();
        if let Some(p) = points.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        Ok(Self { points })
    }

    /// `(1 − t) Z₁ + t Z₂` at `k + 1` nodes. Convex combinations stay in the space.
    pub fn straight(z1: &SiegelPoint, z2: &SiegelPoint, k: usize, tol: &Tolerance) -> Result<Self> {
        if k == 0 {
            return Err(Error::ShortPath);
        }
        let points = (0..=k)
            .map(|j| {
                let t = j as f64 / k as f64;
                make_siegel(&(&z1.z().scale_real(1.0 - t) + &z2.z().scale_real(t)), tol)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[SiegelPoint] {
        &self.points
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }
}

/// Composite midpoint rule for `∫ F_{Z(t)}(Ż(t)) dt`: each segment contributes
/// `F` at the segment midpoint of the central difference across it.
pub fn path_finsler_length(p: &PathSample, tol: &Tolerance) -> Result<f64> {
    p.points.windows(2).try_fold(0.0, |acc, pair| {
        let step = pair[1].z() - pair[0].z();
        let mid_y = (pair[0].y() + pair[1].y()).scale_real(0.5);
        Ok(acc + finsler_norm_at(&mid_y, &step, tol)?)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryCheck {
    /// `d₋(Φ_S(Z₁), Φ_S(Z₂))`
    pub lhs: f64,
    /// `d∞(Z₁, Z₂)`
    pub rhs: f64,
    pub defect: f64,
}

impl IsometryCheck {
    pub fn within_contract(&self) -> bool {
        self.defect <= 1e-7 * (1.0 + self.rhs)
    }
}

fn lower_image(s: &BlockSymplectic, z: &SiegelPoint, tol: &Tolerance) -> Result<LowerSiegelPoint> {
    match mobius_apply(s, z, tol)?.status {
        ActionStatus::InLower(p) => Ok(p),
        other => Err(Error::LeftSpace(format!("expected InLower, got {}", other.name()))),
    }
}

fn upper_image(s: &BlockSymplectic, z: &SiegelPoint, tol: &Tolerance) -> Result<SiegelPoint> {
    match mobius_apply(s, z, tol)?.status {
        ActionStatus::InUpper(p) => Ok(p),
        other => Err(Error::LeftSpace(format!("expected InUpper, got {}", other.name()))),
    }
}

/// Compares `d₋(Φ_S(Z₁), Φ_S(Z₂))` with `d∞(Z₁, Z₂)` for purely imaginary symplectic `S`.
pub fn isometry_check(
    s: &BlockSymplectic,
    z1: &SiegelPoint,
    z2: &SiegelPoint,
    tol: &Tolerance,
) -> Result<IsometryCheck> {
    if !(is_symplectic(s, tol) && is_purely_imaginary(s, tol)) {
        return Err(Error::NotPurelyImaginarySymplectic);
    }
    let w1 = lower_image(s, z1, tol)?;
    let w2 = lower_image(s, z2, tol)?;
    let lhs = lower_distance(&w1, &w2, tol)?.value;
    let rhs = siegel_distance(z1, z2, tol)?.value;
    Ok(IsometryCheck {
        lhs,
        rhs,
        defect: (lhs - rhs).abs(),
    })
}

/// `S = P · [[I, Z], [O, I]] · P⁻¹` with `P` real orthogonal symplectic and `Z`
/// in the upper space.
#[derive(Debug, Clone)]
pub struct TranslationForm {
    pub conjugator: BlockSymplectic,
    pub shift: SiegelPoint,
}

fn wrong_shape(reason: &str) -> Error {
    Error::WrongShape(reason.to_string())
}

/// Recovers the translation form of `s`.
///
/// `s − I = JH` with `H` complex symmetric; for a conjugated translation the
/// kernel of `H` is a real Lagrangian subspace of dimension `n` and `Im H ⪰ 0`
/// with rank `n`. An orthonormal basis `U` of that kernel gives the
/// orthogonal symplectic `P = [U, −JU]`, and `Pᵗ s P` is then a translation.
pub fn recognize_translation(s: &BlockSymplectic, tol: &Tolerance) -> Result<TranslationForm> {
    let n = s.n();
    if !is_symplectic(s, tol) {
        return Err(wrong_shape("not symplectic"));
    }
    let scale = s.matrix().max_abs().max(1.0);
    let j = standard_j(n).value;
    let h = -&(&j * &(s.matrix() - &ComplexMatrix::identity(2 * n)));
    if h.symmetry_defect().0 > tol.eq_tol() * scale {
        return Err(wrong_shape("S − I is not J times a symmetric matrix"));
    }
    let h = h.symmetrized();
    let (values, vectors) = real_symmetric_eigen(&h.im_part(), tol)?;
    let rho = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = tol.psd_tol() * rho.max(1.0) * (2 * n) as f64;
    if values[0] < -threshold {
        return Err(wrong_shape("imaginary part of the generator is not semidefinite"));
    }
    if values[n - 1] > threshold || values[n] <= threshold {
        return Err(wrong_shape("imaginary part of the generator does not have rank n"));
    }
    let u = vectors.columns(0, n).into_owned();
    let u = ComplexMatrix::from_real_dmatrix(&u)?;
    if (&h.re_part() * &u).max_abs() > tol.eq_tol() * scale {
        return Err(wrong_shape(
            "real and imaginary parts of the generator have different kernels",
        ));
    }
    if (&(&u.transpose() * &j) * &u).max_abs() > tol.eq_tol() * scale {
        return Err(wrong_shape("kernel of the generator is not Lagrangian"));
    }
    let ju = -&(&j * &u);
    let mut p = DMatrix::zeros(2 * n, 2 * n);
    p.view_mut((0, 0), (2 * n, n)).copy_from(u.as_dmatrix());
    p.view_mut((0, n), (2 * n, n)).copy_from(ju.as_dmatrix());
    let p = BlockSymplectic::new(ComplexMatrix::from_dmatrix(p)?)?;
    let t = &(&p.matrix().transpose() * s.matrix()) * p.matrix();
    let t = BlockSymplectic::new(t)?;
    let id = ComplexMatrix::identity(n);
    if t.a().max_abs_diff(&id) > tol.eq_tol() * scale
        || t.d().max_abs_diff(&id) > tol.eq_tol() * scale
        || t.c().max_abs() > tol.eq_tol() * scale
    {
        return Err(wrong_shape("conjugate is not a translation"));
    }
    let shift = make_siegel(&t.b(), tol).map_err(|_| wrong_shape("translation parameter is not in the upper space"))?;
    Ok(TranslationForm { conjugator: p, shift })
}

/// `δ(W) = ‖(W₂ + Y)^{-1/2} W₂^{1/2}‖` for the translation by `Z = X + iY`,
/// evaluated at `W = W₁ + iW₂`. The Finsler norm at `W + Z` is at most `δ²`
/// times the Finsler norm at `W`.
pub fn translation_contraction_factor(w: &SiegelPoint, shift: &SiegelPoint, tol: &Tolerance) -> Result<f64> {
    let (sqrt_w2, _) = spd_sqrt_and_inverse(w.y(), tol)?;
    let (_, inv_sqrt_sum) = spd_sqrt_and_inverse(&(w.y() + shift.y()), tol)?;
    operator_norm(&(&inv_sqrt_sum * &sqrt_w2))
}

#[derive(Debug, Clone)]
pub struct ContractionReport {
    /// Largest ratio over non-degenerate pairs; `None` if every pair was degenerate.
    pub max_ratio: Option<f64>,
    /// `d∞(S(Z₁), S(Z₂)) / d∞(Z₁, Z₂)` per pair; `None` when `d∞(Z₁, Z₂) ≤ 10⁻⁶`.
    pub ratios: Vec<Option<f64>>,
    pub form: TranslationForm,
}

pub const DEGENERATE_PAIR_DISTANCE: f64 = 1e-6;

pub fn contraction_check(
    s: &BlockSymplectic,
    pairs: &[(SiegelPoint, SiegelPoint)],
    tol: &Tolerance,
) -> Result<ContractionReport> {
    let form = recognize_translation(s, tol)?;
    let mut ratios = Vec::with_capacity(pairs.len());
    for (z1, z2) in pairs {
        let before = siegel_distance(z1, z2, tol)?.value;
        if before <= DEGENERATE_PAIR_DISTANCE {
            ratios.push(None);
            continue;
        }
        let w1 = upper_image(s, z1, tol)?;
        let w2 = upper_image(s, z2, tol)?;
        let after = siegel_distance(&w1, &w2, tol)?.value;
        ratios.push(Some(after / before));
    }
    let max_ratio = ratios.iter().flatten().copied().reduce(f64::max);
    Ok(ContractionReport {
        max_ratio,
        ratios,
        form,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionCheck {
    /// Hyperbolic distance between `v*Z₁v` and `v*Z₂v`.
    pub lhs: f64,
    /// `d∞(Z₁, Z₂)`
    pub rhs: f64,
    pub holds: bool,
}

pub const COMPRESSION_SLACK: f64 = 1e-9;

/// `v*Zv`
pub fn compress(v: &[Complex64], z: &SiegelPoint) -> Complex64 {
    let n = z.n();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += v[i].conj() * z.z().get(i, j) * v[j];
        }
    }
    acc
}

pub fn compression_check(
    v: &[Complex64],
    z1: &SiegelPoint,
    z2: &SiegelPoint,
    tol: &Tolerance,
) -> Result<CompressionCheck> {
    if v.len() != z1.n() || z1.n() != z2.n() {
        return Err(Error::DimensionMismatch {
            expected: z1.n(),
            found: v.len().max(z2.n()),
        });
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if norm > 1.0 + 1e-12 {
        return Err(Error::NotInUnitBall { norm });
    }
    let scalar = |z: &SiegelPoint| {
        let w = compress(v, z);
        make_siegel(&ComplexMatrix::from_row_major(1, 1, vec![w])?, tol)
    };
    let lhs = siegel_distance(&scalar(z1)?, &scalar(z2)?, tol)?.value;
    let rhs = siegel_distance(z1, z2, tol)?.value;
    Ok(CompressionCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + COMPRESSION_SLACK,
    })
}
