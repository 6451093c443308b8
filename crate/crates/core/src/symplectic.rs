//! 2n×2n block matrices: symplectic and antisymplectic predicates, the
//! classifier `M = i(S*JS - J)`, block positivity, and the named constructions
//! `S_Z`, `S_Z₋`, `I₋` and the stabilizer of `iI`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{is_psd_at_scale, pseudo_inverse, spd_sqrt_and_inverse, ComplexMatrix, Tolerance};
use crate::sampling;
use crate::siegel::{mobius_apply, ActionStatus, LowerSiegelPoint, SiegelPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2n×2n complex matrix viewed as `[[A, B], [C, D]]`. No group property is
/// assumed; use the predicates.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSymplectic {
    n: usize,
    s: ComplexMatrix,
}

impl BlockSymplectic {
    pub fn new(s: ComplexMatrix) -> Result<Self> {
        let size = s.square_dim()?;
        if size % 2 != 0 {
            return Err(Error::OddDimension { size });
        }
        Ok(Self { n: size / 2, s })
    }

    pub fn from_blocks(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Self> {
        let n = a.square_dim()?;
        for m in [b, c, d] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Self {
            n,
            s: ComplexMatrix::from_blocks(a, b, c, d),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            s: ComplexMatrix::identity(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.s
    }

    pub fn a(&self) -> ComplexMatrix {
        self.s.block(0, 0, self.n, self.n)
    }

    pub fn b(&self) -> ComplexMatrix {
        self.s.block(0, self.n, self.n, self.n)
    }

    pub fn c(&self) -> ComplexMatrix {
        self.s.block(self.n, 0, self.n, self.n)
    }

    pub fn d(&self) -> ComplexMatrix {
        self.s.block(self.n, self.n, self.n, self.n)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "block dimension mismatch");
        Self {
            n: self.n,
            s: &self.s * &rhs.s,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            n: self.n,
            s: self.s.inverse()?,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            s: self.s.scale(c),
        }
    }

    /// `‖S‖_max² ∨ 1`, the natural scale of `SᵗJS`.
    fn quadratic_scale(&self) -> f64 {
        let m = self.s.max_abs();
        (m * m).max(1.0)
    }
}

/// The standard skew form `J = [[O, I], [-I, O]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardJ {
    pub n: usize,
    pub value: ComplexMatrix,
}

pub fn standard_j(n: usize) -> StandardJ {
    assert!(n >= 1, "block dimension must be positive");
    let value = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            Complex64::new(1.0, 0.0)
        } else if i == j + n {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    StandardJ {
        n,
        value: ComplexMatrix::wrap(value),
    }
}

impl StandardJ {
    pub fn as_block(&self) -> BlockSymplectic {
        BlockSymplectic {
            n: self.n,
            s: self.value.clone(),
        }
    }
}

/// `I₋ = [[-I, O], [O, I]]`, the real antisymplectic reflection.
pub fn reflection(n: usize) -> BlockSymplectic {
    let mut d = vec![-1.0; n];
    d.extend(std::iter::repeat_n(1.0, n));
    BlockSymplectic {
        n,
        s: ComplexMatrix::real_diagonal(&d),
    }
}

fn form_defect(s: &BlockSymplectic, sign: f64) -> f64 {
    let j = standard_j(s.n).value;
    let form = &(&s.s.transpose() * &j) * &s.s;
    form.max_abs_diff(&j.scale_real(sign))
}

/// `‖SᵗJS − J‖_max`
pub fn symplectic_defect(s: &BlockSymplectic) -> f64 {
    form_defect(s, 1.0)
}

/// `‖SᵗJS + J‖_max`
pub fn antisymplectic_defect(s: &BlockSymplectic) -> f64 {
    form_defect(s, -1.0)
}

pub fn is_symplectic(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    symplectic_defect(s) <= tol.eq_tol() * s.quadratic_scale()
}

/// Largest of the three block-condition defects: asymmetry of `AᵗC`, of `BᵗD`,
/// and `‖AᵗD − CᵗB − I‖_max`.
pub fn blockwise_defect(s: &BlockSymplectic) -> f64 {
    let (a, b, c, d) = (s.a(), s.b(), s.c(), s.d());
    let atc = &a.transpose() * &c;
    let btd = &b.transpose() * &d;
    let cross = &(&a.transpose() * &d) - &(&c.transpose() * &b);
    let (d1, _, _) = atc.symmetry_defect();
    let (d2, _, _) = btd.symmetry_defect();
    let d3 = cross.max_abs_diff(&ComplexMatrix::identity(s.n));
    d1.max(d2).max(d3)
}

pub fn is_symplectic_blockwise(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    blockwise_defect(s) <= tol.eq_tol() * s.quadratic_scale()
}

pub fn is_antisymplectic(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    antisymplectic_defect(s) <= tol.eq_tol() * s.quadratic_scale()
}

pub fn is_real(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    s.s.max_im_abs() <= tol.sym_tol() * s.s.max_abs()
}

pub fn is_purely_imaginary(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    s.s.max_re_abs() <= tol.sym_tol() * s.s.max_abs()
}

pub fn is_real_symplectic(s: &BlockSymplectic, tol: &Tolerance) -> bool {
    is_real(s, tol) && is_symplectic(s, tol)
}

/// `M = i(S*JS − J)`, Hermitian by construction.
pub fn classifier_matrix(s: &BlockSymplectic) -> ComplexMatrix {
    let j = standard_j(s.n).value;
    let sjs = &(&s.s.adjoint() * &j) * &s.s;
    let m = (&sjs - &j).scale(I);
    debug_assert!(m.hermitian_defect().0 <= 1e-9 * s.quadratic_scale());
    m.hermitian_part()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `S` is symplectic and `M ⪰ 0`: the action maps the upper space into itself.
    PreservesSiegel,
    /// Real antisymplectic, or purely imaginary symplectic: maps into the lower space.
    MapsToLower,
    /// No sufficient condition applies.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub is_real: bool,
    pub is_purely_imaginary: bool,
    pub is_symplectic: bool,
    pub is_antisymplectic: bool,
}

#[derive(Debug, Clone)]
pub struct ActionClassification {
    pub verdict: Verdict,
    pub m_matrix: ComplexMatrix,
    pub min_eigenvalue: f64,
    pub notes: ClassificationFlags,
}

pub fn classify_action(s: &BlockSymplectic, tol: &Tolerance) -> Result<ActionClassification> {
    let notes = ClassificationFlags {
        is_real: is_real(s, tol),
        is_purely_imaginary: is_purely_imaginary(s, tol),
        is_symplectic: is_symplectic(s, tol),
        is_antisymplectic: is_antisymplectic(s, tol),
    };
    let m_matrix = classifier_matrix(s);
    let psd = is_psd_at_scale(&m_matrix, tol, s.quadratic_scale())?;
    let verdict = if notes.is_symplectic && psd.holds() {
        Verdict::PreservesSiegel
    } else if (notes.is_antisymplectic && notes.is_real) || (notes.is_symplectic && notes.is_purely_imaginary) {
        Verdict::MapsToLower
    } else {
        Verdict::Undetermined
    };
    Ok(ActionClassification {
        verdict,
        m_matrix,
        min_eigenvalue: psd.min_eigenvalue(),
        notes,
    })
}

/// A self-adjoint matrix `[[α, β], [β*, γ]]` held by its blocks.
#[derive(Debug, Clone)]
pub struct SelfAdjointBlocks {
    alpha: ComplexMatrix,
    beta: ComplexMatrix,
    gamma: ComplexMatrix,
}

impl SelfAdjointBlocks {
    pub fn new(alpha: ComplexMatrix, beta: ComplexMatrix, gamma: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let n = alpha.square_dim()?;
        for m in [&beta, &gamma] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows().max(m.cols()),
                });
            }
        }
        for m in [&alpha, &gamma] {
            let (defect, _, _) = m.hermitian_defect();
            if defect > tol.sym_tol() * m.max_abs().max(1.0) {
                return Err(Error::NotHermitian { defect });
            }
        }
        Ok(Self {
            alpha: alpha.hermitian_part(),
            beta,
            gamma: gamma.hermitian_part(),
        })
    }

    /// Splits a 2n×2n self-adjoint matrix into its blocks.
    pub fn from_matrix(m: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let size = m.square_dim()?;
        if size % 2 != 0 {
            return Err(Error::OddDimension { size });
        }
        let (defect, _, _) = m.hermitian_defect();
        if defect > tol.sym_tol() * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { defect });
        }
        let n = size / 2;
        Self::new(m.block(0, 0, n, n), m.block(0, n, n, n), m.block(n, n, n, n), tol)
    }

    pub fn alpha(&self) -> &ComplexMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &ComplexMatrix {
        &self.beta
    }

    pub fn gamma(&self) -> &ComplexMatrix {
        &self.gamma
    }

    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.alpha, &self.beta, &self.beta.adjoint(), &self.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockCondition {
    /// `α ⪰ 0`, `(I − αα†)β = 0`, `γ − β*α†β ⪰ 0`
    PivotAlpha,
    /// `γ ⪰ 0`, `(I − γγ†)β* = 0`, `α − βγ†β* ⪰ 0`
    PivotGamma,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockPsdVerdict {
    pub holds: bool,
    pub via: BlockCondition,
    pub pivot_alpha: bool,
    pub pivot_gamma: bool,
}

/// Generalized Schur-complement test with `pivot` as the pivot block.
fn schur_condition(
    pivot: &ComplexMatrix,
    off: &ComplexMatrix,
    other: &ComplexMatrix,
    scale: f64,
    tol: &Tolerance,
) -> Result<bool> {
    if !is_psd_at_scale(pivot, tol, scale)?.holds() {
        return Ok(false);
    }
    let n = pivot.rows();
    let pinv = pseudo_inverse(pivot, tol)?;
    let projector = &ComplexMatrix::identity(n) - &(pivot * &pinv);
    let range_defect = (&projector * off).max_abs();
    if range_defect > tol.eq_tol() * scale {
        return Ok(false);
    }
    let schur = (other - &(&(&off.adjoint() * &pinv) * off)).hermitian_part();
    Ok(is_psd_at_scale(&schur, tol, scale)?.holds())
}

/// Decides `M ⪰ 0` from the blocks through pseudo-inverse Schur complements.
/// The `α` pivot decides; the `γ` pivot is evaluated alongside as a cross-check.
pub fn block_psd_criterion(m: &SelfAdjointBlocks, tol: &Tolerance) -> Result<BlockPsdVerdict> {
    let scale = [m.alpha.max_abs(), m.beta.max_abs(), m.gamma.max_abs()]
        .into_iter()
        .fold(1.0, f64::max)
        * (2 * m.alpha.rows()) as f64;
    let pivot_alpha = schur_condition(&m.alpha, &m.beta, &m.gamma, scale, tol)?;
    let pivot_gamma = schur_condition(&m.gamma, &m.beta.adjoint(), &m.alpha, scale, tol)?;
    Ok(BlockPsdVerdict {
        holds: pivot_alpha,
        via: BlockCondition::PivotAlpha,
        pivot_alpha,
        pivot_gamma,
    })
}

/// The three block conditions on `A, B, C, D`, evaluated exactly as they were
/// originally displayed:
///
/// 1. `i(A*C − C*A) ⪰ 0`
/// 2. `[I + (A*C − C*A)(A*C − C*A)†](A*D − C*B − I) = O`
/// 3. `i(B*D − D*B) + i(B*C − D*A + I)(A*C − C*A)†(A*D − C*B − I) ⪰ 0`
///
/// These are reported as-is; they are not claimed to be equivalent to `M ⪰ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockConditions {
    pub first: bool,
    pub second: bool,
    pub third: bool,
}

impl BlockConditions {
    pub fn all(&self) -> bool {
        self.first && self.second && self.third
    }
}

pub fn classifier_block_conditions(s: &BlockSymplectic, tol: &Tolerance) -> Result<BlockConditions> {
    let n = s.n;
    let (a, b, c, d) = (s.a(), s.b(), s.c(), s.d());
    let id = ComplexMatrix::identity(n);
    let scale = s.quadratic_scale() * (2 * n) as f64;
    let x = &(&a.adjoint() * &c) - &(&c.adjoint() * &a);
    let y = &(&(&a.adjoint() * &d) - &(&c.adjoint() * &b)) - &id;
    let w = &(&(&b.adjoint() * &c) - &(&d.adjoint() * &a)) + &id;
    let x_pinv = pseudo_inverse(&x, tol)?;

    let first = is_psd_at_scale(&x.scale(I).hermitian_part(), tol, scale)?.holds();
    let second = (&(&id + &(&x * &x_pinv)) * &y).max_abs() <= tol.eq_tol() * scale;
    let third_matrix = &(&(&b.adjoint() * &d) - &(&d.adjoint() * &b)).scale(I) + &(&(&w * &x_pinv) * &y).scale(I);
    let (defect, _, _) = third_matrix.hermitian_defect();
    let third = defect <= tol.sym_tol() * scale && is_psd_at_scale(&third_matrix.hermitian_part(), tol, scale)?.holds();
    Ok(BlockConditions { first, second, third })
}

/// `S_Z = [[√Y, X√Y⁻¹], [O, √Y⁻¹]]`, the real symplectic matrix sending `iI` to `Z`.
pub fn upper_witness(z: &SiegelPoint, tol: &Tolerance) -> Result<BlockSymplectic> {
    let (sqrt_y, inv_sqrt_y) = spd_sqrt_and_inverse(z.y(), tol)?;
    let (sqrt_y, inv_sqrt_y) = (sqrt_y.re_part(), inv_sqrt_y.re_part());
    let n = z.n();
    BlockSymplectic::from_blocks(
        &sqrt_y,
        &(z.x() * &inv_sqrt_y),
        &ComplexMatrix::zeros(n, n),
        &inv_sqrt_y,
    )
}

/// `S_Z₋ = [[−√(−Y), X√(−Y)⁻¹], [O, √(−Y)⁻¹]]`, real antisymplectic, sending `iI` to `Z`.
pub fn lower_witness(z: &LowerSiegelPoint, tol: &Tolerance) -> Result<BlockSymplectic> {
    let neg_y = -z.y();
    let (sqrt_y, inv_sqrt_y) = spd_sqrt_and_inverse(&neg_y, tol)?;
    let (sqrt_y, inv_sqrt_y) = (sqrt_y.re_part(), inv_sqrt_y.re_part());
    let n = z.n();
    BlockSymplectic::from_blocks(
        &-&sqrt_y,
        &(z.x() * &inv_sqrt_y),
        &ComplexMatrix::zeros(n, n),
        &inv_sqrt_y,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerMembership {
    /// `Φ_U(iI) = iI`, the deciding condition.
    pub fixes_i: bool,
    pub orthogonal: bool,
    /// `U = [[A, B], [−B, A]]`
    pub block_form: bool,
}

pub fn stabilizer_membership(u: &BlockSymplectic, tol: &Tolerance) -> Result<StabilizerMembership> {
    if !is_real_symplectic(u, tol) {
        return Err(Error::NotRealSymplectic);
    }
    let n = u.n;
    let i_n = SiegelPoint::i_identity(n);
    let scale = u.s.max_abs().max(1.0);
    let fixes_i = match mobius_apply(u, &i_n, tol)?.status {
        ActionStatus::InUpper(w) => w.z().max_abs_diff(i_n.z()) <= tol.eq_tol() * scale,
        _ => false,
    };
    let orthogonal =
        (&u.s.transpose() * &u.s).max_abs_diff(&ComplexMatrix::identity(2 * n)) <= tol.eq_tol() * scale * scale;
    let block_form =
        u.a().max_abs_diff(&u.d()) <= tol.eq_tol() * scale && u.b().max_abs_diff(&-&u.c()) <= tol.eq_tol() * scale;
    Ok(StabilizerMembership {
        fixes_i,
        orthogonal,
        block_form,
    })
}

/// Membership in `K = {U ∈ SP₂ₙ(ℝ) : Φ_U(iI) = iI}`, decided by the fixed point.
pub fn is_in_stabilizer_k(u: &BlockSymplectic, tol: &Tolerance) -> Result<bool> {
    let m = stabilizer_membership(u, tol)?;
    debug_assert!(
        !m.fixes_i || (m.orthogonal && m.block_form),
        "stabilizer element is not orthogonal: {m:?}"
    );
    Ok(m.fixes_i)
}

/// Representative of `{S, −S}` whose first significant entry is positive.
pub fn canonical_sign(s: &BlockSymplectic) -> BlockSymplectic {
    let floor = 1e-12 * s.s.max_abs();
    let lead = s.s.row_major().into_iter().find(|z| z.norm() > floor);
    let flip = match lead {
        Some(z) if z.re.abs() > floor => z.re < 0.0,
        Some(z) => z.im < 0.0,
        None => false,
    };
    if flip {
        s.scale(Complex64::new(-1.0, 0.0))
    } else {
        s.clone()
    }
}

/// Product of 3–8 random generators: shears `[[I, B], [O, I]]` with `B`
/// symmetric, `[[G, O], [O, G⁻ᵗ]]` with `G` invertible, and `J`.
pub fn random_real_symplectic(n: usize, seed: u64) -> BlockSymplectic {
    random_real_symplectic_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_real_symplectic_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    assert!(n >= 1, "block dimension must be positive");
    let factors = rng.random_range(3..=8);
    let mut s = BlockSymplectic::identity(n);
    for _ in 0..factors {
        let g = match rng.random_range(0..3) {
            0 => real_shear(n, rng),
            1 => real_dilation(n, rng),
            _ => standard_j(n).as_block(),
        };
        s = s.compose(&g);
    }
    s
}

fn real_shear<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    let b = sampling::random_symmetric(n, 0.6, rng);
    let id = ComplexMatrix::identity(n);
    BlockSymplectic {
        n,
        s: ComplexMatrix::from_blocks(&id, &b, &ComplexMatrix::zeros(n, n), &id),
    }
}

fn real_dilation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    let g = sampling::random_well_conditioned(n, 0.4, rng);
    let g_inv_t = g.inverse().expect("well-conditioned by construction").transpose();
    let o = ComplexMatrix::zeros(n, n);
    BlockSymplectic {
        n,
        s: ComplexMatrix::from_blocks(&g, &o, &o, &g_inv_t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_psd;
    use crate::siegel::make_siegel;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `[[I, iI], [iI, O]]`
    fn imaginary_coupling(n: usize) -> BlockSymplectic {
        let id = ComplexMatrix::identity(n);
        let ii = ComplexMatrix::scalar_identity(n, I);
        BlockSymplectic::from_blocks(&id, &ii, &ii, &ComplexMatrix::zeros(n, n)).unwrap()
    }

    #[test]
    fn j_fixtures() {
        let j1 = standard_j(1).value;
        assert_eq!(j1, ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap());
        let j2 = standard_j(2).value;
        let id = ComplexMatrix::identity(2);
        let o = ComplexMatrix::zeros(2, 2);
        assert_eq!(j2, ComplexMatrix::from_blocks(&o, &id, &-&id, &o));
        for n in 1..=4 {
            let j = standard_j(n).value;
            assert_eq!(&j.transpose() * &j, ComplexMatrix::identity(2 * n));
            assert_eq!(&j * &j, -&ComplexMatrix::identity(2 * n));
            assert_eq!(j.transpose(), -&j);
        }
    }

    #[test]
    fn symplectic_fixtures() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let j = standard_j(n).as_block();
            assert!(is_symplectic(&j, &tol));
            assert!(is_symplectic_blockwise(&j, &tol));
            assert!(is_symplectic(&imaginary_coupling(n), &tol));
            assert!(is_symplectic_blockwise(&imaginary_coupling(n), &tol));
            assert!(is_symplectic_blockwise(&BlockSymplectic::identity(n), &tol));
            let ii = BlockSymplectic::new(ComplexMatrix::scalar_identity(2 * n, I)).unwrap();
            assert!(is_antisymplectic(&ii, &tol));
            assert!(!is_symplectic(&ii, &tol));
            assert!(is_antisymplectic(&reflection(n), &tol));
        }
    }

    #[test]
    fn witnesses_are_real_and_in_their_groups() {
        let tol = Tolerance::default();
        let z = make_siegel(
            &ComplexMatrix::from_row_major(2, 2, vec![c(0.3, 2.0), c(-1.0, 0.5), c(-1.0, 0.5), c(0.7, 1.0)]).unwrap(),
            &tol,
        )
        .unwrap();
        let s = upper_witness(&z, &tol).unwrap();
        assert!(is_real_symplectic(&s, &tol));
        let lower = z.conjugate();
        let w = lower_witness(&lower, &tol).unwrap();
        assert!(is_real(&w, &tol) && is_antisymplectic(&w, &tol));
    }

    #[test]
    fn upper_witness_fixtures() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let s = upper_witness(&SiegelPoint::i_identity(n), &tol).unwrap();
            assert!(s.matrix().max_abs_diff(&ComplexMatrix::identity(2 * n)) < 1e-14);
            let y = 4.0;
            let z = make_siegel(&ComplexMatrix::scalar_identity(n, c(0.0, y)), &tol).unwrap();
            let s = upper_witness(&z, &tol).unwrap();
            let mut d = vec![2.0; n];
            d.extend(vec![0.5; n]);
            assert!(s.matrix().max_abs_diff(&ComplexMatrix::real_diagonal(&d)) < 1e-14);
        }
    }

    #[test]
    fn lower_witness_of_minus_i_is_reflection() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let z = SiegelPoint::i_identity(n).conjugate();
            let s = lower_witness(&z, &tol).unwrap();
            assert!(s.matrix().max_abs_diff(reflection(n).matrix()) < 1e-14);
        }
    }

    #[test]
    fn classifier_of_imaginary_coupling() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let s = imaginary_coupling(n);
            let m = classifier_matrix(&s);
            let alpha = m.block(0, 0, n, n);
            assert!(alpha.max_abs_diff(&ComplexMatrix::scalar_identity(n, c(-2.0, 0.0))) < 1e-14);
            let cls = classify_action(&s, &tol).unwrap();
            assert_eq!(cls.verdict, Verdict::Undetermined);
            // each 2×2 slice is [[-2, -2i], [2i, 0]] with eigenvalues -1 ± √5
            assert!((cls.min_eigenvalue - (-1.0 - 5f64.sqrt())).abs() < 1e-12);
            let conds = classifier_block_conditions(&s, &tol).unwrap();
            assert!(!conds.first);
        }
    }

    #[test]
    fn classifier_matches_displayed_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            let s = BlockSymplectic::new(sampling::gaussian_complex(2 * n, 2 * n, 1.0, &mut rng)).unwrap();
            let (a, b, cc, d) = (s.a(), s.b(), s.c(), s.d());
            let id = ComplexMatrix::identity(n);
            let alpha = (&(&a.adjoint() * &cc) - &(&cc.adjoint() * &a)).scale(I);
            let beta = (&(&(&a.adjoint() * &d) - &(&cc.adjoint() * &b)) - &id).scale(I);
            let beta_star = (&(&(&b.adjoint() * &cc) - &(&d.adjoint() * &a)) + &id).scale(I);
            let gamma = (&(&b.adjoint() * &d) - &(&d.adjoint() * &b)).scale(I);
            let expected = ComplexMatrix::from_blocks(&alpha, &beta, &beta_star, &gamma);
            let m = classifier_matrix(&s);
            assert!(m.max_abs_diff(&expected) < 1e-12);
            assert!(m.hermitian_defect().0 < 1e-12);
        }
    }

    #[test]
    fn real_symplectic_is_preserving() {
        let tol = Tolerance::default();
        for seed in 0..200 {
            let s = random_real_symplectic(1 + (seed as usize % 4), seed);
            assert!(is_symplectic(&s, &tol));
            let cls = classify_action(&s, &tol).unwrap();
            assert_eq!(cls.verdict, Verdict::PreservesSiegel);
            assert!(cls.m_matrix.max_abs() <= 1e-12 * s.quadratic_scale());
            assert_eq!(
                classifier_block_conditions(&s, &tol).unwrap(),
                BlockConditions {
                    first: true,
                    second: true,
                    third: true
                }
            );
            let det = s.matrix().determinant().unwrap();
            assert!((det.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn pure_imaginary_routes_lower() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let q = reflection(n).compose(&random_real_symplectic(n, n as u64));
            let s = q.scale(I);
            assert!(is_symplectic(&s, &tol));
            assert_eq!(classify_action(&s, &tol).unwrap().verdict, Verdict::MapsToLower);
            assert_eq!(classify_action(&q, &tol).unwrap().verdict, Verdict::MapsToLower);
        }
    }

    #[test]
    fn complex_antisymplectic_is_undetermined() {
        let tol = Tolerance::default();
        let s = BlockSymplectic::new(ComplexMatrix::scalar_identity(4, I)).unwrap();
        let cls = classify_action(&s, &tol).unwrap();
        assert!(cls.notes.is_antisymplectic && cls.notes.is_purely_imaginary);
        assert_eq!(cls.verdict, Verdict::Undetermined);
        assert!(classifier_block_conditions(&s, &tol).unwrap().first);
    }

    #[test]
    fn block_psd_fixtures() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            let id = ComplexMatrix::identity(n);
            let m = SelfAdjointBlocks::new(id.clone(), ComplexMatrix::zeros(n, n), id.clone(), &tol).unwrap();
            let v = block_psd_criterion(&m, &tol).unwrap();
            assert!(v.holds && v.pivot_gamma);
            let m = SelfAdjointBlocks::new(id.clone(), id.scale_real(2.0), id.clone(), &tol).unwrap();
            let v = block_psd_criterion(&m, &tol).unwrap();
            assert!(!v.holds && !v.pivot_gamma);
            assert!(!is_psd(&m.assemble(), &tol).unwrap().holds());
        }
    }

    #[test]
    fn block_psd_rejects_non_hermitian_blocks() {
        let tol = Tolerance::default();
        let bad = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            SelfAdjointBlocks::new(bad, id.clone(), id, &tol),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn stabilizer_fixtures() {
        let tol = Tolerance::default();
        for n in 1..=3 {
            assert!(is_in_stabilizer_k(&BlockSymplectic::identity(n), &tol).unwrap());
            let j = standard_j(n).as_block();
            let m = stabilizer_membership(&j, &tol).unwrap();
            assert!(m.fixes_i && m.orthogonal && m.block_form);
            let z = make_siegel(&ComplexMatrix::scalar_identity(n, c(0.0, 2.0)), &tol).unwrap();
            assert!(!is_in_stabilizer_k(&upper_witness(&z, &tol).unwrap(), &tol).unwrap());
            assert_eq!(
                is_in_stabilizer_k(&imaginary_coupling(n), &tol),
                Err(Error::NotRealSymplectic)
            );
        }
    }

    #[test]
    fn canonical_sign_identifies_plus_minus() {
        let s = random_real_symplectic(2, 9);
        let neg = s.scale(c(-1.0, 0.0));
        assert_eq!(canonical_sign(&s), canonical_sign(&neg));
        assert_eq!(
            canonical_sign(&BlockSymplectic::identity(2)),
            BlockSymplectic::identity(2)
        );
    }

    #[test]
    fn odd_size_is_rejected() {
        assert_eq!(
            BlockSymplectic::new(ComplexMatrix::identity(3)),
            Err(Error::OddDimension { size: 3 })
        );
    }
}
