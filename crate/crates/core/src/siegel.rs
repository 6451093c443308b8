//! The Siegel upper and lower half spaces and the fractional linear action
//! `Φ_S(Z) = (AZ + B)(CZ + D)⁻¹`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, operator_norm, singular_extremes, ComplexMatrix, Tolerance};
use crate::symplectic::BlockSymplectic;

/// A point `Z = X + iY` of the upper half space: `Z` symmetric, `Y ≻ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    z: ComplexMatrix,
    x: ComplexMatrix,
    y: ComplexMatrix,
    min_eig_y: f64,
}

/// A point of the lower half space: `Z` symmetric, `Y ≺ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerSiegelPoint {
    z: ComplexMatrix,
    x: ComplexMatrix,
    y: ComplexMatrix,
    /// Smallest eigenvalue of `−Y`.
    min_eig_neg_y: f64,
}

fn check_symmetric(z: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    z.square_dim()?;
    let (defect, row, col) = z.symmetry_defect();
    if defect > tol.sym_tol() * z.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { defect, row, col });
    }
    Ok(())
}

/// Eigenvalue extremes of the imaginary part of a symmetric matrix, with the
/// relative threshold used to call them definite.
fn imaginary_spectrum(z: &ComplexMatrix, tol: &Tolerance) -> Result<(f64, f64, f64)> {
    let eig = hermitian_eigen(&z.im_part(), tol)?;
    Ok((eig.min(), eig.max(), tol.psd_tol() * eig.spectral_radius()))
}

pub fn make_siegel(z: &ComplexMatrix, tol: &Tolerance) -> Result<SiegelPoint> {
    check_symmetric(z, tol)?;
    let z = z.symmetrized();
    let (min, _, threshold) = imaginary_spectrum(&z, tol)?;
    if min.is_nan() || min <= threshold {
        return Err(Error::ImaginaryPartNotPD { min_eigenvalue: min });
    }
    Ok(SiegelPoint {
        x: z.re_part(),
        y: z.im_part(),
        z,
        min_eig_y: min,
    })
}

pub fn make_lower_siegel(z: &ComplexMatrix, tol: &Tolerance) -> Result<LowerSiegelPoint> {
    check_symmetric(z, tol)?;
    let z = z.symmetrized();
    let (_, max, threshold) = imaginary_spectrum(&z, tol)?;
    if max.is_nan() || max >= -threshold {
        return Err(Error::ImaginaryPartNotND { max_eigenvalue: max });
    }
    let min_eig_neg_y = hermitian_eigen(&-&z.im_part(), tol)?.min();
    Ok(LowerSiegelPoint {
        x: z.re_part(),
        y: z.im_part(),
        z,
        min_eig_neg_y,
    })
}

impl SiegelPoint {
    /// `iIₙ`
    pub fn i_identity(n: usize) -> Self {
        Self::scaled_i(n, 1.0)
    }

    /// `i·y·Iₙ` for `y > 0`.
    pub fn scaled_i(n: usize, y: f64) -> Self {
        assert!(y > 0.0 && y.is_finite(), "scaled_i needs y > 0");
        Self {
            z: ComplexMatrix::scalar_identity(n, Complex64::new(0.0, y)),
            x: ComplexMatrix::zeros(n, n),
            y: ComplexMatrix::scalar_identity(n, Complex64::new(y, 0.0)),
            min_eig_y: y,
        }
    }

    pub fn n(&self) -> usize {
        self.z.rows()
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn y(&self) -> &ComplexMatrix {
        &self.y
    }

    pub fn min_eig_y(&self) -> f64 {
        self.min_eig_y
    }

    /// `X − iY`, a point of the lower space.
    pub fn conjugate(&self) -> LowerSiegelPoint {
        LowerSiegelPoint {
            z: self.z.conj(),
            x: self.x.clone(),
            y: -&self.y,
            min_eig_neg_y: self.min_eig_y,
        }
    }
}

impl LowerSiegelPoint {
    pub fn n(&self) -> usize {
        self.z.rows()
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn y(&self) -> &ComplexMatrix {
        &self.y
    }

    pub fn min_eig_neg_y(&self) -> f64 {
        self.min_eig_neg_y
    }

    pub fn conjugate(&self) -> SiegelPoint {
        SiegelPoint {
            z: self.z.conj(),
            x: self.x.clone(),
            y: -&self.y,
            min_eig_y: self.min_eig_neg_y,
        }
    }
}

/// Where `EF⁻¹` landed.
#[derive(Debug, Clone, PartialEq)]
pub enum ActionStatus {
    InUpper(SiegelPoint),
    InLower(LowerSiegelPoint),
    /// Symmetric, but the imaginary part is indefinite or singular.
    SymmetricOnly(ComplexMatrix),
    /// Not symmetric beyond the conditioning-scaled tolerance.
    Asymmetric(ComplexMatrix),
    /// `σ_min(F) ≤ psd_tol · ‖F‖`; `witness` is the right singular vector of `σ_min`.
    SingularDenominator {
        witness: Vec<Complex64>,
    },
}

impl ActionStatus {
    pub fn name(&self) -> &'static str {
        match self {
            ActionStatus::InUpper(_) => "InUpper",
            ActionStatus::InLower(_) => "InLower",
            ActionStatus::SymmetricOnly(_) => "SymmetricOnly",
            ActionStatus::Asymmetric(_) => "Asymmetric",
            ActionStatus::SingularDenominator { .. } => "SingularDenominator",
        }
    }
}

/// Outcome of applying `Φ_S` together with the intermediates `E = AZ + B`,
/// `F = CZ + D`.
#[derive(Debug, Clone)]
pub struct ActionOutcome {
    pub status: ActionStatus,
    pub e_matrix: ComplexMatrix,
    pub f_matrix: ComplexMatrix,
    /// `EF⁻¹` as solved, before symmetrization. `None` for a singular `F`.
    pub value: Option<ComplexMatrix>,
    /// `Im(EF⁻¹)` of the symmetrized value.
    pub im_ef: Option<ComplexMatrix>,
    pub symmetry_defect: Option<f64>,
    pub cond_f: f64,
}

impl ActionOutcome {
    pub fn value(&self) -> Option<&ComplexMatrix> {
        self.value.as_ref()
    }

    pub fn upper(&self) -> Option<&SiegelPoint> {
        match &self.status {
            ActionStatus::InUpper(p) => Some(p),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<&LowerSiegelPoint> {
        match &self.status {
            ActionStatus::InLower(p) => Some(p),
            _ => None,
        }
    }
}

/// `Φ_S(Z)` for an arbitrary square `Z`.
pub fn mobius_apply_matrix(s: &BlockSymplectic, z: &ComplexMatrix, tol: &Tolerance) -> Result<ActionOutcome> {
    let n = z.square_dim()?;
    if n != s.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            found: n,
        });
    }
    let e = &(&s.a() * z) + &s.b();
    let f = &(&s.c() * z) + &s.d();
    let (sigma_max, sigma_min, witness) = singular_extremes(&f)?;
    let cond_f = if sigma_min > 0.0 {
        sigma_max / sigma_min
    } else {
        f64::INFINITY
    };
    if sigma_min <= tol.psd_tol() * sigma_max {
        return Ok(ActionOutcome {
            status: ActionStatus::SingularDenominator { witness },
            e_matrix: e,
            f_matrix: f,
            value: None,
            im_ef: None,
            symmetry_defect: None,
            cond_f,
        });
    }
    // W = E F⁻¹  ⇔  Fᵗ Wᵗ = Eᵗ
    let w = f.transpose().solve(&e.transpose())?.transpose();
    let (defect, _, _) = w.symmetry_defect();
    let symmetric = defect <= tol.sym_tol() * cond_f.max(1.0) * w.max_abs().max(1.0);
    let mut outcome = ActionOutcome {
        status: ActionStatus::Asymmetric(w.clone()),
        e_matrix: e,
        f_matrix: f,
        value: Some(w.clone()),
        im_ef: None,
        symmetry_defect: Some(defect),
        cond_f,
    };
    if !symmetric {
        return Ok(outcome);
    }
    let ws = w.symmetrized();
    let (min, max, threshold) = imaginary_spectrum(&ws, tol)?;
    outcome.im_ef = Some(ws.im_part());
    outcome.status = if min > threshold {
        ActionStatus::InUpper(SiegelPoint {
            x: ws.re_part(),
            y: ws.im_part(),
            z: ws,
            min_eig_y: min,
        })
    } else if max < -threshold {
        ActionStatus::InLower(LowerSiegelPoint {
            x: ws.re_part(),
            y: ws.im_part(),
            min_eig_neg_y: -max,
            z: ws,
        })
    } else {
        ActionStatus::SymmetricOnly(ws)
    };
    Ok(outcome)
}

pub fn mobius_apply(s: &BlockSymplectic, z: &SiegelPoint, tol: &Tolerance) -> Result<ActionOutcome> {
    mobius_apply_matrix(s, z.z(), tol)
}

#[derive(Debug, Clone)]
pub struct CompositionCheck {
    /// `Φ_S(Φ_R(Z))`
    pub lhs: ComplexMatrix,
    /// `Φ_{SR}(Z)`
    pub rhs: ComplexMatrix,
    pub max_defect: f64,
    /// `1 + ‖S‖‖R‖‖Z‖`, the scale the defect is measured against.
    pub scale: f64,
}

impl CompositionCheck {
    pub fn within(&self, eps: f64) -> bool {
        self.max_defect <= eps * self.scale
    }
}

/// Evaluates both sides of `Φ_S ∘ Φ_R = Φ_{SR}`. A singular denominator is
/// reported as [`Error::ChainBreak`] with stage 0 (`Φ_R`), 1 (`Φ_S`) or 2 (`Φ_{SR}`).
pub fn compose_check(
    s: &BlockSymplectic,
    r: &BlockSymplectic,
    z: &SiegelPoint,
    tol: &Tolerance,
) -> Result<CompositionCheck> {
    let inner = mobius_apply(r, z, tol)?;
    let inner = inner.value.ok_or(Error::ChainBreak { stage: 0 })?;
    let lhs = mobius_apply_matrix(s, &inner, tol)?
        .value
        .ok_or(Error::ChainBreak { stage: 1 })?;
    let rhs = mobius_apply(&s.compose(r), z, tol)?
        .value
        .ok_or(Error::ChainBreak { stage: 2 })?;
    let scale = 1.0 + operator_norm(s.matrix())? * operator_norm(r.matrix())? * operator_norm(z.z())?;
    Ok(CompositionCheck {
        max_defect: lhs.max_abs_diff(&rhs),
        lhs,
        rhs,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{random_real_symplectic, upper_witness};

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn make_siegel_fixtures() {
        let tol = Tolerance::default();
        let p = make_siegel(&ComplexMatrix::scalar_identity(3, I), &tol).unwrap();
        assert_eq!(p.x(), &ComplexMatrix::zeros(3, 3));
        assert_eq!(p.y(), &ComplexMatrix::identity(3));

        let z = ComplexMatrix::from_row_major(2, 2, vec![I, c(1.0, 0.0), c(1.0, 0.0), I]).unwrap();
        let p = make_siegel(&z, &tol).unwrap();
        assert_eq!(p.y(), &ComplexMatrix::identity(2));

        let z = ComplexMatrix::from_row_major(2, 2, vec![I, c(1.0, 0.0), c(0.0, 0.0), I]).unwrap();
        assert!(matches!(
            make_siegel(&z, &tol),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));

        let z = ComplexMatrix::diagonal(&[I, -I]);
        assert!(matches!(
            make_siegel(&z, &tol),
            Err(Error::ImaginaryPartNotPD { min_eigenvalue }) if (min_eigenvalue + 1.0).abs() < 1e-14
        ));
    }

    #[test]
    fn boundary_points_are_in_neither_space() {
        let tol = Tolerance::default();
        let z = ComplexMatrix::diagonal(&[I, c(0.0, 0.0)]);
        assert!(make_siegel(&z, &tol).is_err());
        assert!(make_lower_siegel(&z, &tol).is_err());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let tol = Tolerance::default();
        let lower = make_lower_siegel(&ComplexMatrix::scalar_identity(2, -I), &tol).unwrap();
        let upper = lower.conjugate();
        assert_eq!(upper.z(), &ComplexMatrix::scalar_identity(2, I));
        assert_eq!(upper.conjugate(), lower);

        let z =
            ComplexMatrix::from_row_major(2, 2, vec![c(0.5, -2.0), c(1.0, 0.3), c(1.0, 0.3), c(-1.0, -1.0)]).unwrap();
        let lower = make_lower_siegel(&z, &tol).unwrap();
        let upper = lower.conjugate();
        assert_eq!(upper.x(), lower.x());
        assert_eq!(upper.y(), &-lower.y());
        assert_eq!(upper.conjugate(), lower);
    }

    #[test]
    fn identity_action_echoes() {
        let tol = Tolerance::default();
        let z = make_siegel(
            &ComplexMatrix::from_row_major(2, 2, vec![c(0.2, 1.5), c(-0.4, 0.2), c(-0.4, 0.2), c(1.0, 0.8)]).unwrap(),
            &tol,
        )
        .unwrap();
        let out = mobius_apply(&BlockSymplectic::identity(2), &z, &tol).unwrap();
        assert_eq!(out.upper().unwrap().z(), z.z());
        assert_eq!(out.cond_f, 1.0);
    }

    #[test]
    fn singular_denominator_is_an_outcome() {
        let tol = Tolerance::default();
        // C = 0, D = 0 makes F = 0
        let s = BlockSymplectic::from_blocks(
            &ComplexMatrix::identity(2),
            &ComplexMatrix::identity(2),
            &ComplexMatrix::zeros(2, 2),
            &ComplexMatrix::zeros(2, 2),
        )
        .unwrap();
        let out = mobius_apply(&s, &SiegelPoint::i_identity(2), &tol).unwrap();
        assert!(matches!(out.status, ActionStatus::SingularDenominator { ref witness } if witness.len() == 2));
        assert!(out.value().is_none());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let tol = Tolerance::default();
        assert_eq!(
            mobius_apply(&BlockSymplectic::identity(2), &SiegelPoint::i_identity(3), &tol).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 3 }
        );
    }

    #[test]
    fn witness_sends_i_to_point() {
        let tol = Tolerance::default();
        let z0 = make_siegel(
            &ComplexMatrix::from_row_major(2, 2, vec![c(1.0, 2.0), c(0.5, -0.3), c(0.5, -0.3), c(-2.0, 0.7)]).unwrap(),
            &tol,
        )
        .unwrap();
        let s = upper_witness(&z0, &tol).unwrap();
        let out = mobius_apply(&s, &SiegelPoint::i_identity(2), &tol).unwrap();
        assert!(out.upper().unwrap().z().max_abs_diff(z0.z()) < 1e-12);
    }

    #[test]
    fn composition_of_identities_is_exact() {
        let tol = Tolerance::default();
        let id = BlockSymplectic::identity(2);
        let chk = compose_check(&id, &id, &SiegelPoint::scaled_i(2, 3.0), &tol).unwrap();
        assert_eq!(chk.max_defect, 0.0);
    }

    #[test]
    fn composition_of_witnesses() {
        let tol = Tolerance::default();
        let z1 = make_siegel(&ComplexMatrix::from_row_major(1, 1, vec![c(0.5, 2.0)]).unwrap(), &tol).unwrap();
        let z2 = make_siegel(&ComplexMatrix::from_row_major(1, 1, vec![c(-1.0, 0.3)]).unwrap(), &tol).unwrap();
        let s = upper_witness(&z1, &tol).unwrap();
        let r = upper_witness(&z2, &tol).unwrap();
        let chk = compose_check(&s, &r, &SiegelPoint::i_identity(1), &tol).unwrap();
        assert!(chk.within(1e-12));
    }

    #[test]
    fn inverse_action_round_trips() {
        let tol = Tolerance::default();
        let s = random_real_symplectic(3, 4);
        let z = SiegelPoint::scaled_i(3, 0.7);
        let out = mobius_apply(&s, &z, &tol).unwrap();
        let back = mobius_apply(&s.inverse().unwrap(), out.upper().unwrap(), &tol).unwrap();
        assert!(back.upper().unwrap().z().max_abs_diff(z.z()) < 1e-9);
    }

    #[test]
    fn chain_break_reports_stage() {
        let tol = Tolerance::default();
        let o = ComplexMatrix::zeros(1, 1);
        let id = ComplexMatrix::identity(1);
        let bad = BlockSymplectic::from_blocks(&id, &id, &o, &o).unwrap();
        let good = BlockSymplectic::identity(1);
        let z = SiegelPoint::i_identity(1);
        assert_eq!(
            compose_check(&good, &bad, &z, &tol).unwrap_err(),
            Error::ChainBreak { stage: 0 }
        );
        assert_eq!(
            compose_check(&bad, &good, &z, &tol).unwrap_err(),
            Error::ChainBreak { stage: 1 }
        );
    }
}
