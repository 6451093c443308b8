//! Seeded generators for property suites: Siegel points, group elements of
//! each hypothesis class, and self-adjoint block matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matrix::{is_psd_at_scale, ComplexMatrix, Tolerance};
use crate::siegel::{make_siegel, LowerSiegelPoint, SiegelPoint};
use crate::symplectic::{
    classifier_matrix, is_real, is_symplectic, random_real_symplectic_with, reflection, standard_j, BlockSymplectic,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_real<R: Rng + ?Sized>(rows: usize, cols: usize, sigma: f64, rng: &mut R) -> ComplexMatrix {
    let m = DMatrix::from_fn(rows, cols, |_, _| Complex64::new(sigma * normal(rng), 0.0));
    ComplexMatrix::wrap(m)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rows: usize, cols: usize, sigma: f64, rng: &mut R) -> ComplexMatrix {
    let m = DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(sigma * normal(rng), sigma * normal(rng))
    });
    ComplexMatrix::wrap(m)
}

/// Real symmetric with Gaussian entries of scale `sigma`.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, sigma: f64, rng: &mut R) -> ComplexMatrix {
    gaussian_real(n, n, sigma, rng).symmetrized()
}

/// Complex symmetric (not Hermitian) with Gaussian entries.
pub fn random_complex_symmetric<R: Rng + ?Sized>(n: usize, sigma: f64, rng: &mut R) -> ComplexMatrix {
    gaussian_complex(n, n, sigma, rng).symmetrized()
}

fn q_factor(m: &ComplexMatrix) -> ComplexMatrix {
    let qr = m.as_dmatrix().clone().qr();
    let q = qr.q();
    let r = qr.r();
    // fix phases so the distribution is Haar
    let mut q = q;
    for j in 0..q.ncols() {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    ComplexMatrix::wrap(q)
}

pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    q_factor(&gaussian_real(n, n, 1.0, rng)).re_part()
}

pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    q_factor(&gaussian_complex(n, n, 1.0, rng))
}

/// `U · diag(e^{u_k}) · Vᵗ` with `u_k` uniform in `[−spread, spread]`.
pub fn random_well_conditioned<R: Rng + ?Sized>(n: usize, spread: f64, rng: &mut R) -> ComplexMatrix {
    let u = random_orthogonal(n, rng);
    let v = random_orthogonal(n, rng);
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(-spread..=spread).exp()).collect();
    &(&u * &ComplexMatrix::real_diagonal(&d)) * &v.transpose()
}

/// Real symmetric positive definite, eigenvalues `e^{u}` with `u ∈ [−spread, spread]`.
pub fn random_spd<R: Rng + ?Sized>(n: usize, spread: f64, rng: &mut R) -> ComplexMatrix {
    let q = random_orthogonal(n, rng);
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(-spread..=spread).exp()).collect();
    (&(&q * &ComplexMatrix::real_diagonal(&d)) * &q.transpose()).symmetrized()
}

pub fn random_siegel_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SiegelPoint {
    let x = random_symmetric(n, 1.0, rng);
    let y = random_spd(n, 1.2, rng);
    let z = &x + &y.scale(I);
    make_siegel(&z, &Tolerance::default()).expect("Y is positive definite by construction")
}

pub fn random_lower_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LowerSiegelPoint {
    random_siegel_point(n, rng).conjugate()
}

/// Uniform on the unit sphere of `ℂⁿ` (or `ℝⁿ` when `complex` is false).
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, complex: bool, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(normal(rng), if complex { normal(rng) } else { 0.0 }))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// An element `[[A, B], [−B, A]]` of the stabilizer of `iI`, from a random
/// unitary `A + iB`.
pub fn random_stabilizer<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    let u = random_unitary(n, rng);
    let (a, b) = (u.re_part(), u.im_part());
    BlockSymplectic::from_blocks(&a, &b, &-&b, &a).expect("square blocks")
}

/// `I₋ · P` for a random real symplectic `P`.
pub fn random_real_antisymplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    reflection(n).compose(&random_real_symplectic_with(n, rng))
}

/// `i · Q` for a random real antisymplectic `Q`.
pub fn random_pure_imaginary_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    random_real_antisymplectic(n, rng).scale(I)
}

/// Translation `[[I, Z], [O, I]]` by a random `Z` of the upper space.
pub fn random_translation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (BlockSymplectic, SiegelPoint) {
    let z = random_siegel_point(n, rng);
    (translation(&z), z)
}

pub fn translation(z: &SiegelPoint) -> BlockSymplectic {
    let n = z.n();
    let id = ComplexMatrix::identity(n);
    BlockSymplectic::from_blocks(&id, z.z(), &ComplexMatrix::zeros(n, n), &id).expect("square blocks")
}

/// Real PSD matrix `G Gᵗ` of random positive rank.
fn random_real_psd<R: Rng + ?Sized>(n: usize, sigma: f64, rng: &mut R) -> ComplexMatrix {
    let rank = rng.random_range(1..=n);
    let g = gaussian_real(n, rank, sigma, rng);
    (&g * &g.transpose()).symmetrized()
}

/// Imaginary shear `[[I, iB], [O, I]]` (upper) or `[[I, O], [−iB, I]]` (lower)
/// with `B` symmetric. `M` of either is `2·diag(0, B)` or `2·diag(B, 0)`.
fn imaginary_shear(n: usize, b: &ComplexMatrix, upper: bool) -> BlockSymplectic {
    let id = ComplexMatrix::identity(n);
    let o = ComplexMatrix::zeros(n, n);
    let s = if upper {
        ComplexMatrix::from_blocks(&id, &b.scale(I), &o, &id)
    } else {
        ComplexMatrix::from_blocks(&id, &o, &b.scale(-I), &id)
    };
    BlockSymplectic::new(s).expect("square blocks")
}

/// Complex symplectic `S` with `i(S*JS − J) ⪰ 0`: products of real symplectic
/// factors and imaginary shears, mostly with positive semidefinite shear
/// parameters, kept only if the classifier passes the PSD test.
pub fn random_psd_classifier_symplectic<R: Rng + ?Sized>(n: usize, tol: &Tolerance, rng: &mut R) -> BlockSymplectic {
    loop {
        let factors = rng.random_range(2..=5);
        let mut s = BlockSymplectic::identity(n);
        let mut complex = false;
        for _ in 0..factors {
            let g = if rng.random_bool(0.5) {
                random_real_symplectic_with(n, rng)
            } else {
                complex = true;
                let b = if rng.random_bool(0.85) {
                    random_real_psd(n, 0.7, rng)
                } else {
                    random_symmetric(n, 0.3, rng)
                };
                imaginary_shear(n, &b, rng.random_bool(0.5))
            };
            s = s.compose(&g);
        }
        if !complex || is_real(&s, tol) || !is_symplectic(&s, tol) {
            continue;
        }
        let scale = s.matrix().max_abs().powi(2).max(1.0);
        if is_psd_at_scale(&classifier_matrix(&s), tol, scale)
            .map(|v| v.holds())
            .unwrap_or(false)
        {
            return s;
        }
    }
}

/// Generic complex symplectic: products of complex shears, complex dilations and `J`.
pub fn random_complex_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlockSymplectic {
    let factors = rng.random_range(2..=6);
    let id = ComplexMatrix::identity(n);
    let o = ComplexMatrix::zeros(n, n);
    let mut s = BlockSymplectic::identity(n);
    for _ in 0..factors {
        let g = match rng.random_range(0..4) {
            0 => {
                let b = random_complex_symmetric(n, 0.5, rng);
                BlockSymplectic::from_blocks(&id, &b, &o, &id)
            }
            1 => {
                let c = random_complex_symmetric(n, 0.5, rng);
                BlockSymplectic::from_blocks(&id, &o, &c, &id)
            }
            2 => {
                let g = &random_well_conditioned(n, 0.3, rng) + &gaussian_complex(n, n, 0.15, rng);
                match g.inverse() {
                    Ok(inv) => BlockSymplectic::from_blocks(&g, &o, &o, &inv.transpose()),
                    Err(_) => continue,
                }
            }
            _ => Ok(standard_j(n).as_block()),
        }
        .expect("square blocks");
        s = s.compose(&g);
    }
    s
}

/// Self-adjoint 2n×2n matrices stressing the block positivity criterion:
/// Gram matrices with rank-deficient blocks, Hermitian blocks with zeroed
/// eigenvalues and range-compatible or generic off-diagonal blocks, and
/// shifted variants on either side of the cone.
pub fn random_self_adjoint_blocks<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    match rng.random_range(0..4) {
        0 => {
            // Gram matrix W W* with W = [W1; W2], W1 possibly rank deficient
            let r = rng.random_range(1..=2 * n);
            let mut w1 = gaussian_complex(n, r, 1.0, rng);
            if rng.random_bool(0.6) {
                let keep = rng.random_range(0..n);
                let p = projector_onto_random_subspace(n, keep, rng);
                w1 = &p * &w1;
            }
            let w2 = gaussian_complex(n, r, 1.0, rng);
            let alpha = (&w1 * &w1.adjoint()).hermitian_part();
            let beta = &w1 * &w2.adjoint();
            let gamma = (&w2 * &w2.adjoint()).hermitian_part();
            (alpha, beta, gamma)
        }
        1 => {
            // α and γ with zeroed eigenvalues, β in the range of α
            let alpha = zeroed_hermitian(n, true, rng);
            let k = gaussian_complex(n, n, 0.7, rng);
            let beta = &alpha * &k;
            let gamma = if rng.random_bool(0.5) {
                zeroed_hermitian(n, false, rng)
            } else {
                let base = (&(&k.adjoint() * &alpha) * &k).hermitian_part();
                let extra = zeroed_hermitian(n, true, rng);
                &base + &extra
            };
            (alpha, beta, gamma)
        }
        2 => {
            // zeroed eigenvalues with a generic off-diagonal block
            let alpha = zeroed_hermitian(n, rng.random_bool(0.7), rng);
            let gamma = zeroed_hermitian(n, rng.random_bool(0.7), rng);
            let beta = gaussian_complex(n, n, rng.random_range(0.05..1.0), rng);
            (alpha, beta, gamma)
        }
        _ => {
            // generic Hermitian shifted by ±c·I
            let h = gaussian_complex(2 * n, 2 * n, 1.0, rng).hermitian_part();
            let g = (&h * &h).hermitian_part();
            let shift = rng.random_range(-0.5..0.5);
            let m = &g + &ComplexMatrix::scalar_identity(2 * n, Complex64::new(shift, 0.0));
            (m.block(0, 0, n, n), m.block(0, n, n, n), m.block(n, n, n, n))
        }
    }
}

fn projector_onto_random_subspace<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let mut d = vec![0.0; n];
    d.iter_mut().take(dim).for_each(|x| *x = 1.0);
    (&(&u * &ComplexMatrix::real_diagonal(&d)) * &u.adjoint()).hermitian_part()
}

/// `U · diag(λ) · U*` with a random subset of eigenvalues set to zero;
/// the rest are positive when `nonneg`, otherwise of random sign.
fn zeroed_hermitian<R: Rng + ?Sized>(n: usize, nonneg: bool, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let d: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.4) {
                0.0
            } else {
                let mag = rng.random_range(0.1..2.0);
                if nonneg || rng.random_bool(0.5) {
                    mag
                } else {
                    -mag
                }
            }
        })
        .collect();
    (&(&u * &ComplexMatrix::real_diagonal(&d)) * &u.adjoint()).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::is_psd;
    use crate::symplectic::{is_antisymplectic, is_in_stabilizer_k, is_real};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_land_in_their_classes() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=4 {
            for _ in 0..25 {
                let o = random_orthogonal(n, &mut rng);
                assert!((&o.transpose() * &o).max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
                let u = random_unitary(n, &mut rng);
                assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
                assert!(is_psd(&random_spd(n, 1.0, &mut rng), &tol).unwrap().min_eigenvalue() > 0.0);
                let k = random_stabilizer(n, &mut rng);
                assert!(is_in_stabilizer_k(&k, &tol).unwrap());
                let q = random_real_antisymplectic(n, &mut rng);
                assert!(is_real(&q, &tol) && is_antisymplectic(&q, &tol));
                let s = random_pure_imaginary_symplectic(n, &mut rng);
                assert!(is_symplectic(&s, &tol));
                let s = random_complex_symplectic(n, &mut rng);
                assert!(is_symplectic(&s, &tol));
                let v = random_unit_vector(n, true, &mut rng);
                let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_classifier_sampler_is_complex_and_psd() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            for _ in 0..20 {
                let s = random_psd_classifier_symplectic(n, &tol, &mut rng);
                assert!(!is_real(&s, &tol));
                assert!(is_symplectic(&s, &tol));
            }
        }
    }
}
