//! Browser bindings for the one-dimensional case, where the Siegel upper half
//! space is the upper half plane and `S` is a 2×2 complex matrix.
//!
//! Matrices cross the boundary as `[a_re, a_im, b_re, b_im, c_re, c_im, d_re, d_im]`
//! and points as `[x, y]` pairs.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use siegel_core::matrix::ComplexMatrix;
use siegel_core::metric::{path_finsler_length, siegel_distance, PathSample};
use siegel_core::siegel::{make_siegel, mobius_apply_matrix, ActionStatus, SiegelPoint};
use siegel_core::symplectic::{classify_action, random_real_symplectic, BlockSymplectic, Verdict};
use siegel_core::{Error, Tolerance};

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn matrix_from(entries: &[f64]) -> Result<BlockSymplectic, Error> {
    if entries.len() != 8 {
        return Err(Error::EntryCount {
            expected: 8,
            found: entries.len(),
        });
    }
    let z: Vec<Complex64> = entries.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
    BlockSymplectic::new(ComplexMatrix::from_row_major(2, 2, z)?)
}

fn point(x: f64, y: f64) -> Result<SiegelPoint, Error> {
    make_siegel(
        &ComplexMatrix::from_row_major(1, 1, vec![Complex64::new(x, y)])?,
        &Tolerance::default(),
    )
}

#[wasm_bindgen]
pub struct Classification {
    verdict: String,
    pub min_eigenvalue: f64,
    pub symplectic: bool,
    pub antisymplectic: bool,
}

#[wasm_bindgen]
impl Classification {
    #[wasm_bindgen(getter)]
    pub fn verdict(&self) -> String {
        self.verdict.clone()
    }
}

fn classify_entries(entries: &[f64]) -> Result<Classification, Error> {
    let s = matrix_from(entries)?;
    let c = classify_action(&s, &Tolerance::default())?;
    let verdict = match c.verdict {
        Verdict::PreservesSiegel => "preserves the upper half plane",
        Verdict::MapsToLower => "maps into the lower half plane",
        Verdict::Undetermined => "undetermined",
    };
    Ok(Classification {
        verdict: verdict.to_string(),
        min_eigenvalue: c.min_eigenvalue,
        symplectic: c.notes.is_symplectic,
        antisymplectic: c.notes.is_antisymplectic,
    })
}

/// Sufficient-condition verdict for `S`.
#[wasm_bindgen]
pub fn classify(entries: &[f64]) -> Result<Classification, JsValue> {
    classify_entries(entries).map_err(js_err)
}

pub const IN_UPPER: f64 = 0.0;
pub const IN_LOWER: f64 = 1.0;
pub const ELSEWHERE: f64 = 2.0;
pub const SINGULAR: f64 = 3.0;

fn act_on_points(entries: &[f64], points: &[f64]) -> Result<Vec<f64>, Error> {
    let s = matrix_from(entries)?;
    let tol = Tolerance::default();
    let mut out = Vec::with_capacity(points.len() / 2 * 3);
    for p in points.chunks_exact(2) {
        let z = ComplexMatrix::from_row_major(1, 1, vec![Complex64::new(p[0], p[1])])?;
        let outcome = mobius_apply_matrix(&s, &z, &tol)?;
        let code = match outcome.status {
            ActionStatus::InUpper(_) => IN_UPPER,
            ActionStatus::InLower(_) => IN_LOWER,
            ActionStatus::SingularDenominator { .. } => SINGULAR,
            _ => ELSEWHERE,
        };
        let w = outcome
            .value()
            .map_or(Complex64::new(f64::NAN, f64::NAN), |v| v.get(0, 0));
        out.extend([w.re, w.im, code]);
    }
    Ok(out)
}

/// Images of `[x, y, …]` under `Φ_S` as `[u, v, status, …]`; status is 0 for
/// the upper half plane, 1 for the lower, 2 for the real axis, 3 for a pole.
#[wasm_bindgen]
pub fn act(entries: &[f64], points: &[f64]) -> Result<Vec<f64>, JsValue> {
    act_on_points(entries, points).map_err(js_err)
}

fn distances(x1: f64, y1: f64, x2: f64, y2: f64, k: usize) -> Result<Vec<f64>, Error> {
    let tol = Tolerance::default();
    let (a, b) = (point(x1, y1)?, point(x2, y2)?);
    let d = siegel_distance(&a, &b, &tol)?.value;
    let length = path_finsler_length(&PathSample::straight(&a, &b, k.max(1), &tol)?, &tol)?;
    Ok(vec![d, length])
}

/// `[closed-form distance, length of the straight segment at k steps]`.
#[wasm_bindgen]
pub fn distance(x1: f64, y1: f64, x2: f64, y2: f64, k: usize) -> Result<Vec<f64>, JsValue> {
    distances(x1, y1, x2, y2, k).map_err(js_err)
}

/// A seeded random element of Sp(2, ℝ) in the boundary layout.
#[wasm_bindgen]
pub fn random_real(seed: u64) -> Vec<f64> {
    let s = random_real_symplectic(1, seed);
    s.matrix().row_major().iter().flat_map(|z| [z.re, z.im]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const IMAGINARY_COUPLING: [f64; 8] = [1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0];

    #[test]
    fn classifies_imaginary_coupling() {
        let c = classify_entries(&IMAGINARY_COUPLING).unwrap();
        assert_eq!(c.verdict, "undetermined");
        assert!(c.symplectic);
        assert!((c.min_eigenvalue + 1.0 + 5f64.sqrt()).abs() < 1e-12);
        assert!(classify_entries(&[1.0; 3]).is_err());
    }

    #[test]
    fn acts_on_points() {
        let out = act_on_points(&IMAGINARY_COUPLING, &[0.0, 1.0, 0.0, 2.0]).unwrap();
        assert!((out[0]).abs() < 1e-12 && (out[1] + 2.0).abs() < 1e-12);
        assert_eq!(out[2], IN_LOWER);
        assert_eq!(out.len(), 6);
        let real = random_real(3);
        let out = act_on_points(&real, &[0.3, 0.7]).unwrap();
        assert_eq!(out[2], IN_UPPER);
        // the pole of [[1, 0], [i, 1]] is at z = i
        let out = act_on_points(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(out[2], SINGULAR);
    }

    #[test]
    fn distance_matches_log() {
        let d = distances(0.0, 1.0, 0.0, 2.0, 256).unwrap();
        assert!((d[0] - 2f64.ln()).abs() < 1e-12);
        assert!((d[1] - d[0]).abs() < 1e-3);
        assert!(distances(0.0, -1.0, 0.0, 2.0, 8).is_err());
    }
}
