//! Seeded property suites, one per claim, with machine-readable reports.
//!
//! Trial `k` of a run draws from a ChaCha stream keyed by `(seed, k)`, so
//! trials are independent of each other and of scheduling; results are merged
//! in trial order. Equal seeds and flags give byte-identical reports apart from
//! `wall_time`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::document::{DocumentKind, MatrixDocument};
use crate::error::{Error, Result};
use crate::matrix::{is_psd, ComplexMatrix, Tolerance};
use crate::metric::{
    compression_check, contraction_check, isometry_check, path_finsler_length, siegel_distance, PathSample,
};
use crate::sampling::{
    gaussian_complex, random_complex_symplectic, random_psd_classifier_symplectic, random_pure_imaginary_symplectic,
    random_real_antisymplectic, random_self_adjoint_blocks, random_siegel_point, random_unit_vector, translation,
};
use crate::siegel::{compose_check, mobius_apply, ActionStatus, SiegelPoint};
use crate::symplectic::{
    antisymplectic_defect, block_psd_criterion, blockwise_defect, classifier_block_conditions, classifier_matrix,
    classify_action, is_antisymplectic, is_symplectic, is_symplectic_blockwise, random_real_symplectic_with,
    symplectic_defect, BlockSymplectic, SelfAdjointBlocks, Verdict,
};

/// A failed trial (or a preserved probe candidate) with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub inputs: BTreeMap<String, MatrixDocument>,
    pub observed: String,
    pub expected: String,
    pub defect: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub dimensions: Vec<usize>,
    pub failures: Vec<FailureRecord>,
    pub max_defect: f64,
    /// Outcome counts, for suites that tally rather than assert.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tallies: BTreeMap<String, u64>,
    /// Inputs worth keeping that are not failures.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<FailureRecord>,
    pub wall_time: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports hold only finite floats")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub n: Option<usize>,
    pub tol: Tolerance,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            trials: None,
            n: None,
            tol: Tolerance::default(),
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }
}

type Inputs = Vec<(&'static str, MatrixDocument)>;

#[derive(Debug, Default)]
struct Trial {
    defect: f64,
    failure: Option<(String, String, Option<f64>)>,
    candidate: Option<(String, String)>,
    tallies: Vec<&'static str>,
    inputs: Inputs,
}

impl Trial {
    fn new(inputs: Inputs) -> Self {
        Self {
            inputs,
            ..Default::default()
        }
    }

    fn measure(&mut self, defect: f64) {
        if defect.is_finite() {
            self.defect = self.defect.max(defect);
        }
    }

    /// Records a failure unless `ok`; keeps the first failure only.
    fn require(&mut self, ok: bool, observed: impl FnOnce() -> String, expected: &str, defect: Option<f64>) {
        if !ok && self.failure.is_none() {
            self.failure = Some((observed(), expected.to_string(), defect));
        }
    }

    fn error(mut self, e: Error, expected: &str) -> Self {
        if self.failure.is_none() {
            self.failure = Some((format!("error: {e}"), expected.to_string(), None));
        }
        self
    }
}

fn doc(kind: DocumentKind, m: &ComplexMatrix) -> MatrixDocument {
    MatrixDocument::from_matrix(kind, m).expect("square matrices of the right parity")
}

fn sdoc(s: &BlockSymplectic) -> MatrixDocument {
    doc(DocumentKind::Symplectic, s.matrix())
}

fn zdoc(z: &SiegelPoint) -> MatrixDocument {
    doc(DocumentKind::SiegelPoint, z.z())
}

struct Ctx {
    seed: u64,
    tol: Tolerance,
}

type TrialFn = fn(&mut ChaCha8Rng, usize, usize, &Ctx) -> Trial;

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub default_trials: usize,
    pub default_dimensions: &'static [usize],
    run: TrialFn,
}

/// The fixed registry, one suite per claim.
pub const SUITES: &[Suite] = &[
    Suite {
        name: "check",
        description: "SᵗJS = J agrees with the block conditions; products of antisymplectics are symplectic",
        default_trials: 10_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_check,
    },
    Suite {
        name: "classify-soundness",
        description: "M = i(S*JS − J) ⪰ 0 implies Φ_S maps the upper space into itself",
        default_trials: 1_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_classify_soundness,
    },
    Suite {
        name: "composition",
        description: "Φ_S ∘ Φ_R = Φ_SR",
        default_trials: 1_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_composition,
    },
    Suite {
        name: "real-action",
        description: "real symplectic S maps the upper space into itself",
        default_trials: 10_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_real_action,
    },
    Suite {
        name: "antisymplectic-action",
        description: "real antisymplectic and purely imaginary symplectic S map the upper space into the lower space",
        default_trials: 2_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_antisymplectic_action,
    },
    Suite {
        name: "pure-imaginary-isometry",
        description: "purely imaginary symplectic S is an isometry from (upper, d∞) to (lower, d₋)",
        default_trials: 1_000,
        default_dimensions: &[1, 2, 3],
        run: trial_pure_imaginary_isometry,
    },
    Suite {
        name: "hyperbolic-oracle",
        description: "for n = 1 the closed form equals the hyperbolic distance",
        default_trials: 10_000,
        default_dimensions: &[1],
        run: trial_hyperbolic_oracle,
    },
    Suite {
        name: "metric-axioms",
        description: "d∞ is symmetric, vanishes on the diagonal, obeys the triangle inequality and is invariant under real symplectic maps",
        default_trials: 10_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_metric_axioms,
    },
    Suite {
        name: "path-bound",
        description: "discretized straight-path length is never below the closed-form distance",
        default_trials: 200,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_path_bound,
    },
    Suite {
        name: "contraction",
        description: "conjugated translations strictly shrink d∞",
        default_trials: 10_000,
        default_dimensions: &[1, 2, 3],
        run: trial_contraction,
    },
    Suite {
        name: "compression",
        description: "Z ↦ v*Zv does not increase distance for |v| ≤ 1",
        default_trials: 10_000,
        default_dimensions: &[2, 3, 4],
        run: trial_compression,
    },
    Suite {
        name: "block-psd",
        description: "both pseudo-inverse Schur complement tests agree with the eigenvalue test",
        default_trials: 10_000,
        default_dimensions: &[1, 2, 3, 4],
        run: trial_block_psd,
    },
    Suite {
        name: "converse-probe",
        description: "tallies M ⪰ 0 against observed preservation and the displayed block conditions; asserts nothing beyond soundness",
        default_trials: 2_000,
        default_dimensions: &[1, 2, 3],
        run: trial_converse_probe,
    },
];

pub fn find_suite(name: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = find_suite(name)?;
    let start = Instant::now();
    let trials = config.trials.unwrap_or(suite.default_trials);
    let dimensions: Vec<usize> = match config.n {
        Some(n) if n >= 1 => vec![n],
        Some(n) => return Err(Error::DimensionMismatch { expected: 1, found: n }),
        None => suite.default_dimensions.to_vec(),
    };
    let ctx = Ctx {
        seed: config.seed,
        tol: config.tol,
    };
    let run_one = |k: usize| {
        let mut rng = trial_rng(config.seed, k);
        (suite.run)(&mut rng, dimensions[k % dimensions.len()], k, &ctx)
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<Trial> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(run_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Trial> = (0..trials).map(run_one).collect();

    let mut report = SuiteReport {
        suite: suite.name.to_string(),
        seed: config.seed,
        trials,
        dimensions,
        failures: Vec::new(),
        max_defect: 0.0,
        tallies: BTreeMap::new(),
        candidates: Vec::new(),
        wall_time: 0.0,
    };
    for (k, t) in outcomes.into_iter().enumerate() {
        report.max_defect = report.max_defect.max(t.defect);
        for key in &t.tallies {
            *report.tallies.entry((*key).to_string()).or_default() += 1;
        }
        let inputs: BTreeMap<String, MatrixDocument> = t.inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        if let Some((observed, expected)) = t.candidate {
            report.candidates.push(FailureRecord {
                trial: k,
                inputs: inputs.clone(),
                observed,
                expected,
                defect: None,
            });
        }
        if let Some((observed, expected, defect)) = t.failure {
            report.failures.push(FailureRecord {
                trial: k,
                inputs,
                observed,
                expected,
                defect,
            });
        }
    }
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

fn trial_check(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let pick = rng.random_range(0..6);
    let s = match pick {
        0 => random_real_symplectic_with(n, rng),
        1 => random_complex_symplectic(n, rng),
        2 => random_real_antisymplectic(n, rng),
        3 => {
            // symplectic plus a perturbation well above tolerance
            let s = random_real_symplectic_with(n, rng);
            BlockSymplectic::new(s.matrix() + &gaussian_complex(2 * n, 2 * n, 1e-4, rng)).expect("even size")
        }
        4 => BlockSymplectic::new(gaussian_complex(2 * n, 2 * n, 1.0, rng)).expect("even size"),
        _ => random_pure_imaginary_symplectic(n, rng),
    };
    let mut t = Trial::new(vec![("s", sdoc(&s))]);
    let direct = is_symplectic(&s, tol);
    let blockwise = is_symplectic_blockwise(&s, tol);
    let scale = s.matrix().max_abs().powi(2).max(1.0);
    t.measure((symplectic_defect(&s) - blockwise_defect(&s)).abs() / scale);
    t.require(
        direct == blockwise,
        || format!("SᵗJS = J: {direct}, block conditions: {blockwise}"),
        "agreement",
        None,
    );
    let expected_symplectic = matches!(pick, 0 | 1 | 5);
    t.require(
        direct == expected_symplectic,
        || format!("is_symplectic = {direct}"),
        "sampler class",
        None,
    );

    // antisymplectic · antisymplectic is symplectic, symplectic · antisymplectic is antisymplectic
    let q1 = random_real_antisymplectic(n, rng);
    let q2 = random_real_antisymplectic(n, rng);
    let p = random_real_symplectic_with(n, rng);
    let qq = q1.compose(&q2);
    let pq = p.compose(&q1);
    t.require(
        is_symplectic(&qq, tol),
        || format!("defect {:e}", symplectic_defect(&qq)),
        "Q₁Q₂ symplectic",
        None,
    );
    t.require(
        is_antisymplectic(&pq, tol),
        || format!("defect {:e}", antisymplectic_defect(&pq)),
        "PQ antisymplectic",
        None,
    );
    if t.failure.is_some() {
        t.inputs.extend([("q1", sdoc(&q1)), ("q2", sdoc(&q2)), ("p", sdoc(&p))]);
    }
    t
}

fn trial_classify_soundness(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let s = random_psd_classifier_symplectic(n, tol, rng);
    let z = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("z", zdoc(&z))]);
    match classify_action(&s, tol) {
        Ok(c) => t.require(
            c.verdict == Verdict::PreservesSiegel,
            || format!("{:?}", c.verdict),
            "PreservesSiegel",
            None,
        ),
        Err(e) => return t.error(e, "PreservesSiegel"),
    }
    match mobius_apply(&s, &z, tol) {
        Ok(out) => {
            if let Some(d) = out.symmetry_defect {
                t.measure(d / out.cond_f.max(1.0));
            }
            t.require(
                matches!(out.status, ActionStatus::InUpper(_)),
                || out.status.name().to_string(),
                "InUpper",
                None,
            );
            t
        }
        Err(e) => t.error(e, "InUpper"),
    }
}

fn trial_composition(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let s = random_real_symplectic_with(n, rng);
    let r = random_real_symplectic_with(n, rng);
    let z = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("r", sdoc(&r)), ("z", zdoc(&z))]);
    match compose_check(&s, &r, &z, &ctx.tol) {
        Ok(chk) => {
            let rel = chk.max_defect / chk.scale;
            t.measure(rel);
            t.require(
                chk.within(1e-8),
                || format!("defect {:e} at scale {:e}", chk.max_defect, chk.scale),
                "defect ≤ 1e-8·(1+‖S‖‖R‖‖Z‖)",
                Some(rel),
            );
            t
        }
        Err(e) => t.error(e, "both paths defined"),
    }
}

fn trial_real_action(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let s = random_real_symplectic_with(n, rng);
    let z = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("z", zdoc(&z))]);
    match mobius_apply(&s, &z, &ctx.tol) {
        Ok(out) => {
            let d = out.symmetry_defect.unwrap_or(f64::INFINITY);
            let rel = d / out.cond_f;
            t.measure(rel);
            t.require(
                matches!(out.status, ActionStatus::InUpper(_)),
                || out.status.name().to_string(),
                "InUpper",
                None,
            );
            t.require(
                d <= 1e-8 * out.cond_f,
                || format!("symmetry defect {d:e}, cond(F) {:e}", out.cond_f),
                "defect ≤ 1e-8·cond(F)",
                Some(rel),
            );
            t
        }
        Err(e) => t.error(e, "InUpper"),
    }
}

fn trial_antisymplectic_action(rng: &mut ChaCha8Rng, n: usize, k: usize, ctx: &Ctx) -> Trial {
    let s = if k.is_multiple_of(2) {
        random_real_antisymplectic(n, rng)
    } else {
        random_pure_imaginary_symplectic(n, rng)
    };
    let z = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("z", zdoc(&z))]);
    match mobius_apply(&s, &z, &ctx.tol) {
        Ok(out) => {
            if let Some(d) = out.symmetry_defect {
                t.measure(d / out.cond_f.max(1.0));
            }
            t.require(
                matches!(out.status, ActionStatus::InLower(_)),
                || out.status.name().to_string(),
                "InLower",
                None,
            );
            t
        }
        Err(e) => t.error(e, "InLower"),
    }
}

fn trial_pure_imaginary_isometry(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let s = random_pure_imaginary_symplectic(n, rng);
    let z1 = random_siegel_point(n, rng);
    let z2 = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("z1", zdoc(&z1)), ("z2", zdoc(&z2))]);
    match isometry_check(&s, &z1, &z2, &ctx.tol) {
        Ok(chk) => {
            t.measure(chk.defect);
            t.require(
                chk.defect <= 1e-6,
                || format!("lhs {} rhs {}", chk.lhs, chk.rhs),
                "defect ≤ 1e-6",
                Some(chk.defect),
            );
            t
        }
        Err(e) => t.error(e, "isometry"),
    }
}

/// `arccosh(1 + |z − w|² / (2 Im z Im w))`, written with `ln_1p` to stay accurate near zero.
fn hyperbolic_oracle(z: Complex64, w: Complex64) -> f64 {
    let x = (z - w).norm_sqr() / (2.0 * z.im * w.im);
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

fn trial_hyperbolic_oracle(rng: &mut ChaCha8Rng, _: usize, _: usize, ctx: &Ctx) -> Trial {
    let z1 = random_siegel_point(1, rng);
    let z2 = random_siegel_point(1, rng);
    let mut t = Trial::new(vec![("z1", zdoc(&z1)), ("z2", zdoc(&z2))]);
    match siegel_distance(&z1, &z2, &ctx.tol) {
        Ok(d) => {
            let oracle = hyperbolic_oracle(z1.z().get(0, 0), z2.z().get(0, 0));
            let defect = (d.value - oracle).abs();
            t.measure(defect);
            t.require(
                defect <= 1e-9,
                || format!("closed form {} oracle {}", d.value, oracle),
                "|Δ| ≤ 1e-9",
                Some(defect),
            );
            t
        }
        Err(e) => t.error(e, "distance"),
    }
}

fn trial_metric_axioms(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let (a, b, c) = (
        random_siegel_point(n, rng),
        random_siegel_point(n, rng),
        random_siegel_point(n, rng),
    );
    let s = random_real_symplectic_with(n, rng);
    let mut t = Trial::new(vec![
        ("z1", zdoc(&a)),
        ("z2", zdoc(&b)),
        ("z3", zdoc(&c)),
        ("s", sdoc(&s)),
    ]);
    let result = (|| -> Result<[f64; 6]> {
        let d = |x: &SiegelPoint, y: &SiegelPoint| siegel_distance(x, y, tol).map(|r| r.value);
        let (ab, ba, bc, ac, aa) = (d(&a, &b)?, d(&b, &a)?, d(&b, &c)?, d(&a, &c)?, d(&a, &a)?);
        let image = |z: &SiegelPoint| match mobius_apply(&s, z, tol)?.status {
            ActionStatus::InUpper(p) => Ok(p),
            other => Err(Error::LeftSpace(other.name().to_string())),
        };
        let moved = d(&image(&a)?, &image(&b)?)?;
        Ok([ab, ba, bc, ac, aa, moved])
    })();
    match result {
        Ok([ab, ba, bc, ac, aa, moved]) => {
            let symmetry = (ab - ba).abs();
            let triangle = (ac - ab - bc).max(0.0);
            let invariance = (moved - ab).abs();
            t.measure(symmetry.max(triangle).max(aa));
            t.require(
                ab >= 0.0 && bc >= 0.0 && ac >= 0.0,
                || format!("{ab} {bc} {ac}"),
                "non-negative",
                None,
            );
            t.require(
                symmetry <= 1e-9,
                || format!("d(a,b) {ab}, d(b,a) {ba}"),
                "symmetry ≤ 1e-9",
                Some(symmetry),
            );
            t.require(aa <= 1e-9, || format!("d(a,a) {aa}"), "d(Z,Z) ≤ 1e-9", Some(aa));
            t.require(
                triangle <= 1e-8,
                || format!("d(a,c) {ac} > d(a,b) {ab} + d(b,c) {bc}"),
                "triangle ≤ 1e-8",
                Some(triangle),
            );
            t.require(
                invariance <= 1e-7,
                || format!("d(Sa,Sb) {moved}, d(a,b) {ab}"),
                "real symplectic invariance ≤ 1e-7",
                Some(invariance),
            );
            t
        }
        Err(e) => t.error(e, "metric axioms"),
    }
}

pub const PATH_SEGMENTS: usize = 512;
pub const PATH_SLACK: f64 = 1e-3;

fn trial_path_bound(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let z1 = random_siegel_point(n, rng);
    let z2 = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("z1", zdoc(&z1)), ("z2", zdoc(&z2))]);
    let result = (|| -> Result<(f64, f64)> {
        let path = PathSample::straight(&z1, &z2, PATH_SEGMENTS, tol)?;
        Ok((path_finsler_length(&path, tol)?, siegel_distance(&z1, &z2, tol)?.value))
    })();
    match result {
        Ok((length, distance)) => {
            let undercut = (distance - length).max(0.0);
            t.measure(undercut);
            t.require(
                length >= distance - PATH_SLACK,
                || format!("length {length}, distance {distance}"),
                "length ≥ distance − 1e-3",
                Some(undercut),
            );
            t
        }
        Err(e) => t.error(e, "path length"),
    }
}

pub const CONTRACTION_PARAMETERS: usize = 10;

/// Translation parameter `k` of a contraction run; odd parameters are
/// conjugated by a real symplectic matrix.
pub fn contraction_parameter(seed: u64, k: usize, n: usize) -> BlockSymplectic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    rng.set_stream((k * 16 + n) as u64);
    let z = random_siegel_point(n, &mut rng);
    let t = translation(&z);
    if k % 2 == 1 {
        let p = random_real_symplectic_with(n, &mut rng);
        p.compose(&t)
            .compose(&p.inverse().expect("symplectic matrices are invertible"))
    } else {
        t
    }
}

fn trial_contraction(rng: &mut ChaCha8Rng, n: usize, k: usize, ctx: &Ctx) -> Trial {
    let s = contraction_parameter(ctx.seed, (k / 3) % CONTRACTION_PARAMETERS, n);
    let z1 = random_siegel_point(n, rng);
    let z2 = random_siegel_point(n, rng);
    let mut t = Trial::new(vec![("s", sdoc(&s)), ("z1", zdoc(&z1)), ("z2", zdoc(&z2))]);
    match contraction_check(&s, &[(z1, z2)], &ctx.tol) {
        Ok(report) => {
            if let Some(ratio) = report.max_ratio {
                t.measure(ratio);
                t.require(ratio < 1.0, || format!("ratio {ratio}"), "ratio < 1", Some(ratio));
            }
            t
        }
        Err(e) => t.error(e, "contraction"),
    }
}

fn trial_compression(rng: &mut ChaCha8Rng, n: usize, k: usize, ctx: &Ctx) -> Trial {
    let z1 = random_siegel_point(n, rng);
    let z2 = random_siegel_point(n, rng);
    let mut v = random_unit_vector(n, k % 2 == 1, rng);
    if k % 4 == 3 {
        // interior of the ball
        let r: f64 = rng.random_range(0.05..1.0);
        v.iter_mut().for_each(|x| *x *= r);
    }
    let vdoc = {
        let vm = ComplexMatrix::diagonal(&v);
        doc(DocumentKind::Matrix, &vm)
    };
    let mut t = Trial::new(vec![("z1", zdoc(&z1)), ("z2", zdoc(&z2)), ("v_diagonal", vdoc)]);
    match compression_check(&v, &z1, &z2, &ctx.tol) {
        Ok(chk) => {
            let excess = (chk.lhs - chk.rhs).max(0.0);
            t.measure(excess);
            t.require(
                chk.holds,
                || format!("lhs {} rhs {}", chk.lhs, chk.rhs),
                "lhs ≤ rhs + 1e-9",
                Some(excess),
            );
            t
        }
        Err(e) => t.error(e, "compression"),
    }
}

fn trial_block_psd(rng: &mut ChaCha8Rng, n: usize, _: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let (alpha, beta, gamma) = random_self_adjoint_blocks(n, rng);
    let m = ComplexMatrix::from_blocks(&alpha, &beta, &beta.adjoint(), &gamma);
    let mut t = Trial::new(vec![("m", doc(DocumentKind::Matrix, &m))]);
    let result = (|| -> Result<(bool, bool, bool)> {
        let blocks = SelfAdjointBlocks::new(alpha, beta, gamma, tol)?;
        let v = block_psd_criterion(&blocks, tol)?;
        let direct = is_psd(&blocks.assemble(), tol)?.holds();
        Ok((v.pivot_alpha, v.pivot_gamma, direct))
    })();
    match result {
        Ok((two, three, direct)) => {
            t.tallies.push(if direct { "psd" } else { "not_psd" });
            t.require(
                two == direct && three == direct,
                || format!("pivot α {two}, pivot γ {three}, eigenvalues {direct}"),
                "all three agree",
                None,
            );
            t
        }
        Err(e) => t.error(e, "block criterion"),
    }
}

pub const PROBE_POINTS: usize = 8;

fn trial_converse_probe(rng: &mut ChaCha8Rng, n: usize, k: usize, ctx: &Ctx) -> Trial {
    let tol = &ctx.tol;
    let s = match k % 3 {
        0 => random_psd_classifier_symplectic(n, tol, rng),
        1 => random_complex_symplectic(n, rng),
        _ => {
            // near-real: a real symplectic times a small complex symplectic factor
            let p = random_real_symplectic_with(n, rng);
            let id = ComplexMatrix::identity(n);
            let o = ComplexMatrix::zeros(n, n);
            let b = crate::sampling::random_complex_symmetric(n, 0.05, rng);
            let shear = BlockSymplectic::from_blocks(&id, &b, &o, &id).expect("square blocks");
            p.compose(&shear)
        }
    };
    let mut points = vec![SiegelPoint::i_identity(n)];
    points.extend((0..PROBE_POINTS - 1).map(|_| random_siegel_point(n, rng)));
    let mut t = Trial::new(vec![("s", sdoc(&s))]);
    let result = (|| -> Result<(bool, bool, Option<usize>)> {
        let scale = s.matrix().max_abs().powi(2).max(1.0);
        let psd = crate::matrix::is_psd_at_scale(&classifier_matrix(&s), tol, scale)?.holds();
        let conditions = classifier_block_conditions(&s, tol)?.all();
        let mut escaped = None;
        for (i, z) in points.iter().enumerate() {
            if !matches!(mobius_apply(&s, z, tol)?.status, ActionStatus::InUpper(_)) {
                escaped = Some(i);
                break;
            }
        }
        Ok((psd, conditions, escaped))
    })();
    match result {
        Ok((psd, conditions, escaped)) => {
            let preserved = escaped.is_none();
            t.tallies.push(match (psd, preserved) {
                (true, true) => "psd_preserved",
                (true, false) => "psd_escaped",
                (false, true) => "not_psd_preserved",
                (false, false) => "not_psd_escaped",
            });
            t.tallies.push(if conditions == psd {
                "conditions_agree"
            } else {
                "conditions_disagree"
            });
            if let Some(i) = escaped {
                t.inputs.push(("escaping_point", zdoc(&points[i])));
            }
            t.require(
                !(psd && !preserved),
                || "M ⪰ 0 but a sampled point left the upper space".to_string(),
                "soundness",
                None,
            );
            if !psd && preserved {
                t.candidate = Some((
                    format!("M not PSD, all {PROBE_POINTS} sampled points stayed in the upper space"),
                    "converse counterexample candidate".to_string(),
                ));
            }
            t
        }
        Err(e) => t.error(e, "probe"),
    }
}

/// `wall_time` zeroed, for determinism comparisons.
pub fn without_timing(mut report: SuiteReport) -> SuiteReport {
    report.wall_time = 0.0;
    report
}
