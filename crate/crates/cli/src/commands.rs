use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use siegel_core::document::{DocumentKind, MatrixDocument};
use siegel_core::metric::{lower_distance, path_finsler_length, siegel_distance, PathSample};
use siegel_core::siegel::{make_lower_siegel, make_siegel, mobius_apply_matrix, ActionStatus};
use siegel_core::suites::{run_suite, SuiteConfig, SUITES};
use siegel_core::symplectic::{
    antisymplectic_defect, classifier_block_conditions, classify_action, is_antisymplectic, is_symplectic,
    symplectic_defect, BlockSymplectic,
};
use siegel_core::{ComplexMatrix, Error, Tolerance};

pub const EXIT_PROPERTY_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SINGULAR: u8 = 3;

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            message: e.to_string(),
            code: EXIT_USAGE,
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: EXIT_USAGE,
    }
}

pub fn tolerance(value: f64) -> Result<Tolerance, Failure> {
    Ok(Tolerance::uniform(value)?)
}

fn read_document(path: &Path) -> Result<MatrixDocument, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    MatrixDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_symplectic(path: &Path) -> Result<BlockSymplectic, Failure> {
    let doc = read_document(path)?;
    if doc.kind != DocumentKind::Symplectic {
        return Err(usage(format!("{}: expected a symplectic document", path.display())));
    }
    Ok(BlockSymplectic::new(doc.to_matrix()?)?)
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    Ok(read_document(path)?.to_matrix()?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(input: &Path, tol: &Tolerance) -> CmdResult {
    let s = read_symplectic(input)?;
    let symplectic = is_symplectic(&s, tol);
    let antisymplectic = is_antisymplectic(&s, tol);
    let verdict = match (symplectic, antisymplectic) {
        (true, _) => "symplectic",
        (false, true) => "antisymplectic",
        (false, false) => "neither",
    };
    let (a, b, c, d) = (s.a(), s.b(), s.c(), s.d());
    let atc = &a.transpose() * &c;
    let btd = &b.transpose() * &d;
    let cross = &(&a.transpose() * &d) - &(&c.transpose() * &b);
    let id = ComplexMatrix::identity(s.n());
    let mut out = String::new();
    writeln!(out, "{verdict}").unwrap();
    writeln!(out, "n = {}", s.n()).unwrap();
    writeln!(out, "‖SᵗJS − J‖ = {:.3e}", symplectic_defect(&s)).unwrap();
    writeln!(out, "‖SᵗJS + J‖ = {:.3e}", antisymplectic_defect(&s)).unwrap();
    writeln!(out, "AᵗC symmetric:      defect {:.3e}", atc.symmetry_defect().0).unwrap();
    writeln!(out, "BᵗD symmetric:      defect {:.3e}", btd.symmetry_defect().0).unwrap();
    writeln!(out, "AᵗD − CᵗB = I:      defect {:.3e}", cross.max_abs_diff(&id)).unwrap();
    writeln!(out, "AᵗD − CᵗB = −I:     defect {:.3e}", (&cross + &id).max_abs()).unwrap();
    Ok(Output {
        stdout: out,
        ..Default::default()
    })
}

pub fn classify(input: &Path, tol: &Tolerance) -> CmdResult {
    let s = read_symplectic(input)?;
    let c = classify_action(&s, tol)?;
    if !c.notes.is_symplectic && !c.notes.is_antisymplectic {
        return Err(Error::NotInEitherGroup.into());
    }
    let conditions = classifier_block_conditions(&s, tol)?;
    let group = if c.notes.is_symplectic {
        "symplectic"
    } else {
        "antisymplectic"
    };
    let mut out = String::new();
    writeln!(out, "{:?}", c.verdict).unwrap();
    writeln!(
        out,
        "group: {group}; real: {}; purely imaginary: {}",
        yes_no(c.notes.is_real),
        yes_no(c.notes.is_purely_imaginary)
    )
    .unwrap();
    writeln!(out, "min eigenvalue of M = i(S*JS − J): {:.6}", c.min_eigenvalue).unwrap();
    let alpha = c.m_matrix.block(0, 0, s.n(), s.n());
    let alpha_min = siegel_core::matrix::hermitian_eigen(&alpha, tol)?.min();
    writeln!(out, "min eigenvalue of its upper-left block: {alpha_min:.6}").unwrap();
    writeln!(out, "block condition 1: {}", yes_no(conditions.first)).unwrap();
    writeln!(out, "block condition 2: {}", yes_no(conditions.second)).unwrap();
    writeln!(out, "block condition 3: {}", yes_no(conditions.third)).unwrap();
    Ok(Output {
        stdout: out,
        ..Default::default()
    })
}

pub fn act(s_path: &Path, z_path: &Path, tol: &Tolerance) -> CmdResult {
    let s = read_symplectic(s_path)?;
    let z = read_matrix(z_path)?;
    let outcome = mobius_apply_matrix(&s, &z, tol)?;
    let status = outcome.status.name();
    let mut stderr = format!("status: {status}\ncond(F): {:.6e}\n", outcome.cond_f);
    let (value, kind) = match &outcome.status {
        ActionStatus::SingularDenominator { witness } => {
            let w: Vec<String> = witness.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(stderr, "null vector of F: [{}]", w.join(", ")).unwrap();
            return Ok(Output {
                stdout: String::new(),
                stderr,
                code: EXIT_SINGULAR,
            });
        }
        ActionStatus::InUpper(p) => (p.z().clone(), DocumentKind::SiegelPoint),
        ActionStatus::InLower(p) => (p.z().clone(), DocumentKind::Matrix),
        ActionStatus::SymmetricOnly(m) | ActionStatus::Asymmetric(m) => (m.clone(), DocumentKind::Matrix),
    };
    let doc = MatrixDocument::from_matrix(kind, &value)?;
    Ok(Output {
        stdout: doc.to_json() + "\n",
        stderr,
        code: 0,
    })
}

pub fn dist(z1: &Path, z2: &Path, lower: bool, path: Option<usize>, tol: &Tolerance) -> CmdResult {
    let (m1, m2) = (read_matrix(z1)?, read_matrix(z2)?);
    // lower points are measured through their conjugates, which is also where the path lives
    let (a, b, d) = if lower {
        let (p1, p2) = (make_lower_siegel(&m1, tol)?, make_lower_siegel(&m2, tol)?);
        let d = lower_distance(&p1, &p2, tol)?.value;
        (p1.conjugate(), p2.conjugate(), d)
    } else {
        let (a, b) = (make_siegel(&m1, tol)?, make_siegel(&m2, tol)?);
        let d = siegel_distance(&a, &b, tol)?.value;
        (a, b, d)
    };
    let mut out = format!("distance: {d:.12}\n");
    if let Some(k) = path {
        let length = path_finsler_length(&PathSample::straight(&a, &b, k, tol)?, tol)?;
        writeln!(out, "path length (k = {k}): {length:.12}").unwrap();
        writeln!(out, "gap: {:.3e}", length - d).unwrap();
    }
    Ok(Output {
        stdout: out,
        ..Default::default()
    })
}

pub fn propcheck(
    suite: &str,
    seed: u64,
    trials: Option<usize>,
    n: Option<usize>,
    json: Option<&Path>,
    tol: &Tolerance,
) -> CmdResult {
    if suite == "list" {
        let mut out = String::new();
        for s in SUITES {
            writeln!(out, "{:<24} {}", s.name, s.description).unwrap();
        }
        return Ok(Output {
            stdout: out,
            ..Default::default()
        });
    }
    let config = SuiteConfig {
        seed,
        trials,
        n,
        tol: *tol,
    };
    let report = run_suite(suite, &config)?;
    let mut stdout = String::new();
    let mut stderr = format!(
        "{}: {} trials, {} failures, max defect {:.3e}, {:.2}s\n",
        report.suite,
        report.trials,
        report.failures.len(),
        report.max_defect,
        report.wall_time
    );
    for (key, count) in &report.tallies {
        writeln!(stderr, "  {key}: {count}").unwrap();
    }
    if !report.candidates.is_empty() {
        writeln!(stderr, "  candidates: {}", report.candidates.len()).unwrap();
    }
    match json {
        Some(p) if p.as_os_str() == "-" => stdout = report.to_json() + "\n",
        Some(p) => fs::write(p, report.to_json() + "\n").map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => {}
    }
    let code = if report.passed() { 0 } else { EXIT_PROPERTY_FAILURE };
    Ok(Output { stdout, stderr, code })
}
