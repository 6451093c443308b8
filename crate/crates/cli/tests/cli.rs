use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    /// A document from row-major real and imaginary parts.
    fn doc(&self, name: &str, kind: &str, side: usize, re: &[f64], im: &[f64]) -> PathBuf {
        let rows = |v: &[f64]| -> Vec<Vec<f64>> { v.chunks(side).map(|c| c.to_vec()).collect() };
        let n = if kind == "symplectic" { side / 2 } else { side };
        let json = serde_json::json!({ "kind": kind, "n": n, "re": rows(re), "im": rows(im) });
        self.write(name, &json.to_string())
    }
}

fn siegel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siegel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const Z4: [f64; 4] = [0.0; 4];
const Z16: [f64; 16] = [0.0; 16];
const I2: [f64; 4] = [1.0, 0.0, 0.0, 1.0];
const I4: [f64; 16] = [1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.];
const J2: [f64; 4] = [0.0, 1.0, -1.0, 0.0];

/// `[[I, iI], [iI, O]]` for n = 2
fn imaginary_coupling(ws: &Workspace) -> PathBuf {
    let im = [0., 0., 1., 0., 0., 0., 0., 1., 1., 0., 0., 0., 0., 1., 0., 0.];
    let re = [1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.];
    ws.doc("ex1.json", "symplectic", 4, &re, &im)
}

fn i_point(ws: &Workspace, name: &str, y: f64) -> PathBuf {
    ws.doc(name, "siegel_point", 2, &Z4, &[y, 0.0, 0.0, y])
}

#[test]
fn check_verdicts() {
    let ws = Workspace::new();
    let out = siegel(&["check", arg(&ws.doc("j.json", "symplectic", 2, &J2, &Z4))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("symplectic"));

    let out = siegel(&["check", arg(&ws.doc("ii.json", "symplectic", 4, &Z16, &I4))]);
    assert_eq!(stdout(&out).lines().next(), Some("antisymplectic"));

    let out = siegel(&["check", arg(&ws.doc("zero.json", "symplectic", 4, &Z16, &Z16))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("neither"));
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let ws = Workspace::new();
    let out = siegel(&["check", arg(&ws.write("bad.json", "{ not json"))]);
    assert_eq!(out.status.code(), Some(2));
    let out = siegel(&["check", arg(&ws.doc("odd.json", "symplectic", 2, &J2, &[0.0; 3]))]);
    assert_eq!(out.status.code(), Some(2));
    let out = siegel(&["check", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = siegel(&[
        "--tol",
        "-1",
        "check",
        arg(&ws.doc("j.json", "symplectic", 2, &J2, &Z4)),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(siegel(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn classify_verdicts() {
    let ws = Workspace::new();
    let out = siegel(&["classify", arg(&ws.doc("j.json", "symplectic", 2, &J2, &Z4))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("PreservesSiegel"));

    let out = siegel(&["classify", arg(&imaginary_coupling(&ws))]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("Undetermined"));
    assert!(text.contains("upper-left block: -2.000000"), "{text}");
    assert!(text.contains("block condition 1: no"), "{text}");

    // iI is antisymplectic but neither real nor purely imaginary symplectic
    let out = siegel(&["classify", arg(&ws.doc("ii.json", "symplectic", 4, &Z16, &I4))]);
    assert_eq!(stdout(&out).lines().next(), Some("Undetermined"));

    // purely imaginary symplectic: i·I₋
    let reflection_i = [1., 0., 0., 0., 0., 1., 0., 0., 0., 0., -1., 0., 0., 0., 0., -1.];
    let out = siegel(&[
        "classify",
        arg(&ws.doc("imr.json", "symplectic", 4, &Z16, &reflection_i)),
    ]);
    assert_eq!(stdout(&out).lines().next(), Some("MapsToLower"));

    let out = siegel(&["classify", arg(&ws.doc("zero.json", "symplectic", 4, &Z16, &Z16))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn act_examples() {
    let ws = Workspace::new();
    let z = i_point(&ws, "z.json", 1.0);

    let out = siegel(&["act", arg(&imaginary_coupling(&ws)), arg(&z)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("status: InLower"));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["im"], serde_json::json!([[-2.0, 0.0], [0.0, -2.0]]));
    assert_eq!(doc["re"], serde_json::json!([[0.0, 0.0], [0.0, 0.0]]));

    let out = siegel(&["act", arg(&ws.doc("id.json", "symplectic", 4, &I4, &Z16)), arg(&z)]);
    assert!(stderr(&out).contains("status: InUpper"));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["im"], serde_json::json!([[1.0, 0.0], [0.0, 1.0]]));

    // S_{Z₀} for Z₀ = X + iI with X = [[1, 2], [2, 0]]
    let witness = [1., 0., 1., 2., 0., 1., 2., 0., 0., 0., 1., 0., 0., 0., 0., 1.];
    let out = siegel(&["act", arg(&ws.doc("sz.json", "symplectic", 4, &witness, &Z16)), arg(&z)]);
    assert!(stderr(&out).contains("status: InUpper"));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["re"], serde_json::json!([[1.0, 2.0], [2.0, 0.0]]));
    assert_eq!(doc["im"], serde_json::json!([[1.0, 0.0], [0.0, 1.0]]));
}

#[test]
fn act_singular_denominator_exits_three() {
    let ws = Workspace::new();
    // [[I, O], [iI, I]] sends F = CZ + D to zero at Z = iI
    let im = [0., 0., 0., 0., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0.];
    let s = ws.doc("shear.json", "symplectic", 4, &I4, &im);
    let out = siegel(&["act", arg(&s), arg(&i_point(&ws, "z.json", 1.0))]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("SingularDenominator"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn act_output_round_trips_bit_exactly() {
    let ws = Workspace::new();
    let re = [
        0.1,
        0.0,
        1.0 / 3.0,
        0.0,
        0.0,
        7.0,
        0.0,
        -0.2,
        0.0,
        0.0,
        10.0,
        0.0,
        0.0,
        0.0,
        0.0,
        1.0 / 7.0,
    ];
    let s = ws.doc("dil.json", "symplectic", 4, &re, &Z16);
    let out = siegel(&["act", arg(&s), arg(&i_point(&ws, "z.json", std::f64::consts::PI))]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let first = stdout(&out);
    let path = ws.write("w.json", &first);
    let id = ws.doc("id.json", "symplectic", 4, &I4, &Z16);
    let again = siegel(&["act", arg(&id), arg(&path)]);
    assert_eq!(stdout(&again), first);
}

#[test]
fn dist_examples() {
    let ws = Workspace::new();
    let (a, b) = (i_point(&ws, "a.json", 1.0), i_point(&ws, "b.json", 2.0));
    let out = siegel(&["dist", arg(&a), arg(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text.trim().strip_prefix("distance: ").unwrap().parse().unwrap();
    assert!((value - 2f64.ln()).abs() < 1e-12);

    let out = siegel(&["dist", arg(&a), arg(&a)]);
    assert_eq!(stdout(&out).trim(), "distance: 0.000000000000");

    let out = siegel(&["dist", "--path", "512", arg(&a), arg(&b)]);
    assert!(stdout(&out).contains("path length (k = 512)"));

    let (la, lb) = (
        ws.doc("la.json", "matrix", 2, &I2, &[-1.0, 0.0, 0.0, -1.0]),
        ws.doc("lb.json", "matrix", 2, &I2, &[-2.0, 0.0, 0.0, -2.0]),
    );
    let (ua, ub) = (
        ws.doc("ua.json", "siegel_point", 2, &I2, &[1.0, 0.0, 0.0, 1.0]),
        ws.doc("ub.json", "siegel_point", 2, &I2, &[2.0, 0.0, 0.0, 2.0]),
    );
    let lower = stdout(&siegel(&["dist", "--lower", arg(&la), arg(&lb)]));
    let upper = stdout(&siegel(&["dist", arg(&ua), arg(&ub)]));
    assert_eq!(lower, upper);

    // an upper point is not in the lower space
    assert_eq!(siegel(&["dist", "--lower", arg(&a), arg(&b)]).status.code(), Some(2));
}

fn report(args: &[&str]) -> (Output, serde_json::Value) {
    let mut full = vec!["propcheck"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--json", "-"]);
    let out = siegel(&full);
    let value = serde_json::from_str(&stdout(&out)).unwrap();
    (out, value)
}

#[test]
fn propcheck_examples() {
    let (out, r) = report(&["composition", "--seed", "42", "--trials", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);

    let (out, r) = report(&["hyperbolic-oracle", "--trials", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(r["max_defect"].as_f64().unwrap() <= 1e-9);

    let (out, r) = report(&["compression", "--trials", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);

    assert_eq!(siegel(&["propcheck", "no-such-suite"]).status.code(), Some(2));
    assert!(stdout(&siegel(&["propcheck", "list"])).contains("converse-probe"));
}

#[test]
fn propcheck_reports_are_deterministic() {
    let strip = |mut v: serde_json::Value| {
        v["wall_time"] = serde_json::json!(0);
        v.to_string()
    };
    let (_, a) = report(&["converse-probe", "--seed", "7", "--trials", "150", "--n", "2"]);
    let (_, b) = report(&["converse-probe", "--seed", "7", "--trials", "150", "--n", "2"]);
    assert_eq!(strip(a.clone()), strip(b));
    assert_eq!(a["dimensions"], serde_json::json!([2]));
    let (_, c) = report(&["converse-probe", "--seed", "8", "--trials", "150", "--n", "2"]);
    assert_ne!(strip(a), strip(c));
}

#[test]
fn propcheck_writes_report_file() {
    let ws = Workspace::new();
    let path = ws.dir.path().join("report.json");
    let out = siegel(&["propcheck", "check", "--trials", "50", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["suite"], "check");
    assert_eq!(r["trials"], 50);
}
