use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schubert-a2"));
    c.env_remove("SCHUBERT_A2_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn one_line_error(o: &Output) {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "));
}

#[test]
fn order_identity_below() {
    let o = run(&["order", "", "012"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "true true\n");
    let v = json(&["order", "", "012"]);
    assert_eq!(v["agree"], true);
    assert_eq!(v["x"], "");
}

#[test]
fn order_incomparable() {
    assert_eq!(stdout(&run(&["order", "2", "01"])), "false false\n");
    assert_eq!(stdout(&run(&["order", "e", "0"])), "true true\n");
}

#[test]
fn parse_errors_exit_2() {
    for args in [&["order", "3", "012"][..], &["hexagon", "01a"], &["q", "0121", "x"]] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        one_line_error(&o);
    }
    assert_eq!(code(&run(&["render", "01", "--out", "/dev/null", "--layers", "nope"])), 2);
}

#[test]
fn preconditions_exit_3() {
    for args in [&["hexagon", "0120"][..], &["q", "01", "2"], &["mult", "01", "2"], &["hexagon", ""]] {
        let o = run(args);
        assert_eq!(code(&o), 3, "{args:?}");
        one_line_error(&o);
    }
}

#[test]
fn hexagon_json() {
    let v = json(&["hexagon", "0121021"]);
    assert_eq!(v["owner"], "0210201");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["vertices"][0], v["owner"]);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 3);
}

#[test]
fn q_table_and_single() {
    let v = json(&["q", "01020102010"]);
    assert_eq!(v["agree"], true);
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["x"].is_string() && e["q"].is_u64() && e["tag"].is_string()));
    let max = entries.iter().map(|e| e["q"].as_u64().unwrap()).max().unwrap();
    assert_eq!(max, 4);
    let s = json(&["q", "01020102010", ""]);
    assert_eq!(s["fast"], 4);
    assert_eq!(s["oracle"], 4);
    let spiral = json(&["q", "0120", ""]);
    assert!(spiral["fast"].is_null());
    assert_eq!(spiral["agree"], true);
}

#[test]
fn locus_slices() {
    let n = json(&["nrs", "0121021"]);
    assert_eq!(n["agree"], true);
    assert_eq!(n["nrs_codim"], 3);
    assert_eq!(n["maximal_nrs"], n["maximal_nrs_scan"]);
    let s = json(&["smooth", "0121021"]);
    assert_eq!(s["kumar_agree"], true);
    assert_eq!(s["smooth"].as_array().unwrap().len(), 28);
    let c = json(&["classify", "0102"]);
    assert_eq!(c["classification"], "smooth");
    assert!(c["singular_codim"].is_null());
    assert_eq!(json(&["classify", "0120"])["classification"], "singular");
}

#[test]
fn multiplicity_of_a_simple_reflection() {
    let o = run(&["mult", "0", ""]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("multiplicity -1/(b0)\n"), "{text}");
    let v = json(&["mult", "0121021", "01"]);
    assert_eq!(v["kumar_smooth"], false);
    assert_eq!(v["agree"], true);
    assert!(v["multiplicity"]["display"].is_string());
}

#[test]
fn verify_lookup_passes() {
    let o = run(&["verify", "--max-length", "8", "--suite", "lookup", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("criterion 5 PASS"));
}

#[test]
fn verify_output_ignores_worker_count() {
    let a = json(&["verify", "--max-length", "7", "--suite", "q", "--jobs", "1"]);
    let b = json(&["verify", "--max-length", "7", "--suite", "q", "--jobs", "3"]);
    assert_eq!(a, b);
    assert_eq!(a["passed"], true);
    assert_eq!(a["results"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_exit_code_tracks_result() {
    let o = run(&["--json", "verify", "--max-length", "6", "--suite", "loci"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let passed = v["passed"].as_bool().unwrap();
    assert_eq!(code(&o), if passed { 0 } else { 4 });
}

#[test]
fn enumerate_smooth_totals_31() {
    let o = run(&["enumerate-smooth"]);
    assert!(stdout(&o).ends_with("total 31\n"));
    let v = json(&["enumerate-smooth"]);
    assert_eq!(v["total"], 31);
    assert_eq!(v["rows"][0]["members"][0], "e");
}

fn render(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let out = dir.join(name);
    let mut full = vec!["render"];
    full.extend_from_slice(args);
    full.extend(["--out", out.to_str().unwrap()]);
    let o = run(&full);
    let svg = std::fs::read_to_string(&out).unwrap_or_default();
    (o, svg)
}

#[test]
fn render_is_deterministic_xml() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["0121021", "--layers", "lattice,chambers,hexagon,shells,special,diagonals,q-heatmap,loci", "--labels", "q"];
    let (o1, a) = render(dir.path(), "a.svg", &args);
    let (_, b) = render(dir.path(), "b.svg", &args);
    assert_eq!(code(&o1), 0);
    assert_eq!(a, b);
    let doc = roxmltree::Document::parse(&a).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    assert!(!a.contains("href"));
    assert!(doc.descendants().any(|n| n.tag_name().name() == "text"));
}

#[test]
fn render_type_one_smooth_locus() {
    let dir = tempfile::tempdir().unwrap();
    let (o, svg) = render(dir.path(), "l.svg", &["01020102010", "--layers", "loci"]);
    assert_eq!(code(&o), 0);
    // 36 smooth alcoves in the default grey.
    assert_eq!(svg.matches(r##"fill="#a0a0a0""##).count(), 36);
}

#[test]
fn render_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = render(dir.path(), "e.svg", &["0121021", "--viewport", "3,3,1,4"]);
    assert_eq!(code(&o), 3);
    let (o, _) = render(dir.path(), "e.svg", &["0121021", "--viewport", "0.01,0.01,0.02,0.02"]);
    assert_eq!(code(&o), 3);
    let (o, _) = render(dir.path(), "s.svg", &["0120", "--layers", "shells"]);
    assert_eq!(code(&o), 3);
    let (o, svg) = render(dir.path(), "s.svg", &["0120", "--layers", "lattice,hexagon,loci", "--labels", "words"]);
    assert_eq!(code(&o), 0);
    assert!(svg.contains(">0120</text>"));
}

#[test]
fn render_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("colors.toml");
    std::fs::write(&cfg, "[colors]\nhull = \"#123456\"\n").unwrap();
    let out = dir.path().join("c.svg");
    let o = bin()
        .env("SCHUBERT_A2_CONFIG", &cfg)
        .args(["render", "0121021", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("#123456"));

    std::fs::write(&cfg, "[colors]\nhull = \"blue\"\n").unwrap();
    let o = bin().env("SCHUBERT_A2_CONFIG", &cfg).args(["render", "01", "--out", out.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 2);
    std::fs::write(&cfg, "[colours]\n").unwrap();
    let o = bin().env("SCHUBERT_A2_CONFIG", &cfg).args(["render", "01", "--out", out.to_str().unwrap()]).output().unwrap();
    assert_eq!(code(&o), 2);
}
