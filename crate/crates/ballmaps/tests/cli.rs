use std::path::{Path, PathBuf};
use std::process::Command;

use ballmaps::cli::run;
use ballmaps::io::{form_to_file, map_to_file, pencil_to_file, to_json};
use ballmaps::report::{CatalogJson, QuadrupleJson};
use ballmaps_core::catalog::{whitney_map, whitney_plane_pencil};
use ballmaps_core::num::{cr, q, qi};
use ballmaps_core::{HermForm, MultiIndex, Poly, PolyMap, RealForm};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ballmaps(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ballmaps").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

#[test]
fn catalog_list_and_verify() {
    let r = ballmaps(&["catalog", "list"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 28);
    let r = ballmaps(&["catalog", "verify", "whitney-plane-pencil"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("whitney-plane-pencil PASS"));
    let r = ballmaps(&["catalog", "verify", "linear-top-split"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("square [0, 1]^2 with 4 vertices"), "{}", r.out);
}

#[test]
fn unknown_catalog_entry_is_usage_error() {
    let r = ballmaps(&["catalog", "verify", "nope"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("unknown catalog entry nope"));
}

#[test]
fn catalog_json_round_trips() {
    let r = ballmaps(&["--json", "catalog", "verify", "swapped-whitney"]);
    assert_eq!(r.code, 0);
    let parsed: CatalogJson = serde_json::from_str(&r.out).unwrap();
    assert_eq!(parsed.verdict, "PASS");
    let again: CatalogJson = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(again, parsed);
    let text = ballmaps(&["catalog", "verify", "swapped-whitney"]).out;
    for c in &parsed.checks {
        assert!(text.contains(&c.name));
    }
}

#[test]
fn quadruple_verdicts() {
    let cases = [
        (["3", "3", "1", "0"], "VALID_BY_CONSTRUCTION"),
        (["3", "4", "2", "0"], "INVALID_BY_BOUND"),
        (["2", "6", "5", "0"], "VALID_BY_CONSTRUCTION"),
    ];
    for ([n, r, d, k], want) in cases {
        let run = ballmaps(&["--json", "quadruple", "--n", n, "--r", r, "--d", d, "--k", k]);
        assert_eq!(run.code, 0, "{}", run.err);
        let j: QuadrupleJson = serde_json::from_str(&run.out).unwrap();
        assert_eq!(j.verdict, want, "({n}, {r}, {d}, {k})");
        assert_eq!(j.witness.is_some(), want == "VALID_BY_CONSTRUCTION");
        let text = ballmaps(&["quadruple", "--n", n, "--r", r, "--d", d, "--k", k]);
        assert!(text.out.contains(want));
    }
}

#[test]
fn forms_commands_on_whitney_map() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "w.json", &to_json(&map_to_file(&whitney_map(2).unwrap())));
    let r = ballmaps(&["forms", "proper", "--map", s(&map)]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("PROPER") && r.out.contains("rank 3"));
    let r = ballmaps(&["--json", "forms", "rank", "--map", s(&map)]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["rank"], 3);
    let r = ballmaps(&["forms", "gram", "--map", s(&map)]);
    assert_eq!(r.code, 0, "{}", r.out);
    let r = ballmaps(&["forms", "real-form", "--map", s(&map)]);
    assert!(r.out.contains("p = 1 on the hyperplane: true"), "{}", r.out);

    let norm = ballmaps(&["forms", "norm", "--map", s(&map)]);
    let form = write(&dir, "f.json", &norm.out);
    let r = ballmaps(&["forms", "psd", "--form", s(&form)]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("certificate re-checked: true"));
}

#[test]
fn improper_map_is_math_failure() {
    let dir = TempDir::new().unwrap();
    let half = PolyMap::identity(1).scale(&cr(q(1, 2)));
    let map = write(&dir, "h.json", &to_json(&map_to_file(&half)));
    let r = ballmaps(&["forms", "proper", "--map", s(&map)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("NOT PROPER"));
}

#[test]
fn indefinite_form_gives_witness() {
    let dir = TempDir::new().unwrap();
    let mut f = HermForm::zero(1);
    f.add_entry(mi(&[1]), mi(&[1]), cr(qi(1)));
    f.add_entry(mi(&[1]), mi(&[2]), cr(qi(2)));
    f.add_entry(mi(&[2]), mi(&[2]), cr(qi(1)));
    let form = write(&dir, "f.json", &to_json(&form_to_file(&f)));
    let r = ballmaps(&["forms", "psd", "--form", s(&form)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("NOT_PSD") && r.out.contains("witness"), "{}", r.out);
}

#[test]
fn malformed_inputs_report_location() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n\": 1,\n \"N\": 1,\n \"terms\": [}");
    let r = ballmaps(&["forms", "proper", "--map", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("bad.json: line 3"), "{}", r.err);

    let text = r#"{"n": 1, "N": 1, "terms": [{"alpha": [1], "component": 0, "re": "1/0", "im": "0"}]}"#;
    let bad = write(&dir, "zero.json", text);
    let r = ballmaps(&["forms", "proper", "--map", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("terms[0].re"), "{}", r.err);

    let text = r#"{"n": 2, "N": 1, "terms": [{"alpha": [1], "component": 0, "re": "1", "im": "0"}]}"#;
    let bad = write(&dir, "len.json", text);
    let r = ballmaps(&["forms", "proper", "--map", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("terms[0].alpha"), "{}", r.err);

    let r = ballmaps(&["forms", "proper", "--map", "/nonexistent/x.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ballmaps(&["frobnicate"]).code, 2);
    assert_eq!(ballmaps(&["quadruple", "--n", "2"]).code, 2);
    assert_eq!(ballmaps(&["bounds", "eval", "--formula", "nope", "--n", "2", "--N", "3"]).code, 2);
    assert_eq!(ballmaps(&["bounds", "eval", "--formula", "monomial-n2", "--n", "3", "--N", "3"]).code, 2);
    assert_eq!(ballmaps(&["--help"]).code, 0);
}

#[test]
fn bounds_commands() {
    let r = ballmaps(&["--json", "bounds", "eval", "--formula", "rational-general", "--n", "2", "--N", "4"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["value"], "6/1");
    let r = ballmaps(&["bounds", "vmap", "--n", "4"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("degree 5"));

    let dir = TempDir::new().unwrap();
    let map = write(&dir, "w.json", &to_json(&map_to_file(&whitney_map(3).unwrap())));
    let r = ballmaps(&["bounds", "pullback", "--map", s(&map), "--n", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("deg g∘U∘V = 6 (expected 6)"), "{}", r.out);
}

#[test]
fn family_commands() {
    let dir = TempDir::new().unwrap();
    let p = whitney_plane_pencil().unwrap();
    let pencil = write(&dir, "p.json", &to_json(&pencil_to_file(&p)));
    let r = ballmaps(&["--json", "families", "feasible", "--pencil", s(&pencil)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["kind"], "INTERVAL");
    let r = ballmaps(&["families", "rank", "--pencil", s(&pencil)]);
    assert!(r.out.starts_with("rank 4"), "{}", r.out);
    let r = ballmaps(&["families", "gap", "--pencil", s(&pencil)]);
    assert_eq!(r.code, 0);
    let r = ballmaps(&["families", "member", "--pencil", s(&pencil), "--lambda", "1/2"]);
    assert_eq!(r.code, 0);
    let r = ballmaps(&["families", "member", "--pencil", s(&pencil), "--lambda", "5"]);
    assert_eq!(r.code, 1);

    let gens: Vec<PathBuf> = p
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| write(&dir, &format!("g{i}.json"), &to_json(&form_to_file(g))))
        .collect();
    let r = ballmaps(&["families", "make", "--form", s(&gens[0]), s(&gens[1])]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.trim(), to_json(&pencil_to_file(&p)));
}

#[test]
fn zeros_commands() {
    let dir = TempDir::new().unwrap();
    let mut qp = Poly::one(2);
    qp.add_term(mi(&[1, 0]), cr(q(-1, 2)));
    let qf = write(&dir, "q.json", &to_json(&map_to_file(&PolyMap::from_components(2, vec![qp]))));
    let r = ballmaps(&["--json", "zeros", "soq", "--q", s(&qf), "--d", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["status"], "EXACT");
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    let r = ballmaps(&["zeros", "check", "--q", s(&qf), "--d", "2", "--point", r#"["1/2", "0"]"#]);
    assert_eq!(r.code, 0);
    let r = ballmaps(&["zeros", "check", "--q", s(&qf), "--d", "2", "--point", r#"["1/3", "0"]"#]);
    assert_eq!(r.code, 1);

    let map = write(&dir, "w.json", &to_json(&map_to_file(&whitney_map(2).unwrap())));
    let r = ballmaps(&["zeros", "homogenize", "--map", s(&map), "--points", r#"[["1/2", "0"]]"#]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("zero set: {0}"));

    let r = ballmaps(&["zeros", "prop2", "--points", r#"[["1/2"], [{"re": "-1/5", "im": "3/10"}]]"#]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    let r = ballmaps(&["zeros", "prop2", "--points", r#"[["1", "0"]]"#]);
    assert_eq!(r.code, 2);
}

#[test]
fn jets_commands() {
    let r = ballmaps(&["jets", "demo-spectrahedron", "--x", "1/2", "--y", "1/2", "--zeta", "1/2,0"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = ballmaps(&["jets", "demo-spectrahedron", "--x", "1", "--y", "1", "--zeta", "1/10,0"]);
    assert_eq!(r.code, 1);
    let r = ballmaps(&["--json", "jets", "universal", "--n", "2", "--d", "2"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["solution_dim"], 4);

    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &to_json(&form_to_file(&HermForm::zero(2))));
    let r = ballmaps(&["jets", "complete", "--n", "2", "--d", "2", "--A", s(&a)]);
    assert_eq!(r.code, 0, "{}", r.err);

    let rf = RealForm::from_terms(2, [(mi(&[2, 0]), qi(1)), (mi(&[1, 1]), qi(-1)), (mi(&[0, 2]), qi(1))]);
    let form = write(&dir, "r.json", &to_json(&form_to_file(&HermForm::from_real_form(&rf))));
    let r = ballmaps(&["--json", "jets", "stabilize", "--form", s(&form), "--mode", "pd"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["m"], 3);

    let bad = RealForm::from_terms(2, [(mi(&[1, 0]), qi(1)), (mi(&[0, 1]), qi(-1))]);
    let form = write(&dir, "bad.json", &to_json(&form_to_file(&HermForm::from_real_form(&bad))));
    let r = ballmaps(&["jets", "stabilize", "--form", s(&form), "--cap", "8"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("warning") && r.out.contains("not stabilized"), "{}", r.out);

    let g = PolyMap::identity(1).scale(&cr(q(1, 2)));
    let map = write(&dir, "g.json", &to_json(&map_to_file(&g)));
    let r = ballmaps(&["jets", "extend", "--map", s(&map), "--d", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ballmaps");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["catalog", "verify", "group-invariant-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS"));
    assert_eq!(status(&["catalog", "verify", "missing"]).status.code(), Some(2));
    assert_eq!(status(&["jets", "demo-spectrahedron", "--x", "2", "--y", "0", "--zeta", "0"]).status.code(), Some(1));
}
