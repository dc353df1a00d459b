use std::path::{Path, PathBuf};
use std::process::Command;

use harmspec::cli::{run, EXIT_DRIFT, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn harmspec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("harmspec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = harmspec(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn validate(schema: &str, doc: &str) -> Value {
    let path = crate_dir()
        .join("schemas")
        .join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let doc: Value = serde_json::from_str(doc).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    doc
}

#[test]
fn gen_friendship() {
    let out = ok(&["gen", "--family", "friendship", "--n", "3"]);
    let g = harmspec::graph6::decode(out.trim()).unwrap();
    assert_eq!((g.order(), g.edge_count()), (7, 9));
    assert_eq!(
        out,
        ok(&["gen", "--family", "f", "--n", "3", "--format", "graph6"])
    );
}

#[test]
fn energy_petersen() {
    let out = ok(&["energy", "--family", "petersen"]);
    assert!(out.contains("HE = 5.3333333\n"), "{out}");
    assert!(out.contains("exact spectrum = {1, 1/3×5, -2/3×4}"), "{out}");
    let short = ok(&[
        "energy",
        "--family",
        "petersen",
        "--decimals",
        "3",
        "--method",
        "regular-shortcut",
    ]);
    assert!(short.contains("HE = 5.333\n"), "{short}");
}

#[test]
fn census_csv_rows() {
    let out = ok(&[
        "census", "--n", "10", "--degree", "3", "--format", "csv", "--quiet",
    ]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["index", "graph6", "connected", "he", "spectrum"]
    );
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows.iter().filter(|r| &r[2] == "true").count(), 19);
    assert!(rows.iter().all(|r| r[4].split(';').count() == 10));
}

#[test]
fn census_text_reports_reference() {
    let out = ok(&["census", "--n", "10", "--degree", "3", "--quiet"]);
    assert!(out.contains("reference comparison: 21/21"), "{out}");
    assert!(out.contains("energy classes: 18 (15 singletons)"), "{out}");
}

#[test]
fn census_from_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cubic6.g6");
    let list = ok(&[
        "census", "--n", "6", "--degree", "3", "--format", "graph6", "--quiet",
    ]);
    assert_eq!(list.lines().count(), 2);
    std::fs::write(&file, &list).unwrap();
    let again = ok(&[
        "census",
        "--from-file",
        file.to_str().unwrap(),
        "--format",
        "graph6",
        "--quiet",
    ]);
    assert_eq!(again, list);

    let bin = env!("CARGO_BIN_EXE_harmspec");
    let o = Command::new(bin)
        .args([
            "census", "--n", "8", "--degree", "3", "--format", "csv", "--quiet",
        ])
        .env("HARMSPEC_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 7);
    let bad = Command::new(bin)
        .args(["census", "--n", "8", "--degree", "3"])
        .env("HARMSPEC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn matrix_index_charpoly_text() {
    let m = ok(&["matrix", "--family", "path", "--n", "3"]);
    assert!(m.contains("2/3"), "{m}");
    assert!(ok(&["index", "--family", "path", "--n", "3"]).contains("H = 4/3"));
    let c = ok(&["charpoly", "--family", "complete", "--n", "3"]);
    assert!(c.contains("φ(λ) = λ^3 − (3/4)λ − 1/4"), "{c}");
    assert!(c.contains("= (λ − 1)(λ + 1/2)^2"), "{c}");
    assert!(c.contains("closed form complete: matches"), "{c}");
    let p = ok(&["charpoly", "--family", "path", "--n", "6"]);
    assert!(p.contains("closed form path-statement: differs"), "{p}");
    assert!(p.contains("closed form path-proof: matches"), "{p}");
}

#[test]
fn errors_are_one_line_with_exit_one() {
    for args in [
        &["gen", "--family", "dodecahedron", "--n", "3"][..],
        &["gen", "--family", "cycle", "--n", "2"],
        &["gen", "--family", "bipartite", "--n", "2"],
        &["gen", "--from-file", "/nonexistent/file.g6"],
        &["gen", "--graph6", "D?"],
        &[
            "energy",
            "--family",
            "path",
            "--n",
            "4",
            "--method",
            "regular-shortcut",
        ],
        &["audit", "--claim", "thm-unknown"],
        &["census", "--n", "7", "--degree", "3"],
    ] {
        let (code, out, err) = harmspec(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{err}");
    }
    assert_eq!(harmspec(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(harmspec(&["census", "--n", "10"]).0, EXIT_USAGE);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    let (code, out, _) = harmspec(&[
        "gen",
        "--family",
        "k",
        "--n",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "C~\n");
}

#[test]
fn json_outputs_match_schemas() {
    let gen = validate(
        "gen",
        &ok(&[
            "gen", "--family", "windmill", "--m", "4", "--n", "2", "--format", "json",
        ]),
    );
    assert_eq!(gen["graphs"][0]["order"], 7);
    validate(
        "matrix",
        &ok(&["matrix", "--family", "book", "--n", "2", "--format", "json"]),
    );
    let idx = validate(
        "index",
        &ok(&["index", "--family", "path", "--n", "3", "--format", "json"]),
    );
    assert_eq!(
        idx["results"][0]["index"],
        serde_json::json!({"num": "4", "den": "3"})
    );
    let cp = validate(
        "charpoly",
        &ok(&[
            "charpoly",
            "--family",
            "friendship",
            "--n",
            "2",
            "--format",
            "json",
        ]),
    );
    assert_eq!(
        cp["results"][0]["polynomial"]["coefficients"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    let en = validate(
        "spectrum",
        &ok(&["energy", "--family", "petersen", "--format", "json"]),
    );
    assert_eq!(en["results"][0]["exact_spectrum"][2]["multiplicity"], 4);
    validate(
        "spectrum",
        &ok(&["energy", "--family", "path", "--n", "5", "--format", "json"]),
    );
    let c = validate(
        "census",
        &ok(&[
            "census", "--n", "10", "--degree", "3", "--format", "json", "--quiet",
        ]),
    );
    assert_eq!(c["count"], 21);
    assert_eq!(c["reference"]["matched"], 21);
    validate(
        "census",
        &ok(&[
            "census", "--n", "6", "--degree", "3", "--format", "json", "--quiet",
        ]),
    );
    let a = validate(
        "audit",
        &ok(&["audit", "--all", "--format", "json", "--quiet"]),
    );
    assert!(a["results"].as_array().unwrap().len() > 200);
    let baseline =
        std::fs::read_to_string(crate_dir().join("baseline/audit_baseline.json")).unwrap();
    validate("baseline", &baseline);
}

fn baseline_path() -> PathBuf {
    crate_dir().join("baseline").join("audit_baseline.json")
}

#[test]
fn audit_against_committed_baseline() {
    let b = baseline_path();
    let b = b.to_str().unwrap();
    let first = ok(&["audit", "--all", "--baseline", b, "--quiet"]);
    assert!(first.contains("baseline: no drift"));
    assert_eq!(first, ok(&["audit", "--all", "--baseline", b, "--quiet"]));
}

#[test]
fn audit_drift_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("baseline.json");
    let text = std::fs::read_to_string(baseline_path()).unwrap();
    let tampered = text.replacen("\"EXACT-MATCH\"", "\"MISMATCH\"", 1);
    assert_ne!(text, tampered);
    std::fs::write(&path, tampered).unwrap();
    let (code, out, err) = harmspec(&[
        "audit",
        "--all",
        "--baseline",
        path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(code, EXIT_DRIFT);
    assert!(out.contains("baseline drift (1)"), "{out}");
    assert!(err.contains("drifted"));
}

#[test]
fn audit_update_and_subsets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let p = path.to_str().unwrap();
    ok(&[
        "audit",
        "--claim",
        "thm-cycle-charpoly",
        "--baseline",
        p,
        "--update-baseline",
        "--quiet",
    ]);
    assert!(ok(&["audit", "--claim", "thm-cycle-charpoly", "--baseline", p]).contains("no drift"));
    let (code, out, _) = harmspec(&["audit", "--claim", "thm-star-energy", "--baseline", p]);
    assert_eq!(code, EXIT_DRIFT);
    assert!(out.contains("not in baseline"));

    let one = ok(&[
        "audit",
        "--claim",
        "thm-friendship-energy",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(one.lines().count(), 2);
    assert!(one.contains("MISMATCH"));
    let ranged = ok(&[
        "audit",
        "--claim",
        "thm-cycle-charpoly",
        "--range",
        "1..5",
        "--format",
        "csv",
    ]);
    assert_eq!(ranged.lines().count(), 4);
    let empty = ok(&["audit", "--all", "--range", "5..4", "--format", "csv"]);
    assert_eq!(empty.lines().count(), 1);
    assert!(ok(&["audit", "--list"]).contains("thm-petersen-maximum"));
}

#[test]
fn schema_files_are_valid_json_schema() {
    let dir = crate_dir().join("schemas");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    for n in &names {
        let v: Value =
            serde_json::from_str(&std::fs::read_to_string(Path::new(&dir).join(n)).unwrap())
                .unwrap();
        jsonschema::validator_for(&v).unwrap();
    }
    assert!(names.len() >= 7);
}
