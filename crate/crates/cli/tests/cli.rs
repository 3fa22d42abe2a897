use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vasskit")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

#[test]
fn enumerates_chord_diagrams() {
    assert_eq!(stdout(&["chords", "enumerate", "--m", "2"]), "2: (0,1)(2,3)\n2: (0,2)(1,3)\n");
    assert_eq!(stdout(&["chords", "enumerate", "--m", "3"]).lines().count(), 5);
    assert_eq!(json(&["chords", "enumerate", "--m", "4"])["count"], 18);
    assert_eq!(json(&["chords", "enumerate", "--m", "4", "--dihedral"])["count"], 17);
    assert_eq!(stdout(&["chords", "canonical", "--diagram", "2: (1,3)(0,2)"]), "2: (0,2)(1,3)\n");
    assert_eq!(stdout(&["chords", "isolated", "--m", "2"]), "2: (0,1)(2,3)\n");
}

#[test]
fn four_term_check() {
    assert_eq!(stdout(&["fourterm", "--algebra", "su2", "--m", "3"]), "all 4T combinations vanish: OK\n");
    assert_eq!(json(&["fourterm", "--algebra", "su3", "--m", "2"])["all_vanish"], true);
}

#[test]
fn weights() {
    let v = json(&["weights", "--algebra", "su2", "--diagram", "1: (0,1)"]);
    assert_eq!(v["value"], "3/2");
    let all = json(&["weights", "--algebra", "su2", "--m", "2"]);
    assert_eq!(all["weights"][0]["value"], "9/8");
    assert_eq!(all["weights"][1]["value"], "-3/8");
    assert!(stdout(&["weights", "--algebra", "su3", "--casimir"]).contains("4/3 * identity"));
    assert!(stdout(&["weights", "--algebra", "su3", "--structure"]).contains("f(3,4,7) = 1/2*sqrt(3)"));
}

#[test]
fn invariants_and_graphs() {
    assert_eq!(stdout(&["invariant", "conway", "--gauss", TREFOIL]), "1 + z^2\n");
    let fig8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    assert_eq!(stdout(&["invariant", "v2", "--pd", fig8]), "-1\n");
    assert_eq!(
        json(&["invariant", "conway", "--gauss", "O1+ U2+ | U1+ O2+"])["coefficients"],
        serde_json::json!(["0", "1"])
    );
    let g = ["graph", "extend", "--gauss", TREFOIL, "--nodes", "1", "--a", "1", "--b", "-1", "--c", "0"];
    assert_eq!(stdout(&g), "z^2\n");
    assert_eq!(stdout(&["graph", "symbol", "--diagram", "2: (0,2)(1,3)"]), "1\n");
    assert_eq!(stdout(&["graph", "symbol", "--diagram", "2: (0,2)(1,3)", "--second-end", "--descending"]), "1\n");
}

#[test]
fn kontsevich_v2() {
    let v = json(&[
        "kontsevich",
        "v2",
        "--knot",
        &data("trefoil.json"),
        "--unknot",
        &data("matched_unknot.json"),
        "--subdiv",
        "64",
        "--margin",
        "0.05",
    ]);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 0.05);
    assert!(v["imag_residual"].as_f64().unwrap() < 1e-3);
    assert_eq!(v["refinement"].as_array().unwrap().len(), 4);
    let text =
        stdout(&["kontsevich", "v2", "--knot", &data("figure_eight.json"), "--unknot", &data("matched_unknot.json")]);
    assert!(text.starts_with("value: -0.99"), "{text}");
}

#[test]
fn kontsevich_other_commands() {
    let c = json(&["kontsevich", "coefficient", "--embedding", &data("circle.json"), "--diagram", "1: (0,1)"]);
    assert!(c["value"].as_f64().unwrap().abs() < 0.02);
    let e = json(&["kontsevich", "expand", "--embedding", &data("trefoil.json"), "--algebra", "su2", "--order", "2"]);
    assert_eq!(e["terms"].as_array().unwrap().len(), 2);
    let s = json(&["kontsevich", "strands", "--embedding", &data("circle.json"), "--t", "0.2"]);
    assert_eq!(s["strands"].as_array().unwrap().len(), 2);
}

#[test]
fn moments() {
    assert_eq!(stdout(&["moments", "--n", "4"]), "3\n");
    assert_eq!(stdout(&["moments", "--n", "8"]), "105\n");
    assert_eq!(stdout(&["moments", "--poly", "3x^4 - x^2 + 7"]), "15\n");
    assert_eq!(json(&["moments", "--series", "2"])["coefficients"], serde_json::json!(["1", "0", "1/2"]));
}

#[test]
fn exit_codes() {
    let usage = run(&["chords", "enumerate"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("--m"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--n", "2", "--bogus"]).status.code(), Some(2));

    let bad = run(&["invariant", "conway", "--gauss", "O1+ U1-", "--format", "json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("sign"));

    let mismatch = run(&["kontsevich", "v2", "--knot", &data("trefoil.json"), "--unknot", &data("circle.json")]);
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&mismatch.stderr).starts_with("error:"));
    assert_eq!(run(&["kontsevich", "v2", "--knot", "/nonexistent.json", "--unknot", "x"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let cases: Vec<Vec<String>> = vec![
        vec!["chords".into(), "fourterm".into(), "--m".into(), "3".into()],
        vec![
            "weights".into(),
            "--algebra".into(),
            "su3".into(),
            "--m".into(),
            "3".into(),
            "--format".into(),
            "json".into(),
        ],
        vec![
            "kontsevich".into(),
            "v2".into(),
            "--knot".into(),
            data("figure_eight.json"),
            "--unknot".into(),
            data("matched_unknot.json"),
            "--threads".into(),
            "3".into(),
            "--format".into(),
            "json".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args).stdout;
        for _ in 0..2 {
            assert_eq!(run(&args).stdout, first, "{args:?}");
        }
    }
}

#[test]
fn help_texts_exist() {
    for sub in ["chords", "weights", "fourterm", "invariant", "graph", "kontsevich", "moments"] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success());
        assert!(!out.stdout.is_empty());
    }
}
