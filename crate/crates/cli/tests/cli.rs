use std::path::PathBuf;
use std::process::{Command, Output};

use cliffsys::clifford::{build, SystemJson, Variant};
use cliffsys::forms::{canonical_form, CanonicalName, FormJson, KForm};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffsys"))
        .args(args)
        .env_remove("CLIFFSYS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cliffsys-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_c8_has_nine_generators_of_order_16() {
    let o = run(&["gen", "--m", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SystemJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((doc.m, doc.n, doc.generators.len()), (8, 16, 9));
    assert!(doc.generators.iter().all(|g| g.n == 16));
    assert_eq!(
        doc.generators,
        build(8, Variant::Canonical).unwrap().to_json().generators
    );
}

#[test]
fn generated_systems_verify() {
    for args in [
        vec!["--m", "12"],
        vec!["--m", "8", "--class", "minus"],
        vec!["--m", "4", "--tilde"],
    ] {
        let path = scratch(&format!("sys-{}.json", args.join("")));
        let mut full = vec!["gen", "--out", path.to_str().unwrap()];
        full.extend(&args);
        assert_eq!(run(&full).status.code(), Some(0));
        let o = run(&["verify", "--in", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["ok"], Value::Bool(true));
    }
}

#[test]
fn broken_system_exits_with_verification_failure() {
    let path = scratch("broken.json");
    std::fs::write(
        &path,
        r#"{"m":1,"N":2,"class":"n/a","generators":[{"n":2,"entries":[[1,2,1],[2,1,1]]},{"n":2,"entries":[[1,2,1],[2,1,1]]}]}"#,
    )
    .unwrap();
    let o = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["first_failure"]["check"], "anticommuting");
}

#[test]
fn malformed_input_gives_json_error_body() {
    let path = scratch("garbage.json");
    std::fs::write(&path, "not json").unwrap();
    let o = run(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"], "internal");
}

#[test]
fn tau2_of_psi_c_is_zero() {
    let o = run(&["form", "--tau", "2", "--psi", "C"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: FormJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((doc.n, doc.k), (16, 4));
    assert!(doc.terms.is_empty());
    let text = run(&["form", "--tau", "2", "--psi", "C", "--format", "text"]);
    assert_eq!(stdout(&text), "0\n");
}

#[test]
fn canonical_forms_round_trip() {
    for name in ["spin8", "omega-l"] {
        let parsed: CanonicalName = name.parse().unwrap();
        let want = canonical_form(parsed).unwrap();
        let json: FormJson = serde_json::from_str(&stdout(&run(&["form", "--name", name]))).unwrap();
        assert_eq!(KForm::from_json(&json).unwrap(), want);
        let text = stdout(&run(&["form", "--name", name, "--format", "text"]));
        assert_eq!(
            KForm::parse_text(want.ambient(), want.degree(), text.trim()).unwrap(),
            want
        );
    }
}

#[test]
fn essentiality_verdicts() {
    let o = run(&["classify-essential", "--m", "7", "--format", "text"]);
    assert_eq!(stdout(&o), "Essential\n");
    let v: Value = serde_json::from_str(&stdout(&run(&["classify-essential", "--m", "8"]))).unwrap();
    assert_eq!(v["verdict"], "NonEssential");
    assert_eq!(v["rank"], 9);
}

#[test]
fn lie_algebra_report() {
    let o = run(&[
        "liealg",
        "--system",
        "C8",
        "--check",
        "span,bracket,decomposition",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["span_dim"], 36);
    assert_eq!(v["bracket_closed"], true);
    assert_eq!(v["decomposition"]["total"], 120);
    assert_eq!(
        run(&["liealg", "--system", "C5", "--check", "decomposition"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn sphere_fields_report() {
    let o = run(&["sphere-fields", "--n", "32", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hurwitz_radon"]["sigma"], 9);
    assert_eq!(v["structures"].as_array().unwrap().len(), 9);
    assert_eq!(v["pointwise"], true);
}

#[test]
fn even_structure_queries() {
    let v: Value = serde_json::from_str(&stdout(&run(&["evencliff", "--classify", "10"]))).unwrap();
    assert_eq!(v["space"], "EIII");
    let psi: Value =
        serde_json::from_str(&stdout(&run(&["evencliff", "--rank", "10", "--emit", "psiD"]))).unwrap();
    assert_eq!(psi["entries"].as_array().unwrap().len(), 45);
    assert_eq!(
        run(&["evencliff", "--rank", "12", "--emit", "tau4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn octonion_table() {
    let grid = stdout(&run(&["octonions"]));
    assert_eq!(grid.lines().count(), 10);
    let v: Value = serde_json::from_str(&stdout(&run(&["octonions", "--right", "i"]))).unwrap();
    assert_eq!(v["matrix"]["n"], 8);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["gen", "--m", "0"],
        vec!["gen", "--m", "17"],
        vec!["gen", "--m", "5", "--class", "minus"],
        vec!["frobnicate"],
        vec!["form", "--name", "spin9", "--tau", "2", "--psi", "A"],
        vec!["form", "--tau", "2"],
        vec!["sphere-fields", "--n", "7"],
        vec!["liealg", "--system", "D8"],
        vec!["gen", "--m", "2", "--threads", "0"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_cliffsys"))
        .args(["gen", "--m", "2"])
        .env("CLIFFSYS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        vec!["liealg", "--system", "C9", "--check", "span,bracket,normalizer"],
        vec!["sphere-fields", "--n", "96"],
        vec!["form", "--name", "spin9"],
        vec!["gen", "--m", "16"],
    ] {
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        let mut four = args.clone();
        four.extend(["--threads", "4"]);
        let a = run(&one);
        let b = run(&four);
        let c = Command::new(env!("CARGO_BIN_EXE_cliffsys"))
            .args(&args)
            .env("CLIFFSYS_THREADS", "3")
            .output()
            .unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
}
