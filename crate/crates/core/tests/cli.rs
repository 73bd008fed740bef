use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use wedgekit::coalgebra::{family, family_names};
use wedgekit::document;
use wedgekit::Field;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wedgekit"));
    c.env_remove("WEDGEKIT_SIZE_CAP");
    c
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gen_pipes_into_validate() {
    let g = run(&["gen", "divided-power", "2"]);
    assert_eq!(code(&g), 0);
    let v = run_stdin(&["validate", "-"], std::str::from_utf8(&g.stdout).unwrap());
    assert_eq!(code(&v), 0);
    let out = json(&v);
    assert_eq!(out["schema_version"], 1);
    assert_eq!(out["passed"], true);
}

#[test]
fn gen_matches_library_serialization() {
    for field in ["Q", "Fp:7"] {
        for name in family_names() {
            let fam = family(name).unwrap();
            let size = fam.min_size() + 1;
            let o = run(&["gen", name, &size.to_string(), "--field", field]);
            assert_eq!(code(&o), 0);
            let c = fam.build(field.parse::<Field>().unwrap(), size).unwrap();
            assert_eq!(String::from_utf8(o.stdout).unwrap(), document::serialize(&c));
        }
    }
}

#[test]
fn filtration_stage_sizes() {
    let o = run(&["filtration", &fixture("dp2.json"), "--d", "c0"]);
    assert_eq!(code(&o), 0);
    let out = json(&o);
    assert_eq!(out["stage_dims"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(out["stabilization_index"], 3);
    assert_eq!(out["exhausts"], true);
    let direct = json(&run(&["filtration", &fixture("dp2.json"), "--d", "c0", "--strategy", "direct"]));
    assert_eq!(direct["stages"], out["stages"]);
}

#[test]
fn wedge_command() {
    let o = run(&["wedge", &fixture("dp2.json"), "--x", "c0", "--y", "c0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["wedge"]["basis"], serde_json::json!(["c0", "c1"]));
}

#[test]
fn coradical_command() {
    let o = run(&["coradical", &fixture("dp2.json")]);
    assert_eq!(code(&o), 0);
    let out = json(&o);
    assert_eq!(out["coradical"]["basis"], serde_json::json!(["c0"]));
    assert_eq!(out["nilpotency_index"], 3);
    assert_eq!(code(&run(&["coradical", &fixture("grouplike2_f7.json")])), 3);
}

#[test]
fn verify_hr_commands() {
    let o = run(&["verify-hr", &fixture("dp2.json"), "--d", "c0", "--map", &fixture("dp2_mod_c1_map.json")]);
    assert_eq!(code(&o), 0);
    let out = json(&o);
    assert_eq!(out["verdict"], "premise_violated");
    assert_eq!(out["induction_trace"], serde_json::json!([true, true, false, false]));
    let o = run(&["verify-hr-corollary", &fixture("dp2.json"), "--map", &fixture("dp2_identity_map.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "consistent");
    // D must be a subcoalgebra
    let o = run(&["verify-hr", &fixture("dp2.json"), "--d", "c1", "--map", &fixture("dp2_identity_map.json")]);
    assert_eq!(code(&o), 64);
}

#[test]
fn failure_exit_codes() {
    assert_eq!(code(&run(&["validate", &fixture("not_coassociative.json")])), 2);
    let o = run(&["wedge", &fixture("not_coassociative.json"), "--x", "c0", "--y", "c0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("coassociativity"));
    assert_eq!(code(&run(&["validate", &fixture("float_coefficient.json")])), 64);
    assert_eq!(code(&run(&["validate", &fixture("truncated.json")])), 64);
    assert_eq!(code(&run(&["validate", &fixture("missing.json")])), 74);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["gen", "no-such-family", "2"])), 64);
    assert_eq!(code(&run(&["stress", "--field", "Fp:8"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn size_cap_flag_and_env() {
    let args = ["filtration", &fixture("dp2.json"), "--d", "c0", "--strategy", "direct"];
    assert_eq!(code(&run(&args)), 0);
    let mut with_flag: Vec<&str> = args.to_vec();
    with_flag.extend(["--size-cap", "10"]);
    assert_eq!(code(&run(&with_flag)), 64);
    let o = bin().args(args).env("WEDGEKIT_SIZE_CAP", "10").output().unwrap();
    assert_eq!(code(&o), 64);
    let o = bin().args(&with_flag).env("WEDGEKIT_SIZE_CAP", "1").output().unwrap();
    assert_eq!(code(&o), 64);
    with_flag.pop();
    with_flag.push("100000");
    let o = bin().args(&with_flag).env("WEDGEKIT_SIZE_CAP", "1").output().unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn lemma_suite_on_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("dp2.json"), dir.path().join("dp2.json")).unwrap();
    let dirs = dir.path().to_string_lossy().into_owned();
    let o = run(&["lemma-suite", "--corpus", &dirs, "--configs", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["corpus_size"], 1);
    std::fs::copy(fixture("not_coassociative.json"), dir.path().join("bad.json")).unwrap();
    let o = run(&["lemma-suite", "--corpus", &dirs, "--configs", "5"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["lemma-suite", "--corpus", "/no/such/dir"])), 74);
}

#[test]
fn stress_is_deterministic() {
    let args = ["stress", "--trials", "30", "--dim-cap", "6", "--field", "Fp:7", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let out = json(&a);
    assert_eq!(out["counterexamples"], 0);
    assert_eq!(out["trials"], 30);
}

#[test]
fn text_output() {
    let o = run(&["filtration", &fixture("dp2.json"), "--d", "c0", "--output", "text"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("D^2 = span{c0, c1} (dim 2)"));
    assert!(text.contains("stabilization index: 3"));
}
