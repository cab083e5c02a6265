use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn unisolv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unisolv"))
        .args(args)
        .env_remove("UNISOLV_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_planar_reference() {
    let out = unisolv(&["verify", "--k", "2", "--d", "2", "--reference"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], "unisolv/1");
    assert_eq!(doc["reports"][0]["report"]["verdict"], "unisolvent");
    assert_eq!(doc["reports"][0]["report"]["dim"], 14);
    assert!(doc["reports"][0]["report"]["det"].as_str().unwrap() != "0");
}

#[test]
fn verify_quadratic_tetrahedron_is_singular() {
    let out = unisolv(&["verify", "--k", "2", "--d", "3", "--reference"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["reports"][0];
    assert_eq!(r["expected"], "singular");
    assert_eq!(r["report"]["verdict"], "singular");
    assert_eq!(r["report"]["det"], "0");
    assert_eq!(r["report"]["kernel"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_random_triangles() {
    let out = unisolv(&["verify", "--k", "1", "--d", "2", "--random", "5", "--seed", "42"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["seed"], 42);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r["report"]["verdict"] == "unisolvent"));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = unisolv(&["verify", "--k", "1..2", "--d", "2", "--random", "3", "--seed", "9", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = unisolv(&["verify", "--k", "1..2", "--d", "2", "--random", "3", "--seed", "10"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn env_seed_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_unisolv"));
        c.args(["verify", "--k", "1", "--d", "2", "--random", "2", "--seed", seed]);
        match env {
            Some(v) => c.env("UNISOLV_SEED", v),
            None => c.env_remove("UNISOLV_SEED"),
        };
        c.output().unwrap()
    };
    let with_env = run(Some("5"), "1");
    assert_eq!(json(&with_env)["seed"], 5);
    assert_eq!(with_env.stdout, run(None, "5").stdout);
    assert_eq!(code(&run(Some("abc"), "1")), 2);
}

#[test]
fn certificate_command() {
    let out = unisolv(&["certificate", "--k", "1..4", "--random", "10", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["all_match"], true);
    assert_eq!(doc["random"].as_array().unwrap().len(), 40);
    let fixtures = doc["fixtures"].as_array().unwrap();
    let k2 = fixtures.iter().find(|f| f["result"]["k"] == 2 && f["name"].as_str().unwrap().contains("M(0,z,1)")).unwrap();
    assert_eq!(k2["result"]["det_elimination"]["re"], "1/180");
    assert_eq!(k2["result"]["det_closed_form"]["re"], "1/180");
    let degenerate: Vec<&Value> = fixtures.iter().filter(|f| f["name"].as_str().unwrap().contains("repeated")).collect();
    assert_eq!(degenerate.len(), 4);
    assert!(degenerate.iter().all(|f| f["result"]["match"] == true && f["result"]["det_elimination"]["re"] == "0"));
}

#[test]
fn counterexample_command() {
    let out = unisolv(&["counterexample"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let report = &doc["report"];
    assert_eq!(report["checks"].as_array().unwrap().len(), 5);
    let values = report["functional_values"].as_array().unwrap();
    assert_eq!(values.len(), 39);
    assert!(values.iter().all(|v| v == "0"));
    assert_eq!(report["kernel_dimension"], 1);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.matches(": pass").count(), 5);
}

#[test]
fn dual_basis_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cr.json");
    let out = unisolv(&["dual-basis", "--k", "1", "--d", "2", "--reference", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["dual_fields"].as_array().unwrap().len(), 6);
    assert_eq!(doc["space_basis"].as_array().unwrap().len(), 6);
    assert_eq!(doc["biorthogonality_is_identity"], true);
    assert_eq!(doc["certificate_hash"].as_str().unwrap().len(), 64);

    let out = unisolv(&["dual-basis", "--k", "2", "--d", "2", "--reference"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["dual_fields"].as_array().unwrap().len(), 14);

    let out = unisolv(&["dual-basis", "--k", "2", "--d", "3", "--reference"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unisolvence report"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn simplex_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "t.json", r#"{"vertices": [[0, 0], ["2", "0"], [0, "1/2"]]}"#);
    let out = unisolv(&["verify", "--k", "1..3", "--d", "2", "--simplex", &good]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["reports"].as_array().unwrap().len(), 3);

    let list = write(dir.path(), "l.json", r#"[{"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}, {"vertices": [[1,1],[3,1],[1,4]]}]"#);
    assert_eq!(code(&unisolv(&["verify", "--k", "2", "--d", "2", "--simplex", &list])), 0);

    let degenerate = write(dir.path(), "d.json", r#"{"vertices": [[0,0],[1,1],[2,2]]}"#);
    let out = unisolv(&["verify", "--k", "1", "--d", "2", "--simplex", &degenerate]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("affinely dependent"));

    for (name, text) in [
        ("bad.json", "not json"),
        ("shape.json", r#"{"vertices": [[0,0],[1,0]]}"#),
        ("coord.json", r#"{"vertices": [[0,0],[1,"x"],[0,1]]}"#),
        ("zero.json", r#"{"vertices": [[0,0],["1/0",0],[0,1]]}"#),
        ("empty.json", "[]"),
    ] {
        let p = write(dir.path(), name, text);
        assert_eq!(code(&unisolv(&["verify", "--k", "1", "--d", "2", "--simplex", &p])), 2, "{name}");
    }
    assert_eq!(code(&unisolv(&["verify", "--k", "1", "--d", "3", "--simplex", &good])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&unisolv(&["verify", "--k", "1", "--d", "2", "--simplex", missing.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--k", "0", "--d", "2"][..],
        &["verify", "--k", "1", "--d", "4"],
        &["verify", "--k", "a", "--d", "2"],
        &["verify", "--k", "3..1", "--d", "2"],
        &["verify", "--k", "1", "--d", "2", "--random", "0"],
        &["verify", "--k", "1", "--d", "2", "--reference", "--random", "2"],
        &["verify", "--k", "3", "--d", "3"],
        &["dual-basis", "--k", "1..2", "--d", "2"],
        &["dual-basis", "--k", "1", "--d", "2", "--random", "2"],
        &["certificate", "--random", "0"],
        &["report"],
        &["report", "--all", "--max-k", "0"],
        &["frobnicate"],
        &[],
    ] {
        let out = unisolv(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"), "{args:?}");
    }
}

#[test]
fn exploratory_mode() {
    let out = unisolv(&["verify", "--k", "2", "--d", "3", "--random", "1", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["reports"][0];
    assert_eq!(r["expected"], "open");
    assert!(r["as_expected"].is_null());
}

#[test]
fn full_report() {
    let out = unisolv(&["report", "--all", "--max-k", "2", "--random", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["counting"].as_array().unwrap().len(), 4);
    for section in ["verify_2d_reference", "verify_2d_random", "verify_3d_reference", "certificate", "counterexample"] {
        assert_eq!(doc["sections"][section]["schema"], "unisolv/1", "{section}");
    }
}
