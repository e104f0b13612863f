use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rackalg"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().expect("binary runs");
    let json = serde_json::from_slice(&stdout).expect("stdout is JSON");
    (status.code().expect("exit code"), json)
}

#[test]
fn abelian_passes_check_leibniz() {
    let (code, out) = run(&["check-leibniz", "fixture:abelian-2"], &[]);
    assert_eq!(code, 0);
    assert_eq!(out["passed"], true);
    assert_eq!(out["data"]["is_lie"], true);
    assert_eq!(out["reports"][0]["checks"][0]["name"], "left Leibniz identity");
}

#[test]
fn non_leibniz_exits_one_with_witness() {
    let (code, out) = run(&["check-leibniz", "fixture:non-leibniz"], &[]);
    assert_eq!(code, 1);
    assert_eq!(out["passed"], false);
    assert!(out["reports"][0]["checks"][0]["violation"].is_object());
    let (code, out) = run(&["build-uar", "fixture:non-leibniz"], &[]);
    assert_eq!(code, 1);
    assert_eq!(out["error"]["kind"], "axiom");
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("rackalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"kind":"leibniz","name":"x","dim":2,"extra":1}"#).unwrap();
    let (code, out) = run(&["check-leibniz", bad.to_str().unwrap()], &[]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "schema");
    let (code, _) = run(&["star", "fixture:affine", "--x", "1", "--y", "0,1"], &[]);
    assert_eq!(code, 2, "wrong vector length");
    let (code, _) = run(&["deform", "fixture:s3-right-group"], &[]);
    assert_eq!(code, 2, "wrong input kind");
}

#[test]
fn budgets_exit_three() {
    let (code, out) = run(&["deform", "fixture:square"], &[("RACKALG_MAX_DIM", "2")]);
    assert_eq!(code, 3);
    assert_eq!(out["error"]["kind"], "budget");
    let (code, _) = run(&["star", "fixture:affine", "--x", "1,0", "--y", "0,1", "--order", "9"], &[]);
    assert_eq!(code, 3);
    let (code, _) = run(&["build-uar", "fixture:square", "--k", "3"], &[("RACKALG_MAX_K", "2")]);
    assert_eq!(code, 3);
}

#[test]
fn star_on_affine() {
    let (code, out) = run(&["star", "fixture:affine", "--x", "1,0", "--y", "0,1", "--order", "5"], &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["data"]["lhs"], out["data"]["rhs"]);
    // x ▶ y = e^{ℏ ad_x} e2 = e^ℏ e2 truncated at ℏ^5.
    let xy = &out["data"]["x_rack_y"];
    assert_eq!(xy[0]["index"], 2);
    assert_eq!(xy[0]["coeffs"], serde_json::json!(["1", "1", "1/2", "1/6", "1/24"]));
}

#[test]
fn build_uar_square() {
    let (code, out) = run(&["build-uar", "fixture:square", "--k", "2"], &[]);
    assert_eq!(code, 0, "{out}");
    let names: Vec<&str> = out["reports"][1]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"μ identical for z = Q(h) and z = z(h)"));
    assert!(names.contains(&"Prim(UAR^∞(h)) ≅ h"));
}

#[test]
fn deform_on_ur_fixture() {
    let (code, out) = run(&["deform", "fixture:square", "--max-degree", "2"], &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["data"]["cochain_dims"], serde_json::json!([4, 12, 36]));
    let h2 = &out["data"]["h2"];
    assert_eq!(h2["h2"].as_u64().unwrap() + h2["b2"].as_u64().unwrap(), h2["z2"].as_u64().unwrap());
}

#[test]
fn suschkewitsch_both_kinds() {
    let (code, out) = run(&["suschkewitsch", "fixture:z2-right-group"], &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["data"]["dim_h1"], 2);
    let (code, out) = run(&["suschkewitsch", "fixture:s3-augmented"], &[]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["data"]["dim"], 36);
}

#[test]
fn report_file_and_latex() {
    let path = std::env::temp_dir().join(format!("rackalg-report-{}.json", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_rackalg"))
        .args(["--emit-latex", "--report", path.to_str().unwrap(), "check-leibniz", "fixture:square"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    assert!(String::from_utf8(out.stderr).unwrap().contains("\\begin{tabular}"));
}

#[test]
fn fixtures_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("rackalg-fixtures-{}", std::process::id()));
    let (code, out) = run(&["fixtures", "--out", dir.to_str().unwrap()], &[]);
    assert_eq!(code, 0);
    for name in out["data"]["fixtures"].as_array().unwrap() {
        let file = dir.join(format!("{}.json", name.as_str().unwrap()));
        let (code, _) = run(&["check-leibniz", file.to_str().unwrap()], &[]);
        // Non-Leibniz inputs are kind errors (2) or violations (1), never crashes.
        assert!([0, 1, 2].contains(&code), "{name}: {code}");
    }
}

#[test]
fn manifest_runs_every_step() {
    let dir = std::env::temp_dir().join(format!("rackalg-manifest-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, exported) = run(&["fixtures", "--out", dir.to_str().unwrap()], &[]);
    assert_eq!(exported["passed"], true);
    let manifest = dir.join("pipeline.json");
    std::fs::write(
        &manifest,
        r#"{
  "inputs": {"sq": "fixture:square", "aff": "affine.json", "rg": "fixture:z2-right-group"},
  "budgets": {"max_k": 2, "max_order": 6, "max_dim": 4, "max_tensor_dim": 64},
  "pipeline": [
    {"command": "check_leibniz", "input": "sq"},
    {"command": "build_uar", "input": "sq", "k": 2},
    {"command": "star", "input": "aff", "x": ["1", "0"], "y": ["0", "1"], "order": 5},
    {"command": "suschkewitsch", "input": "rg"},
    {"command": "deform", "input": "sq", "max_degree": 2}
  ],
  "output": "result.json"
}"#,
    )
    .unwrap();
    let (code, out) = run(&["run", manifest.to_str().unwrap()], &[]);
    assert_eq!(code, 0, "{out:#}");
    let steps = out["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 5);
    assert!(steps.iter().all(|s| s["passed"] == true));
    assert_eq!(steps[2]["data"]["x_rack_y"][0]["coeffs"][1], "1");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("result.json")).unwrap()).unwrap();
    assert_eq!(written, out);

    // The worst step decides the exit code: schema beats budget beats failure.
    std::fs::write(
        &manifest,
        r#"{"inputs": {"sq": "fixture:square", "bad": "fixture:non-leibniz"},
            "budgets": {"max_k": 1},
            "pipeline": [{"command": "check_leibniz", "input": "bad"},
                         {"command": "build_uar", "input": "sq", "k": 2}]}"#,
    )
    .unwrap();
    let (code, out) = run(&["run", manifest.to_str().unwrap()], &[]);
    assert_eq!(code, 3);
    assert_eq!(out["steps"][0]["passed"], false);
    std::fs::write(&manifest, r#"{"inputs": {}, "budgets": {"max_k": 0}, "pipeline": []}"#).unwrap();
    assert_eq!(run(&["run", manifest.to_str().unwrap()], &[]).0, 2);
    std::fs::write(&manifest, r#"{"inputs": {}, "pipeline": [{"command": "star", "input": "nope", "x": [], "y": [], "order": 1}]}"#).unwrap();
    assert_eq!(run(&["run", manifest.to_str().unwrap()], &[]).0, 2);
}
