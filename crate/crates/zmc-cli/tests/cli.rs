//! End-to-end tests of the `zmc` binary: subcommands, exit codes, formats,
//! determinism, and the published list schema.

use std::process::{Command, Output};

fn zmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zmc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn list_contains_targets_and_suites() {
    let out = zmc(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("enneper_timelike_2"));
    for suite in [
        "zmc",
        "first-form",
        "twist",
        "codazzi",
        "gauss",
        "frame",
        "bjorling",
        "weierstrass",
        "periods",
        "ends",
        "associate",
        "catenoid-symmetry",
    ] {
        assert!(text.contains(suite), "missing suite {suite}");
    }
}

#[test]
fn list_json_validates_against_published_schema() {
    let out = zmc(&["list", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let schema: serde_json::Value = serde_json::from_str(zmc_cli::schema::LIST_SCHEMA).unwrap();
    zmc_cli::schema::validate(&schema, &value, "$").unwrap();
    let ids: Vec<&str> = value["targets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"enneper_timelike_2"));
}

#[test]
fn verify_passes_and_fails_by_exit_status() {
    let out = zmc(&["verify", "--target", "enneper_spacelike", "--suite", "zmc,first-form,twist"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));

    // an absurd tolerance forces a failure and a nonzero exit status
    let out = zmc(&[
        "verify",
        "--target",
        "enneper_spacelike",
        "--suite",
        "zmc",
        "--tol",
        "zmc=1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    // unknown target: usage error
    let out = zmc(&["verify", "--target", "not_a_surface"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_codazzi_on_family_matches_advertised_example() {
    let out = zmc(&["verify", "--target", "family:spacelike,a=1,A=1,B=3", "--suite", "codazzi"]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn export_obj_has_mesh_contract() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mesh.obj");
    let out = zmc(&[
        "export",
        "--target",
        "es:2,-1",
        "--format",
        "obj",
        "--output",
        path.to_str().unwrap(),
        "--grid",
        "0.2,1.2,-1,1,7,9",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let nv = text.lines().filter(|l| l.starts_with("v ")).count();
    let nf = text.lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(nv, 7 * 9);
    assert_eq!(nf, 6 * 8 * 2);
}

#[test]
fn export_refuses_degeneracy_straddling_obj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mesh.obj");
    let out = zmc(&[
        "export",
        "--target",
        "enneper_spacelike",
        "--format",
        "obj",
        "--output",
        path.to_str().unwrap(),
        "--grid",
        "-1,1,-1,1,11,11",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degeneracy locus"), "stderr: {err}");
    assert!(err.contains("u = 0"), "stderr should report the locus: {err}");
}

#[test]
fn export_csv_is_deterministic_and_reimports() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    for p in [&p1, &p2] {
        let out = zmc(&[
            "export",
            "--target",
            "enneper_timelike",
            "--format",
            "csv",
            "--output",
            p.to_str().unwrap(),
            "--grid",
            "-0.8,0.8,-0.5,0.5,9,9",
        ]);
        assert!(out.status.success());
    }
    let b1 = std::fs::read(&p1).unwrap();
    let b2 = std::fs::read(&p2).unwrap();
    assert_eq!(b1, b2, "identical configs must give byte-identical output");
    let rows = zmc_cli::export::read_csv(std::str::from_utf8(&b1).unwrap()).unwrap();
    assert_eq!(rows.len(), 81);
}

#[test]
fn config_file_drives_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    let report_path = dir.path().join("report.json");
    std::fs::write(
        &cfg,
        r#"{
            "target": "timelike_catenoid",
            "grid": {"u_min": -1.2, "u_max": 1.2, "v_min": -0.6, "v_max": 0.6, "nu": 21, "nv": 21},
            "suite": ["zmc", "twist", "catenoid-symmetry"]
        }"#,
    )
    .unwrap();
    let out = zmc(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--json",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["target"], "timelike_catenoid");
    assert_eq!(report["pass"], true);
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
    for c in report["checks"].as_array().unwrap() {
        assert!(c["max_residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn eval_reports_curvature_data() {
    let out = zmc(&["eval", "--target", "enneper_timelike", "--at", "0,0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x"][0].as_f64().unwrap(), 1.0);
    assert!((v["x"][1].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-14);
    assert!(v["mean_curvature"].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(v["causal_character"], "timelike");
}

#[test]
fn weierstrass_report_shows_orders_and_periods() {
    let out = zmc(&["weierstrass", "--target", "et:2,1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ends = v["ends"].as_array().unwrap();
    assert_eq!(ends[0]["max_order"], 2);
    assert_eq!(ends[1]["max_order"], 4);
    assert_eq!(ends[1]["class"], "enneper");

    let out = zmc(&["weierstrass", "--target", "es:2,2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let periods: Vec<String> = v["real_periods"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap().to_string())
        .collect();
    assert!(periods[1].contains("1 * pi"), "{periods:?}");
}

#[test]
fn bjorling_from_descriptor_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.json");
    std::fs::write(
        &data,
        r#"{"source": "family", "kind": "spacelike", "a": 1.3, "big_a": 0.7, "big_b": 2.1, "branch": "generic"}"#,
    )
    .unwrap();
    let out = zmc(&[
        "bjorling",
        "--data",
        data.to_str().unwrap(),
        "--check",
        "--grid",
        "-0.5,-0.1,-0.3,0.3,5,5",
    ]);
    assert!(
        out.status.success(),
        "stdout: {} stderr: {}",
        stdout(&out),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("data contract ok"));
}
