use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn bicrossed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicrossed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn verify_preset_passes() {
    let out = bicrossed(&["verify", "--preset", "h_z_z2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
    let names: Vec<&str> = r["payload"]["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["matched pair", "cocycles", "hopf"]);
}

#[test]
fn broken_cocycle_exits_one_with_witnesses() {
    let out = bicrossed(&["verify", &fixture("broken_tau.toml")]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let failing: Vec<&Value> = r["payload"]["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .filter(|c| c["violations"].as_u64().unwrap() > 0)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing
        .iter()
        .all(|c| !c["witnesses"].as_array().unwrap().is_empty()));
}

#[test]
fn cqg_check_reports_sigma_witness() {
    let out = bicrossed(&["cqg-check", &fixture("sigma_two.toml")]);
    assert_eq!(out.status.code(), Some(1));
    let w = &json(&out)["payload"]["witness"];
    assert_eq!(w["cocycle"], "sigma");
    assert_eq!(w["g"], "1");
    assert_eq!(w["f"], "1");
    assert_eq!(w["f'"], "1");
    assert_eq!(w["value"], "2");
}

#[test]
fn cqg_check_passes_on_trivial_cocycles() {
    let out = bicrossed(&["cqg-check", "--preset", "h_z_z2n:2", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["payload"]["unitary"], true);
}

#[test]
fn invalid_configs_exit_two() {
    let out = bicrossed(&["verify", &fixture("bad_syntax.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let p = &json(&out)["payload"];
    assert_eq!(p["error"], "syntax");
    assert_eq!(p["line"], 4);

    let out = bicrossed(&["simples", &fixture("bad_rank.toml")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["payload"]["field"], "f.rank");

    let out = bicrossed(&["verify", "--preset", "no_such_preset"]);
    assert_eq!(out.status.code(), Some(2));

    let out = bicrossed(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn user_tables_from_json() {
    let out = bicrossed(&["simples", &fixture("s3_user.toml")]);
    assert_eq!(out.status.code(), Some(0));
    let simples = json(&out)["payload"]["simples"].as_array().unwrap().len();
    assert_eq!(simples, 8);
    let out = bicrossed(&["simples", &fixture("s3_user_wrong.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let msg = json(&out)["payload"]["message"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(msg.contains("orthogonality"), "{msg}");
}

#[test]
fn fuse_dual_character_round_trip() {
    let out = bicrossed(&["fuse", "-1,0", "-1,0", "--preset", "h_z_z2"]);
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<String> = json(&out)["payload"]["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["0,0", "0,1", "-2,0"]);

    let out = bicrossed(&["dual", "-1,1", "--preset", "h_z_z2n:3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["payload"]["dual"], "-1,2");
    assert_eq!(r["payload"]["self_dual"], false);

    let out = bicrossed(&["character", "-2", "0", "--preset", "h_z_z2"]);
    assert_eq!(out.status.code(), Some(0));
    let terms = json(&out)["payload"]["character"].as_array().unwrap().len();
    assert_eq!(terms, 2);

    let out = bicrossed(&["dual", "2,0", "--preset", "h_z_z2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fusion_table_is_byte_identical_across_runs() {
    let args = [
        "fusion-table",
        "--preset",
        "h_z_z2n:2",
        "--radius",
        "4",
        "--format",
        "json",
    ];
    let a = bicrossed(&args);
    let b = bicrossed(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["payload"]["based_ring"]["passed"], true);
}

#[test]
fn text_format_renders_the_same_report() {
    let out = bicrossed(&[
        "indicators",
        "--preset",
        "h_z_z2",
        "--radius",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("indicators [h_z_z2] PASS"), "{text}");
    assert!(text.contains("indicator=1"));
}

#[test]
fn config_paths_and_extends() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.toml");
    std::fs::write(&path, "extends = \"h_z_z2n:2\"\nradius = 1\n").unwrap();
    let out = bicrossed(&["simples", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["payload"]["radius"], 1);
    assert_eq!(r["config"], "h_z_z2n:2");
}
