use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn colorlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = colorlie(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn majorana_levels() {
    let v = json(&["majorana", "--N", "3", "--s", "3"]);
    assert_eq!(v["levels"], serde_json::json!([0, 1, 2]));
    let v = json(&["majorana", "--N", "5", "--s", "3"]);
    assert_eq!(v["plateau"], Value::Bool(true));
    let v = json(&["majorana", "--N", "4", "--s", "inf"]);
    assert_eq!(v["levels"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn table_matches_library() {
    let v = json(&["table", "--group", "z3xz3", "--j", "j1"]);
    let t = colorlie_core::grading::canonical_z3z3(&colorlie_core::Cyclotomic::j1()).unwrap();
    assert_eq!(v["table"], serde_json::to_value(&t).unwrap());
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["table"]["entries"].as_array().unwrap().len(), 9);
    let v = json(&["table", "--group", "z2xz3xz3", "--delta", "-1"]);
    assert_eq!(v["table"]["sectors"].as_array().unwrap().len(), 18);
}

#[test]
fn search_counts() {
    let v = json(&["search", "--p", "0", "--q", "2", "--max-order", "3"]);
    assert_eq!(
        (v["tables"].as_u64(), v["classes"].as_u64()),
        (Some(3), Some(2))
    );
    let v = json(&["search", "--p", "1", "--q", "2"]);
    assert_eq!(
        (v["tables"].as_u64(), v["classes"].as_u64()),
        (Some(6), Some(4))
    );
}

#[test]
fn matrix_dump() {
    let v = json(&["mat", "--name", "C_11"]);
    assert_eq!(v["matrix"]["dim"], 9);
    assert_eq!(v["matrix"]["grade"], "11");
}

#[test]
fn algebra_report() {
    let v = json(&["algebra", "--name", "hpf_s3", "--check", "all"]);
    for key in ["skew", "jacobi", "metaabelian"] {
        assert_eq!(v[key], serde_json::json!([]), "{key}");
    }
    assert!(v["minimal"].is_object());
}

#[test]
fn failing_checks_exit_nonzero() {
    let out = colorlie(&["algebra", "--name", "hpf_s6", "--printed-c02"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["expectations"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(colorlie(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(colorlie(&["majorana", "--N", "3"]).status.code(), Some(2));
    assert_eq!(
        colorlie(&["majorana", "--N", "3", "--s", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(colorlie(&["table", "--group", "z5"]).status.code(), Some(2));
    assert_eq!(colorlie(&["density", "--j", "j7"]).status.code(), Some(2));
}

#[test]
fn triangle_output() {
    let v = json(&["triangle", "--n", "2", "--j", "sym"]);
    assert_eq!(v["rows"][2], serde_json::json!(["1", "z-j", "1"]));
    let v = json(&["triangle", "--n", "4", "--j", "1"]);
    assert_eq!(v["rows"][4], serde_json::json!(["1", "4", "6", "4", "1"]));
    let out = colorlie(&["triangle", "--n", "3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("n=0:"));
}

#[test]
fn truncation_table() {
    let v = json(&["truncation", "--k", "3", "--N", "3", "--max-n", "6"]);
    assert_eq!(
        v["zero"],
        serde_json::json!([false, false, false, true, true, true, true])
    );
}

#[test]
fn maxima_list() {
    let v = json(&["maxima", "--j", "j1", "--n", "2"]);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 5);
    assert!(list
        .iter()
        .any(|m| (m["value"].as_f64().unwrap() - 0.089194).abs() < 1e-4));
}

#[test]
fn braid_check_passes() {
    for s in ["3", "6", "5"] {
        let v = json(&["braid-check", "--s", s]);
        assert_eq!(v["passed"], Value::Bool(true), "s = {s}");
    }
}

#[test]
fn density_csv_and_idempotence() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = colorlie(&[
            "density",
            "--j",
            "j1",
            "--n",
            "2",
            "--range",
            "2",
            "--res",
            "21",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text.starts_with("x,y,p\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 1 + 21 * 21);
    // centre cell carries 2/(5π)
    let centre = text.lines().find(|l| l.starts_with("0,0,")).unwrap();
    assert_eq!(centre, "0,0,0.127324");
}

#[test]
fn json_outputs_are_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["maxima", "--j", "1", "--n", "2"],
        &["search", "--p", "1", "--q", "1"],
        &["braid-check", "--s", "6"],
        &["table", "--group", "z2xz3xz3"],
        &["report"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let mut files = Vec::new();
        for run in 0..2 {
            let p = dir.path().join(format!("{k}_{run}.json"));
            let mut full = args.to_vec();
            let ps = p.to_str().unwrap().to_string();
            full.extend(["--out", ps.as_str()]);
            assert!(colorlie(&full).status.success(), "{args:?}");
            files.push(fs::read(&p).unwrap());
        }
        if args[0] == "report" {
            // timings differ between runs; everything else must match
            let strip = |b: &[u8]| {
                let mut v: Value = serde_json::from_slice(b).unwrap();
                for c in v["checks"].as_array_mut().unwrap() {
                    c["seconds"] = Value::Null;
                }
                v
            };
            assert_eq!(strip(&files[0]), strip(&files[1]));
        } else {
            assert_eq!(files[0], files[1], "{args:?}");
        }
    }
}

#[test]
fn sequential_matches_parallel() {
    let a = colorlie(&["--sequential", "maxima", "--j", "j1"]).stdout;
    let b = colorlie(&["maxima", "--j", "j1"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn thread_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_colorlie"))
        .env("COLORLIE_THREADS", "2")
        .args(["majorana", "--N", "2", "--s", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_colorlie"))
        .env("COLORLIE_THREADS", "zero")
        .args(["majorana", "--N", "2", "--s", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn full_report_passes() {
    let v = json(&["report"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}
