use std::path::PathBuf;
use std::process::{Command, Output};

use rackforge::rack::{Rack, RackFile};
use serde_json::Value;

fn rackforge(args: &[&str], caps: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rackforge"));
    cmd.args(args).env_remove("RACKFORGE_CAPS");
    if let Some(c) = caps {
        cmd.env("RACKFORGE_CAPS", c);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rackforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_shape() {
    let r = report(&rackforge(&["typed", "--group", "S5", "--class", "(0 1 2 3)"], None));
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["result"]["status"], "TYPE_D");
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
    assert!(r.get("timing_ms").is_none());
    let r = report(&rackforge(&["--timing", "typed", "--group", "S5", "--class", "(0 1 2 3)"], None));
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn build_round_trip() {
    let path = scratch("s5.json");
    let p = path.to_str().unwrap();
    let r = report(&rackforge(&["build", "--conj", "S5", "(0 1 2 3)", "-o", p], None));
    assert_eq!(r["result"]["size"], 30);
    let file: RackFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let x = Rack::from_file(file.clone()).unwrap();
    assert_eq!(x.to_file(), file);
    let r = report(&rackforge(&["h2", p], None));
    assert_eq!((r["result"]["betti"].as_u64(), r["result"]["torsion"].as_array().map(Vec::len)), (Some(1), Some(1)));
    let r = report(&rackforge(&["build", "--affine", "5", "2"], None));
    assert_eq!(r["result"]["size"], 5);
    let r = report(&rackforge(&["build", "--thr", "A5", "--t", "2", "--ell", "e"], None));
    assert_eq!(r["result"]["size"], 60);
}

#[test]
fn commands_from_examples() {
    let r = report(&rackforge(&["h2", "--group", "S6", "--class", "(0 1)"], None));
    assert_eq!(r["result"]["betti"], 1);
    assert_eq!(r["result"]["torsion"], serde_json::json!([2]));
    let r = report(&rackforge(&["cocycles", "--group", "S5", "--class", "(0 1)(2 3 4)", "--m", "6"], None));
    assert_eq!(r["result"]["h2"]["factors"], serde_json::json!([6, 6]));
    assert_eq!(r["result"]["torsion"]["factors"], serde_json::json!([6]));
    let r = report(&rackforge(&["nichols", "--group", "S4", "--class", "(0 1)", "--cocycle", "chi"], None));
    assert_eq!((r["result"]["total"].as_u64(), r["result"]["top"].as_u64()), (Some(576), Some(12)));
    let r = report(&rackforge(&["typed", "--group", "M11", "--class", "(0 1 2 3 4 5 6 7 8 9 10)"], None));
    assert_eq!(r["result"]["status"], "NOT_TYPE_D");
    let trivial = scratch("trivial.json");
    std::fs::write(&trivial, r#"{"size": 3, "table": [[0,1,2],[0,1,2],[0,1,2]]}"#).unwrap();
    let r = report(&rackforge(&["typed", trivial.to_str().unwrap()], None));
    assert_eq!(r["result"]["status"], "NOT_TYPE_D");
}

#[test]
fn exit_codes() {
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(code(rackforge(&["h2", "/nonexistent/rack.json"], None)), 1);
    assert_eq!(code(rackforge(&["build", "--affine", "4", "2"], None)), 2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"size": 2, "table": [[1,1],[0,1]]}"#).unwrap();
    assert_eq!(code(rackforge(&["typed", bad.to_str().unwrap()], None)), 2);
    assert_eq!(code(rackforge(&["build", "--conj", "S5", "(0 1 2 3)"], Some(r#"{"rack_size": 10}"#))), 3);
    let spec = scratch("thr.json");
    std::fs::write(&spec, r#"{"L": "A5", "t": 4, "ell": "e"}"#).unwrap();
    let s = spec.to_str().unwrap();
    assert_eq!(code(rackforge(&["thr", s], None)), 0);
    assert_eq!(code(rackforge(&["thr", s, "--strict"], None)), 4);
}
