use std::path::PathBuf;
use std::process::{Command, Output};

const EXAMPLE: &str = r#"{"construction":"II","field":"gf(2,9)","n":7,"k":5,"a":3,"s":1}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rs-repair"))
        .args(args)
        .env("RS_REPAIR_NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rs-repair-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_example_reports_36_bits() {
    let o = run(&["verify", "--spec", EXAMPLE, "--trials", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.matches("36 bits").count(), 7, "{out}");
    assert!(out.contains("7 of 7 failure sets passed"));
}

#[test]
fn verify_reads_spec_file() {
    let path = scratch("example.json");
    std::fs::write(&path, EXAMPLE).unwrap();
    let o = run(&["verify", "--spec", path.to_str().unwrap(), "--trials", "2", "--failed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("failed=[3]"));
}

#[test]
fn duplicated_polynomial_fails_full_rank() {
    let o = run(&["scheme", "build", "--spec", EXAMPLE, "--failed", "0", "--format", "json", "--explicit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut custom = v["schemes"][0]["explicit"].clone();
    assert_eq!(custom["construction"], "custom");
    let first = custom["polys"][0][0].clone();
    custom["polys"][0][1] = first;

    let o = run(&["verify", "--spec", &custom.to_string(), "--trials", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FullRankViolated"), "{}", stdout(&o));
    assert!(stderr(&o).contains("FullRankViolated"));
}

#[test]
fn explicit_spec_replays_with_same_bandwidth() {
    let o = run(&["scheme", "build", "--spec", EXAMPLE, "--failed", "4", "--format", "json", "--explicit"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let custom = v["schemes"][0]["explicit"].to_string();
    let o = run(&["verify", "--spec", &custom, "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("36 bits"));
}

#[test]
fn bad_spec_exits_2() {
    let o = run(&["verify", "--spec", r#"{"construction":"II","field":"gf(2,9)","n":7,"k":5,"a":4,"s":1}"#]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = run(&["verify", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["field", "--spec", "gf(2,0)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn same_seed_same_bytes() {
    let spec = r#"{"construction":"III","field":"gf(2,9)","n":7,"k":3,"a":3,"e":2}"#;
    let a = run(&["verify", "--spec", spec, "--seed", "11", "--trials", "3", "--format", "json"]);
    let b = run(&["verify", "--spec", spec, "--seed", "11", "--trials", "3", "--format", "json"]);
    let c = run(&["verify", "--spec", spec, "--seed", "11", "--trials", "3", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);

    let d1 = run(&["demo", "--spec", EXAMPLE, "--seed", "5"]);
    let d2 = run(&["demo", "--spec", EXAMPLE, "--seed", "5"]);
    let d3 = run(&["demo", "--spec", EXAMPLE, "--seed", "6"]);
    assert_eq!(d1.stdout, d2.stdout);
    assert_ne!(d1.stdout, d3.stdout);
}

#[test]
fn demo_shows_transcripts_and_recovers() {
    let o = run(&["demo", "--spec", EXAMPLE, "--failed", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["correct"], true);
    assert_eq!(v["symbols"], 36);
    assert_eq!(v["transcripts"].as_array().unwrap().len(), 6);
    assert_eq!(v["recovered"][0], v["codeword"][2]);

    let o = run(&["demo", "--spec", EXAMPLE, "--zero"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result     match"));

    let o = run(&["demo", "--spec", EXAMPLE, "--message", "1,2,3,4,5", "--failed", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["demo", "--spec", EXAMPLE, "--message", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_empty_range_prints_header_only() {
    let o = run(&["sweep", "--n", "12", "--k", "10", "--ell-min", "9", "--ell-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "scheme,n,k,e,d,q,ell,a,s,bits,normalized,feasible,notes\n");
}

#[test]
fn sweep_csv_and_json() {
    let o = run(&["sweep", "--n", "14", "--k", "10", "--ell-min", "8", "--ell-max", "8"]);
    let out = stdout(&o);
    let row = out.lines().find(|l| l.starts_with("one_coset,")).expect("one_coset row");
    assert_eq!(row.split(',').nth(9), Some("52"));

    let path = scratch("sweep.json");
    let o = run(&[
        "sweep", "--n", "12", "--k", "8", "--ell-min", "2^3", "--ell-max", "2^4", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let points = v["points"].as_array().unwrap();
    assert!(points.iter().all(|p| {
        let ell: u64 = p["ell"].as_str().unwrap().parse().unwrap();
        (8..=16).contains(&ell)
    }));
    assert!(points.iter().any(|p| p["scheme"] == "msr"));

    let o = run(&["sweep", "--n", "12", "--k", "8", "--ell-max", "2^x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_and_cosets() {
    let o = run(&["field", "--spec", "gf(2,9)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "512");
    assert_eq!(v["subfield_degrees"], serde_json::json!([1, 3, 9]));

    let o = run(&["cosets", "--spec", "gf(2,12)", "--a", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("273 of size 15"), "{out}");
    assert!(out.contains("verified exhaustively"));

    let o = run(&["cosets", "--spec", "gf(2,9)", "--a", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
