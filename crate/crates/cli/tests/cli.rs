use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_solvcurv"))
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().expect("spawn solvcurv");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(input) = stdin {
            pipe.write_all(input).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

/// Runs `stages` as a shell-style pipeline, returning the last output.
fn pipeline(stages: &[&[&str]]) -> Output {
    let mut input: Option<Vec<u8>> = None;
    let mut last = None;
    for (n, args) in stages.iter().enumerate() {
        let out = run(args, input.as_deref());
        if n + 1 < stages.len() {
            assert!(out.status.success(), "stage {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
        }
        input = Some(out.stdout.clone());
        last = Some(out);
    }
    last.unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

const BUILD: &[&str] = &["build", "orthogonal", "3", "5"];
const ASSOC: &[&str] = &["associate", "--preset", "wb:1"];
const ATTACH: &[&str] = &["attach", "--z", "1,1,0"];

#[test]
fn example_pipeline_is_einstein() {
    let out = pipeline(&[BUILD, ASSOC, ATTACH, &["verify"]]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "solvcurv/1");
    assert_eq!(v["pass"], true);
    assert!(v["einstein_constant"].as_f64().unwrap() < 0.0);
    assert_eq!(v["dim"], 13);
}

#[test]
fn symmetric_baseline_is_einstein() {
    let out = pipeline(&[BUILD, &["verify"]]);
    assert!(out.status.success());
    assert_eq!(json(&out)["iwasawa"], true);
}

#[test]
fn probe_flips_sign_under_attach() {
    let probe: &[&str] = &["probe", "--plane", "U27+U28,U37+U38"];
    let before = json(&pipeline(&[BUILD, ASSOC, probe]));
    let after = json(&pipeline(&[BUILD, ASSOC, ATTACH, probe]));
    assert!(before["k"].as_f64().unwrap() > 1e-9);
    assert!(after["k"].as_f64().unwrap() < -1e-9);
    assert!(after["u_norm"].as_f64().unwrap() < 1e-10);
}

#[test]
fn output_is_deterministic() {
    let args = ["run", "--family", "so_star", "--n", "6", "--preset", "canonical", "--z", "1,0,1", "--seed", "7"];
    let a = run(&args, None);
    let b = run(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn run_matches_piped_composition() {
    let direct = json(&run(&["run", "--family", "orthogonal", "--p", "3", "--q", "5", "--preset", "wb:1", "--z", "1,1,0"], None));
    let piped = json(&pipeline(&[BUILD, ASSOC, ATTACH, &["verify"]]));
    let c1 = direct["report"]["einstein_constant"].as_f64().unwrap();
    let c2 = piped["einstein_constant"].as_f64().unwrap();
    // the piped form goes through 12-digit JSON between stages
    assert!((c1 - c2).abs() < 1e-10);
    assert_eq!(direct["commute"]["commute"], true);
    assert_eq!(direct["dim"], piped["dim"]);
}

#[test]
fn sweep_row_counts() {
    let out = run(&["sweep", "--family", "orthogonal", "--p", "3", "--q", "5"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r.ends_with(",true")));

    let out = run(&["sweep", "--family", "sl_quaternion", "--n", "3", "--format", "json"], None);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["associates"], 1);
    assert_eq!(v["attached"], 3);
}

#[test]
fn errors_are_structured() {
    let out = run(&["attach", "--z", "1,1", "--family", "orthogonal", "--p", "3", "--q", "5"], None);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "error");
    assert_eq!(err["error"]["type"], "ParamError");

    // flagging a single vector of a bracket pair breaks parity
    let out = pipeline(&[&["build", "orthogonal", "2", "3"], &["associate", "--flags", "U15"]]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["type"], "ParityError");

    let out = run(&["verify"], Some(b"not json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_einstein_input_fails_verify() {
    // three-dimensional Heisenberg algebra
    let doc = r#"{"labels":["x","y","z"],"dim_a":0,"dim_n":3,"structure":[[0,1,2,1.0]]}"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("heis.json");
    std::fs::write(&path, doc).unwrap();
    let out = run(&["verify", "--input", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["iwasawa"], false);
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 3] = [
        (&["build", "orthogonal", "2", "3"], include_str!("golden/build_orthogonal_2_3.json")),
        (&["run", "--family", "orthogonal", "--p", "3", "--q", "5", "--preset", "wb:1", "--z", "1,1,0", "--format", "text"], include_str!("golden/run_example_text.txt")),
        (&["roots", "--family", "sl_quaternion", "--n", "3", "--z", "1,0"], include_str!("golden/roots_sl_quaternion_3.json")),
    ];
    for (args, want) in cases {
        let out = run(args, None);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{args:?}");
    }
}

#[test]
fn csv_and_text_formats() {
    let out = run(&["build", "orthogonal", "2", "3", "--format", "csv"], None);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("i,j,k,value\n"));
    let out = run(&["fingerprint", "--family", "sl_quaternion", "--n", "2", "--format", "text"], None);
    assert!(String::from_utf8(out.stdout).unwrap().contains("nilpotency class 1"));
}
