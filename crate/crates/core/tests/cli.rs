use std::path::PathBuf;
use std::process::Command;

use proofnet_qec::cli::main_with_args;
use proofnet_qec::compiler::{compile_net, OrderingChoice};
use proofnet_qec::net::{apply_reduction, find_redexes, parse_net};

fn net(name: &str) -> String {
    format!("{}/nets/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["pnqec"];
    full.extend_from_slice(args);
    let code = main_with_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, _) = run(&a);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn compile_example() {
    let (code, v) = json(&["compile", &net("ex51.net")]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["generators"].as_array().unwrap().len(), 8);
    assert_eq!(r["rank"], 8);
    assert_eq!(r["codespace_dimension"], "2");
    assert_eq!(r["wires"]["blocks"][0]["len"], 9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.net");
    std::fs::write(&empty, "# nothing\n").unwrap();
    assert_eq!(run(&["validate", empty.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["validate", "/no/such/file.net"]).0, 3);
    assert_eq!(run(&["validate", &net("cycle.net")]).0, 1);
    assert_eq!(run(&["compile", &net("cycle.net")]).0, 1);
    assert_eq!(run(&["validate", &net("ex52.net")]).0, 0);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--tolerance", "0", "validate", &net("ex51.net")]).0, 2);
    assert_eq!(run(&["--max-qubits", "21", "spectrum", &net("ex51.net")]).0, 2);
    assert_eq!(run(&["--max-qubits", "4", "spectrum", &net("ex51.net")]).0, 2);
    assert_eq!(run(&["reduce", &net("axiom.net")]).0, 2);
    assert_eq!(run(&["reduce", "--redex", "5", &net("ex52.net")]).0, 2);
    assert_eq!(run(&["majorana-check", "--length", "1"]).0, 2);
    let bad = dir.path().join("bad.net");
    std::fs::write(&bad, "link a ax\nedge e a -> b : X\n").unwrap();
    let (code, _, err) = run(&["paths", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-reduction"));
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["compile", "NET"],
        vec!["verify-reduction", "--all", "NET"],
        vec!["spectrum", "NET"],
        vec!["paths", "NET"],
    ] {
        let p = net("ex52.net");
        let args: Vec<&str> = args.iter().map(|a| if *a == "NET" { p.as_str() } else { a }).collect();
        let a = run(&[&args[..], &["--format", "json"]].concat());
        let b = run(&[&args[..], &["--format", "json"]].concat());
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }
    let a = run(&["fuzz", "--seed", "3", "--count", "5", "--format", "json"]);
    assert_eq!(a, run(&["fuzz", "--seed", "3", "--count", "5", "--format", "json"]));
}

#[test]
fn reduce_then_compile_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, k) in [("ex52.net", 0), ("chain3.net", 2), ("wire4.net", 1)] {
        let out = dir.path().join(format!("{name}.reduced"));
        let (code, text, _) = run(&["reduce", "--redex", &k.to_string(), &net(name), "-o", out.to_str().unwrap()]);
        assert_eq!(code, 0, "{text}");
        let written = parse_net(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let original = parse_net(&std::fs::read_to_string(net(name)).unwrap()).unwrap();
        let in_memory = apply_reduction(&original, &find_redexes(&original)[k]).unwrap().after;
        assert_eq!(written, in_memory);
        let a = compile_net(&written, &OrderingChoice::Linear).unwrap();
        let b = compile_net(&in_memory, &OrderingChoice::Linear).unwrap();
        assert_eq!(a.code.paulis(), b.code.paulis());
        let (_, from_file) = json(&["compile", out.to_str().unwrap()]);
        assert_eq!(from_file["result"]["generators"].as_array().unwrap().len(), a.code.generators.len());
    }
}

#[test]
fn reduce_reports_correspondence() {
    let (code, v) = json(&["reduce", &net("wire4.net")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["redex"]["type"], "axiom");
    assert!(v["result"]["net"].as_str().unwrap().contains("link"));
}

#[test]
fn verify_reduction_checklist() {
    let (code, out, _) = run(&["verify-reduction", &net("ex52.net")]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("[PASS]").count(), 7);
    assert!(!out.contains("[FAIL]"));
    assert!(out.contains("C: f7/0 f7/1 f8/0 f8/1"));
    let (code, v) = json(&["verify-reduction", "--ordering", "declaration", "--all", &net("chain3.net")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["reductions"].as_array().unwrap().len(), 6);
}

#[test]
fn codespace_spectrum_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = run(&["codespace", &net("ex51.net"), "--dump", d]);
    assert_eq!(code, 0);
    assert!(out.contains("[PASS]"));
    let dumped = std::fs::read_to_string(dir.path().join("codespace_0.txt")).unwrap();
    assert!(dumped.lines().count() > 0);
    let (code, v) = json(&["spectrum", &net("wire3.net"), "--dump", d]);
    assert_eq!(code, 0);
    let values: Vec<f64> = v["result"]["distinct"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p[0].as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    for (v, want) in values.iter().zip([-2.0, 0.0, 2.0]) {
        assert!((v - want).abs() < 1e-9);
    }
    assert!(dir.path().join("hamiltonian.txt").exists());
}

#[test]
fn fuzz_and_majorana() {
    let (code, out, _) = run(&["fuzz", "--seed", "7", "--count", "50", "--max-qubits", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("50/50 nets verified"), "{out}");
    for l in ["2", "3", "4", "5"] {
        let (code, out, _) = run(&["majorana-check", "--length", l]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("[FAIL]"));
    }
}

#[test]
fn binary_runs() {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_pnqec"));
    let out = Command::new(&bin).args(["compile", &net("ex51.net")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("codespace dimension: 2"));
    let out = Command::new(&bin).args(["validate", "/no/such.net"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
