//! End-to-end tests of the `xcknot` binary: exit codes, report shapes,
//! reproducibility, and JSON round-trips.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};
use xcknot_core::algebra::Tensor;
use xcknot_core::scalar::parse_scalar;
use xcknot_core::sweedler::sweedler_spec;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests");
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn xcknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xcknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_builtin_symbolic_passes() {
    let out = xcknot(&["verify", "--xc", "sw:ex1", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("axiom XC3       PASS"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn verify_sampled_passes() {
    let out = xcknot(&["verify", "--xc", "sw:ex2", "--samples", "25", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_broken_structure_flags_invr() {
    let out = xcknot(&["verify", "--xc", &data("broken.json"), "--symbolic"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("axiom invR      FAIL"), "{text}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = xcknot(&["verify", "--xc", "no-such-file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solved_inverses_roundtrip_through_the_json_report() {
    let out = xcknot(&[
        "verify",
        "--xc",
        &data("ex1_no_inverses.json"),
        "--symbolic",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], serde_json::json!(true));
    // reparse the echoed Rinv and check R * Rinv = 1 (x) 1 exactly
    let spec = sweedler_spec();
    let params: BTreeSet<String> = ["l".to_string()].into_iter().collect();
    let rows = doc["Rinv"].as_array().unwrap();
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.as_array().unwrap().iter().enumerate() {
            let c = parse_scalar(cell.as_str().unwrap(), &params).unwrap();
            entries.push((vec![i as u8, j as u8], c));
        }
    }
    let r_inv = Tensor::from_entries(&spec, 2, entries).unwrap();
    let r = {
        let text = std::fs::read_to_string(data("ex1_no_inverses.json")).unwrap();
        let (x, solved) = xcknot_core::xc::read_xc_json(&text, "ex1").unwrap();
        assert!(solved.r_inv && solved.kappa_inv);
        x.r().clone()
    };
    assert_eq!(r.mul(&r_inv).unwrap(), Tensor::unit(&spec, 2));
}

#[test]
fn same_seed_gives_byte_identical_reports_across_thread_counts() {
    let run = |threads: &str| {
        stdout(&xcknot(&[
            "verify",
            "--xc",
            "sw:ex3",
            "--samples",
            "6",
            "--seed",
            "11",
            "--threads",
            threads,
            "--json",
        ]))
    };
    let a = run("1");
    let b = run("1");
    let c = run("4");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn invariant_prints_curl_value() {
    let out = xcknot(&[
        "invariant",
        "--xc",
        "sw:standard",
        "--diagram",
        "O+1 C- U+1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("framing 1"), "{text}");
    assert!(text.contains("coefficients: [1, 0, 0, 0]"), "{text}");
}

#[test]
fn invariant_checks_triviality_symbolically() {
    let out = xcknot(&[
        "invariant",
        "--xc",
        "sw:ex1",
        "--diagram",
        "figure8",
        "--check-triviality",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("triviality: EQUAL"));
}

#[test]
fn invariant_sampled_triviality_on_example4() {
    let out = xcknot(&[
        "invariant",
        "--xc",
        "sw:ex4",
        "--diagram",
        "curls(2)",
        "--samples",
        "10",
        "--seed",
        "1",
        "--check-triviality",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("EQUAL at every sample"));
}

#[test]
fn invariant_reads_diagram_files() {
    let out = xcknot(&[
        "invariant",
        "--xc",
        "sw:ex1",
        "--diagram",
        &data("diagrams.txt"),
        "--check-triviality",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("framing 1"));
    assert!(text.contains("framing 3"));
}

#[test]
fn invariant_specializes_with_at() {
    let out = xcknot(&[
        "invariant",
        "--xc",
        "sw:ex3",
        "--diagram",
        "figure8",
        "--at",
        "l1=2,l2=1,l3=0,l4=1,l5=0,l6=0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("coefficients: [1, 0, 0, 0]"));
}

#[test]
fn equations_emits_the_forty_unknown_system() {
    let dir = std::env::temp_dir().join("xcknot-test-eqs.json");
    let path = dir.to_string_lossy().into_owned();
    let out = xcknot(&["equations", "--algebra", "sw", "-o", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("40 unknowns"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["vars"].as_array().unwrap().len(), 40);
    assert!(!doc["gens"].as_array().unwrap().is_empty());
    let _ = std::fs::remove_file(&path);
}

#[test]
fn groebner_self_certifies_and_decides_membership() {
    let out = xcknot(&["groebner", "--ideal", &data("cyclic3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("self-certificate (inputs reduce to 0): ok"));

    let out = xcknot(&[
        "groebner",
        "--ideal",
        &data("cyclic3.json"),
        "--member",
        "x + y + z",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("member: true"));

    let out = xcknot(&[
        "groebner",
        "--ideal",
        &data("cyclic3.json"),
        "--member",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("member: false"));
}

#[test]
fn groebner_resource_cap_exits_3() {
    let out = xcknot(&[
        "groebner",
        "--ideal",
        &data("cyclic3.json"),
        "--max-basis",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
