//! End-to-end tests of the `irrep-trace` binary: advertised invocations,
//! exit codes (0 ok / 1 config / 2 divergent-where-required / 3 verify
//! disagreement), output shapes, and determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irrep-trace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary launches")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn trace_su2_inline_element() {
    let out = run(&["trace", "--group", "su2", "--element", r#"{"J3":[0,0.5]}"#, "--irrep", "2j=4"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "trace");
    assert_eq!(v["group"], "su2");
    let result = &v["results"][0];
    assert_eq!(result["irrep"], "2j=4");
    assert_eq!(result["status"], "CONVERGENT");
    // Tr over the five-dimensional irrep of exp(i J3/2): 1 + 2cos(1/2) + 2cos(1)
    let expected = 1.0 + 2.0 * 0.5f64.cos() + 2.0 * 1.0f64.cos();
    let got = result["value"][0].as_f64().unwrap();
    assert!((got - expected).abs() < 1e-12, "got {got}, expected {expected}");
    assert!(result["value"][1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn trace_elliptic_su11_reports_divergent_and_exits_2() {
    // A pure K1 element is elliptic (|ε| = 1): the ladder trace diverges.
    let out = run(&[
        "trace", "--group", "su11", "--element", r#"{"K1":[2.0,0]}"#, "--irrep", "k=1,sign=+",
    ]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["results"][0]["status"], "DIVERGENT");
    assert!(v["results"][0].get("value").is_none());
}

#[test]
fn invalid_inputs_exit_1() {
    let cases: Vec<Vec<&str>> = vec![
        // malformed irrep label
        vec!["trace", "--group", "su2", "--element", r#"{"J3":[0,0.5]}"#, "--irrep", "bogus"],
        // generator name from the wrong algebra
        vec!["trace", "--group", "su2", "--element", r#"{"K3":[1,0]}"#, "--irrep", "2j=2"],
        // su3 label on an su2 element
        vec!["trace", "--group", "su2", "--element", r#"{"J3":[0,0.5]}"#, "--irrep", "p=1,q=0"],
        // unknown subcommand
        vec!["frobnicate"],
        // missing required data
        vec!["work-stats", "--k", "1", "--beta", "1"],
    ];
    for args in &cases {
        let out = run(args);
        assert_eq!(code(&out), 1, "args {args:?}: stderr {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["trace", "--help"])), 0);
}

#[test]
fn verify_passes_then_fails_on_impossible_tolerance() {
    let out = run(&["verify", "--group", "su2", "--samples", "3", "--seed", "11"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples"], 3);

    let out = run(&["verify", "--group", "su2", "--samples", "3", "--seed", "11", "--tol", "1e-30"]);
    assert_eq!(code(&out), 3);
    let v = stdout_json(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn emitted_element_round_trips_to_identical_output() {
    let first = run(&["trace", "--group", "su3", "--element",
        r#"{"T3":[0.3,0.1],"T8":[-0.2,0],"T5":[0.1,-0.05]}"#,
        "--irrep", "p=1,q=1", "--irrep", "p=2,q=0"]);
    assert_eq!(code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let echoed = stdout_json(&first)["element"].to_string();

    let second = run(&["trace", "--element", &echoed, "--irrep", "p=1,q=1", "--irrep", "p=2,q=0"]);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout, "re-running on the echoed element must reproduce bytes");

    let third = run(&["trace", "--element", &echoed, "--irrep", "p=1,q=1", "--irrep", "p=2,q=0"]);
    assert_eq!(second.stdout, third.stdout, "repeated runs must be byte-identical");
}

#[test]
fn generating_zero_su3_element_matches_closed_product() {
    let out = run(&[
        "generating", "--group", "su3", "--element", r#"{"T3":[0,0]}"#,
        "--t", "[0.3,0]", "--t", "[0.2,0]",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "CONVERGENT");
    // At x = 0 the trace is (1-t)^{-3} (1-t')^{-3}.
    let expected = (1.0f64 - 0.3).powi(-3) * (1.0f64 - 0.2).powi(-3);
    let got = v["value"][0].as_f64().unwrap();
    assert!((got - expected).abs() < 1e-10 * expected, "got {got}, expected {expected}");
}

#[test]
fn scan_csv_has_header_and_full_grid() {
    let out = run(&[
        "scan-zeros", "--function", "partition", "--k", "0.5",
        "--element", r#"{"K3":[2,0]}"#,
        "--grid", "0.2,1.4,-0.5,0.5", "--res", "6,5",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "re,im,status,value_re,value_im,winding");
    assert_eq!(lines.len(), 1 + 6 * 5, "one row per cell");
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 6, "six fields: {line}");
    }
    // Z(β) > 0 on this real-β window: no zero/pole candidates.
    assert!(lines[1..].iter().all(|l| l.split(',').nth(2) == Some("value")));
}

#[test]
fn scan_json_finds_partition_pole_at_i_pi() {
    let out = run(&[
        "scan-zeros", "--function", "partition", "--k", "0.5",
        "--element", r#"{"K3":[2,0]}"#,
        "--grid", "-0.4,0.4,2.7,3.6", "--res", "9",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let candidates = v["candidates"].as_array().expect("candidate list");
    let hit = candidates.iter().any(|c| {
        let re = c["re"].as_f64().unwrap_or(f64::NAN);
        let im = c["im"].as_f64().unwrap_or(f64::NAN);
        (re.powi(2) + (im - std::f64::consts::PI).powi(2)).sqrt() < 1e-3
    });
    assert!(hit, "expected a candidate near iπ, got {candidates:?}");
}

#[test]
fn work_stats_chi_at_zero_is_exactly_one() {
    let out = run(&[
        "work-stats", "--k", "0.5", "--beta", "1.0",
        "--h-initial", r#"{"K3":[2,0]}"#, "--h-final", r#"{"K3":[2.5,0]}"#,
        "--u", "[0,0]", "--u", "[0.3,0]",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["samples"][0]["u"], serde_json::json!([0.0, 0.0]));
    assert_eq!(v["samples"][0]["value"], serde_json::json!([1.0, 0.0]), "χ(0) must be exactly [1.0, 0.0]");
    let residual = v["jarzynski"]["residual"].as_f64().unwrap();
    assert!(residual < 1e-12, "Jarzynski residual {residual}");
    assert!(v["z_initial"].as_f64().unwrap() > 0.0);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(br#"{"samples": 2}"#)
        .unwrap();
    let out = run(&[
        "verify", "--group", "su2", "--samples", "50",
        "--config", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["samples"], 2, "file config must win over the flag");
}

#[test]
fn out_flag_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let out = run(&[
        "trace", "--group", "su2", "--element", r#"{"J3":[0,0.5]}"#, "--irrep", "2j=4",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).expect("output file written");
    let v: Value = serde_json::from_str(&text).expect("file holds JSON");
    assert_eq!(v["results"][0]["irrep"], "2j=4");
    assert!(text.ends_with('\n'), "file output ends with a newline");
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n.to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty(), "temp files must be renamed away: {leftovers:?}");
}

#[test]
fn character_su11_mixes_values_and_divergent_entries() {
    // |ε| = 1: divergent ladder; |ε| < 1 converges.
    let diverging = run(&["character", "--group", "su11", "--eps", "[1,0]", "--irrep", "k=1,sign=+"]);
    assert_eq!(code(&diverging), 2);
    assert_eq!(stdout_json(&diverging)["results"][0]["status"], "DIVERGENT");

    let fine = run(&["character", "--group", "su11", "--eps", "[0.5,0]", "--irrep", "k=1,sign=+"]);
    assert_eq!(code(&fine), 0);
    let v = stdout_json(&fine);
    // ε² / (1 - ε²) = 0.25 / 0.75
    let got = v["results"][0]["value"][0].as_f64().unwrap();
    assert!((got - 1.0 / 3.0).abs() < 1e-14);
}
