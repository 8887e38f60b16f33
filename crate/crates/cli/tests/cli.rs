//! Interface tests: drive the compiled binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudocheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn analyze_human_forest() {
    let out = run(&["analyze", data("forest_5x12.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("matrix: 5 rows, 12 cols, rank 5"), "{text}");
    assert!(text.contains("forest = true"), "{text}");
    assert!(text.contains("verdict: perfect"), "{text}");
    assert!(text.contains("kept rows: 1 2 3 4 5"), "{text}");
}

#[test]
fn analyze_json_redundant_round_trips() {
    let out = run(&[
        "analyze",
        data("redundant_6x12.txt").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matrix"]["rank"], 5);
    assert_eq!(v["graph"]["forest"], false);
    assert_eq!(v["graph"]["girth"], 4);
    assert_eq!(v["verdict"]["verdict"], "imperfect");
    assert_eq!(
        v["verdict"]["witness"],
        serde_json::json!([8, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2])
    );
    // Parsing the emitted report back and re-emitting changes nothing.
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn analyze_writes_dot() {
    let dot_path = std::env::temp_dir().join(format!("pseudocheck_dot_{}.dot", std::process::id()));
    let out = run(&[
        "analyze",
        data("tree_3x7.txt").to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    std::fs::remove_file(&dot_path).ok();
    assert!(dot.starts_with("graph tanner {"), "{dot}");
    assert!(dot.contains("x7"), "{dot}");
    assert!(dot.contains("f3"), "{dot}");
}

#[test]
fn analyze_guard_exceeded_is_partial_with_exit_3() {
    let out = run(&[
        "analyze",
        data("hamming_3x7.txt").to_str().unwrap(),
        "--dual-guard",
        "2",
    ]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: unresolved"), "{text}");
    assert!(text.contains("partial:"), "{text}");
}

#[test]
fn analyze_out_of_hypothesis_is_a_verdict() {
    let out = run(&["analyze", data("hamming_3x7.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: out-of-hypothesis"));
}

#[test]
fn verify_pc_pass_and_fail() {
    let witness = "2 2 8 8 8 8 2 2 2 2 2 2";
    let out = run(&[
        "verify-pc",
        data("redundant_6x12.txt").to_str().unwrap(),
        witness,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "pass");

    let out = run(&[
        "verify-pc",
        data("forest_5x12.txt").to_str().unwrap(),
        witness,
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "fail at row 2, position 6 (cone)");
}

#[test]
fn verify_pc_json_fields() {
    let out = run(&[
        "verify-pc",
        data("forest_5x12.txt").to_str().unwrap(),
        "2 2 8 8 8 8 2 2 2 2 2 2",
        "--json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_pseudocodeword"], false);
    assert_eq!(v["failing_row"], 2);
    assert_eq!(v["failing_position"], 6);
    assert_eq!(v["failing_kind"], "cone");
}

#[test]
fn verify_pc_certificates() {
    let zero = "0 0 0 0 0 0 0 0 0 0 0 0";
    let out = run(&[
        "verify-pc",
        data("forest_5x12.txt").to_str().unwrap(),
        zero,
        "--certificate",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("empty combination"));

    // A single codeword reduces to itself with coefficient 1.
    let h = pseudocheck::samples::forest_5x12();
    let word = h
        .null_space_codewords(20)
        .unwrap()
        .into_iter()
        .find(|w| !w.is_zero())
        .unwrap();
    let vector: Vec<String> = (0..12)
        .map(|i| if word.bits().get(i) { "1".into() } else { "0".into() })
        .collect();
    let out = run(&[
        "verify-pc",
        data("forest_5x12.txt").to_str().unwrap(),
        &vector.join(" "),
        "--certificate",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("reduction: 1 x"), "{}", stdout(&out));
}

#[test]
fn verify_pc_length_mismatch_is_input_error() {
    let out = run(&[
        "verify-pc",
        data("forest_5x12.txt").to_str().unwrap(),
        "1 2 3",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn enumerate_bound_zero_and_formats_agree() {
    let out = run(&[
        "enumerate",
        data("cycle_4x7.txt").to_str().unwrap(),
        "--bound",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0 0 0 0 0 0 0");

    let dense = run(&[
        "enumerate",
        data("cycle_4x7.txt").to_str().unwrap(),
        "--bound",
        "2",
    ]);
    let alist = run(&[
        "enumerate",
        data("cycle_4x7.alist").to_str().unwrap(),
        "--bound",
        "2",
    ]);
    assert_eq!(code(&dense), 0);
    assert_eq!(code(&alist), 0);
    assert_eq!(stdout(&dense), stdout(&alist));
    assert!(!stdout(&dense).is_empty());
}

#[test]
fn enumerate_irreducible_only_on_forest_is_empty() {
    let out = run(&[
        "enumerate",
        data("forest_5x12.txt").to_str().unwrap(),
        "--bound",
        "2",
        "--irreducible-only",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn enumerate_json_reports_codewords_at_bound_one() {
    let out = run(&[
        "enumerate",
        data("tree_3x7.txt").to_str().unwrap(),
        "--bound",
        "1",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["vectors"].as_array().unwrap().len(), 16);
}

#[test]
fn enumerate_via_covers_budget_truncation() {
    let out = run(&[
        "enumerate",
        data("cycle_4x7.txt").to_str().unwrap(),
        "--via-covers",
        "2",
        "--cover-budget",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("truncated"), "{}", stderr(&out));
    // The degree-1 cover is within budget, so the codewords still print.
    assert!(stdout(&out).contains("0 0 0 0 0 0 0"));
}

#[test]
fn witness_matches_printed_example() {
    let out = run(&[
        "witness",
        data("redundant_6x12.txt").to_str().unwrap(),
        "--reference",
        data("forest_5x12.txt").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("witness: 8 2 2 2 2 2 2 2 2 2 2 2"), "{text}");
    assert!(text.contains("pivotal row: 2 (d = 4)"), "{text}");
    assert!(text.contains("on reference: fail at row 2"), "{text}");
    assert!(text.contains("on input: pass"), "{text}");
}

#[test]
fn witness_not_applicable_on_forest() {
    let out = run(&["witness", data("forest_5x12.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not applicable"));
}

#[test]
fn witness_rejects_cyclic_reference() {
    let out = run(&[
        "witness",
        data("cycle_4x7.txt").to_str().unwrap(),
        "--reference",
        data("stacked_7x7.txt").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cycle"), "{}", stderr(&out));
}

#[test]
fn witness_out_of_hypothesis() {
    let out = run(&["witness", data("hamming_3x7.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("no cycle-free representation"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn decode_sim_is_deterministic() {
    let path = data("tree_3x7.txt");
    let args = [
        "decode-sim",
        path.to_str().unwrap(),
        "--p",
        "0.05",
        "--trials",
        "25",
        "--seed",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "seed,p,converged,iterations,correct,nearest_pc_index"
    );
    assert_eq!(lines.count(), 25);
}

fn csv_counts(out: &Output) -> (usize, usize, usize) {
    let text = stdout(out);
    let (mut rows, mut converged, mut correct) = (0, 0, 0);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        rows += 1;
        converged += usize::from(fields[2] == "true");
        correct += usize::from(fields[4] == "true");
    }
    (rows, converged, correct)
}

#[test]
fn decode_sim_forest_converges_at_low_noise() {
    let out = run(&[
        "decode-sim",
        data("forest_5x12.txt").to_str().unwrap(),
        "--p",
        "0.01",
        "--trials",
        "1000",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0);
    let (rows, converged, _) = csv_counts(&out);
    assert_eq!(rows, 1000);
    assert!(converged >= 990, "only {converged}/1000 trials converged");
}

#[test]
fn decode_sim_stacked_rows_never_hurt() {
    // Same crossover and seed means the same channel realizations, since
    // both codes have length 7 and trials flip bits before decoding.
    let run_on = |file: &str| {
        let path = data(file);
        let out = run(&[
            "decode-sim",
            path.to_str().unwrap(),
            "--p",
            "0.08",
            "--trials",
            "10000",
            "--seed",
            "1",
        ]);
        assert_eq!(code(&out), 0);
        csv_counts(&out)
    };
    let (rows_c, _, correct_cycle) = run_on("cycle_4x7.txt");
    let (rows_s, _, correct_stacked) = run_on("stacked_7x7.txt");
    assert_eq!(rows_c, 10000);
    assert_eq!(rows_s, 10000);
    assert!(
        correct_stacked >= correct_cycle,
        "stacked {correct_stacked}/10000 vs cycle {correct_cycle}/10000"
    );
    // The gap is the point: the cycle representation does fail sometimes.
    assert!(correct_cycle < 10000, "expected decoding errors at p = 0.08");
}

#[test]
fn decode_sim_rejects_bad_crossover() {
    let out = run(&[
        "decode-sim",
        data("tree_3x7.txt").to_str().unwrap(),
        "--p",
        "0.6",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn input_errors_exit_2() {
    let out = run(&["analyze", data("malformed.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let out = run(&["analyze", data("no_such_file.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}
