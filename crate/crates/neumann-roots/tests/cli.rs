//! End-to-end command-line behavior: exit codes, format switches,
//! determinism and JSON round-trips.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neumann-roots"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn exit_codes_track_verdicts() {
    assert_eq!(run(&["check", "--case", "S13L00"]).status.code(), Some(0));
    assert_eq!(run(&["check", "--case", "S3L02"]).status.code(), Some(1));
    // An n=3 class the symbolic engine cannot decide class-wide.
    assert_eq!(run(&["check", "--case", "S12L133"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["check"]).status.code(), Some(64));
    assert_eq!(run(&["check", "--no-such-flag"]).status.code(), Some(64));
    let bad_name = run(&["check", "--case", "S13L21"]);
    assert_eq!(bad_name.status.code(), Some(64));
    let err = String::from_utf8_lossy(&bad_name.stderr);
    assert!(
        err.contains("S<subset digits>L<placement digits>"),
        "malformed names are reported with the grammar: {err}"
    );
    assert_eq!(run(&["table", "--n", "6"]).status.code(), Some(64));
}

#[test]
fn help_shows_defaults_and_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("--seed 42"));
    assert!(text.contains("--samples 100"));
    assert!(text.contains("--polya-max 4"));
    assert!(text.contains("--pivot first"));
}

#[test]
fn selector_forms_are_equivalent() {
    let by_name = run(&["check", "--case", "S13L00", "--json"]);
    let by_parts = run(&[
        "check",
        "--n",
        "2",
        "--subset",
        "1,3",
        "--placement",
        "0,0",
        "--json",
    ]);
    assert_eq!(stdout(&by_name), stdout(&by_parts));
    assert_eq!(by_name.status.code(), by_parts.status.code());
}

#[test]
fn enumerate_counts() {
    for (n, expected) in [("1", 3), ("2", 10), ("3", 35)] {
        let out = run(&["enumerate", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).lines().count(), expected, "n={n}");
    }
}

#[test]
fn table_csv_shape() {
    let out = run(&["table", "--n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("case,verdict,fail_level,pf,duration_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9, "3 subsets x 3 placements");
    // Exactly the classically expected n=1 feasible cases.
    let feasible: Vec<&str> = rows
        .iter()
        .filter(|r| r.split(',').nth(1) == Some("1"))
        .map(|r| r.split(',').next().unwrap())
        .collect();
    assert_eq!(feasible, ["S1L2", "S2L0", "S12L1"]);
}

#[test]
fn n1_table_cross_validates() {
    let out = run(&["oracle", "--all", "--n", "1", "--samples", "50", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("9/9 agreements"));
}

#[test]
fn oracle_json_is_deterministic_and_round_trips() {
    let args = [
        "oracle", "--case", "S13L22", "--samples", "5", "--seed", "42", "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second), "same seed, same bytes");

    for line in stdout(&first).lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        let once = serde_json::to_string(&value).unwrap();
        let twice = serde_json::to_string(&serde_json::from_str::<serde_json::Value>(&once).unwrap())
            .unwrap();
        assert_eq!(once, twice, "re-serialization must be idempotent");
    }
}

#[test]
fn check_json_has_trace_schema() {
    let out = run(&["check", "--case", "S12L11", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["case"], "S12L11");
    assert_eq!(doc["verdict"], "infeasible");
    assert_eq!(doc["fail"]["step"], 3);
    assert_eq!(doc["config"]["polya_max"], 4);
    assert_eq!(doc["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn witness_command_reports() {
    let out = run(&[
        "witness", "--case", "S123L12", "--a", "0,1,2", "--lambda", "1/2,3/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("q^2    = 3/8, 1/4, 3/8"));
    assert!(text.contains("placement match: yes"));

    let refused = run(&["witness", "--case", "S13L01", "--seed", "42"]);
    assert_eq!(refused.status.code(), Some(1));
    let err = String::from_utf8_lossy(&refused.stderr);
    assert!(err.contains("infeasible"), "refusal explains itself: {err}");

    // Mismatched instance and placement is a usage error.
    let mismatch = run(&[
        "witness", "--case", "S13L11", "--a", "0,1,2", "--lambda", "1/4,3/2",
    ]);
    assert_eq!(mismatch.status.code(), Some(64));
}

#[test]
fn golden_mismatch_fails() {
    let dir = std::env::temp_dir().join("neumann-roots-golden-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong.csv");
    std::fs::write(&path, "case,verdict,step\nS13L00,0,1\n").unwrap();
    let out = run(&["table", "--n", "2", "--golden", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mismatch"));
}
