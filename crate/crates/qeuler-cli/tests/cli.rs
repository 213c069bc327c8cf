//! End-to-end tests of the `qeuler` binary: output goldens, exit-status
//! contract, cache round-trips, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn qeuler(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(args)
        .current_dir(dir)
        .env_remove("QEULER_CACHE")
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

fn tmpdir() -> tempfile::TempDir {
    tempfile::tempdir().expect("temp dir")
}

#[test]
fn compute_reproduces_the_displayed_polynomial() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["compute", "5", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "E[5|3](q) = q + 2*q^2 + 2*q^3 + 2*q^4 + q^5 + q^6\ncount = 9\n"
    );
}

#[test]
fn compute_boundary_condition() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["compute", "0", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "E[0|2](q) = 1\ncount = 1\n");
}

#[test]
fn compute_check_agrees_with_the_oracle() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["compute", "4", "3", "--check"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "E[4|3](q) = q + q^2 + q^3\ncount = 3\noracle agreement: yes\n"
    );
}

#[test]
fn compute_oracle_flag_matches_the_recursion() {
    let dir = tmpdir();
    let via_oracle = qeuler(dir.path(), &["compute", "7", "2", "--oracle"]);
    let via_recursion = qeuler(dir.path(), &["compute", "7", "2"]);
    assert_eq!(code(&via_oracle), 0);
    assert_eq!(stdout(&via_oracle), stdout(&via_recursion));
    assert!(stdout(&via_oracle).contains("count = 272"));
}

#[test]
fn compute_rejects_periods_below_two() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["compute", "5", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn compute_oracle_budget_exceeded_is_exit_4() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["compute", "11", "2", "--oracle"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn table_csv_golden() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["table", "3", "5", "--format=csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n,k,coeffs,count\n\
         0,3,1,1\n\
         1,3,1,1\n\
         2,3,1,1\n\
         3,3,1,1\n\
         4,3,0;1;1;1,3\n\
         5,3,0;1;2;2;2;1;1,9\n"
    );
}

#[test]
fn table_plain_small() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["table", "2", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "E[0|2](q) = 1  count = 1\nE[1|2](q) = 1  count = 1\n"
    );
}

#[test]
fn table_json_records_are_valid() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["table", "2", "7", "--format=json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON row"))
        .collect();
    assert_eq!(rows.len(), 8);
    let last = &rows[7];
    assert_eq!(last["n"], 7);
    assert_eq!(last["k"], 2);
    assert_eq!(last["count"], "272");
    assert!(last["coeffs"].is_array());
}

#[test]
fn verify_proved_theorem_all_holds() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &["verify", "--k=3", "--max-N=8", "--claims=THM_BRACKET_POWER"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(!text.is_empty());
    for line in text.lines() {
        assert!(line.contains(": holds"), "{line}");
    }
}

#[test]
fn verify_nonprime_period_is_inapplicable() {
    let dir = tmpdir();
    let out = qeuler(dir.path(), &["verify", "--k=4", "--max-N=8"]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines() {
        assert!(line.ends_with("inapplicable"), "{line}");
    }
}

#[test]
fn verify_tangent_witnesses_are_the_genocchi_numbers() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &["verify", "--k=2", "--max-N=11", "--claims=TANGENT_CLASSICAL"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "TANGENT_CLASSICAL n=1: holds  witness = 1\n\
         TANGENT_CLASSICAL n=2: holds  witness = 3\n\
         TANGENT_CLASSICAL n=3: holds  witness = 17\n\
         TANGENT_CLASSICAL n=4: holds  witness = 155\n\
         TANGENT_CLASSICAL n=5: holds  witness = 2073\n"
    );
}

#[test]
fn explorer_findings_do_not_gate_exit_status() {
    let dir = tmpdir();
    let args = &["verify", "--k=2", "--max-N=4", "--claims=QUOTIENT_COPRIME_EXPLORE"];
    let out = qeuler(dir.path(), args);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("n=2 k=2 j=3: fails  witness = 2"));
    assert!(stderr(&out).contains("explorer findings: 1"));

    let strict = qeuler(
        dir.path(),
        &[
            "verify",
            "--k=2",
            "--max-N=4",
            "--claims=QUOTIENT_COPRIME_EXPLORE",
            "--strict-explore",
        ],
    );
    assert_eq!(code(&strict), 1);
}

#[test]
fn genuine_failures_of_nonexplorer_claims_gate_exit_status() {
    // the Gessel-Viennot formula as printed fails at k | j (here j = 0)
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &["verify", "--k=2", "--max-N=2", "--claims=GESSEL_VIENNOT"],
    );
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("GESSEL_VIENNOT n=1 k=2 j=0: fails"));
}

#[test]
fn forced_composite_runs_are_exploration() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &[
            "verify",
            "--k=4",
            "--max-N=8",
            "--claims=COR_KPOWER_AT_1",
            "--force",
        ],
    );
    // E_{6|4} = 14 is not divisible by 4: a real verdict, but composite-k
    // runs never gate the exit status
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("COR_KPOWER_AT_1 n=1 k=4 i=2: fails  witness = 2"));
    assert!(stdout(&out).contains("holds"));
}

#[test]
fn verify_json_records_carry_the_report_fields() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &[
            "verify",
            "--k=3",
            "--max-N=7",
            "--claims=LEMMA_QBINOM_FACTOR",
            "--format=json",
        ],
    );
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines() {
        let record: serde_json::Value = serde_json::from_str(line).expect("valid JSON");
        assert_eq!(record["claim"], "LEMMA_QBINOM_FACTOR");
        assert!(record["params"]["n"].is_i64());
        assert!(record["params"]["m"].is_i64());
        assert!(record["params"]["k"].is_i64());
        assert!(record["params"]["i"].is_i64());
        assert_eq!(record["verdict"], "holds");
        assert!(record["witness"].is_string());
        assert!(record["elapsed-milliseconds"].is_u64());
    }
}

#[test]
fn verify_csv_has_the_flattened_header() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &[
            "verify",
            "--k=2",
            "--max-N=5",
            "--claims=THM_BRACKET_POWER",
            "--format=csv",
        ],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("claim,n,m,k,i,j,verdict,witness"));
    assert_eq!(
        lines.next(),
        Some("THM_BRACKET_POWER,0,,2,1,,holds,1")
    );
}

#[test]
fn verify_rejects_unknown_claims() {
    let dir = tmpdir();
    let out = qeuler(
        dir.path(),
        &["verify", "--k=2", "--max-N=5", "--claims=NOT_A_CLAIM"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn cache_warm_then_stats() {
    let dir = tmpdir();
    let warm = qeuler(dir.path(), &["cache", "warm", "--k=3", "--max-n=20"]);
    assert_eq!(code(&warm), 0);
    assert!(stdout(&warm).contains("cache written"));
    let stats = qeuler(dir.path(), &["cache", "stats"]);
    assert_eq!(code(&stats), 0);
    let text = stdout(&stats);
    assert!(text.starts_with("entries: 21\n"), "{text}");
    assert!(text.contains("k=3: 21"), "{text}");
}

#[test]
fn cache_export_import_round_trip_is_byte_identical() {
    let cold_dir = tmpdir();
    let cold = qeuler(cold_dir.path(), &["compute", "5", "3"]);

    let warm_dir = tmpdir();
    qeuler(warm_dir.path(), &["cache", "warm", "--k=3", "--max-n=20"]);
    let exported = warm_dir.path().join("store.exp");
    let export = qeuler(
        warm_dir.path(),
        &["cache", "export", exported.to_str().unwrap()],
    );
    assert_eq!(code(&export), 0);

    // a fresh process in a fresh directory imports and recomputes
    let import_dir = tmpdir();
    let import = qeuler(
        import_dir.path(),
        &["cache", "import", exported.to_str().unwrap()],
    );
    assert_eq!(code(&import), 0);
    let warmed = qeuler(import_dir.path(), &["compute", "5", "3"]);
    assert_eq!(stdout(&warmed), stdout(&cold));
    assert_eq!(code(&warmed), 0);

    // exporting the imported store reproduces the file byte for byte
    let re_exported = import_dir.path().join("store2.exp");
    qeuler(
        import_dir.path(),
        &["cache", "export", re_exported.to_str().unwrap()],
    );
    let original = std::fs::read(&exported).unwrap();
    let round_tripped = std::fs::read(&re_exported).unwrap();
    assert_eq!(original, round_tripped);
}

#[test]
fn cache_import_rejects_other_versions() {
    let dir = tmpdir();
    let bad = dir.path().join("bad.store");
    std::fs::write(&bad, "qeuler-cache v999\n").unwrap();
    let out = qeuler(dir.path(), &["cache", "import", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("version 999"));
    // nothing was loaded: the default store does not exist
    assert!(!dir.path().join("qeuler_cache.txt").exists());
}

#[test]
fn corrupt_cache_file_is_a_format_error() {
    let dir = tmpdir();
    std::fs::write(dir.path().join("qeuler_cache.txt"), "garbage\n").unwrap();
    let out = qeuler(dir.path(), &["compute", "5", "3"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn cache_env_variable_names_the_store() {
    let dir = tmpdir();
    let alt = dir.path().join("alt.store");
    let out = Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(["cache", "warm", "--k=2", "--max-n=4"])
        .current_dir(dir.path())
        .env("QEULER_CACHE", &alt)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(alt.exists());
    assert!(!dir.path().join("qeuler_cache.txt").exists());
}

#[test]
fn identical_commands_produce_identical_bytes() {
    let dir = tmpdir();
    for args in [
        vec!["table", "3", "8", "--format=csv"],
        vec!["verify", "--k=3", "--max-N=9", "--format=plain"],
        vec!["verify", "--k=2,3", "--max-N=8", "--format=csv"],
        vec!["compute", "9", "2"],
    ] {
        let first = qeuler(dir.path(), &args);
        let second = qeuler(dir.path(), &args);
        assert_eq!(stdout(&first), stdout(&second), "{args:?}");
    }
}
