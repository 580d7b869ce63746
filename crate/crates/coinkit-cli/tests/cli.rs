//! End-to-end tests of the coinkit binary: flag parsing, output formats,
//! exit codes, verification and the bench harness.

use std::path::PathBuf;
use std::process::{Command, Output};

use coinkit::baseline::dp_all_targets;
use coinkit::CoinSet;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coinkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn write_temp(name: &str, content: &[u8]) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, content).expect("temp file written");
    path
}

#[test]
fn coins_all_text_round_trips() {
    let out = run(&[
        "coins-all",
        "--algo",
        "t43",
        "--inline",
        "1 5 10 25",
        "--target",
        "12",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed: Vec<(usize, i64)> = text
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace();
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(parsed.len(), 13);
    let coins = CoinSet::new([1u64, 5, 10, 25]).unwrap();
    let oracle = dp_all_targets(&coins, 12);
    for (j, c) in &parsed {
        assert_eq!(*c, oracle[*j].to_signed(), "target {j}");
    }
}

#[test]
fn every_coins_algo_agrees_through_the_cli() {
    let mut tables = Vec::new();
    for algo in ["dp", "t32", "t43", "algo1", "tsigma"] {
        let out = run(&[
            "coins-all",
            "--algo",
            algo,
            "--inline",
            "7 24 31 50",
            "--target",
            "800",
        ]);
        assert!(out.status.success(), "{algo}");
        tables.push(stdout(&out));
    }
    for t in &tables[1..] {
        assert_eq!(*t, tables[0]);
    }
}

#[test]
fn coins_single_infeasible_prints_minus_one_with_exit_1() {
    let out = run(&[
        "coins-single",
        "--algo",
        "fftu",
        "--inline",
        "3 5",
        "--target",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "-1\n");
}

#[test]
fn coins_single_algos_agree_on_large_target() {
    let mut answers = Vec::new();
    for algo in ["fftu", "implicit", "dp"] {
        let out = run(&[
            "coins-single",
            "--algo",
            algo,
            "--inline",
            "7 13 61",
            "--target",
            "90000",
        ]);
        assert!(out.status.success(), "{algo}");
        answers.push(stdout(&out));
    }
    assert_eq!(answers[0], answers[1]);
    assert_eq!(answers[0], answers[2]);
}

#[test]
fn knapsack_subcommands_match_dp() {
    let items = write_temp("items_basic.txt", b"2 3\n3 5\n");
    let items = items.to_str().unwrap();
    let fast = run(&["knapsack-all", "--algo", "algo2", "--items", items, "--target", "7"]);
    let slow = run(&["knapsack-all", "--algo", "dp", "--items", items, "--target", "7"]);
    assert!(fast.status.success() && slow.status.success());
    assert_eq!(stdout(&fast), stdout(&slow));
    assert!(stdout(&fast).ends_with("7 11\n"));

    let nu = run(&["knapsack-single", "--algo", "nu", "--items", items, "--target", "7"]);
    assert!(nu.status.success());
    assert_eq!(stdout(&nu), "11\n");
}

#[test]
fn wordbreak_reads_files_and_reports_infeasible() {
    let text = write_temp("wb_text.txt", b"ababab\n");
    let dict = write_temp("wb_dict.txt", b"ab\nabab\n");
    let out = run(&[
        "wordbreak",
        "--text",
        text.to_str().unwrap(),
        "--dict",
        dict.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");

    let text = write_temp("wb_text2.txt", b"abc");
    let out = run(&[
        "wordbreak",
        "--text",
        text.to_str().unwrap(),
        "--dict",
        dict.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "-1\n");
}

#[test]
fn json_output_is_deterministic_with_null_for_infeasible() {
    let args = [
        "coins-all",
        "--algo",
        "dp",
        "--inline",
        "3 5",
        "--target",
        "4",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["algo"], "dp");
    assert_eq!(v["params"]["target"], 4);
    let targets = v["targets"].as_array().unwrap();
    assert_eq!(targets.len(), 5);
    assert_eq!(targets[0]["count"], 0);
    assert!(targets[1]["count"].is_null());
    assert_eq!(targets[3]["count"], 1);
}

#[test]
fn verify_reports_ok_then_names_injected_fault() {
    let ok = run(&[
        "verify",
        "--problem",
        "coins-all",
        "--algo",
        "t43",
        "--inline",
        "1 5 10 25",
        "--target",
        "400",
    ]);
    assert!(ok.status.success());
    assert_eq!(stdout(&ok), "OK\n");

    let bad = run(&[
        "verify",
        "--problem",
        "coins-all",
        "--algo",
        "t43",
        "--inline",
        "1 5 10 25",
        "--target",
        "400",
        "--inject-fault",
        "17",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("mismatch at 17:"));
}

#[test]
fn verify_covers_every_problem() {
    let items = write_temp("items_verify.txt", b"2 3\n3 5\n4 9\n");
    let text = write_temp("wb_verify_text.txt", b"aaab");
    let dict = write_temp("wb_verify_dict.txt", b"a\naa\nab\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--problem", "coins-single", "--algo", "fftu", "--inline", "3 7", "--target", "253"],
        vec!["--problem", "coins-single", "--algo", "implicit", "--inline", "3 7", "--target", "253"],
        vec!["--problem", "knapsack-all", "--algo", "tsigma", "--items", items.to_str().unwrap(), "--target", "90"],
        vec!["--problem", "knapsack-single", "--algo", "nu", "--items", items.to_str().unwrap(), "--target", "90"],
        vec!["--problem", "wordbreak", "--algo", "fast", "--text", text.to_str().unwrap(), "--dict", dict.to_str().unwrap()],
    ];
    for case in cases {
        let mut args = vec!["verify"];
        args.extend(&case);
        let out = run(&args);
        assert!(out.status.success(), "{case:?}: {}", stderr(&out));
        assert_eq!(stdout(&out), "OK\n", "{case:?}");
    }
}

#[test]
fn verify_enforces_oracle_budget() {
    let out = run(&[
        "verify",
        "--problem",
        "coins-all",
        "--algo",
        "t43",
        "--inline",
        "3 5",
        "--target",
        "20000000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("oracle budget exceeded"));
}

#[test]
fn malformed_input_gets_line_and_column() {
    let bad = write_temp("bad_coins.txt", b"1 2\n3 x 5\n");
    let out = run(&["coins-all", "--coins", bad.to_str().unwrap(), "--target", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(":2:3:"), "{}", stderr(&out));

    let bad_items = write_temp("bad_items.txt", b"2 3\n4\n");
    let out = run(&["knapsack-all", "--items", bad_items.to_str().unwrap(), "--target", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("weight profit"), "{}", stderr(&out));
}

#[test]
fn bench_emits_deterministic_csv_rows() {
    let args = [
        "bench",
        "--algo",
        "dp,algo1",
        "--sizes",
        "500,2000",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    let strip = |s: &Output| -> Vec<Vec<String>> {
        stdout(s)
            .lines()
            .skip(1)
            .map(|l| {
                l.split(',')
                    .enumerate()
                    .filter(|(i, _)| *i != 5) // wall_nanos is measured, not derived
                    .map(|(_, f)| f.to_string())
                    .collect()
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    let lines: Vec<String> = stdout(&a).lines().map(String::from).collect();
    assert_eq!(lines[0], "algo,n,t,u,sigma,wall_nanos,work_counter");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("dp,") && lines[2].starts_with("algo1,"));
    assert!(lines[1].split(',').nth(2) == Some("500"));
    assert!(lines[3].split(',').nth(2) == Some("2000"));
}

#[test]
fn bench_without_sizes_prints_header_only() {
    let out = bin()
        .args(["bench", "--algo", "t43"])
        .env("COINKIT_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "algo,n,t,u,sigma,wall_nanos,work_counter\n");
}

#[test]
fn bench_rejects_unsorted_sizes() {
    let out = run(&["bench", "--algo", "dp", "--sizes", "100,50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ascending"));
}
