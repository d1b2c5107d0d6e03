use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bubble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bubble"))
        .args(args)
        .env_remove("BUBBLE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn basis_of_two_strands() {
    let out = bubble(&["basis", "--n", "2", "--list"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["total"], 10);
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 10);
    let strata = v["strata"].as_array().unwrap();
    let counted: u64 = strata.iter().map(|s| s["count"].as_u64().unwrap()).sum();
    assert_eq!(counted, 10);
    assert!(strata
        .iter()
        .all(|s| s["count"].as_u64() == s["dim"].as_u64().map(|d| d * d)));
}

#[test]
fn one_colour_basis_is_catalan() {
    let v = json(&bubble(&["basis", "--n", "4", "--palette", "mono"]));
    assert_eq!(v["total"], 14);
}

#[test]
fn dims_rank_check() {
    let out = bubble(&["dims", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["rank_check"]["basis_size"], 70);
    assert_eq!(v["rank_check"]["sum_of_squares"], 70);
    let csv = bubble(&["dims", "--n", "3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("i,j,dim\n"));
    assert!(text.contains("\n1,0,5\n"));
}

#[test]
fn gram_report() {
    let v = json(&bubble(&[
        "gram", "--n", "2", "--i", "0", "--j", "0", "--det", "--blocks", "--roots", "r",
    ]));
    assert_eq!(v["entries"][0][0], "1*dr^1*db^0");
    assert_eq!(v["entries"][1][1], "1*dr^0*db^1");
    assert_eq!(v["det"], "1*dr^1*db^1");
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["roots"]["all_roots_of_unity"], true);
}

#[test]
fn gram_roots_are_reported() {
    let v = json(&bubble(&[
        "gram", "--n", "4", "--i", "0", "--j", "0", "--roots", "b",
    ]));
    let scans = v["roots"]["scans"].as_array().unwrap();
    assert_eq!(scans.len(), 2);
    assert!(scans
        .iter()
        .all(|s| !s["roots"].as_array().unwrap().is_empty()));
}

#[test]
fn ybe_two_colour_sweep_passes() {
    let out = bubble(&[
        "ybe", "--family", "bubble", "--lambda", "0.7", "--sweep", "20",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["residual"]["max"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["points"].as_array().unwrap().len(), 20);
}

#[test]
fn ybe_with_transfer_and_csv() {
    let out = bubble(&[
        "ybe",
        "--family",
        "tl",
        "--sweep",
        "4",
        "--transfer",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "u,v,lambda,residual,commutator");
    assert_eq!(lines.len(), 5);
}

#[test]
fn rep_check_and_matrices() {
    let out = bubble(&[
        "rep",
        "--n",
        "2",
        "--qr",
        "0.6,0.8",
        "--qb",
        "1.5",
        "--check",
        "--matrices",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["check"]["products_checked"], 100);
    assert_eq!(v["check"]["ok"], true);
    let mats = v["matrices"].as_array().unwrap();
    assert_eq!(mats.len(), 10);
    let entries = mats[0]["entries"].as_str().unwrap();
    assert_eq!(entries.split(';').count(), 256);
    assert!(entries.split(';').all(|e| e.split(',').count() == 2));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&bubble(&["basis"])), 2);
    assert_eq!(code(&bubble(&["basis", "--n", "two"])), 2);
    assert_eq!(
        code(&bubble(&["gram", "--n", "2", "--i", "1", "--j", "0"])),
        2
    );
    assert_eq!(
        code(&bubble(&[
            "gram", "--n", "2", "--i", "0", "--j", "0", "--format", "csv"
        ])),
        2
    );
    assert_eq!(code(&bubble(&["rep", "--n", "4"])), 2);
    assert_eq!(code(&bubble(&["rep", "--qr", "0"])), 2);
    assert_eq!(
        code(&bubble(&["ybe", "--family", "tl", "--lambda", "0"])),
        2
    );
    assert_eq!(code(&bubble(&["basis", "--n", "9"])), 3);
    assert_eq!(code(&bubble(&["basis", "--n", "6", "--max-n", "5"])), 3);
    assert_eq!(
        code(&bubble(&[
            "gram",
            "--n",
            "6",
            "--i",
            "0",
            "--j",
            "0",
            "--max-dim",
            "10"
        ])),
        3
    );
    assert_eq!(
        code(&bubble(&[
            "ybe",
            "--family",
            "bubble",
            "--sweep",
            "1",
            "--transfer",
            "7"
        ])),
        3
    );
    assert_eq!(
        code(&bubble(&[
            "ybe",
            "--family",
            "bubble",
            "--sweep",
            "2",
            "--tolerance",
            "1e-30"
        ])),
        1
    );
    assert_eq!(code(&bubble(&["--help"])), 0);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["ybe", "--family", "bubble", "--sweep", "5", "--seed", "11"][..],
        &[
            "gram", "--n", "4", "--i", "1", "--j", "1", "--det", "--blocks", "--roots", "r",
        ],
        &["check", "--seed", "3", "--max-n", "3"],
    ] {
        assert_eq!(bubble(args).stdout, bubble(args).stdout, "{args:?}");
    }
    let a = bubble(&["ybe", "--family", "bubble", "--sweep", "5", "--seed", "11"]).stdout;
    let b = bubble(&["ybe", "--family", "bubble", "--sweep", "5", "--seed", "12"]).stdout;
    assert_ne!(a, b);
}

fn cached_basis(dir: &Path, n: &str, via_env: bool) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bubble"));
    cmd.args(["basis", "--n", n, "--list"]);
    if via_env {
        cmd.env("BUBBLE_CACHE_DIR", dir);
    } else {
        cmd.env_remove("BUBBLE_CACHE_DIR")
            .arg("--cache-dir")
            .arg(dir);
    }
    cmd.output().unwrap()
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = bubble(&["basis", "--n", "4", "--list"]).stdout;
    let first = cached_basis(dir.path(), "4", false);
    let file = dir.path().join("basis-bi-4.txt.gz");
    assert!(file.exists());
    let second = cached_basis(dir.path(), "4", true);
    assert_eq!(first.stdout, fresh);
    assert_eq!(second.stdout, fresh);
    assert!(second.stderr.is_empty());
}

#[test]
fn damaged_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = bubble(&["basis", "--n", "3", "--list"]).stdout;
    fs::write(dir.path().join("basis-bi-3.txt.gz"), b"not gzip").unwrap();
    let out = cached_basis(dir.path(), "3", false);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, fresh);
    assert!(String::from_utf8_lossy(&out.stderr).contains("rebuilding"));
    let again = cached_basis(dir.path(), "3", false);
    assert!(again.stderr.is_empty());
}

#[test]
fn property_suite_passes() {
    let out = bubble(&["check", "--seed", "5", "--max-n", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 16);
}
