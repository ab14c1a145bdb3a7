use std::fs;
use std::process::{Command, Output};

use wna_cli::emit::{read_json, CSV_HEADER};

fn wna(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wna")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_prints_one_csv_row() {
    let o = wna(&["eval", "--r", "5", "--n", "16", "--p", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let row = lines.next().unwrap();
    assert!(row.starts_with("evalC,"));
    assert!(row.contains("8.6109099936301"));
    assert!(lines.next().is_none());
}

#[test]
fn main_term_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = wna(&["--format", "json", "--out", out.to_str().unwrap(), "main-term", "--metric", "l", "--r", "16", "--n", "16", "--p", "inf"]);
    assert_eq!(code(&o), 0);
    let rows = read_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].formula_id, "thm3");
    assert!(rows[0].p.is_infinite());
    assert!(rows[0].computed_mantissa.is_nan());
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&wna(&["verify", "--task", "thm1", "--n", "8,16", "--p", "1,inf"])), 0);
    assert_eq!(code(&wna(&["verify", "--task", "lemma1", "--n", "4,64"])), 0);
    assert_eq!(code(&wna(&["verify", "--task", "stechkin", "--n", "8"])), 0);
    // a cap no gap can meet
    assert_eq!(code(&wna(&["verify", "--task", "thm2", "--n", "8", "--cap", "0"])), 1);
    assert_eq!(code(&wna(&["identities"])), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&wna(&["eval", "--r", "5", "--n", "16", "--p", "0.5"])), 2);
    assert_eq!(code(&wna(&["sweep", "--config", "/nonexistent/wna.cfg"])), 2);
    assert_eq!(code(&wna(&["verify"])), 2);
    assert_eq!(code(&wna(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "task=thm1\nn=8\ncolour=red\n").unwrap();
    let o = wna(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn out_of_band_point_is_an_error_row() {
    // main-term outside both bands is a run failure, not a usage error
    assert_eq!(code(&wna(&["main-term", "--r", "1000", "--n", "4"])), 1);
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.cfg");
    fs::write(&cfg, "# small grid\ntask=thm3\nn=8,16,32\nr=band:3\np=1,2,inf\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let run = |jobs: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_wna"));
        c.args(["--jobs", jobs, "sweep", "--config", cfg]);
        match env {
            Some(v) => c.env("WNA_JOBS", v),
            None => c.env_remove("WNA_JOBS"),
        };
        let o = c.output().unwrap();
        assert_eq!(code(&o), 0);
        o.stdout
    };
    let one = run("1", None);
    assert_eq!(String::from_utf8_lossy(&one).lines().count(), 1 + 27);
    assert_eq!(one, run("4", None));
    assert_eq!(one, run("1", Some("3")));

    let serial = dir.path().join("serial.cfg");
    fs::write(&serial, "task=thm3\nn=8,16,32\nr=band:3\np=1,2,inf\nparallel=false\n").unwrap();
    let o = wna(&["sweep", "--config", serial.to_str().unwrap()]);
    assert_eq!(o.stdout, one);
}
