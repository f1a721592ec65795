use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squarepaths"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    assert_eq!(stdout_of(args), golden(name), "{args:?}");
}

#[test]
fn stats_goldens() {
    assert_golden(&["stats", "1,5,1,2,1"], "stats_15121.jsonl");
    assert_golden(&["stats", "3,5,3,2,3"], "stats_35323.jsonl");
    assert_golden(&["stats", "1"], "stats_1.jsonl");
}

#[test]
fn stats_fields() {
    let line = stdout_of(&["stats", "1,5,1,2,1"]);
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["area"], 5);
    assert_eq!(v["dinv"], 2);
    let line = stdout_of(&["stats", "3,5,3,2,3"]);
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["deviation"], 1);
    assert_eq!(v["dinv"], 3);
}

#[test]
fn enumerate_counts_and_goldens() {
    assert_eq!(stdout_of(&["enumerate", "3"]).lines().count(), 27);
    assert_golden(
        &["enumerate", "3", "--parking-only"],
        "enumerate_3_parking.jsonl",
    );
    assert_golden(
        &["enumerate", "5", "--diagword", "23145"],
        "enumerate_5_diagword_23145.jsonl",
    );
    let by_dev = |d: &str| {
        stdout_of(&["enumerate", "5", "--diagword", "23145", "--deviation", d])
            .lines()
            .count()
    };
    assert_eq!((by_dev("0"), by_dev("1")), (12, 8));
    let touch1 = stdout_of(&["enumerate", "4", "--parking-only", "--touch", "1"]);
    assert!(touch1.lines().all(|l| l.contains("\"touch\":1")));
}

#[test]
fn table_goldens() {
    assert_golden(
        &["table", "schedules", "--tau", "23145"],
        "schedules_23145.csv",
    );
    assert_golden(
        &["table", "schedules", "--tau", "37158264"],
        "schedules_37158264.csv",
    );
    assert_golden(&["table", "enk", "--n", "1"], "enk_1.csv");
    assert_golden(&["table", "enk", "--n", "3"], "enk_3.csv");
    assert_golden(&["table", "polynomials", "--n", "3"], "polynomials_3.csv");
}

#[test]
fn schedule_table_rows() {
    let table = golden("schedules_23145.csv");
    let mut rows = csv::Reader::from_reader(table.as_bytes());
    let schedules: Vec<String> = rows
        .records()
        .map(|r| r.unwrap().get(4).unwrap().to_string())
        .collect();
    assert_eq!(schedules, ["1 2 3 1 2", "2 2 1 1 2"]);

    let table = golden("schedules_37158264.csv");
    let mut rows = csv::Reader::from_reader(table.as_bytes());
    let along: Vec<String> = rows
        .records()
        .map(|r| r.unwrap().get(5).unwrap().replace('|', " "))
        .collect();
    assert_eq!(
        along,
        [
            "2 2 2 2 2 1 1 1",
            "2 2 2 2 2 2 1 1",
            "2 2 3 2 1 2 2 1",
            "2 1 2 2 2 2 2 1"
        ]
    );
    assert!(table.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn check_goldens_and_exit_codes() {
    assert_golden(
        &["check", "thm-pn-identity", "--n", "1..6"],
        "check_pn_identity.jsonl",
    );
    assert_golden(
        &["check", "lemma-parlem", "--max", "12", "--samples", "1000"],
        "check_parlem.jsonl",
    );
    let ok = run(&["check", "main-square-paths", "--n", "1..6"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"pass\":true"));

    let bad = run(&["check", "cor-withides", "--n", "1..5", "--mutate-secondary"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(bad.stdout).unwrap(),
        golden("check_withides_mutated.jsonl")
    );
}

#[test]
fn every_check_passes_at_defaults() {
    let out = run(&["check", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.contains("\"pass\":true")));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["stats", "1,9"],
        vec!["stats", "one"],
        vec!["stats", ""],
        vec!["enumerate", "8"],
        vec!["enumerate", "3", "--diagword", "12"],
        vec!["enumerate", "3", "--max-n", "9"],
        vec!["check", "no-such-check"],
        vec!["check", "lemma-factor", "--n", "1..20"],
        vec!["check", "lemma-factor", "--tau", "123", "--l", "1"],
        vec!["table", "schedules"],
        vec!["table", "enk", "--n", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_independent_of_threads() {
    let commands: [&[&str]; 4] = [
        &["enumerate", "6"],
        &["table", "polynomials", "--n", "5"],
        &["table", "schedules", "--tau", "2413"],
        &["check", "all", "--n", "1..5"],
    ];
    for cmd in commands {
        let outputs: Vec<String> = ["1", "2", "8"]
            .iter()
            .map(|t| {
                let mut args = cmd.to_vec();
                args.extend(["--threads", t]);
                stdout_of(&args)
            })
            .collect();
        assert!(!outputs[0].is_empty());
        assert_eq!(outputs[0], outputs[1], "{cmd:?}");
        assert_eq!(outputs[0], outputs[2], "{cmd:?}");
    }
}
