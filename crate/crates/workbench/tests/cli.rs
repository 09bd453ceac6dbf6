//! End-to-end checks of the binary: exit codes, golden output, and
//! byte-identical reruns.

use std::path::Path;
use std::process::{Command, Output};

fn workbench(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EXAMPLE: &str = "\
place p1 3
place p2 0
place p3 0
place p4 0
trans t1 p2
trans t2 p2
trans t3 p2
arc p1 t1 1
arc t1 p2 1
arc p1 t2 2
arc p3 t2 1
arc t2 p4 1
arc t3 p3 1
query p4 >= 1
";

#[test]
fn solve_reports_winners_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let gen = workbench(&["gen", "chain", "4", "-o", "chain.model"], dir.path());
    assert!(gen.status.success());
    let out = workbench(&["solve", "chain.model"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "WINNING\n");

    let gen = workbench(&["gen", "nim", "2", "4", "-o", "nim.model"], dir.path());
    assert!(gen.status.success());
    let out = workbench(&["solve", "nim.model"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NOT WINNING\n");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("noquery.model"), "place p 1\ntrans t p1\narc p t 1\n")
        .unwrap();
    std::fs::write(dir.path().join("broken.model"), "plaze p 1\n").unwrap();

    for args in [
        &["solve", "missing.model"][..],
        &["solve", "broken.model"],
        &["solve", "noquery.model"],
        &["solve", "noquery.model", "--query", "p >= ="],
        &["gen", "chain", "0"],
        &["frobnicate"],
        &["solve"],
    ] {
        let out = workbench(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {out:?}");
    }
}

#[test]
fn boundedness_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("pump.model"),
        "place p 0\ntrans pump p2\narc pump p 1\nquery p >= 1000000\n",
    )
    .unwrap();
    let out = workbench(&["solve", "pump.model", "--max-states", "50"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = workbench(&["check", "pump.model", "--max-states", "50"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = workbench(
        &["bench", "pump.model", "--max-states", "50"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_accepts_the_reduction_on_generated_models() {
    let dir = tempfile::tempdir().unwrap();
    for (args, file) in [
        (&["gen", "chain", "5", "-o", "a.model"][..], "a.model"),
        (&["gen", "nim", "2", "6", "-o", "b.model"], "b.model"),
        (&["gen", "workflow", "3", "-o", "c.model"], "c.model"),
    ] {
        assert!(workbench(args, dir.path()).status.success());
        let out = workbench(&["check", file], dir.path());
        assert_eq!(out.status.code(), Some(0), "{file}: {out:?}");
        let text = stdout(&out);
        assert!(text.ends_with("stable\n"), "{text}");
        assert!(text.contains("V: pass"));
    }
}

#[test]
fn debug_stubborn_prints_the_interval_analysis() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ex.model"), EXAMPLE).unwrap();
    let out = workbench(&["debug-stubborn", "ex.model"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reach over-approximation: true"), "{text}");
    assert!(text.contains("place p1: lb 0 ub 3"));
    assert!(text.contains("place p3: lb 0 ub inf"));
    assert!(text.contains("place p4: lb 0 ub 1"));
    assert!(text.contains("trans t2: ub 1"));
    assert!(text.contains("trans t3: ub inf"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (n, f) in [("6", "w6.model")] {
        assert!(workbench(&["gen", "workflow", n, "-o", f], dir.path()).status.success());
    }
    assert!(workbench(&["gen", "chain", "6", "-o", "c6.model"], dir.path()).status.success());
    assert!(workbench(&["gen", "nim", "2", "7", "-o", "n7.model"], dir.path()).status.success());

    // Generators are byte-stable across invocations.
    let first = std::fs::read(dir.path().join("n7.model")).unwrap();
    assert!(workbench(&["gen", "nim", "2", "7", "-o", "n7b.model"], dir.path()).status.success());
    assert_eq!(first, std::fs::read(dir.path().join("n7b.model")).unwrap());

    // Solve twice: same stdout, same strategy file bytes.
    let run = |strategy: &str| {
        let out = workbench(
            &["solve", "w6.model", "--strategy-out", strategy, "--stats"],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        // Strip the wall-time line; everything else must be stable.
        let stable: Vec<&str> = text.lines().filter(|l| !l.starts_with("time:")).collect();
        (stable.join("\n"), std::fs::read(dir.path().join(strategy)).unwrap())
    };
    let (out_a, strat_a) = run("a.strategy");
    let (out_b, strat_b) = run("b.strategy");
    assert_eq!(out_a, out_b);
    assert_eq!(strat_a, strat_b);
    assert!(!strat_a.is_empty());

    // Bench twice without times: identical stdout and CSV.
    let bench = |csv: &str| {
        let out = workbench(
            &["bench", "c6.model", "n7.model", "w6.model", "--csv", csv],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
        (stdout(&out), std::fs::read(dir.path().join(csv)).unwrap())
    };
    let (tab_a, csv_a) = bench("a.csv");
    let (tab_b, csv_b) = bench("b.csv");
    assert_eq!(tab_a, tab_b);
    assert_eq!(csv_a, csv_b);
    let csv = String::from_utf8(csv_a).unwrap();
    assert!(csv.starts_with(
        "model,time_normal,time_por,markings_normal,markings_por,pct_time,pct_markings\n"
    ));
    assert!(csv.contains("c6,0.000,0.000,64,7,0,89"), "{csv}");
}
