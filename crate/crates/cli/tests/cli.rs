use assert_cmd::Command;
use predicates::prelude::*;

fn romik() -> Command {
    Command::cargo_bin("romik").unwrap()
}

#[test]
fn construct_31_reports_named_data() {
    romik()
        .args(["construct", "--word", "3,1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("(1/2, 1/2√3)"))
        .stdout(predicate::str::contains("7+4√3"))
        .stdout(predicate::str::contains("D:       3"));
}

#[test]
fn expand_fixed_point_digits() {
    romik()
        .args(["expand", "--point", "1,0", "-n", "3", "--format", "json"])
        .assert()
        .success()
        .stdout("[\n  1,\n  1,\n  1\n]\n");
}

#[test]
fn expand_rational_both_endings() {
    romik()
        .args(["expand", "--point", "3/5,4/5", "--both"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[2,1^inf]"))
        .stdout(predicate::str::contains("[3,1^inf]"));
}

#[test]
fn tree_depth_two_has_twelve_nodes() {
    let out = romik()
        .args(["tree", "--root", "3,4,5", "--depth", "2", "--format", "jsonl"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let lines: Vec<_> = String::from_utf8(out).unwrap().lines().map(String::from).collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[0].contains("\"a\":\"15\""));
    assert!(lines[11].contains("\"c\":\"25\""));
}

#[test]
fn tree_output_is_byte_stable() {
    let run = || {
        romik()
            .args(["tree", "--cmax", "100", "--format", "csv"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn tree_dot_labels_edges() {
    romik()
        .args(["tree", "--root", "4,3,5", "--depth", "1", "--format", "dot"])
        .assert()
        .success()
        .stdout(predicate::str::contains("digraph berggren"))
        .stdout(predicate::str::contains("\"(4, 3, 5)\" -> \"(12, 5, 13)\" [label=\"M1\"]"));
}

#[test]
fn descend_reports_digits() {
    romik()
        .args(["descend", "--triple", "5,12,13"])
        .assert()
        .success()
        .stdout(predicate::str::contains("digits: [32]"));
}

#[test]
fn period_detects_pure_cycle() {
    romik()
        .args(["period", "--point", "1/2,√3/2"])
        .assert()
        .success()
        .stdout("[ (31)^inf]\n");
}

#[test]
fn period_respects_max_iter_env() {
    romik()
        .args(["period", "--point", "1/2,√3/2"])
        .env("ROMIK_MAX_ITER", "1")
        .assert()
        .code(1)
        .stderr(predicate::str::contains("period not found"));
}

#[test]
fn galois_and_roots() {
    romik()
        .args(["galois", "--word", "31"])
        .assert()
        .success()
        .stdout(predicate::str::contains("verdict:         PASS"));
    romik()
        .args(["roots", "--word", "31", "--format", "dot"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[1, √3, 2]"))
        .stdout(predicate::str::contains("[label=\"M3\"]"));
}

#[test]
fn count_n12() {
    romik()
        .args(["count", "-k", "1", "-d", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("N(1, Q(sqrt 2)) = 1"));
}

#[test]
fn mat_by_name_and_word() {
    romik()
        .args(["mat", "--name", "H"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[-1 -2 2]"));
    romik()
        .args(["mat", "--word", "31"])
        .assert()
        .success()
        .stdout(predicate::str::contains("[-1 4 4]"));
}

#[test]
fn parse_failures_exit_2() {
    romik()
        .args(["expand", "--point", "nonsense"])
        .assert()
        .code(2);
    romik()
        .args(["construct", "--word", "3,4"])
        .assert()
        .code(2);
    romik().args(["frobnicate"]).assert().code(2);
}

#[test]
fn domain_errors_exit_1() {
    // parses fine, but is not on the unit circle
    romik()
        .args(["expand", "--point", "1/2,1/2"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("circle"));
    // excluded word
    romik().args(["construct", "--word", "111"]).assert().code(1);
    // rational point has no period
    romik()
        .args(["period", "--point", "3/5,4/5"])
        .assert()
        .code(1);
}
