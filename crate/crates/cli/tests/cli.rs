//! End-to-end runs of the binary: exit-code contract, the running example's
//! vectors, and byte-identical reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ordex-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn ordex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordex")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const G: &str = "\
# five-element running example
universe x1 x2 x3 x4 x5
pair x1 x2
pair x2 x3
pair x3 x4
pair x4 x3
pair x4 x1
pair x2 x5
";

#[test]
fn analyze_example_reports_two_consistency_without_s() {
    let path = write_temp("g.rel", G);
    let out = ordex(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "ordex/1");
    assert_eq!(v["consistency"]["s_consistent"], false);
    let table = v["consistency"]["table"].as_array().unwrap();
    // rows are (m, m-consistent, rank-of-symmetry)
    assert_eq!(table[1][0], 2);
    assert_eq!(table[1][1], true);
    assert_eq!(v["maximal_elements"], serde_json::json!(["x4"]));
}

#[test]
fn tournament_extend_lists_the_thirteen_pairs() {
    let path = write_temp("g2.rel", G);
    let out = ordex(&["extend", path.to_str().unwrap(), "--tournament", "-m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    let expect = [
        ("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x3"), ("x4", "x1"), ("x1", "x5"),
        ("x1", "x3"), ("x3", "x1"), ("x2", "x4"), ("x4", "x2"), ("x4", "x5"), ("x3", "x5"),
        ("x2", "x5"),
    ];
    for (a, b) in expect {
        let want = format!("pair {a} {b}");
        assert!(lines.contains(&want.as_str()), "missing ({a},{b})");
    }
}

#[test]
fn linear_extend_fails_with_exit_one_on_a_strict_cycle() {
    let path = write_temp("cycle.rel", "universe a b c\npair a b\npair b c\npair c a\n");
    let out = ordex(&["extend", path.to_str().unwrap(), "--linear"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_inputs_exit_two() {
    let path = write_temp("bad.rel", "pair a b\n");
    let out = ordex(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let path = write_temp("dup.rel", "universe a a\n");
    let out = ordex(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = ordex(&["analyze", "/nonexistent/file.rel"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ordex(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_of_the_standard_example_is_three() {
    let mut text = String::from("universe a1 a2 a3 b1 b2 b3\n");
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                text.push_str(&format!("pair b{j} a{i}\n"));
            }
        }
    }
    let path = write_temp("s3.rel", &text);
    let out = ordex(&["dimension", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn realize_reports_mismatch_for_tournament_flavor() {
    let path = write_temp("chain.rel", "universe a b c\npair a b\npair b c\n");
    let out = ordex(&["realize", path.to_str().unwrap(), "--flavor", "tournament", "-m", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = ordex(&["realize", path.to_str().unwrap(), "--flavor", "ordering"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn game_vectors() {
    let pd = "\
players 2
actions 0 C D
actions 1 C D
pref 0
pair D|C C|C
pair C|C D|D
pair D|D C|D
pair D|C D|D
pair D|C C|D
pair C|C C|D
pref 1
pair C|D C|C
pair C|C D|D
pair D|D D|C
pair C|D D|D
pair C|D D|C
pair C|C D|C
";
    let path = write_temp("pd.game", pd);
    let out = ordex(&["game", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "nash D|D\n");

    let out = ordex(&["game", path.to_str().unwrap(), "--check-union"]);
    assert_eq!(out.status.code(), Some(0));

    let empty = "players 2\nactions 0 C D\nactions 1 C D\n";
    let path = write_temp("empty.game", empty);
    let out = ordex(&["game", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);

    let out = ordex(&["game", path.to_str().unwrap(), "--witness", "C|D", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness_for"], "C|D");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let path = write_temp("g3.rel", G);
    let a = ordex(&["analyze", path.to_str().unwrap(), "--json"]);
    let b = ordex(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(a.stdout, b.stdout);

    let a = ordex(&["harness", "--scope", "tournament-realizer", "--json"]);
    let b = ordex(&["harness", "--scope", "tournament-realizer", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1), "the sweep finds counterexamples");
}

#[test]
fn covers_exit_codes_follow_the_answer() {
    let path = write_temp(
        "twoplustwo.rel",
        "universe a b c d\npair a b\npair c d\n",
    );
    let yes = ordex(&["covers", path.to_str().unwrap(), "b", "c", "a", "d"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = ordex(&["covers", path.to_str().unwrap(), "b", "c", "d", "a"]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn json_relation_input_is_accepted() {
    let path = write_temp("j.rel", r#"{"universe":["a","b"],"pairs":[["a","b"]]}"#);
    let out = ordex(&["closure", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "universe a b\npair a b\n");
}
