mod common;

use std::path::Path;
use std::process::{Command, Output};

use girthforge::edgelist::{read_edgelist, ParsedGraph};
use girthforge::graph::{girth, is_c4_free, Girth};
use serde_json::Value;

fn girthforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_girthforge")).args(args).current_dir(dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn gen_reiman_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = girthforge(dir.path(), &["gen", "reiman", "--k", "3", "--out", "f.el"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let parsed = read_edgelist(&dir.path().join("f.el")).unwrap();
    let bg = parsed.bipartite().expect("bipartite file");
    assert_eq!((bg.size_a(), bg.size_b()), (36, 36));
    assert_eq!(girth(bg.graph()), Girth::Cycle(6));
    let r = stdout_report(&o);
    assert_eq!(r["achieved"], "4/1");
    assert_eq!(r["guarantee_met"], true);
}

#[test]
fn gen_plane_rejects_non_prime() {
    let dir = tempfile::tempdir().unwrap();
    let o = girthforge(dir.path(), &["gen", "plane", "--q", "4", "--out", "x.el"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not prime"));
}

#[test]
fn extract_without_seed_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = girthforge(dir.path(), &["extract", "--t", "2", "--in", "g.el", "--report", "r.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--seed"));
}

#[test]
fn unknown_flag_prints_usage() {
    let dir = tempfile::tempdir().unwrap();
    let o = girthforge(dir.path(), &["oracle", "girth", "--in", "g.el", "--frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&girthforge(dir.path(), &["--help"])), 0);
}

#[test]
fn verify_ers_on_fano() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&girthforge(dir.path(), &["gen", "plane", "--q", "2", "--out", "fano.el"])), 0);
    let o = girthforge(dir.path(), &["verify", "ers", "--in", "fano.el"]);
    assert_eq!(code(&o), 0);
    let r = stdout_report(&o);
    let check = &r["result"]["checks"][0];
    assert_eq!((check["lhs"].as_str(), check["rhs"].as_str()), (Some("21/1"), Some("29/1")));
    assert!(r["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn verify_ers_rejects_graphs_with_a_c4() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c4.el"), "4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    assert_eq!(code(&girthforge(dir.path(), &["verify", "ers", "--in", "c4.el"])), 1);
}

#[test]
fn extract_embeds_harvest_and_output() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k.el"), common::complete_bipartite_file(16, 16)).unwrap();
    for mode in ["single", "double"] {
        let args = [
            "extract", "--mode", mode, "--t", "2", "--seed", "9", "--in", "k.el", "--report", "r.json", "--out",
            "sub.el",
        ];
        let o = girthforge(dir.path(), &args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let first = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
        let r = report(&dir.path().join("r.json"));
        assert_eq!(r["outcome"], "c4free");
        assert_eq!(r["guarantee_met"], true);
        assert_eq!(r["seed"], 9);
        let harvest = &r["trace"]["harvest"];
        assert_eq!(harvest["s"], 16);
        assert_eq!(harvest["edges"].as_array().unwrap().len(), 256);
        let out = read_edgelist(&dir.path().join("sub.el")).unwrap();
        assert!(is_c4_free(out.graph()));
        assert_eq!(r["output"]["edge_count"].as_u64().unwrap() as usize, out.graph().m());

        assert_eq!(code(&girthforge(dir.path(), &args)), 0);
        let second = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
        let strip = |s: &str| s.lines().filter(|l| !l.contains("\"wall_time_ms\"")).collect::<Vec<_>>().join("\n");
        assert_eq!(strip(&first), strip(&second));
    }
}

#[test]
fn cli_blowup_and_lemma8_verification() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("host.el"), "2 1\nA: 0\n0 1\n").unwrap();
    let o = girthforge(
        dir.path(),
        &["gen", "blowup", "--host", "host.el", "--d", "2", "--out", "k44.el", "--blocks", "blocks.txt"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_report(&o)["achieved"], "4/1");
    assert_eq!(std::fs::read_to_string(dir.path().join("blocks.txt")).unwrap(), "0: 0 1 2 3\n1: 4 5 6 7\n");

    std::fs::write(dir.path().join("matching.el"), "8 4\nA: 0 1 2 3\n0 4\n1 5\n2 6\n3 7\n").unwrap();
    let args = ["verify", "lemma8", "--in", "matching.el", "--blocks", "blocks.txt", "--d", "2", "--host", "k44.el"];
    let o = girthforge(dir.path(), &args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_report(&o)["guarantee_met"], true);

    // the full K_{4,4} is not C4-free
    let o = girthforge(dir.path(), &["verify", "lemma8", "--in", "k44.el", "--blocks", "blocks.txt", "--d", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("contract error"));
}

#[test]
fn cli_lemma9_verification() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("blocks.txt"), "0: 0 1\n").unwrap();
    std::fs::write(dir.path().join("empty.el"), "4 0\nA: 0 1\n").unwrap();
    assert_eq!(
        code(&girthforge(dir.path(), &["verify", "lemma9", "--in", "empty.el", "--blocks", "blocks.txt", "--d", "2"])),
        0
    );
    // vertex 2 sees exactly one vertex of the block
    std::fs::write(dir.path().join("thin.el"), "4 1\nA: 0 1\n0 2\n").unwrap();
    let o = girthforge(dir.path(), &["verify", "lemma9", "--in", "thin.el", "--blocks", "blocks.txt", "--d", "2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex 2"));
}

#[test]
fn oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k4.el"), "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let o = girthforge(dir.path(), &["oracle", "maxc4free", "--in", "k4.el"]);
    assert_eq!(stdout_report(&o)["params"]["max_c4free_edges"], "4");
    let o = girthforge(dir.path(), &["oracle", "bestavg", "--in", "k4.el"]);
    assert_eq!(stdout_report(&o)["achieved"], "2/1");
    let o = girthforge(dir.path(), &["oracle", "girth", "--in", "k4.el"]);
    assert_eq!(stdout_report(&o)["params"]["girth"], "3");
    let o = girthforge(dir.path(), &["oracle", "threeregular", "--in", "k4.el", "--report", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&dir.path().join("r.json"))["params"]["has_3_regular_subgraph"], "true");
}

#[test]
fn oracle_budget_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k.el"), common::complete_bipartite_file(8, 8)).unwrap();
    let o = girthforge(dir.path(), &["oracle", "maxc4free", "--in", "k.el"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));

    std::fs::write(dir.path().join("p.el"), "3 2\n0 1\n1 2\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_girthforge"))
        .args(["oracle", "bestavg", "--in", "p.el"])
        .env("GIRTHFORGE_BUDGET_SECONDS", "soon")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_inputs_exit_with_one() {
    let corpus = [
        ("self-loop", "3 1\n0 0\n", "line 2"),
        ("duplicate", "3 2\n0 1\n1 0\n", "line 3"),
        ("out of range", "3 1\n0 7\n", "line 2"),
        ("bad token", "3 1\n0 x\n", "line 2"),
        ("edge count", "3 2\n0 1\n", ""),
        ("bipartition", "4 2\nA: 0 1\n0 1\n1 2\n", ""),
        ("empty", "", ""),
        ("binary", "\u{0}\u{1}\u{2}", ""),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (name, text, needle) in corpus {
        std::fs::write(dir.path().join("bad.el"), text).unwrap();
        for args in [
            vec!["oracle", "girth", "--in", "bad.el"],
            vec!["verify", "ers", "--in", "bad.el"],
            vec!["extract", "--t", "2", "--seed", "1", "--in", "bad.el", "--report", "r.json"],
        ] {
            let o = girthforge(dir.path(), &args);
            let err = String::from_utf8_lossy(&o.stderr);
            assert_eq!(code(&o), 1, "{name}: {err}");
            assert!(err.contains(needle), "{name}: {err}");
        }
    }
    let o = girthforge(dir.path(), &["oracle", "girth", "--in", "missing.el"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.el"));
}

#[test]
fn parsed_bipartite_file_keeps_classes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&girthforge(dir.path(), &["gen", "irregular", "--d", "2", "--m", "4", "--seed", "1", "--out", "h.el"])),
        0
    );
    match read_edgelist(&dir.path().join("h.el")).unwrap() {
        ParsedGraph::Bipartite(bg) => {
            assert_eq!(bg.graph().m(), 8);
            assert!(bg.class_a().iter().all(|&a| bg.graph().degree(a) == 2));
        }
        ParsedGraph::Plain(_) => panic!("expected a bipartite file"),
    }
}
