use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn icolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icolor"))
        .args(args)
        .env_remove("COLOR_SEARCH_THREADS")
        .output()
        .expect("spawn icolor")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn p(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }

    fn gen(&self, name: &str, family: &str, params: &str) {
        let o = icolor(&["gen", "--family", family, "--params", params, "--out", &self.p(name)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
}

fn ok(o: Output) -> Output {
    assert_eq!(code(&o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    o
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap()
}

#[test]
fn gen_output_is_canonical() {
    let d = Dir::new();
    d.gen("a.json", "random_tree", "9");
    let o = icolor(&["gen", "--family", "random-tree", "--params", "9", "--seed", "0", "--out", &d.p("b.json")]);
    ok(o);
    assert_eq!(read(&d.path("a.json")), read(&d.path("b.json")));
    // re-running compose on the file is byte-stable too
    ok(icolor(&["compose", "--g", &d.p("a.json"), "--h", &d.p("a.json"), "--out", &d.p("c1.json")]));
    ok(icolor(&["compose", "--g", &d.p("a.json"), "--h", &d.p("a.json"), "--out", &d.p("c2.json")]));
    assert_eq!(read(&d.path("c1.json")), read(&d.path("c2.json")));
}

#[test]
fn kmn_coloring_verifies_with_four_colors() {
    let d = Dir::new();
    d.gen("k23.json", "complete_bipartite", "2,3");
    ok(icolor(&["color", "--graph", &d.p("k23.json"), "--strategy", "kmn", "--out", &d.p("c.json")]));
    let report = stdout_json(&ok(icolor(&["verify", "--coloring", &d.p("c.json")])));
    assert_eq!(report["valid"], true);
    assert_eq!(report["t"], 4);
}

#[test]
fn k114_has_no_continuous_upper_edge() {
    let d = Dir::new();
    d.gen("k114.json", "complete_multipartite", "1,1,4");
    let b = stdout_json(&ok(icolor(&["bounds", "--graph", &d.p("k114.json")])));
    assert_eq!(b["colorable"], true);
    let o = icolor(&["search", "--graph", &d.p("k114.json"), "--continuous-use"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("no continuous USE"));
}

#[test]
fn spectrum_gap_fails_verification() {
    let d = Dir::new();
    let bad = r#"{"graph":{"name":"P_3","num_vertices":3,"edges":[[0,1],[1,2]]},"colors":[1,3]}"#;
    fs::write(d.path("bad.json"), bad).unwrap();
    let o = icolor(&["verify", "--coloring", &d.p("bad.json")]);
    assert_eq!(code(&o), 2);
    let report = stdout_json(&o);
    assert_eq!(report["valid"], false);
    let v = &report["violations"][0];
    assert_eq!(v["kind"], "spectrum_gap");
    assert_eq!(v["vertex"], 1);
    assert_eq!(v["colors"], serde_json::json!([1, 3]));

    let o = icolor(&["verify", "--coloring", &d.p("bad.json"), "--report", &d.p("r.json")]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let saved: Value = serde_json::from_str(&read(&d.path("r.json"))).unwrap();
    assert_eq!(saved, report);
}

#[test]
fn usage_errors_exit_one() {
    let o = icolor(&["verify", "--no-such-flag"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&icolor(&["frobnicate"])), 1);
    assert_eq!(code(&icolor(&["gen", "--family", "moebius", "--params", "3", "--out", "x"])), 1);
    assert_eq!(code(&icolor(&["--version"])), 0);
}

#[test]
fn bad_lse_is_rejected() {
    let d = Dir::new();
    d.gen("k33.json", "complete_bipartite", "3,3");
    let base = ["color", "--graph", &d.p("k33.json"), "--strategy", "knn-lse", "--out", &d.p("c.json")];
    let mut gap = base.to_vec();
    gap.extend(["--lse", "1,3,3"]);
    assert_eq!(code(&icolor(&gap)), 1);
    assert_eq!(code(&icolor(&base)), 1);
    let mut good = base.to_vec();
    good.extend(["--lse", "2,1,2"]);
    ok(icolor(&good));
    let s = stdout_json(&ok(icolor(&["spectra", "--coloring", &d.p("c.json"), "--subset", "0,1,2"])));
    assert_eq!(s["lse"], serde_json::json!([1, 2, 2]));
}

#[test]
fn search_budget_exhaustion_exits_three() {
    let d = Dir::new();
    d.gen("k34.json", "complete_bipartite", "3,4");
    let o = icolor(&["search", "--graph", &d.p("k34.json"), "--t", "9", "--max-nodes", "5"]);
    assert_eq!(code(&o), 3);
    let o = icolor(&["bounds", "--graph", &d.p("k34.json"), "--max-edges", "4"]);
    assert_eq!(code(&o), 3);
}

/// Every file written by one subcommand is accepted by the others.
#[test]
fn subcommands_consume_each_others_files() {
    let d = Dir::new();
    d.gen("g.json", "path", "3");
    d.gen("h.json", "cycle", "4");
    d.gen("k4.json", "complete", "4");
    d.gen("q3.json", "hypercube", "3");
    d.gen("t.json", "star", "4");

    ok(icolor(&["compose", "--g", &d.p("g.json"), "--h", &d.p("h.json"), "--out", &d.p("gh.json")]));
    ok(icolor(&["color", "--graph", &d.p("g.json"), "--strategy", "tree", "--out", &d.p("gc.json")]));
    ok(icolor(&["color", "--graph", &d.p("h.json"), "--strategy", "even-cycle", "--out", &d.p("hc.json")]));
    ok(icolor(&["color", "--graph", &d.p("q3.json"), "--strategy", "regular", "--out", &d.p("q3c.json")]));
    ok(icolor(&["color", "--graph", &d.p("k4.json"), "--strategy", "k2n-max", "--out", &d.p("k4c.json")]));
    ok(icolor(&["color", "--graph", &d.p("t.json"), "--strategy", "search", "--out", &d.p("tc.json")]));
    ok(icolor(&["color", "--graph", &d.p("h.json"), "--strategy", "search", "--t", "3", "--out", &d.p("hs.json")]));

    let cert = stdout_json(&ok(icolor(&[
        "compose-color", "--g", &d.p("g.json"), "--gcol", &d.p("gc.json"),
        "--h", &d.p("h.json"), "--hcol", &d.p("hc.json"), "--out", &d.p("ghc.json"),
    ])));
    assert_eq!(cert["valid"], true);

    // the product coloring belongs to the product graph
    let gh: Value = serde_json::from_str(&read(&d.path("gh.json"))).unwrap();
    let ghc: Value = serde_json::from_str(&read(&d.path("ghc.json"))).unwrap();
    assert_eq!(gh["edges"], ghc["graph"]["edges"]);

    for c in ["gc", "hc", "q3c", "k4c", "tc", "hs", "ghc"] {
        let file = d.p(&format!("{c}.json"));
        ok(icolor(&["verify", "--coloring", &file]));
        ok(icolor(&["spectra", "--coloring", &file]));
        ok(icolor(&["export-dot", "--coloring", &file, "--out", &d.p(&format!("{c}.dot"))]));
        assert!(read(&d.path(&format!("{c}.dot"))).starts_with("graph "));
    }
    let k4 = stdout_json(&ok(icolor(&["verify", "--coloring", &d.p("k4c.json")])));
    assert_eq!(k4["t"], 4);

    ok(icolor(&["search", "--graph", &d.p("k4.json"), "--out", &d.p("s.json")]));
    ok(icolor(&["verify", "--coloring", &d.p("s.json")]));
    let ci = stdout_json(&ok(icolor(&["search", "--graph", &d.p("k4.json"), "--chromatic-index"])));
    assert_eq!(ci["chromatic_index"], 3);
}

#[test]
fn thread_count_comes_from_environment() {
    let d = Dir::new();
    d.gen("k23.json", "complete_bipartite", "2,3");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_icolor"))
            .args(["bounds", "--graph", &d.p("k23.json")])
            .env("COLOR_SEARCH_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("3");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&run("0")), 1);
}
