use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ample-forge"))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn tangent_amplitude_report() {
    let o = run(&[
        "famp",
        "--bundle",
        "tangent",
        "--n",
        "2",
        "--p",
        "2",
        "--horizon",
        "4",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["phi_hat"], 1);
    assert_eq!(v["verdict"], "HOLDS_WITH_WITNESS");
    assert_eq!(v["t"], 1);
    assert_eq!(v["horizon"], 4);
    for key in ["witnesses", "counterexamples", "observations"] {
        assert!(v[key].is_array(), "{key}");
    }
    let obs = &v["observations"][0];
    for key in ["test", "q", "index", "dim"] {
        assert!(!obs[key].is_null(), "{key}");
    }
}

#[test]
fn sid_suite_on_two_hundred_pairs() {
    let o = run(&[
        "verify",
        "--suite",
        "sid",
        "--fuzz-count",
        "200",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("sid: 200/200 hold"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn cohomology_table_from_a_file() {
    let path = corpus("tangent_p2.mod");
    let o = run(&[
        "cohomology",
        "--module",
        path.to_str().unwrap(),
        "--i",
        "0..2",
        "--d",
        "-4..4",
        "--tsv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "i\\d\t-4\t-3\t-2\t-1\t0\t1\t2\t3\t4");
    assert_eq!(rows[1], "0\t0\t0\t0\t3\t8\t15\t24\t35\t48");
    assert_eq!(rows[2], "1\t0\t1\t0\t0\t0\t0\t0\t0\t0");
}

#[test]
fn betti_table_is_macaulay_style() {
    let o = run(&["betti", "--bundle", "cotangent", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "j-i\t0\t1\t2\ntotal\t6\t4\t1\n2\t6\t4\t1\n");
    let path = corpus("twisted_cubic_p3.mod");
    let o = run(&["betti", "-m", path.to_str().unwrap(), "--tsv"]);
    assert_eq!(
        stdout(&o),
        "j-i\t0\t1\t2\ntotal\t1\t3\t2\n0\t1\t.\t.\n1\t.\t3\t2\n"
    );
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["bogus"][..],
        &["famp", "--nope"],
        &["famp"],
        &["cohomology", "-b", "T", "--d", "3..1"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
    }
    let o = bin()
        .args(["level", "-b", "T"])
        .env("AMPLE_FORGE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.mod");
    std::fs::write(&path, "ring p=5 n=2\ngens [0]\nrels [[x*y +]]\n").unwrap();
    let o = run(&["level", "-m", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    std::fs::write(&path, "ring p=5 n=2\ngens [0, 0]\nrels [[x], [y^2]]\n").unwrap();
    let err = String::from_utf8(run(&["level", "-m", path.to_str().unwrap()]).stderr).unwrap();
    assert!(err.contains("'y^2'"), "{err}");
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(run(&["globgen", "-b", "cotangent"]).status.code(), Some(2));
    assert_eq!(run(&["globgen", "-b", "tangent"]).status.code(), Some(0));
    // O(-1)^n with test O: good at n = 0, bad from n = 3 on.
    let o = run(&[
        "filter-check",
        "-b",
        "O(-1)",
        "--kind",
        "line",
        "--t",
        "1",
        "--tests",
        "0",
        "--horizon",
        "4",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["verdict"], "INCONCLUSIVE");
    let o = run(&[
        "filter-check",
        "-b",
        "O(-1)",
        "--kind",
        "frob",
        "--t",
        "0",
        "--horizon",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "verify",
        "--suite",
        "sid",
        "--fuzz-count",
        "40",
        "--seed",
        "7",
        "--json",
    ];
    let a = bin()
        .args(args)
        .env("AMPLE_FORGE_THREADS", "1")
        .output()
        .unwrap();
    let b = bin()
        .args(args)
        .env("AMPLE_FORGE_THREADS", "4")
        .output()
        .unwrap();
    let c = bin().args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(json(&a)["schema"], 1);
}

#[test]
fn bundle_output_matches_the_corpus_file() {
    let o = run(&["bundle", "-b", "tangent"]);
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(corpus("tangent_p2.mod")).unwrap()
    );
}

#[test]
fn constructions_print_module_files() {
    let o = run(&["twist", "-b", "tangent", "--by", "-2"]);
    assert!(stdout(&o).contains("gens [1, 1, 1]"));
    let o = run(&["frob", "-b", "tangent", "-k", "2"]);
    assert!(stdout(&o).contains("rels [[x^4], [y^4], [z^4]]"));
    let o = run(&["sym", "-b", "O(1)", "--power", "3"]);
    assert!(stdout(&o).contains("gens [-3]"));
    let o = run(&["frob-push", "-b", "O(1)", "--n", "1"]);
    assert!(stdout(&o).contains("gens [0, 0]\nrels []"));
    let o = run(&["restrict", "-b", "tangent", "--form", "z"]);
    assert!(stdout(&o).starts_with("ring p=2 n=1"));
    let o = run(&[
        "nlf",
        "-m",
        corpus("point_ideal_p2.mod").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(json(&o)["nlf_locus_dim"], 0);
}

#[test]
fn fuzz_files_replay_and_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&[
        "fuzz",
        "--shape",
        "direct-sum",
        "--count",
        "5",
        "--seed",
        "9",
        "--out-dir",
        d,
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let all = json(&o);
    let one = json(&run(&[
        "fuzz",
        "--shape",
        "direct-sum",
        "--seed",
        "9",
        "--index",
        "3",
        "--json",
    ]));
    assert_eq!(all["instances"][3], one["instances"][0]);
    let file = dir.path().join("fuzz-9-0003.mod");
    assert_eq!(
        std::fs::read_to_string(&file).unwrap(),
        all["instances"][3]["module"].as_str().unwrap()
    );
    assert_eq!(
        run(&["level", "-m", file.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tsv");
    let o = run(&[
        "regularity",
        "-b",
        "tangent",
        "--tsv",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "t\treg\n0\t-1\n1\t-2\n2\t-inf\n"
    );
}

#[test]
fn fixture_suites_pass() {
    for suite in ["chain72", "sandwich61", "cor42", "fujita"] {
        let o = run(&["verify", "--suite", suite, "--json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert_eq!(json(&o)["schema"], 1);
    }
}
