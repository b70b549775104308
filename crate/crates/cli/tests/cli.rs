use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn coopcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coopcolor"))
        .args(args)
        .env_remove("COOPCOLOR_MAX_ORACLE")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_tight_cycle_writes_instance_chain_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    let out = coopcolor(&["gen", "tight-cycle", "--n", "5", "--k", "3", "-o", p(&c)]);
    assert_eq!(code(&out), 0);
    let doc = json_file(&c);
    assert_eq!(doc["n"], 5);
    assert_eq!(doc["hypergraphs"][0]["edges"].as_array().unwrap().len(), 5);
    assert_eq!(json_file(&dir.path().join("c.chain.json"))["type"], "chain");
    let manifest = json_file(&dir.path().join("c.manifest.json"));
    assert_eq!(manifest["command"], "gen tight-cycle");
    assert_eq!(manifest["parameters"]["n"], 5);
    assert!(manifest["seed"].is_null());
    assert!(manifest["toolVersion"].is_string() && manifest["elapsedMillis"].is_u64());
}

#[test]
fn gen_lower_bound_is_implicit() {
    let dir = tempfile::tempdir().unwrap();
    let lb = dir.path().join("lb.json");
    assert_eq!(
        code(&coopcolor(&[
            "gen",
            "lower-bound",
            "--k",
            "3",
            "--m",
            "2",
            "-o",
            p(&lb)
        ])),
        0
    );
    assert_eq!(
        json_file(&lb),
        serde_json::json!({"type": "complete-kpartite-power", "k": 3, "m": 2})
    );
}

#[test]
fn gen_random_is_audited_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let args = [
            "gen",
            "random-kpartite",
            "--k",
            "3",
            "--m",
            "4",
            "--n",
            "30",
            "--dmax",
            "3",
            "--seed",
            "11",
        ];
        let out = coopcolor(&[&args[..], &["-o", p(path)]].concat());
        assert_eq!(code(&out), 0);
        assert!(String::from_utf8_lossy(&out.stderr).contains("audit ok"));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(json_file(&dir.path().join("a.manifest.json"))["seed"], 11);
    assert_eq!(json_file(&a)["hypergraphs"].as_array().unwrap().len(), 4);
    assert_eq!(
        code(&coopcolor(&[
            "gen",
            "random-kpartite",
            "--k",
            "3",
            "--m",
            "4",
            "--n",
            "31",
            "--dmax",
            "3"
        ])),
        2
    );
}

#[test]
fn gen_parameter_errors_exit_2() {
    assert_eq!(
        code(&coopcolor(&["gen", "tight-cycle", "--n", "3", "--k", "3"])),
        2
    );
    assert_eq!(
        code(&coopcolor(&["gen", "lower-bound", "--k", "2", "--m", "2"])),
        2
    );
}

#[test]
fn partition_examples() {
    let run = |n: &str, perm: &str| -> Value {
        let out = coopcolor(&["partition", "--n", n, "--perm", perm]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    assert_eq!(run("5", "2,4,3,0,1")["caseTag"], "odd-smallcase");
    let even = run("4", "0,1,2,3");
    assert_eq!(even["caseTag"], "even");
    assert_eq!(even["B"], serde_json::json!([0, 2]));
    let removal = run("5", "1,0,2,4,3");
    assert_eq!(removal["caseTag"], "odd-D-nonempty");
    assert_eq!(removal["B"], serde_json::json!([0, 3]));
    assert_eq!(removal["R"], serde_json::json!([1, 2, 4]));

    assert_eq!(
        code(&coopcolor(&["partition", "--n", "4", "--perm", "0,1,1,3"])),
        2
    );
    assert_eq!(
        code(&coopcolor(&["partition", "--n", "4", "--perm", "0,1,2"])),
        2
    );
    assert_eq!(
        code(&coopcolor(&["partition", "--n", "3", "--perm", "0,x,2"])),
        2
    );
}

#[test]
fn chain_pair_on_tight_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    assert_eq!(
        code(&coopcolor(&[
            "gen",
            "tight-cycle",
            "--n",
            "100",
            "--k",
            "3",
            "-o",
            p(&c)
        ])),
        0
    );
    let chain = dir.path().join("c.chain.json");
    let col = dir.path().join("col.json");
    let out = coopcolor(&[
        "color",
        "chain-pair",
        "--h1",
        p(&chain),
        "--h2",
        p(&chain),
        "-o",
        p(&col),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_file(&col)["m"], 2);
    assert!(dir.path().join("col.manifest.json").exists());
    // A chain document is a one-member family, so a 2-class coloring does not fit it.
    assert_eq!(
        code(&coopcolor(&[
            "verify",
            "--instance",
            p(&chain),
            "--coloring",
            p(&col)
        ])),
        2
    );
    let fam = dir.path().join("fam.json");
    let mut doc = json_file(&c);
    let h = doc["hypergraphs"][0].clone();
    doc["hypergraphs"].as_array_mut().unwrap().push(h);
    fs::write(&fam, doc.to_string()).unwrap();
    let out = coopcolor(&["verify", "--instance", p(&fam), "--coloring", p(&col)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "ok");
}

#[test]
fn chain_pair_counterexample_is_unsupported() {
    let out = coopcolor(&[
        "color",
        "chain-pair",
        "--h1",
        p(&fixture("p1.chain.json")),
        "--h2",
        p(&fixture("p2.chain.json")),
    ]);
    assert_eq!(code(&out), 5);
}

#[test]
fn semirandom_aborts_on_lower_bound_family() {
    let dir = tempfile::tempdir().unwrap();
    let lb = dir.path().join("lb.json");
    assert_eq!(
        code(&coopcolor(&[
            "gen",
            "lower-bound",
            "--k",
            "3",
            "--m",
            "2",
            "-o",
            p(&lb)
        ])),
        0
    );
    let col = dir.path().join("col.json");
    let out = coopcolor(&[
        "color",
        "semirandom",
        "--instance",
        p(&lb),
        "--seed",
        "3",
        "--max-rounds",
        "50",
        "-o",
        p(&col),
    ]);
    assert_eq!(code(&out), 4);
    assert!(!col.exists());
    let report = json_file(&dir.path().join("col.failure.json"));
    assert_eq!(report["outcome"], "aborted");
    assert_eq!(report["rounds"], 50);
    assert!(!report["badVertices"].as_array().unwrap().is_empty());
}

#[test]
fn semirandom_colors_random_family() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("r.json");
    let gen = [
        "gen",
        "random-kpartite",
        "--k",
        "3",
        "--m",
        "12",
        "--n",
        "300",
        "--dmax",
        "6",
        "--seed",
        "5",
    ];
    assert_eq!(code(&coopcolor(&[&gen[..], &["-o", p(&inst)]].concat())), 0);
    let col = dir.path().join("col.json");
    let out = coopcolor(&[
        "color",
        "semirandom",
        "--instance",
        p(&inst),
        "--seed",
        "5",
        "-o",
        p(&col),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        code(&coopcolor(&[
            "verify",
            "--instance",
            p(&inst),
            "--coloring",
            p(&col)
        ])),
        0
    );
    assert_eq!(json_file(&dir.path().join("col.manifest.json"))["seed"], 5);
}

#[test]
fn verify_reports_witness_and_input_errors() {
    let inst = fixture("p1p2.json");
    let out = coopcolor(&[
        "verify",
        "--instance",
        p(&inst),
        "--coloring",
        p(&fixture("p1p2.zeros.json")),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "violation: hypergraph 0, edge {0,1}");
    let out = coopcolor(&[
        "verify",
        "--instance",
        p(&inst),
        "--coloring",
        p(&fixture("p1p2.truncated.json")),
    ]);
    assert_eq!(code(&out), 2);
    let out = coopcolor(&[
        "verify",
        "--instance",
        "/nonexistent.json",
        "--coloring",
        p(&fixture("p1p2.zeros.json")),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bounds_prints_formula_values() {
    let out = coopcolor(&["bounds", "--k", "3", "--d", "9", "--epsilon", "0.1"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["lower"], 1.0);
    assert!((doc["upper"].as_f64().unwrap() - 9.44).abs() < 0.01);
    assert_eq!(doc["lll"]["m"], 10);
    assert_eq!(doc["lll"]["holds"], false);
    assert_eq!(
        code(&coopcolor(&[
            "bounds",
            "--k",
            "3",
            "--d",
            "1",
            "--epsilon",
            "0.1"
        ])),
        2
    );
}

#[test]
fn oracle_commands() {
    let out = coopcolor(&["oracle", "solve", "--instance", p(&fixture("p1p2.json"))]);
    assert_eq!(stdout(&out).trim(), "none");
    assert_eq!(code(&out), 1);

    let out = coopcolor(&["oracle", "partition", "--n", "5", "--perm", "2,4,3,0,1"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        doc["B"].as_array().unwrap().len() + doc["R"].as_array().unwrap().len(),
        5
    );

    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    assert_eq!(
        code(&coopcolor(&[
            "gen",
            "tight-cycle",
            "--n",
            "5",
            "--k",
            "3",
            "-o",
            p(&c)
        ])),
        0
    );
    let out = Command::new(env!("CARGO_BIN_EXE_coopcolor"))
        .args(["oracle", "solve", "--instance", p(&c)])
        .env("COOPCOLOR_MAX_ORACLE", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim(), "budget-exceeded");
    let fam = dir.path().join("fam.json");
    let mut doc = json_file(&c);
    let h = doc["hypergraphs"][0].clone();
    doc["hypergraphs"].as_array_mut().unwrap().push(h);
    fs::write(&fam, doc.to_string()).unwrap();
    let out = coopcolor(&[
        "oracle",
        "solve",
        "--instance",
        p(&fam),
        "--max-assignments",
        "1000",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        serde_json::from_str::<Value>(&stdout(&out)).unwrap()["assignment"],
        serde_json::json!([0, 0, 1, 0, 1])
    );
}

#[test]
fn sweep_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let args = [
            "experiment",
            "sweep",
            "--k",
            "3",
            "--n",
            "30",
            "--dmax",
            "3",
            "--m",
            "3:5",
            "--trials",
            "4",
        ];
        assert_eq!(
            code(&coopcolor(
                &[&args[..], &["--seed", "1", "-o", p(path)]].concat()
            )),
            0
        );
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,successes,trials,mean_rounds");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("3,") && lines[3].starts_with("5,"));
    assert_eq!(
        code(&coopcolor(&[
            "experiment",
            "sweep",
            "--k",
            "3",
            "--n",
            "30",
            "--dmax",
            "3",
            "--m",
            "5:3",
            "--trials",
            "1"
        ])),
        2
    );
}

#[test]
fn bench_writes_csv() {
    let out = coopcolor(&["bench", "--start", "100", "--count", "3", "--reps", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,reps,case,min_nanos,median_nanos,nanos_per_vertex"
    );
    assert_eq!(lines.count(), 3);
}
