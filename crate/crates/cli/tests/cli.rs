use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn polyflip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyflip"))
        .args(args)
        .env_remove("POLYFLIP_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = polyflip(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Paths of the hypergraph and both orientations written by `gen`.
fn instance_files(dir: &Path) -> [String; 3] {
    ["hypergraph.json", "h1.json", "h2.json"].map(|f| dir.join(f).to_str().unwrap().to_string())
}

#[test]
fn star_gadget_distances() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("star");
    json(&["gen", "star-gadget", "--out", s(&out)]);
    let (h, a, b) = (out.join("hypergraph.json"), out.join("h1.json"), out.join("h2.json"));
    let pair = ["--hypergraph", s(&h), "--from", s(&a), "--to", s(&b)];

    let mut args = vec!["dist", "exact"];
    args.extend(pair);
    assert_eq!(json(&args)["length"], 12);
    args.extend(["--forbid-vertex", "c"]);
    assert_eq!(json(&args)["length"], 15);
    // forbidding by index works too
    let last = args.len() - 1;
    args[last] = "0";
    assert_eq!(json(&args)["length"], 15);

    let mut args = vec!["dist", "bounds"];
    args.extend(pair);
    let r = json(&args);
    assert_eq!((r["lower_bound"].as_u64(), r["upper_bound"].as_u64(), r["delta2"].as_u64()), (Some(3), Some(15), Some(6)));
}

#[test]
fn approximation_is_exact_on_linear_hypergraphs() {
    let h = fixture("linear.json");
    let (a, b) = (fixture("linear_h1.json"), fixture("linear_h2.json"));
    let pair = ["--hypergraph", s(&h), "--from", s(&a), "--to", s(&b), "--show-sequence"];
    let mut exact = vec!["dist", "exact"];
    exact.extend(pair);
    let mut approx = vec!["dist", "approx"];
    approx.extend(pair);
    let (e, p) = (json(&exact), json(&approx));
    assert_eq!(e["length"], p["length"]);
    assert_eq!(p["delta2"], 1);
    assert_eq!(p["sequence"].as_array().unwrap().len() as u64, p["length"].as_u64().unwrap());
}

#[test]
fn hardness_files_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k2");
    let meta = json(&["gen", "hardness", "--graph", s(&fixture("k2.json")), "--out", s(&out)]);
    assert_eq!((meta["n"].as_u64(), meta["m"].as_u64()), (Some(11), Some(31)));
    assert_eq!(meta["predicted_distance"], 14);

    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out.join("hypergraph.json")).unwrap()).unwrap();
    let k2 = polyflip::graph::Graph::complete(2);
    let inst = polyflip::hardness::build_reduction(&k2);
    let edges: Vec<Vec<usize>> = serde_json::from_value(doc["edges"].clone()).unwrap();
    assert_eq!(edges, inst.hypergraph.edges());
    let names: Vec<String> = serde_json::from_value(doc["vertices"].clone()).unwrap();
    assert_eq!(names, inst.vertex_names());
    let h1: Value = serde_json::from_str(&std::fs::read_to_string(out.join("h1.json")).unwrap()).unwrap();
    let heads: Vec<usize> = serde_json::from_value(h1["heads"].clone()).unwrap();
    assert_eq!(heads, inst.h1.heads());
}

#[test]
fn interval_generator_counts() {
    let dir = tempfile::tempdir().unwrap();
    let meta = json(&["gen", "interval", "--n", "4", "--out", s(&dir.path().join("i"))]);
    assert_eq!(meta["m"], 6);
    let h = dir.path().join("i/hypergraph.json");
    let r = json(&["check", "submodular", "--instance", s(&h)]);
    assert_eq!(r["result"], "PASS");
}

#[test]
fn box_and_pcfct_examples() {
    let r = json(&["box", "--instance", s(&fixture("box_example.json")), "--verify"]);
    assert_eq!((r["length"].as_u64(), r["m"].as_u64()), (Some(3), Some(1)));
    assert_eq!(r["verified"], true);

    let r = json(&["box", "--instance", s(&fixture("box_equal.json"))]);
    assert_eq!(r["length"], 0);

    let r = json(&["pcfct", "--instance", s(&fixture("pcfct_pairs.json")), "--verify"]);
    assert_eq!((r["value"].as_u64(), r["m"].as_u64(), r["nonzeros"].as_u64()), (Some(2), Some(2), Some(2)));

    let out = polyflip(&["pcfct", "--instance", s(&fixture("pcfct_large.json"))]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
}

#[test]
fn checks_report_witnesses() {
    let out = polyflip(&["check", "submodular", "--instance", s(&fixture("corrupted_oracle.json"))]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("result: FAIL"));
    assert!(text.contains("witness_t: 0") && text.contains("witness_u: 1"));

    let r = json(&["check", "submodular", "--instance", s(&fixture("linear.json"))]);
    assert_eq!(r["result"], "PASS");
    let r = json(&["check", "submodular", "--instance", s(&fixture("triangle.json")), "--oracle", "building-set"]);
    assert_eq!(r["result"], "PASS");

    let out = polyflip(&[
        "check",
        "acyclic",
        "--hypergraph",
        s(&fixture("linear.json")),
        "--orientation",
        s(&fixture("cyclic.json")),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("cycle: "));
    let r = json(&["check", "acyclic", "--hypergraph", s(&fixture("linear.json")), "--orientation", s(&fixture("linear_h1.json"))]);
    assert_eq!(r["result"], "PASS");

    let r = json(&["check", "correspondence", "--all-up-to", "4"]);
    assert_eq!(r["result"], "PASS");
    assert_eq!(r["failures"], 0);
}

#[test]
fn matroid_instance() {
    let r = json(&["matroid", "--instance", s(&fixture("uniform_2_4.json"))]);
    assert_eq!((r["length"].as_u64(), r["difference"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn malformed_input_exits_with_two() {
    let out = polyflip(&["box", "--instance", s(&fixture("bad_version.json"))]);
    assert_eq!(code(&out), 2);
    let out = polyflip(&["box", "--instance", "/nonexistent/box.json"]);
    assert_eq!(code(&out), 2);
    let out = polyflip(&["box", "--instance", s(&fixture("k2.json"))]);
    assert_eq!(code(&out), 2);
    // random generators insist on a seed
    let dir = tempfile::tempdir().unwrap();
    let out = polyflip(&["gen", "random-box", "--n", "3", "--out", s(dir.path())]);
    assert_eq!(code(&out), 2);
    // cyclic orientations are rejected by the distance commands
    let h = fixture("linear.json");
    for mode in ["exact", "approx", "bounds"] {
        let out = polyflip(&[
            "dist",
            mode,
            "--hypergraph",
            s(&h),
            "--from",
            s(&fixture("cyclic.json")),
            "--to",
            s(&fixture("linear_h2.json")),
        ]);
        assert_eq!(code(&out), 2, "{mode}");
    }
}

#[test]
fn strict_and_lax_modes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.json");
    std::fs::write(&path, r#"{"version":1,"kind":"box","a":[1,0],"b":[0,1],"note":"x"}"#).unwrap();
    let out = polyflip(&["box", "--instance", s(&path)]);
    assert_eq!(code(&out), 2);
    let out = polyflip(&["box", "--instance", s(&path), "--lax"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn state_cap_from_environment_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("star");
    json(&["gen", "star-gadget", "--out", s(&out)]);
    let [h, a, b] = instance_files(&out);
    let args = ["dist", "exact", "--hypergraph", &h, "--from", &a, "--to", &b];
    let run = |extra: &[&str], env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_polyflip"));
        cmd.args(args).args(extra).env_remove("POLYFLIP_MAX_STATES");
        if let Some(v) = env {
            cmd.env("POLYFLIP_MAX_STATES", v);
        }
        cmd.output().unwrap()
    };
    assert_eq!(code(&run(&[], Some("10"))), 3);
    assert_eq!(code(&run(&["--max-states", "100000"], Some("10"))), 0);
    assert_eq!(code(&run(&["--max-states", "10"], None)), 3);
}

#[test]
fn generated_files_round_trip_through_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rh");
    json(&["gen", "random-hypergraph", "--n", "6", "--edges", "5", "--seed", "4", "--out", s(&out)]);
    let [h, a, b] = instance_files(&out);
    let args = ["--hypergraph", &h, "--from", &a, "--to", &b];
    let mut exact = vec!["dist", "exact"];
    exact.extend(args);
    let mut approx = vec!["dist", "approx"];
    approx.extend(args);
    let (e, a) = (json(&exact), json(&approx));
    assert!(e["length"].as_u64() <= a["length"].as_u64());

    let rb = dir.path().join("rb");
    json(&["gen", "random-box", "--n", "6", "--seed", "2", "--out", s(&rb)]);
    let r = json(&["box", "--instance", s(&rb.join("box.json")), "--verify"]);
    assert_eq!(r["verified"], true);

    let rg = dir.path().join("rg");
    json(&["gen", "random-graph", "--n", "5", "--seed", "1", "--out", s(&rg)]);
    let r = json(&["check", "submodular", "--instance", s(&rg.join("graph.json")), "--oracle", "building-set"]);
    assert_eq!(r["result"], "PASS");
}
