use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use safeset_core::cw::ExprBuilder;
use safeset_core::graph::{is_connected_safe_set, validate_path_decomposition};
use safeset_core::VertexSet;
use safeset::formats;
use serde_json::Value;
use tempfile::TempDir;

fn safeset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_safeset"))
        .args(args)
        .env_remove("SAFESET_BF_CAP")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, contents: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, contents).unwrap();
        p.to_str().unwrap().to_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn cycle_text(n: usize) -> String {
    let mut s = format!("{n} {n}\n");
    for v in 0..n {
        s.push_str(&format!("{v} {}\n", (v + 1) % n));
    }
    s
}

fn star_text(leaves: usize) -> String {
    let mut s = format!("{} {leaves}\n", leaves + 1);
    for v in 1..=leaves {
        s.push_str(&format!("0 {v}\n"));
    }
    s
}

fn c8_expression() -> String {
    let mut b = ExprBuilder::new(4).unwrap();
    let v0 = b.leaf(1).unwrap();
    let v1 = b.leaf(2).unwrap();
    let u = b.union(v0, v1).unwrap();
    let mut x = b.join(1, 2, u).unwrap();
    for k in 2..8 {
        let v = b.leaf(3).unwrap();
        let u = b.union(x, v).unwrap();
        let e = b.join(2, 3, u).unwrap();
        x = if k < 7 {
            let r = b.relabel(2, 4, e).unwrap();
            b.relabel(3, 2, r).unwrap()
        } else {
            b.join(1, 3, e).unwrap()
        };
    }
    b.finish(x).unwrap().to_string()
}

fn witness(report: &Value) -> String {
    let w: Vec<String> = report["witness"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    w.join(",")
}

#[test]
fn solve_c8_with_every_algorithm() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let expr = f.put("c8.cw", &c8_expression());
    for connected in [false, true] {
        let runs: Vec<Vec<&str>> = vec![
            vec!["--algo", "oracle"],
            vec!["--algo", "nd"],
            vec!["--algo", "branch", "-k", "4"],
            vec!["--algo", "cw", "--expr", &expr],
        ];
        for mut args in runs {
            args.insert(0, "solve");
            if connected {
                args.push("--connected");
            }
            args.push(&c8);
            let out = safeset(&args);
            assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
            let r = json(&out);
            assert_eq!(r["size"], 4, "{args:?}");
            assert_eq!(r["problem"], if connected { "css" } else { "ss" });
            assert_eq!(r["stats"]["n"], 8);
            assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
            let mut verify = vec!["verify", "--set"];
            let set = witness(&r);
            verify.push(&set);
            if connected {
                verify.push("--connected");
            }
            verify.push(&c8);
            assert_eq!(code(&safeset(&verify)), 0, "{verify:?}");
        }
    }
}

#[test]
fn reports_include_parameters_when_known() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let expr = f.put("c8.cw", &c8_expression());
    let r = json(&safeset(&["solve", "--algo", "nd", &c8]));
    assert_eq!(r["stats"]["nd"], 8);
    assert!(r["stats"].get("c").is_none());
    let r = json(&safeset(&["solve", "--algo", "cw", "--expr", &expr]));
    assert_eq!(r["stats"]["c"], 4);
    assert_eq!(r["size"], 4);
}

#[test]
fn infeasible_branch_exits_one() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let out = safeset(&["solve", "--algo", "branch", "-k", "3", &c8]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["feasible"], false);
    assert_eq!(r["witness"], Value::Array(vec![]));
}

#[test]
fn star_connected_safe_number_is_one() {
    let f = Files::new();
    let star = f.put("star13.gr", &star_text(13));
    let r = json(&safeset(&["solve", "--algo", "nd", "--connected", &star]));
    assert_eq!(r["size"], 1);
    assert_eq!(r["witness"], serde_json::json!([0]));
}

#[test]
fn approximation_reports_a_safe_set() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let out = safeset(&["solve", "--algo", "approx", &c8]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["algorithm"], "approx");
    assert!(r["size"].as_u64().unwrap() <= 20);
}

#[test]
fn usage_errors_exit_two() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let k4 = f.put("k4.gr", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let expr = f.put("c8.cw", &c8_expression());
    let bad = f.put("bad.gr", "3 2\n0 1\n1 1\n");
    let missing = f.path("missing.gr");
    for args in [
        vec!["solve", "--algo", "branch", c8.as_str()],
        vec!["solve", "--algo", "cw", c8.as_str()],
        vec!["solve", "--algo", "cw", "--expr", expr.as_str(), k4.as_str()],
        vec!["solve", "--algo", "oracle", bad.as_str()],
        vec!["solve", "--algo", "oracle", missing.to_str().unwrap()],
        vec!["solve", "--algo", "magic", c8.as_str()],
        vec!["solve", "--algo", "branch", "-k", "0", c8.as_str()],
        vec!["solve", "--algo", "oracle", "--bf-cap", "5", c8.as_str()],
    ] {
        let out = safeset(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = safeset(&["solve", "--algo", "oracle", &bad]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn brute_force_cap_from_environment() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_safeset"))
            .args(["solve", "--algo", "oracle", &c8])
            .env("SAFESET_BF_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("7")), 2);
    assert_eq!(code(&run("8")), 0);
}

#[test]
fn verify_reports_violations() {
    let f = Files::new();
    let c8 = f.put("c8.gr", &cycle_text(8));
    let out = safeset(&["verify", "--set", "0,1,4,5", &c8]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);

    let out = safeset(&["verify", "--set", "0", &c8]);
    assert_eq!(code(&out), 1);
    let v = &json(&out)["violation"];
    assert_eq!(v["kind"], "larger_neighbor");
    assert_eq!(v["c"], serde_json::json!([0]));
    assert_eq!(v["d"], serde_json::json!([1, 2, 3, 4, 5, 6, 7]));

    let out = safeset(&["verify", "--connected", "--set", "0,1,4,5", &c8]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["violation"], serde_json::json!({"kind": "disconnected", "components": 2}));

    let out = safeset(&["verify", "--set", "", &c8]);
    assert_eq!(json(&out)["violation"]["kind"], "empty");
    assert_eq!(code(&safeset(&["verify", "--set", "0,x", &c8])), 2);
    assert_eq!(code(&safeset(&["verify", "--set", "8", &c8])), 2);
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn generate_from_dominating_set() {
    let f = Files::new();
    let k3 = f.put("k3.gr", "3 3\n0 1\n1 2\n0 2\n");
    let (out, pd, cert) = (f.path("out.gr"), f.path("pd.json"), f.path("cert.json"));
    let run = safeset(&[
        "gen", "ds", "-k", "1", &k3,
        "-o", out.to_str().unwrap(),
        "--decomp", pd.to_str().unwrap(),
        "--cert", cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let summary = json(&run);
    assert_eq!(summary["target"], 13);
    assert_eq!(summary["n"], 202);

    let text = read(&out);
    let g = formats::parse_graph(&text).unwrap();
    assert_eq!(formats::write_graph(&g), text);
    let sidecar: Value = serde_json::from_str(&read(&f.path("out.gr.json"))).unwrap();
    assert_eq!(sidecar["target"], 13);
    assert_eq!(sidecar["role_map"].as_array().unwrap().len(), g.n());
    assert_eq!(sidecar["source"]["problem"], "dominating_set");
    assert_eq!(sidecar["role_map"][g.n() - 1], "u");

    let decomposition = formats::parse_decomposition(&read(&pd)).unwrap();
    assert!(validate_path_decomposition(&g, &decomposition).unwrap() <= 7);

    let cert: Value = serde_json::from_str(&read(&cert)).unwrap();
    assert_eq!(cert["source"], serde_json::json!([0]));
    let s: Vec<usize> = serde_json::from_value(cert["safe_set"].clone()).unwrap();
    assert_eq!(s.len(), 13);
    assert!(is_connected_safe_set(&g, &VertexSet::from_members(g.n(), s).unwrap()).unwrap());
}

#[test]
fn generate_from_red_blue_dominating_set() {
    let f = Files::new();
    let out = f.path("h.gr");
    let cert = f.path("cert.json");
    let single = f.put("rb1.bg", "1 1 1\n0 0\n");
    assert_eq!(code(&safeset(&["gen", "rbds", "-k", "1", &single, "-o", out.to_str().unwrap()])), 2);

    let two = f.put("rb2.bg", "2 1 2\n0 0\n1 0\n");
    let run = safeset(&["gen", "rbds", "-k", "1", &two, "-o", out.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(json(&run)["target"], 4);
    let g = formats::parse_graph(&read(&out)).unwrap();
    assert_eq!(g.n(), 36);
    let doc: Value = serde_json::from_str(&read(&cert)).unwrap();
    assert_eq!(doc["source"], serde_json::json!([0]));
    let s: Vec<usize> = serde_json::from_value(doc["safe_set"].clone()).unwrap();
    assert!(is_connected_safe_set(&g, &VertexSet::from_members(g.n(), s).unwrap()).unwrap());

    let none = f.put("rb3.bg", "3 2 3\n0 0\n1 1\n2 0\n");
    let run = safeset(&["gen", "rbds", "-k", "1", &none, "-o", out.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&run), 1);
}

#[test]
fn generator_rejects_bad_parameters() {
    let f = Files::new();
    let k3 = f.put("k3.gr", "3 3\n0 1\n1 2\n0 2\n");
    let out = f.path("o.gr");
    assert_eq!(code(&safeset(&["gen", "ds", "-k", "0", &k3, "-o", out.to_str().unwrap()])), 2);
    assert!(!out.exists());
}
