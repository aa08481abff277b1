use std::path::Path;
use std::process::{Command, Output};

use kflab::kfactor::{verify_k_factor, FactorCertificate};
use kflab::Graph;

fn kflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kflab")).args(args).env_remove("KFLAB_THREADS").output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_core_strip_round() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let core = dir.path().join("core.txt");
    let k_out = dir.path().join("k.txt");
    let trace = dir.path().join("trace.csv");

    let o = kflab(&["gen", "--n", "2000", "--c", "6", "--seed", "3", "--out", p(&g)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let o2 = kflab(&["gen", "--n", "2000", "--c", "6", "--seed", "3"]);
    assert_eq!(std::fs::read_to_string(&g).unwrap(), stdout(&o2));

    let o = kflab(&["core", "--in", p(&g), "--k", "3", "--out", p(&core)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let core_graph = Graph::parse_edge_list(&std::fs::read_to_string(&core).unwrap()).unwrap();
    assert!(core_graph.n() > 0 && core_graph.min_degree().unwrap() >= 3);

    let o = kflab(&[
        "strip", "--in", p(&core), "--k", "3", "--n", "2000", "--out", p(&k_out), "--trace", p(&trace), "--debug-checks",
    ]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim_start_matches(|c| c != '{')).unwrap();
    assert_eq!(v["observation_violations"], 0);
    assert!(std::fs::read_to_string(&trace).unwrap().starts_with("iteration,deleted,q_size"));
    assert!(k_out.exists());
}

#[test]
fn factor_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.txt");
    std::fs::write(&c4, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let cert = dir.path().join("cert.json");

    let o = kflab(&["factor", "--in", p(&c4), "--k", "2", "--emit-certificate", p(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let c = FactorCertificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let g = Graph::parse_edge_list(&std::fs::read_to_string(&c4).unwrap()).unwrap();
    assert!(verify_k_factor(&g, &c.edges, 2));

    // Odd k n: no 1-factor of an odd cycle.
    let c3 = dir.path().join("c3.txt");
    std::fs::write(&c3, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    assert_eq!(kflab(&["factor", "--in", p(&c3), "--k", "1"]).status.code(), Some(3));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1\n0 7\n").unwrap();
    assert_eq!(kflab(&["factor", "--in", p(&bad), "--k", "1"]).status.code(), Some(2));
    assert_eq!(kflab(&["factor", "--in", p(&dir.path().join("missing")), "--k", "1"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(kflab(&["gen", "--n", "10"]).status.code(), Some(2));
    assert_eq!(kflab(&["law", "--k", "1"]).status.code(), Some(2));
    assert_eq!(kflab(&["scan", "--k", "3", "--n", "10", "--c-from", "5", "--c-to", "4"]).status.code(), Some(2));
    assert_eq!(kflab(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn law_prints_constants() {
    let o = kflab(&["law", "--k", "3", "--c", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["params"]["c_k"].as_f64().unwrap() - 3.3509188715).abs() < 1e-9);
    assert!(v["law"].is_object());
}

#[test]
fn scan_outputs_and_thread_override() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["scan", "--k", "3", "--n", "300", "--c-from", "3", "--c-to", "7", "--steps", "3", "--trials", "2"];
    let a = kflab(&base);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a).lines().count(), 7);

    let out = dir.path().join("scan");
    let certs = dir.path().join("certs");
    let mut args = base.to_vec();
    args.extend(["--out", p(&out), "--emit-certificate", p(&certs), "--threads", "3"]);
    let b = Command::new(env!("CARGO_BIN_EXE_kflab")).args(&args).env("KFLAB_THREADS", "1").output().unwrap();
    assert_eq!(b.status.code(), Some(0), "{b:?}");
    assert_eq!(std::fs::read_to_string(out.join("scan.csv")).unwrap(), stdout(&a));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["points"].as_array().unwrap().len(), 3);
}

#[test]
fn audits() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    assert_eq!(kflab(&["gen", "--n", "1500", "--c", "6", "--seed", "5", "--out", p(&g)]).status.code(), Some(0));
    for which in ["lw0", "P", "elbr", "trace"] {
        let o = kflab(&["audit", "--in", p(&g), "--k", "3", "--which", which, "--c", "6", "--budget", "50"]);
        assert_eq!(o.status.code(), Some(0), "{which}: {o:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(v.is_object(), "{which}");
    }
    assert_eq!(kflab(&["audit", "--in", p(&g), "--k", "3", "--which", "zz"]).status.code(), Some(2));
}
