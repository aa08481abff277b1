//! Pinned outputs. Set `KFLAB_UPDATE_GOLDEN=1` to rewrite them after an
//! intended change.

use std::path::PathBuf;

use kflab::analytics::c_k_threshold;
use kflab::harness::{run_pipeline, scan, CapPolicy, Mode, PipelineParams, ScanConfig, CSV_HEADER};

fn check(name: &str, got: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    if std::env::var_os("KFLAB_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "output differs from {}", path.display());
}

#[test]
fn scan_n200_k3() {
    let cfg = ScanConfig {
        k: 3,
        n: 200,
        c_from: 3.0,
        c_to: 9.0,
        steps: 4,
        trials: 3,
        base_seed: 7,
        mode: Mode::Simple,
        cap: CapPolicy::exact(),
        threads: Some(2),
        keep_certificates: false,
    };
    check("scan_n200_k3.csv", &scan(&cfg).unwrap().csv(false));
}

#[test]
fn single_record_n10000_k3() {
    let p = PipelineParams {
        n: 10_000,
        c: c_k_threshold(3).unwrap().c_k + 3.0,
        k: 3,
        seed: 1,
        mode: Mode::Simple,
        cap: CapPolicy::default(),
    };
    let out = run_pipeline(&p);
    assert!(out.record.core_size > 0);
    assert!(out.record.error.is_empty());
    check("record_n10000_k3.csv", &format!("{CSV_HEADER}\n{}\n", out.record.csv_row(false)));
}
