use kflab::analytics::c_k_threshold;
use kflab::kcore::k_core;
use kflab::randgraph::gen_gnp;
use kflab::strip::{run_strip, verify_k, HaltReason, StripConfig};

/// Success rate of STRIP just above the k-core threshold at `k = 10`: at
/// least 18 of 20 runs should stop with Q empty and keep a third of the
/// vertices.
#[test]
fn k10_halts_with_large_k() {
    let (n, k) = (100_000, 10);
    let c = c_k_threshold(k).unwrap().c_k + 0.3;
    let cfg = StripConfig { n_ref: Some(n), debug_checks: false, record_trace: false, ..StripConfig::new(k) };
    let mut good = 0;
    let mut outcomes = Vec::new();
    for seed in 0..20 {
        let core = k_core(&gen_gnp(n, c, 4000 + seed), k).core;
        let r = run_strip(&core, &cfg).unwrap();
        let report = verify_k(&r.k_graph, k, n);
        if r.halted == HaltReason::QEmpty && report.k3 {
            good += 1;
        }
        outcomes.push((core.n(), r.halted.as_str(), r.iterations, r.k_graph.n()));
    }
    println!("{good}/20 runs halted with Q empty and |K| >= n/3: {outcomes:?}");
    assert!(good >= 18, "{good}/20: {outcomes:?}");
}
