//! Run STRIP on a k-core with the start-of-iteration checks on and print
//! the first rows of its trace.

use kflab::kcore::k_core;
use kflab::randgraph::gen_gnp;
use kflab::strip::{enforce_parity, run_strip, trace_csv, verify_k, StripConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k) = (5000, 3);
    let core = k_core(&gen_gnp(n, 6.0, 1), k).core;
    let cfg = StripConfig { n_ref: Some(n), debug_checks: true, ..StripConfig::new(k) };
    let r = run_strip(&core, &cfg)?;
    println!(
        "core {} -> K {} after {} iterations ({}), cap {}",
        core.n(),
        r.k_graph.n(),
        r.iterations,
        r.halted.as_str(),
        r.cap
    );
    println!("observation violations {}, enqueue bound violations {}", r.observation_violations, r.enqueue_bound_violations);
    for line in trace_csv(&r.trace).lines().take(8) {
        println!("{line}");
    }
    let r = enforce_parity(r, k);
    println!("{:?}", verify_k(&r.k_graph, k, n));
    Ok(())
}
