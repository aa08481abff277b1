//! The full pipeline over a grid of densities around `c_k`.

use kflab::analytics::c_k_threshold;
use kflab::harness::{scan, CapPolicy, Mode, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 3;
    let c_k = c_k_threshold(k)?.c_k;
    let cfg = ScanConfig {
        k,
        n: 5000,
        c_from: c_k - 0.5,
        c_to: c_k + 2.5,
        steps: 7,
        trials: 4,
        base_seed: 1,
        mode: Mode::Simple,
        cap: CapPolicy::default(),
        threads: None,
        keep_certificates: false,
    };
    let out = scan(&cfg)?;
    println!("{:>8} {:>8} {:>8} {:>10} {:>8}", "c", "empty", "q_empty", "core", "factor");
    for p in &out.summary.points {
        println!("{:>8.3} {:>8.2} {:>8.2} {:>10.1} {:>8.2}", p.c, p.empty_core, p.q_empty, p.mean_core_size, p.factor_found);
    }
    print!("{}", out.csv(false));
    Ok(())
}
