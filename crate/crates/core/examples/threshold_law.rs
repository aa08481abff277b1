//! Thresholds `c_k` and the degree law of the k-core just above them.
//!
//! ```text
//! cargo run --example threshold_law
//! ```

use kflab::analytics::{c_k_asymptotic, c_k_threshold, core_law, ThresholdParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>12} {:>10} {:>12} {:>10}", "k", "c_k", "x_k", "asymptotic", "beta");
    for k in [3, 4, 5, 10, 20, 50, 100] {
        let t = c_k_threshold(k)?;
        let p = ThresholdParams::new(k)?;
        println!("{k:>4} {:>12.6} {:>10.6} {:>12.6} {:>10.4}", t.c_k, t.x_k, c_k_asymptotic(k as f64), p.beta);
    }

    let k = 5;
    let c = c_k_threshold(k)?.c_k + 0.5;
    let law = core_law(c, k, k + 6)?;
    println!("\nk = {k}, c = {c:.4}: core fraction {:.4}", law.zeta);
    for i in k..=k + 6 {
        println!("  degree {i:>2}: {:.5}", law.lambda_at(i));
    }
    Ok(())
}
