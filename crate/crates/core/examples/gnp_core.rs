//! Sample `G(n, c/n)`, peel its k-core, and compare with the predicted law.

use kflab::analytics::{c_k_threshold, core_law};
use kflab::kcore::k_core;
use kflab::randgraph::gen_gnp;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k) = (100_000, 4);
    let c = c_k_threshold(k)?.c_k + 0.5;
    let g = gen_gnp(n, c, 42);
    let r = k_core(&g, k);
    let law = core_law(c, k, k + 4)?;
    println!("G({n}, {c:.3}/n): {} edges, {}-core has {} vertices", g.edges().len(), k, r.size());
    println!("core fraction {:.4}, predicted {:.4}", r.size() as f64 / n as f64, law.zeta);
    for i in k..=k + 4 {
        let seen = r.degree_histogram.get(i as usize).copied().unwrap_or(0) as f64 / n as f64;
        println!("  degree {i}: {seen:.4} vs {:.4}", law.lambda_at(i));
    }

    // Far below the threshold the core is empty.
    let below = k_core(&gen_gnp(n, c - 1.0, 42), k);
    println!("at c - 1 the core has {} vertices", below.size());
    Ok(())
}
