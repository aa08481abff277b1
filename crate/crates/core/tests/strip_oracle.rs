mod common;

use kflab::kcore::k_core;
use kflab::randgraph::gen_gnp;
use kflab::strip::{run_strip, HaltReason, StripConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn deletion_order_matches_naive_strip() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut runs = 0;
    while runs < 400 {
        let k = rng.random_range(2..=6u32);
        let n = rng.random_range(10..=120usize);
        let c = rng.random_range(k as f64..3.0 * k as f64);
        let core = k_core(&gen_gnp(n, c, rng.random()), k).core;
        if core.n() == 0 {
            continue;
        }
        let cap = rng.random_range(1..=core.n());
        let cfg = StripConfig { beta_override: Some(1.0), cap_multiplier: cap as f64 / core.n() as f64, ..StripConfig::new(k) };
        let r = run_strip(&core, &cfg).unwrap();
        let (order, emptied) = common::naive_strip(&core, k, r.cap);
        let deleted: Vec<u32> = r.trace.iter().map(|t| t.deleted).collect();
        assert_eq!(deleted, order, "k = {k}, core n = {}", core.n());
        assert_eq!(r.halted == HaltReason::QEmpty, emptied);
        runs += 1;
    }
}
