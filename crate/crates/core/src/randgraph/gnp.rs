use rand::Rng;

use crate::graph::Graph;
use crate::seed;

/// Samples `G(n, p)` with `p = c/n` clamped to `[0, 1]`, walking the pairs
/// `(w, v)`, `w < v`, in order and jumping between successes with
/// geometric gaps.
pub fn gen_gnp(n: usize, c: f64, seed: u64) -> Graph {
    let p = if n == 0 { 0.0 } else { (c / n as f64).clamp(0.0, 1.0) };
    if n < 2 || p == 0.0 || p.is_nan() {
        return Graph::empty(n);
    }
    if p == 1.0 {
        return Graph::complete(n);
    }
    let mut rng = seed::rng(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::with_capacity((p * (n as f64) * (n as f64 - 1.0) / 2.0 * 1.05) as usize + 16);
    let mut v: u64 = 1;
    let mut w: i64 = -1;
    let n64 = n as u64;
    while v < n64 {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        // An astronomically long skip just ends the walk.
        if skip >= (n64 * n64) as f64 {
            break;
        }
        w += 1 + skip as i64;
        while w >= v as i64 && v < n64 {
            w -= v as i64;
            v += 1;
        }
        if v < n64 {
            edges.push((w as u32, v as u32));
        }
    }
    Graph::from_edges(n, edges).expect("geometric walk visits each pair at most once")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_densities() {
        assert_eq!(gen_gnp(5, 0.0, 3).edge_count(), 0);
        assert_eq!(gen_gnp(4, 4.0, 3), Graph::complete(4));
        assert_eq!(gen_gnp(4, 100.0, 3), Graph::complete(4));
        assert_eq!(gen_gnp(1, 1.0, 3).edge_count(), 0);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_gnp(2000, 5.0, 9);
        assert_eq!(a.to_edge_list(), gen_gnp(2000, 5.0, 9).to_edge_list());
        assert_ne!(a, gen_gnp(2000, 5.0, 10));
    }

    #[test]
    fn edge_count_near_mean() {
        let n = 100_000usize;
        let c = 12.0;
        let g = gen_gnp(n, c, 7);
        let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;
        let p = c / n as f64;
        let mean = pairs * p;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        let m = g.edge_count() as f64;
        assert!((m - mean).abs() < 4.0 * sd, "m={m} mean={mean} sd={sd}");
    }

    #[test]
    fn pair_frequencies_are_uniform() {
        // Every pair of a 6-vertex graph should appear with frequency p.
        let trials = 20_000;
        let mut counts = [[0u32; 6]; 6];
        for s in 0..trials {
            for &(u, v) in gen_gnp(6, 2.0, s).edges() {
                counts[u as usize][v as usize] += 1;
            }
        }
        let p = 2.0 / 6.0;
        let sd = (trials as f64 * p * (1.0 - p)).sqrt();
        for u in 0..6 {
            for v in u + 1..6 {
                let got = counts[u][v] as f64;
                assert!((got - trials as f64 * p).abs() < 5.0 * sd, "pair {u}-{v}: {got}");
            }
        }
    }
}
