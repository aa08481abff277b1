//! Independent oracles for the integration and acceptance tests. None of
//! these call into the code they check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use kflab::randgraph::{rw_extract, Configuration, RwInfo};
use kflab::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Core by removing low-degree vertices in a random order, one at a time,
/// rescanning after each removal.
pub fn core_by_random_peeling<R: Rng>(g: &Graph, k: u32, rng: &mut R) -> BTreeSet<u32> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut low: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] < k as usize).collect();
        if low.is_empty() {
            break;
        }
        low.shuffle(rng);
        let v = low[0];
        alive[v] = false;
        for &u in g.neighbors(v) {
            if u as usize != v {
                deg[u as usize] -= 1;
            }
        }
    }
    (0..n as u32).filter(|&v| alive[v as usize]).collect()
}

/// Whether some subset of the edge list (as a multiset) has every degree
/// equal to `k`, by include/exclude backtracking over the edges.
pub fn has_k_factor_by_edge_subsets(g: &Graph, k: u32) -> bool {
    let n = g.n();
    let edges = g.edges().to_vec();
    // remaining[v]: edges at index >= i still available to v.
    let mut remaining = vec![0u32; n];
    for &(u, v) in &edges {
        remaining[u as usize] += 1;
        remaining[v as usize] += 1;
    }
    let mut deg = vec![0u32; n];
    fn go(i: usize, edges: &[(u32, u32)], k: u32, deg: &mut [u32], remaining: &mut [u32]) -> bool {
        if i == edges.len() {
            return deg.iter().all(|&d| d == k);
        }
        let (u, v) = (edges[i].0 as usize, edges[i].1 as usize);
        remaining[u] -= 1;
        remaining[v] -= 1;
        let mut found = false;
        if deg[u] < k && deg[v] < k && (u != v || deg[u] + 2 <= k) {
            deg[u] += 1;
            deg[v] += 1;
            if deg[u] + remaining[u] >= k && deg[v] + remaining[v] >= k {
                found = go(i + 1, edges, k, deg, remaining);
            }
            deg[u] -= 1;
            deg[v] -= 1;
        }
        if !found && deg[u] + remaining[u] >= k && deg[v] + remaining[v] >= k {
            found = go(i + 1, edges, k, deg, remaining);
        }
        remaining[u] += 1;
        remaining[v] += 1;
        found
    }
    if (0..n).any(|v| remaining[v] < k) {
        return false;
    }
    go(0, &edges, k, &mut deg, &mut remaining)
}

fn pair_index(n: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            out.push((u, v));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn connected(n: usize, pairs: &[(u32, u32)], mask: u32) -> bool {
    if n == 0 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&parent, u as usize), find(&parent, v as usize));
            parent[a] = b;
        }
    }
    let r = find(&parent, 0);
    (1..n).all(|v| find(&parent, v) == r)
}

/// One representative of every isomorphism class of connected simple
/// graphs on `n` vertices, by minimal edge mask over all relabelings.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs = pair_index(n);
    let mut index = HashMap::new();
    for (i, &p) in pairs.iter().enumerate() {
        index.insert(p, i);
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if !connected(n, &pairs, mask) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        let (a, b) = (p[u as usize] as u32, p[v as usize] as u32);
                        m |= 1 << index[&(a.min(b), a.max(b))];
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs.iter().enumerate().filter(|(i, _)| canon >> i & 1 == 1).map(|(_, &e)| e);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// Every perfect matching of `0..m` (m even), as sorted pair lists.
pub fn all_pairings(m: usize) -> Vec<Vec<(u32, u32)>> {
    fn go(free: &mut Vec<u32>, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if free.is_empty() {
            let mut p = cur.clone();
            p.sort_unstable();
            out.push(p);
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            go(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (0..m as u32).collect(), &mut Vec::new(), &mut out);
    out
}

/// All pairings of the copies of `info.degrees()` whose RW-information
/// equals `info`.
pub fn omega(info: &RwInfo) -> Vec<Vec<(u32, u32)>> {
    let degrees = info.degrees();
    let m: u32 = degrees.iter().sum();
    all_pairings(m as usize)
        .into_iter()
        .filter(|pairs| {
            let cfg = Configuration::from_pairs(degrees.clone(), pairs).unwrap();
            rw_extract(&cfg, &info.classes).unwrap() == *info
        })
        .collect()
}

/// Pearson statistic against equal expected counts.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let e = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
}

/// Upper tail of the chi-square law with `df` degrees of freedom.
pub fn chi_square_p_value(stat: f64, df: usize) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    1.0 - ChiSquared::new(df as f64).unwrap().cdf(stat)
}

/// G(n, p) with every edge decided by its own coin flip.
pub fn gnp_by_coins<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// STRIP on a simple graph with every deletable status recomputed from
/// scratch to a fixed point after each deletion. Returns the deleted
/// vertices in order and whether Q was empty at the end.
pub fn naive_strip(g: &Graph, k: u32, cap: usize) -> (Vec<u32>, bool) {
    let n = g.n();
    let k = k as usize;
    let mut alive = vec![true; n];
    let w0: Vec<bool> = (0..n).map(|v| g.degree(v) == k).collect();
    let mut w1 = vec![false; n];
    let nbrs = |v: usize| {
        let mut s: Vec<usize> = g.neighbors(v).iter().map(|&u| u as usize).collect();
        s.dedup();
        s
    };
    let mut deletable: Vec<bool> = (0..n)
        .map(|v| g.degree(v) > 2 * k || (!w0[v] && 2 * nbrs(v).iter().filter(|&&u| w0[u]).count() >= k))
        .collect();
    let mut order = Vec::new();
    loop {
        let Some(v) = (0..n).find(|&v| alive[v] && deletable[v]) else {
            return (order, true);
        };
        if order.len() == cap {
            return (order, false);
        }
        alive[v] = false;
        order.push(v as u32);
        let deg = |u: usize, alive: &[bool]| g.neighbors(u).iter().filter(|&&z| alive[z as usize]).count();
        for u in nbrs(v) {
            if alive[u] && !w0[u] && !w1[u] && deg(u, &alive) <= k {
                w1[u] = true;
            }
        }
        loop {
            let mut changed = false;
            for w in 0..n {
                if !alive[w] || deletable[w] {
                    continue;
                }
                let in_r = !w0[w] && !w1[w];
                let live: Vec<usize> = nbrs(w).into_iter().filter(|&z| alive[z]).collect();
                let d3 = deg(w, &alive) < k;
                let d4 = in_r && live.iter().filter(|&&z| w1[z]).count() >= 2;
                let d5 = w1[w] && live.iter().any(|&z| w1[z] || (!w0[z] && !w1[z] && deletable[z]));
                if d3 || d4 || d5 {
                    deletable[w] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}
