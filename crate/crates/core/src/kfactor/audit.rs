//! Search for violations of the expansion and sparsity properties P1-P6
//! on a graph `K`. Up to `EXACT_MAX_N` vertices every subset (pair) is
//! checked; above that the audit draws sets at random and pushes each
//! towards a violation greedily, so a clean report is evidence, not proof.

use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::seed::rng;

pub const EXACT_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyAuditConfig {
    pub epsilon0: f64,
    pub gamma: f64,
    /// Random draws per property family.
    pub sample_budget: usize,
    /// The `n` in the size bounds; defaults to `|V(K)|`.
    pub n_ref: Option<usize>,
    pub seed: u64,
}

impl Default for PropertyAuditConfig {
    fn default() -> Self {
        PropertyAuditConfig { epsilon0: 0.01, gamma: 0.1, sample_budget: 1000, n_ref: None, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyLine {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    /// Smallest slack seen; negative (or zero for strict inequalities)
    /// means violated.
    pub worst_margin: Option<f64>,
    /// Set sizes at the worst margin, `(|Y|, 0)` for one-set properties.
    pub worst_sizes: Option<(usize, usize)>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PReport {
    pub exact: bool,
    pub k: u32,
    pub k_size: usize,
    pub n_ref: usize,
    pub epsilon0: f64,
    pub gamma: f64,
    pub properties: Vec<PropertyLine>,
}

impl PReport {
    pub fn line(&self, name: &str) -> &PropertyLine {
        self.properties.iter().find(|p| p.name == name).expect("known property")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

struct Tally {
    name: &'static str,
    strict: bool,
    checked: u64,
    violations: u64,
    worst: Option<(f64, (usize, usize))>,
}

impl Tally {
    fn new(name: &'static str, strict: bool) -> Self {
        Tally { name, strict, checked: 0, violations: 0, worst: None }
    }

    /// Records `margin = rhs - lhs` for `lhs < rhs` (strict) or `lhs <= rhs`.
    fn record(&mut self, margin: f64, sizes: (usize, usize)) {
        self.checked += 1;
        if margin < 0.0 || (self.strict && margin <= 0.0) {
            self.violations += 1;
        }
        if self.worst.is_none_or(|(m, _)| margin < m) {
            self.worst = Some((margin, sizes));
        }
    }

    fn finish(self) -> PropertyLine {
        PropertyLine {
            name: self.name,
            checked: self.checked,
            violations: self.violations,
            worst_margin: self.worst.map(|w| w.0),
            worst_sizes: self.worst.map(|w| w.1),
            holds: self.violations == 0,
        }
    }
}

struct Bounds {
    k: f64,
    gamma: f64,
    k_size: usize,
    p1_max: f64,
    small: f64,
    rt: f64,
}

impl Bounds {
    fn new(k: u32, k_size: usize, n_ref: usize, cfg: &PropertyAuditConfig) -> Self {
        let kf = k as f64;
        let rt = if k >= 2 { (kf * kf.ln()).sqrt() } else { 0.0 };
        Bounds {
            k: kf,
            gamma: cfg.gamma,
            k_size,
            p1_max: 10.0 * cfg.epsilon0 * n_ref as f64,
            small: cfg.epsilon0 * n_ref as f64,
            rt,
        }
    }
}

/// Edge counts for one `(A, B)` evaluation. `e_ab` counts edges between the
/// sets, `n_a_in_b` the B vertices with an A neighbour.
struct PairStats {
    a: usize,
    b: usize,
    e_ab: f64,
    n_a_in_b: f64,
    deg_b: f64,
}

struct Tallies {
    p1: Tally,
    p2: Tally,
    p3: Tally,
    p4: Tally,
    p5: Tally,
    p6a: Tally,
    p6b: Tally,
}

impl Tallies {
    fn new() -> Self {
        Tallies {
            p1: Tally::new("P1", true),
            p2: Tally::new("P2", false),
            p3: Tally::new("P3", true),
            p4: Tally::new("P4", true),
            p5: Tally::new("P5", true),
            p6a: Tally::new("P6a", false),
            p6b: Tally::new("P6b", true),
        }
    }

    fn single(&mut self, b: &Bounds, y: usize, e_in: f64, e_out: f64) {
        if y == 0 {
            return;
        }
        let yf = y as f64;
        if yf <= b.p1_max {
            self.p1.record(b.k * yf / 6000.0 - e_in, (y, 0));
        }
        if 2 * y <= b.k_size {
            self.p2.record(e_out - b.gamma * b.k * yf, (y, 0));
        }
    }

    /// `(A, B)` read as `(X, Y)` for P3/P4.
    fn xy(&mut self, b: &Bounds, s: &PairStats) {
        if s.a == 0 {
            return;
        }
        let (x, y) = (s.a as f64, s.b as f64);
        if 200.0 * x >= y && y <= b.small {
            self.p3.record(0.5 * b.gamma * b.k * x - s.e_ab, (s.a, s.b));
        }
        if x + y <= b.small {
            self.p4.record((1.0 + 1.0 / 2000.0) * s.n_a_in_b + b.k * x / 100.0 - s.e_ab, (s.a, s.b));
        }
    }

    /// `(A, B)` read as `(S, T)` for P5/P6.
    fn st(&mut self, b: &Bounds, s: &PairStats) {
        let (sf, tf) = (s.a as f64, s.b as f64);
        if tf < b.small / 10.0 && sf > 0.9 * b.small && s.a > 0 {
            self.p5.record(0.75 * b.k * sf - s.e_ab, (s.a, s.b));
        }
        // An empty S or T satisfies P6a trivially, and an empty T cannot
        // satisfy the strict P6b, so both need nonempty sets.
        if tf >= b.small / 10.0 && s.b > 0 {
            if s.a > 0 {
                self.p6a.record(b.k * sf + 0.75 * b.rt * tf - s.e_ab, (s.a, s.b));
            }
            self.p6b.record(s.deg_b - (b.k + 0.875 * b.rt) * tf, (s.a, s.b));
        }
    }

    fn finish(self) -> Vec<PropertyLine> {
        vec![
            self.p1.finish(),
            self.p2.finish(),
            self.p3.finish(),
            self.p4.finish(),
            self.p5.finish(),
            self.p6a.finish(),
            self.p6b.finish(),
        ]
    }
}

/// Audits P1-P6 on `g` with parameter `k`. P6 is split into its edge
/// bound (P6a) and its degree-sum bound (P6b).
pub fn audit_properties(g: &Graph, k: u32, cfg: &PropertyAuditConfig) -> PReport {
    let n_ref = cfg.n_ref.unwrap_or(g.n());
    let b = Bounds::new(k, g.n(), n_ref, cfg);
    let exact = g.n() <= EXACT_MAX_N;
    let tallies = if exact { exact_audit(g, &b) } else { sampled_audit(g, &b, cfg) };
    PReport {
        exact,
        k,
        k_size: g.n(),
        n_ref,
        epsilon0: cfg.epsilon0,
        gamma: cfg.gamma,
        properties: tallies.finish(),
    }
}

fn pair_stats(g: &Graph, label: &[u8], a_members: &[u32], b_members: &[u32]) -> PairStats {
    let mut e_ab = 0usize;
    for &v in a_members {
        e_ab += g.neighbors(v as usize).iter().filter(|&&u| label[u as usize] == 2).count();
    }
    let mut n_a_in_b = 0usize;
    let mut deg_b = 0usize;
    for &v in b_members {
        deg_b += g.degree(v as usize);
        if g.neighbors(v as usize).iter().any(|&u| label[u as usize] == 1) {
            n_a_in_b += 1;
        }
    }
    PairStats { a: a_members.len(), b: b_members.len(), e_ab: e_ab as f64, n_a_in_b: n_a_in_b as f64, deg_b: deg_b as f64 }
}

fn exact_audit(g: &Graph, b: &Bounds) -> Tallies {
    let n = g.n();
    let mut t = Tallies::new();
    for mask in 1u32..(1u32 << n) {
        let (mut twice_in, mut out) = (0usize, 0usize);
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            for &u in g.neighbors(v) {
                if mask >> u & 1 == 1 {
                    twice_in += 1;
                } else {
                    out += 1;
                }
            }
        }
        t.single(b, mask.count_ones() as usize, (twice_in / 2) as f64, out as f64);
    }
    let mut label = vec![0u8; n];
    let (mut a, mut bb) = (Vec::new(), Vec::new());
    loop {
        a.clear();
        bb.clear();
        for v in 0..n {
            match label[v] {
                1 => a.push(v as u32),
                2 => bb.push(v as u32),
                _ => {}
            }
        }
        let s = pair_stats(g, &label, &a, &bb);
        t.xy(b, &s);
        t.st(b, &s);
        let mut i = 0;
        loop {
            if i == n {
                return t;
            }
            label[i] += 1;
            if label[i] <= 2 {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

/// Grows a set from `root`, always adding an outside vertex with the most
/// edges into the set (ties broken by a random key). Calls `visit` after
/// each addition with the members so far and the running
/// `(e(Y), e(Y, V \ Y))`.
fn greedy_grow<R: Rng>(
    g: &Graph,
    root: usize,
    size: usize,
    rng: &mut R,
    in_set: &mut [bool],
    cnt: &mut [u32],
    mut visit: impl FnMut(&[u32], usize, usize),
) -> Vec<u32> {
    let mut members = Vec::with_capacity(size);
    let mut heap = BinaryHeap::new();
    heap.push((0u32, rng.random::<u32>(), root as u32));
    let (mut e_in, mut e_out) = (0usize, 0usize);
    while members.len() < size {
        let Some((c, _, v)) = heap.pop() else { break };
        let vi = v as usize;
        if in_set[vi] || c != cnt[vi] {
            continue;
        }
        in_set[vi] = true;
        members.push(v);
        let mut loops = 0;
        for &u in g.neighbors(vi) {
            if u == v {
                loops += 1;
            } else if !in_set[u as usize] {
                cnt[u as usize] += 1;
                heap.push((cnt[u as usize], rng.random::<u32>(), u));
            }
        }
        let c = cnt[vi] as usize;
        e_in += c + loops / 2;
        e_out = e_out + g.degree(vi) - loops - 2 * c;
        visit(&members, e_in, e_out);
        if heap.is_empty() && members.len() < size {
            // The component is exhausted; restart from a random outsider.
            if let Some(w) = (0..8).map(|_| rng.random_range(0..g.n())).find(|&w| !in_set[w]) {
                heap.push((cnt[w], rng.random::<u32>(), w as u32));
            }
        }
    }
    members
}

fn clear(members: &[u32], g: &Graph, in_set: &mut [bool], cnt: &mut [u32]) {
    for &v in members {
        in_set[v as usize] = false;
        cnt[v as usize] = 0;
        for &u in g.neighbors(v as usize) {
            cnt[u as usize] = 0;
        }
    }
}

/// Outside vertices ordered by edges into the set, most first.
fn ranked_outsiders<R: Rng>(g: &Graph, members: &[u32], in_set: &[bool], rng: &mut R) -> Vec<u32> {
    let mut c: Vec<(u32, u32, u32)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for &v in members {
        for &u in g.neighbors(v as usize) {
            if !in_set[u as usize] {
                *seen.entry(u).or_insert(0u32) += 1;
            }
        }
    }
    for (u, m) in seen {
        c.push((m, rng.random::<u32>(), u));
    }
    c.sort_unstable_by(|a, b| b.cmp(a));
    c.into_iter().map(|(_, _, u)| u).collect()
}

fn uniform_in<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Option<usize> {
    (lo <= hi).then(|| rng.random_range(lo..=hi))
}

fn sampled_audit(g: &Graph, b: &Bounds, cfg: &PropertyAuditConfig) -> Tallies {
    let n = g.n();
    let mut t = Tallies::new();
    let mut r = rng(cfg.seed);
    let mut in_set = vec![false; n];
    let mut cnt = vec![0u32; n];
    let mut label = vec![0u8; n];
    let y_max = (b.p1_max.floor() as usize).max(n / 2).min(n);
    let small = (b.small.floor() as usize).min(n);

    // Single-set families.
    for _ in 0..cfg.sample_budget {
        let Some(size) = uniform_in(&mut r, 1, y_max) else { break };
        let root = r.random_range(0..n);
        let members = greedy_grow(g, root, size, &mut r, &mut in_set, &mut cnt, |m, e_in, e_out| {
            t.single(b, m.len(), e_in as f64, e_out as f64)
        });
        clear(&members, g, &mut in_set, &mut cnt);
    }

    let eval_pair = |t: &mut Tallies, a: &[u32], bset: &[u32], label: &mut [u8], as_xy: bool| {
        for &v in a {
            label[v as usize] = 1;
        }
        for &v in bset {
            label[v as usize] = 2;
        }
        let s = pair_stats(g, label, a, bset);
        if as_xy {
            t.xy(b, &s);
        } else {
            t.st(b, &s);
        }
        for &v in a.iter().chain(bset) {
            label[v as usize] = 0;
        }
    };

    // P3/P4: Y a greedy cluster of size at most eps0 n, X the outsiders
    // sending the most edges into Y.
    for _ in 0..cfg.sample_budget {
        let Some(ys) = uniform_in(&mut r, 1, small) else { break };
        let root = r.random_range(0..n);
        let y = greedy_grow(g, root, ys, &mut r, &mut in_set, &mut cnt, |_, _, _| {});
        let ranked = ranked_outsiders(g, &y, &in_set, &mut r);
        clear(&y, g, &mut in_set, &mut cnt);
        let x_lo = y.len().div_ceil(200).max(1);
        if let Some(xs) = uniform_in(&mut r, x_lo, ranked.len().max(x_lo)) {
            let x: Vec<u32> = ranked.iter().copied().take(xs).collect();
            eval_pair(&mut t, &x, &y, &mut label, true);
        }
        // Singletons against their own neighbourhood, the tightest case
        // for small X.
        let v = r.random_range(0..n) as u32;
        let mut nb: Vec<u32> = g.neighbors(v as usize).iter().copied().filter(|&u| u != v).collect();
        nb.dedup();
        if !nb.is_empty() && nb.len() <= small {
            eval_pair(&mut t, &[v], &nb, &mut label, true);
        }
    }

    // P5/P6: T either a greedy cluster or a set of lowest-degree vertices,
    // S the outsiders sending the most edges into T.
    let mut by_degree: Vec<u32> = (0..n as u32).collect();
    for round in 0..cfg.sample_budget {
        let Some(ts) = uniform_in(&mut r, 1, n.saturating_sub(1)) else { break };
        let tset = if round % 2 == 0 {
            let root = r.random_range(0..n);
            let tset = greedy_grow(g, root, ts, &mut r, &mut in_set, &mut cnt, |_, _, _| {});
            clear(&tset, g, &mut in_set, &mut cnt);
            tset
        } else {
            by_degree.shuffle(&mut r);
            by_degree.sort_by_key(|&v| g.degree(v as usize));
            by_degree[..ts].to_vec()
        };
        for &v in &tset {
            in_set[v as usize] = true;
        }
        let ranked = ranked_outsiders(g, &tset, &in_set, &mut r);
        for &v in &tset {
            in_set[v as usize] = false;
        }
        let max_s = (n - tset.len()).max(1);
        if let Some(ss) = uniform_in(&mut r, 1, max_s) {
            let mut s: Vec<u32> = ranked.iter().copied().take(ss).collect();
            if s.len() < ss {
                // Pad with arbitrary outsiders so large S sizes are reachable.
                let mut mark = vec![false; n];
                for &v in tset.iter().chain(&s) {
                    mark[v as usize] = true;
                }
                s.extend((0..n as u32).filter(|&v| !mark[v as usize]).take(ss - s.len()));
            }
            eval_pair(&mut t, &s, &tset, &mut label, false);
        }
    }
    t
}
