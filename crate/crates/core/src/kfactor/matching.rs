//! Maximum matching in general graphs: a Karp-Sipser greedy start, then
//! Edmonds' augmenting-path search with blossom contraction. Per-search
//! state is reset lazily through a visit stamp, so a search costs time in
//! the part of the graph it touches rather than in `n`.

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: u32 = u32::MAX;

struct Matcher<'a> {
    g: &'a Graph,
    mate: Vec<u32>,
    parent: Vec<u32>,
    base: Vec<u32>,
    used: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
    touched: Vec<u32>,
    lca_mark: Vec<u32>,
    lca_stamp: u32,
    blossom_mark: Vec<u32>,
    blossom_stamp: u32,
    queue: VecDeque<u32>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Matcher {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n as u32).collect(),
            used: vec![false; n],
            seen: vec![0; n],
            stamp: 0,
            touched: Vec::new(),
            lca_mark: vec![0; n],
            lca_stamp: 0,
            blossom_mark: vec![0; n],
            blossom_stamp: 0,
            queue: VecDeque::new(),
        }
    }

    fn touch(&mut self, v: u32) {
        let i = v as usize;
        if self.seen[i] != self.stamp {
            self.seen[i] = self.stamp;
            self.parent[i] = NONE;
            self.base[i] = v;
            self.used[i] = false;
            self.touched.push(v);
        }
    }

    fn greedy(&mut self) {
        let n = self.g.n();
        let mut deg: Vec<u32> = (0..n).map(|v| self.g.degree(v) as u32).collect();
        let mut ones: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] == 1).collect();
        let mut next = 0usize;
        loop {
            let v = if let Some(v) = ones.pop() {
                v as usize
            } else {
                while next < n && (self.mate[next] != NONE || deg[next] == 0) {
                    next += 1;
                }
                if next == n {
                    break;
                }
                next
            };
            if self.mate[v] != NONE {
                continue;
            }
            let Some(&u) = self.g.neighbors(v).iter().find(|&&u| u as usize != v && self.mate[u as usize] == NONE)
            else {
                deg[v] = 0;
                continue;
            };
            self.mate[v] = u;
            self.mate[u as usize] = v as u32;
            for x in [v, u as usize] {
                for &w in self.g.neighbors(x) {
                    let w = w as usize;
                    if self.mate[w] == NONE && deg[w] > 0 {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            ones.push(w as u32);
                        }
                    }
                }
            }
        }
    }

    fn lca(&mut self, mut a: u32, mut b: u32) -> u32 {
        self.lca_stamp += 1;
        loop {
            a = self.base[a as usize];
            self.lca_mark[a as usize] = self.lca_stamp;
            let m = self.mate[a as usize];
            if m == NONE {
                break;
            }
            a = self.parent[m as usize];
        }
        loop {
            b = self.base[b as usize];
            if self.lca_mark[b as usize] == self.lca_stamp {
                return b;
            }
            b = self.parent[self.mate[b as usize] as usize];
        }
    }

    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            let m = self.mate[v as usize];
            self.blossom_mark[self.base[v as usize] as usize] = self.blossom_stamp;
            self.blossom_mark[self.base[m as usize] as usize] = self.blossom_stamp;
            self.parent[v as usize] = child;
            child = m;
            v = self.parent[m as usize];
        }
    }

    /// Breadth-first search for an augmenting path from `root`; returns its
    /// free endpoint.
    fn find_path(&mut self, root: u32) -> Option<u32> {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = u32::MAX);
            self.stamp = 1;
        }
        self.touched.clear();
        self.queue.clear();
        self.touch(root);
        self.used[root as usize] = true;
        self.queue.push_back(root);
        let g = self.g;
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v as usize) {
                self.touch(to);
                if self.base[v as usize] == self.base[to as usize] || self.mate[v as usize] == to {
                    continue;
                }
                let to_mate = self.mate[to as usize];
                if to_mate != NONE {
                    self.touch(to_mate);
                }
                if to == root || (to_mate != NONE && self.parent[to_mate as usize] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom_stamp += 1;
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.touched.len() {
                        let x = self.touched[i] as usize;
                        if self.blossom_mark[self.base[x] as usize] == self.blossom_stamp {
                            self.base[x] = cur;
                            if !self.used[x] {
                                self.used[x] = true;
                                self.queue.push_back(x as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] == NONE {
                    self.parent[to as usize] = v;
                    if to_mate == NONE {
                        return Some(to);
                    }
                    self.used[to_mate as usize] = true;
                    self.queue.push_back(to_mate);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: u32) {
        while v != NONE {
            let pv = self.parent[v as usize];
            let next = self.mate[pv as usize];
            self.mate[v as usize] = pv;
            self.mate[pv as usize] = v;
            v = next;
        }
    }

    /// Augments from every free vertex; stops at the first failure when
    /// `stop_on_unmatched` is set. Returns whether every vertex is matched.
    fn run(&mut self, stop_on_unmatched: bool) -> bool {
        self.greedy();
        let mut perfect = true;
        for v in 0..self.g.n() as u32 {
            if self.mate[v as usize] != NONE {
                continue;
            }
            match self.find_path(v) {
                Some(end) => self.augment(end),
                None => {
                    perfect = false;
                    if stop_on_unmatched {
                        return false;
                    }
                }
            }
        }
        perfect
    }

    fn pairs(&self) -> Vec<(u32, u32)> {
        (0..self.mate.len() as u32)
            .filter(|&v| self.mate[v as usize] != NONE && v < self.mate[v as usize])
            .map(|v| (v, self.mate[v as usize]))
            .collect()
    }
}

/// A maximum matching, as pairs `(u, v)` with `u < v`, sorted.
pub fn maximum_matching(g: &Graph) -> Vec<(u32, u32)> {
    let mut m = Matcher::new(g);
    m.run(false);
    m.pairs()
}

/// A perfect matching if one exists. A vertex left free by a failed search
/// stays free in every maximum matching, so the first failure decides.
pub fn perfect_matching(g: &Graph) -> Option<Vec<(u32, u32)>> {
    if g.n() % 2 == 1 {
        return None;
    }
    let mut m = Matcher::new(g);
    m.run(true).then(|| m.pairs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_matching(g: &Graph, m: &[(u32, u32)]) -> bool {
        let mut used = vec![false; g.n()];
        m.iter().all(|&(u, v)| {
            let ok = u != v && g.has_edge(u as usize, v as usize) && !used[u as usize] && !used[v as usize];
            used[u as usize] = true;
            used[v as usize] = true;
            ok
        })
    }

    fn petersen() -> Graph {
        let mut e: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn small_cases() {
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(perfect_matching(&edge), Some(vec![(0, 1)]));
        assert_eq!(perfect_matching(&Graph::cycle(5)), None);
        assert_eq!(maximum_matching(&Graph::cycle(5)).len(), 2);
        assert_eq!(perfect_matching(&Graph::empty(0)), Some(vec![]));
        assert_eq!(perfect_matching(&Graph::empty(2)), None);
    }

    #[test]
    fn petersen_has_a_perfect_matching() {
        let g = petersen();
        let m = perfect_matching(&g).unwrap();
        assert_eq!(m.len(), 5);
        assert!(is_matching(&g, &m));
    }

    #[test]
    fn blossom_is_needed() {
        // Triangle 0 1 2 with a tail 2-3 and a pendant 0-4..: a greedy start
        // can match 1-2, and an augmenting path must pass through the odd cycle.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (3, 5)]).unwrap();
        let m = perfect_matching(&g).unwrap();
        assert_eq!(m.len(), 3);
        assert!(is_matching(&g, &m));
    }

    fn brute_max(g: &Graph) -> usize {
        let edges = g.edges();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut used = 0u32;
            let mut ok = true;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if used >> u & 1 == 1 || used >> v & 1 == 1 {
                        ok = false;
                        break;
                    }
                    used |= 1 << u | 1 << v;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn agrees_with_brute_force_on_random_small_graphs() {
        for s in 0..300 {
            let g = crate::randgraph::gen_gnp(8, 2.5, s);
            if g.edge_count() > 16 {
                continue;
            }
            let m = maximum_matching(&g);
            assert!(is_matching(&g, &m));
            assert_eq!(m.len(), brute_max(&g), "seed {s}");
            assert_eq!(perfect_matching(&g).is_some(), 2 * m.len() == g.n());
        }
    }
}
