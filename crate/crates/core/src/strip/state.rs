use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{StripConfig, StripError};
use crate::graph::Graph;
use crate::randgraph::{rw_extract, Configuration, RwInfo, VertexClass};

/// `(A, B, D, X)` over the live part of Q.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Potential {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub x: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Core id of the deleted vertex.
    pub deleted: u32,
    /// Its degree just before deletion.
    pub deleted_degree: u32,
    pub q_size: usize,
    pub w0: usize,
    pub w1: usize,
    pub r: usize,
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub x: f64,
    pub enqueued: usize,
}

/// Live state of one STRIP run on a fixed core. Vertex ids are core ids.
#[derive(Clone, Debug)]
pub struct StripState {
    graph: Graph,
    k: u32,
    weight: f64,
    alive: Vec<bool>,
    deg: Vec<u32>,
    deg_w0: Vec<u32>,
    /// Distinct live W1 neighbours other than the vertex itself.
    w1_nbrs: Vec<u32>,
    class: Vec<VertexClass>,
    deletable: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
    q_len: usize,
    counts: [usize; 3],
    a: u64,
    b: u64,
    d: u64,
    iteration: usize,
    // Scratch reused across steps.
    moved: Vec<u32>,
    worklist: Vec<u32>,
    enqueued: Vec<u32>,
}

fn distinct(nbrs: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= nbrs.len() {
            return None;
        }
        let u = nbrs[i];
        let start = i;
        while i < nbrs.len() && nbrs[i] == u {
            i += 1;
        }
        Some((u, (i - start) as u32))
    })
}

impl StripState {
    /// Initial partition (W0 = degree-k vertices, W1 empty, R the rest) and
    /// the initial queue from D1 and D2.
    pub fn new(core: &Graph, config: &StripConfig) -> Result<Self, StripError> {
        let k = config.k;
        let n = core.n();
        for v in 0..n {
            if core.degree(v) < k as usize {
                return Err(StripError::MinDegree { vertex: v as u32, degree: core.degree(v), k });
            }
        }
        let deg: Vec<u32> = (0..n).map(|v| core.degree(v) as u32).collect();
        let class: Vec<VertexClass> =
            deg.iter().map(|&d| if d == k { VertexClass::W0 } else { VertexClass::R }).collect();
        let deg_w0: Vec<u32> = (0..n)
            .map(|v| core.neighbors(v).iter().filter(|&&u| class[u as usize] == VertexClass::W0).count() as u32)
            .collect();
        let mut counts = [0usize; 3];
        for &c in &class {
            counts[c as usize] += 1;
        }
        let mut st = StripState {
            graph: core.clone(),
            k,
            weight: config.potential_weight(),
            alive: vec![true; n],
            deg,
            deg_w0,
            w1_nbrs: vec![0; n],
            class,
            deletable: vec![false; n],
            heap: BinaryHeap::new(),
            q_len: 0,
            counts,
            a: 0,
            b: 0,
            d: 0,
            iteration: 0,
            moved: Vec::new(),
            worklist: Vec::new(),
            enqueued: Vec::new(),
        };
        let half_k = k.div_ceil(2);
        for v in 0..n {
            let d1 = st.deg[v] > 2 * k;
            let d2 = st.class[v] != VertexClass::W0 && st.deg_w0[v] >= half_k;
            if d1 || d2 {
                st.enqueue(v);
            }
        }
        Ok(st)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn q_len(&self) -> usize {
        self.q_len
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn class(&self, v: usize) -> VertexClass {
        self.class[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.deg[v]
    }

    pub fn is_deletable(&self, v: usize) -> bool {
        self.deletable[v]
    }

    pub fn in_q(&self, v: usize) -> bool {
        self.deletable[v] && self.alive[v]
    }

    /// Live counts of `(W0, W1, R)`.
    pub fn class_counts(&self) -> (usize, usize, usize) {
        (self.counts[0], self.counts[1], self.counts[2])
    }

    /// Queue contents in pop order.
    pub fn queue(&self) -> Vec<u32> {
        let mut q: Vec<u32> = self.heap.iter().map(|r| r.0).collect();
        q.sort_unstable();
        q
    }

    fn x_of(&self, a: u64, b: u64, d: u64) -> f64 {
        a as f64 + self.k as f64 * b as f64 + self.weight * d as f64
    }

    pub fn potential(&self) -> Potential {
        Potential { a: self.a, b: self.b, d: self.d, x: self.x_of(self.a, self.b, self.d) }
    }

    /// The potential recomputed from scratch, for checking the running sums.
    pub fn recompute_potential(&self) -> Potential {
        let (mut a, mut b, mut d) = (0u64, 0u64, 0u64);
        for v in 0..self.alive.len() {
            if !self.in_q(v) {
                continue;
            }
            let mut w0 = 0u64;
            let mut other = 0u64;
            for &u in self.graph.neighbors(v) {
                if !self.alive[u as usize] {
                    continue;
                }
                if self.class[u as usize] == VertexClass::W0 {
                    w0 += 1;
                } else {
                    other += 1;
                }
            }
            if self.class[v] == VertexClass::W0 {
                a += w0;
            } else {
                b += w0;
            }
            d += other;
        }
        Potential { a, b, d, x: self.x_of(a, b, d) }
    }

    fn contribution(&self, v: usize) -> (u64, u64, u64) {
        let w0 = self.deg_w0[v] as u64;
        let other = (self.deg[v] - self.deg_w0[v]) as u64;
        if self.class[v] == VertexClass::W0 {
            (w0, 0, other)
        } else {
            (0, w0, other)
        }
    }

    fn add_contribution(&mut self, v: usize) {
        let (a, b, d) = self.contribution(v);
        self.a += a;
        self.b += b;
        self.d += d;
    }

    fn remove_contribution(&mut self, v: usize) {
        let (a, b, d) = self.contribution(v);
        self.a -= a;
        self.b -= b;
        self.d -= d;
    }

    fn enqueue(&mut self, v: usize) {
        debug_assert!(!self.deletable[v] && self.alive[v]);
        self.deletable[v] = true;
        self.heap.push(Reverse(v as u32));
        self.q_len += 1;
        self.add_contribution(v);
    }

    /// D3, D4 and D5 on the current graph.
    fn now_deletable(&self, graph: &Graph, w: usize) -> bool {
        if self.deg[w] < self.k {
            return true;
        }
        match self.class[w] {
            VertexClass::W0 => false,
            VertexClass::R => self.w1_nbrs[w] >= 2,
            VertexClass::W1 => distinct(graph.neighbors(w)).any(|(z, _)| {
                let z = z as usize;
                z != w
                    && self.alive[z]
                    && (self.class[z] == VertexClass::W1 || (self.class[z] == VertexClass::R && self.deletable[z]))
            }),
        }
    }

    /// One iteration: delete the least-id vertex of Q, move R neighbours
    /// whose degree fell to k or below into W1, then enqueue everything that
    /// became deletable, re-examining W1 neighbours of each R vertex that
    /// becomes deletable until nothing changes. Returns `None` if Q is empty.
    pub fn step(&mut self) -> Option<IterationRecord> {
        let v = loop {
            let Reverse(v) = self.heap.pop()?;
            if self.alive[v as usize] {
                break v as usize;
            }
        };
        self.iteration += 1;
        let k = self.k;
        let deleted_degree = self.deg[v];
        let v_class = self.class[v];
        self.remove_contribution(v);
        self.alive[v] = false;
        self.q_len -= 1;
        self.counts[v_class as usize] -= 1;

        self.moved.clear();
        self.worklist.clear();
        self.enqueued.clear();

        let graph = std::mem::replace(&mut self.graph, Graph::empty(0));
        for (u, mult) in distinct(graph.neighbors(v)) {
            let u = u as usize;
            if u == v || !self.alive[u] {
                continue;
            }
            let queued = self.deletable[u];
            if queued {
                self.remove_contribution(u);
            }
            self.deg[u] -= mult;
            if v_class == VertexClass::W0 {
                self.deg_w0[u] -= mult;
            }
            if v_class == VertexClass::W1 {
                self.w1_nbrs[u] -= 1;
            }
            if queued {
                self.add_contribution(u);
            }
            self.worklist.push(u as u32);
            if self.class[u] == VertexClass::R && self.deg[u] <= k {
                self.moved.push(u as u32);
            }
        }
        // Step 2b. Sums over W1 and R together are unchanged by the move.
        for i in 0..self.moved.len() {
            let u = self.moved[i] as usize;
            self.class[u] = VertexClass::W1;
            self.counts[VertexClass::R as usize] -= 1;
            self.counts[VertexClass::W1 as usize] += 1;
            for (z, _) in distinct(graph.neighbors(u)) {
                let z = z as usize;
                if z != u && self.alive[z] {
                    self.w1_nbrs[z] += 1;
                    self.worklist.push(z as u32);
                }
            }
        }
        // Step 2c.
        while let Some(w) = self.worklist.pop() {
            let w = w as usize;
            if !self.alive[w] || self.deletable[w] || !self.now_deletable(&graph, w) {
                continue;
            }
            self.enqueue(w);
            self.enqueued.push(w as u32);
            if self.class[w] == VertexClass::R {
                for (z, _) in distinct(graph.neighbors(w)) {
                    let z = z as usize;
                    if z != w && self.alive[z] && self.class[z] == VertexClass::W1 && !self.deletable[z] {
                        self.worklist.push(z as u32);
                    }
                }
            }
        }
        self.graph = graph;
        let p = self.potential();
        Some(IterationRecord {
            iteration: self.iteration,
            deleted: v as u32,
            deleted_degree,
            q_size: self.q_len,
            w0: self.counts[0],
            w1: self.counts[1],
            r: self.counts[2],
            a: p.a,
            b: p.b,
            d: p.d,
            x: p.x,
            enqueued: self.enqueued.len(),
        })
    }

    /// Vertices whose status the last step could have changed: every
    /// vertex moved or enqueued, and their live neighbours.
    pub fn last_changed_region(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for &u in self.moved.iter().chain(&self.enqueued) {
            out.push(u);
            out.extend(self.graph.neighbors(u as usize).iter().copied());
        }
        out.sort_unstable();
        out.dedup();
        out.retain(|&u| self.alive[u as usize]);
        out
    }

    /// Counts failures of the three start-of-iteration properties at the
    /// given vertices: (a) a W1 vertex has a W1 neighbour outside Q; (b) an
    /// R vertex in Q has a W1 neighbour outside Q; (c) an R vertex outside
    /// Q has two or more W1 neighbours.
    pub fn observation_violations<I: IntoIterator<Item = u32>>(&self, vertices: I) -> usize {
        let mut bad = 0;
        for u in vertices {
            let u = u as usize;
            if !self.alive[u] {
                continue;
            }
            let mut w1 = 0;
            let mut w1_outside_q = 0;
            for (z, _) in distinct(self.graph.neighbors(u)) {
                let z = z as usize;
                if z == u || !self.alive[z] || self.class[z] != VertexClass::W1 {
                    continue;
                }
                w1 += 1;
                if !self.in_q(z) {
                    w1_outside_q += 1;
                }
            }
            debug_assert_eq!(w1, self.w1_nbrs[u] as usize, "W1 neighbour count drifted at {u}");
            let ok = match (self.class[u], self.in_q(u)) {
                (VertexClass::W1, _) => w1_outside_q == 0,
                (VertexClass::R, true) => w1_outside_q == 0,
                (VertexClass::R, false) => w1 <= 1,
                (VertexClass::W0, _) => true,
            };
            if !ok {
                bad += 1;
            }
        }
        bad
    }

    pub fn all_observation_violations(&self) -> usize {
        self.observation_violations(0..self.alive.len() as u32)
    }

    /// Remaining graph as an induced subgraph, with the map to core ids.
    pub fn remaining(&self) -> (Graph, Vec<u32>) {
        self.graph.induced(&self.alive)
    }

    /// RW-information of the remaining configuration under the current
    /// partition. Copies are laid out edge by edge on the remaining graph.
    pub fn rw_snapshot(&self) -> (RwInfo, Vec<u32>) {
        let (rest, map) = self.remaining();
        let cfg = Configuration::from_multigraph(&rest);
        let classes: Vec<VertexClass> = map.iter().map(|&v| self.class[v as usize]).collect();
        let info = rw_extract(&cfg, &classes).expect("one class per remaining vertex");
        (info, map)
    }
}
