//! k-core by bucket peeling, and the measured-versus-reference report on
//! the initial core that STRIP starts from.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreResult {
    pub k: u32,
    /// Induced core, relabeled in ascending order of original id.
    pub core: Graph,
    /// Core id to original id.
    pub vertex_map: Vec<u32>,
    pub membership: Vec<bool>,
    /// Original ids in removal order.
    pub peel_order: Vec<u32>,
    /// `degree_histogram[d]` core vertices have core degree `d`.
    pub degree_histogram: Vec<usize>,
}

#[derive(Serialize)]
struct CoreSidecar<'a> {
    k: u32,
    n: usize,
    core_size: usize,
    membership: Vec<u32>,
    degree_histogram: &'a [usize],
}

impl CoreResult {
    pub fn size(&self) -> usize {
        self.core.n()
    }

    /// JSON sidecar: the core's original ids, plus its degree histogram.
    pub fn sidecar_json(&self) -> String {
        let s = CoreSidecar {
            k: self.k,
            n: self.membership.len(),
            core_size: self.core.n(),
            membership: self.vertex_map.clone(),
            degree_histogram: &self.degree_histogram,
        };
        serde_json::to_string_pretty(&s).expect("plain data serializes")
    }
}

/// Repeatedly removes a vertex of degree below `k`. Vertices are bucketed by
/// current degree (capped at `k`), so every removal is O(degree).
pub fn k_core(g: &Graph, k: u32) -> CoreResult {
    let n = g.n();
    let k_us = k as usize;
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] < k_us).collect();
    // Pop in ascending id order first; later entries follow discovery order.
    stack.reverse();
    let mut queued = vec![false; n];
    for &v in &stack {
        queued[v as usize] = true;
    }
    let mut peel_order = Vec::new();
    while let Some(v) = stack.pop() {
        let v = v as usize;
        removed[v] = true;
        peel_order.push(v as u32);
        for &u in g.neighbors(v) {
            let u = u as usize;
            if removed[u] {
                continue;
            }
            deg[u] -= 1;
            if deg[u] < k_us && !queued[u] {
                queued[u] = true;
                stack.push(u as u32);
            }
        }
    }
    let membership: Vec<bool> = removed.iter().map(|&r| !r).collect();
    let (core, vertex_map) = g.induced(&membership);
    let max_d = core.max_degree().unwrap_or(0);
    let mut degree_histogram = vec![0usize; if core.n() == 0 { 0 } else { max_d + 1 }];
    for v in 0..core.n() {
        degree_histogram[core.degree(v)] += 1;
    }
    CoreResult { k, core, vertex_map, membership, peel_order, degree_histogram }
}

/// One measured quantity and the line it is compared against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceLine {
    pub part: char,
    pub description: &'static str,
    pub measured: f64,
    pub reference: f64,
    /// Second endpoint for two-sided comparisons.
    pub reference_upper: Option<f64>,
    pub holds: bool,
}

/// The eight initial-core quantities of the stripping analysis, each
/// paired with its large-k reference line. Nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lw0Report {
    pub n: usize,
    pub k: u32,
    pub core_size: usize,
    pub w0_size: usize,
    pub lines: Vec<ReferenceLine>,
}

impl Lw0Report {
    pub fn line(&self, part: char) -> &ReferenceLine {
        self.lines.iter().find(|l| l.part == part).expect("parts a through h are present")
    }
}

/// Measures the report on `core` (a core, simple or not) against the
/// original vertex count `n`. W0 is the set of core vertices of degree
/// exactly `k`; R is the rest.
pub fn audit_lw0(core: &Graph, n: usize, k: u32) -> Lw0Report {
    let kf = k as f64;
    let nf = n as f64;
    let k_us = k as usize;
    let in_w0: Vec<bool> = (0..core.n()).map(|v| core.degree(v) == k_us).collect();
    let w0_size = in_w0.iter().filter(|&&b| b).count();
    let mut high_total_degree = 0usize;
    let (mut e_w0w0, mut e_w0r, mut e_rr) = (0usize, 0usize, 0usize);
    for &(u, v) in core.edges() {
        match (in_w0[u as usize], in_w0[v as usize]) {
            (true, true) => e_w0w0 += 1,
            (false, false) => e_rr += 1,
            _ => e_w0r += 1,
        }
    }
    let half_k = k.div_ceil(2) as usize;
    let mut crowded_low = 0usize;
    let mut r_no_w0 = 0usize;
    for v in 0..core.n() {
        let d = core.degree(v);
        if d > 2 * k_us {
            high_total_degree += d;
        }
        let w0_nbrs = core.neighbors(v).iter().filter(|&&u| in_w0[u as usize]).count();
        if d <= 2 * k_us && w0_nbrs >= half_k {
            crowded_low += 1;
        }
        if !in_w0[v] && w0_nbrs == 0 {
            r_no_w0 += 1;
        }
    }
    let below = |part, description, measured: f64, reference: f64, strict: bool| ReferenceLine {
        part,
        description,
        measured,
        reference,
        reference_upper: None,
        holds: if strict { measured < reference } else { measured <= reference },
    };
    let above = |part, description, measured: f64, reference: f64, strict: bool| ReferenceLine {
        part,
        description,
        measured,
        reference,
        reference_upper: None,
        holds: if strict { measured > reference } else { measured >= reference },
    };
    let w0f = w0_size as f64;
    let lines = vec![
        above('a', "core size > 0.99 n", core.n() as f64, 0.99 * nf, true),
        ReferenceLine {
            part: 'b',
            description: "0.99 n/k < |W0| < 1.01 n/k",
            measured: w0f,
            reference: 0.99 * nf / kf,
            reference_upper: Some(1.01 * nf / kf),
            holds: w0f > 0.99 * nf / kf && w0f < 1.01 * nf / kf,
        },
        below('c', "total degree above 2k <= e^(-k/6) n", high_total_degree as f64, (-kf / 6.0).exp() * nf, false),
        above('d', "e(W0, W0) >= n/(5k)", e_w0w0 as f64, nf / (5.0 * kf), false),
        above('e', "e(W0, R) >= n/2", e_w0r as f64, nf / 2.0, false),
        above('f', "e(R, R) >= k n/3", e_rr as f64, kf * nf / 3.0, false),
        below(
            'g',
            "vertices of degree <= 2k with >= k/2 W0 neighbours <= e^(-k/3) n",
            crowded_low as f64,
            (-kf / 3.0).exp() * nf,
            false,
        ),
        above('h', "R vertices without W0 neighbours >= n/200", r_no_w0 as f64, nf / 200.0, false),
    ];
    Lw0Report { n, k, core_size: core.n(), w0_size, lines }
}

/// `sum deg_W0(u)(deg_W0(u) - 1) / sum deg_W0(u)` over the degree-k vertices
/// of `core`; `None` when W0 spans no edges.
pub fn branching_ratio(core: &Graph, k: u32) -> Option<f64> {
    let k_us = k as usize;
    let in_w0: Vec<bool> = (0..core.n()).map(|v| core.degree(v) == k_us).collect();
    let (mut num, mut den) = (0u64, 0u64);
    for v in 0..core.n() {
        if !in_w0[v] {
            continue;
        }
        let d = core.neighbors(v).iter().filter(|&&u| in_w0[u as usize]).count() as u64;
        num += d * d.saturating_sub(1);
        den += d;
    }
    (den > 0).then(|| num as f64 / den as f64)
}
