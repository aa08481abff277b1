use super::KFactorError;
use crate::graph::Graph;

/// The f-factor gadget of a host graph. Node layout: all external nodes
/// first, vertex by vertex, then all slack nodes.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub graph: Graph,
    /// Host edge index (into `host.edges()`) to its external-external pair.
    pub pair_of_edge: Vec<(u32, u32)>,
    pub external_count: usize,
}

impl Gadget {
    /// Host edges whose pair edge appears in `matching`.
    pub fn pull_back(&self, matching: &[(u32, u32)]) -> Vec<usize> {
        let mut chosen: Vec<(u32, u32)> = matching.to_vec();
        chosen.sort_unstable();
        (0..self.pair_of_edge.len())
            .filter(|&i| chosen.binary_search(&self.pair_of_edge[i]).is_ok())
            .collect()
    }
}

/// Builds the gadget. Parallel host edges get distinct pairs; loops are
/// rejected.
pub fn gadget_reduce(g: &Graph, k: u32) -> Result<Gadget, KFactorError> {
    let n = g.n();
    let k_us = k as usize;
    if let Some(v) = (0..n).find(|&v| g.degree(v) < k_us) {
        return Err(KFactorError::InfeasibleDegree { vertex: v as u32, degree: g.degree(v), k });
    }
    if let Some(&(u, _)) = g.edges().iter().find(|&&(u, v)| u == v) {
        return Err(KFactorError::LoopNotSupported(u));
    }
    let mut ext_off = Vec::with_capacity(n + 1);
    ext_off.push(0usize);
    for v in 0..n {
        ext_off.push(ext_off[v] + g.degree(v));
    }
    let external_count = ext_off[n];
    let mut slack_off = Vec::with_capacity(n + 1);
    slack_off.push(external_count);
    for v in 0..n {
        slack_off.push(slack_off[v] + g.degree(v) - k_us);
    }
    let total = slack_off[n];

    let mut edges = Vec::new();
    for v in 0..n {
        for e in ext_off[v]..ext_off[v + 1] {
            for s in slack_off[v]..slack_off[v + 1] {
                edges.push((e as u32, s as u32));
            }
        }
    }
    let mut next = ext_off[..n].to_vec();
    let mut pair_of_edge = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let a = next[u as usize] as u32;
        next[u as usize] += 1;
        let b = next[v as usize] as u32;
        next[v as usize] += 1;
        pair_of_edge.push((a, b));
        edges.push((a, b));
    }
    let graph = Graph::from_edges(total, edges).expect("gadget nodes are distinct");
    Ok(Gadget { graph, pair_of_edge, external_count })
}
