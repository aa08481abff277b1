use serde::Serialize;

use super::{K4Action, StripResult};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    /// Every degree lies in `[k, 2k]`.
    pub k1: bool,
    /// Every vertex of degree above k has at most `floor(9k/10)` distinct
    /// neighbours of degree k.
    pub k2: bool,
    /// `|K| >= n/3`.
    pub k3: bool,
    /// `k |K|` is even.
    pub k4: bool,
}

pub fn verify_k(g: &Graph, k: u32, n: usize) -> KReport {
    let k_us = k as usize;
    let k1 = (0..g.n()).all(|v| (k_us..=2 * k_us).contains(&g.degree(v)));
    let limit = (9 * k_us) / 10;
    let k2 = (0..g.n()).all(|v| {
        if g.degree(v) <= k_us {
            return true;
        }
        let mut nbrs = g.neighbors(v).to_vec();
        nbrs.dedup();
        nbrs.iter().filter(|&&u| u as usize != v && g.degree(u as usize) == k_us).count() <= limit
    });
    KReport { k1, k2, k3: 3 * g.n() >= n, k4: (k_us * g.n()) % 2 == 0 }
}

/// Makes `k |K|` even by deleting the least-id vertex of degree above k
/// whose neighbours all have degree above k.
pub fn enforce_parity(mut result: StripResult, k: u32) -> StripResult {
    let g = &result.k_graph;
    if (k as usize * g.n()) % 2 == 0 {
        result.k4_action = K4Action::None;
        return result;
    }
    let k_us = k as usize;
    let pick = (0..g.n()).find(|&v| {
        g.degree(v) > k_us && g.neighbors(v).iter().all(|&u| g.degree(u as usize) > k_us)
    });
    match pick {
        None => result.k4_action = K4Action::Failed,
        Some(v) => {
            let mut keep = vec![true; g.n()];
            keep[v] = false;
            let (h, map) = g.induced(&keep);
            result.k4_action = K4Action::Deleted(result.vertex_map[v]);
            result.vertex_map = map.iter().map(|&i| result.vertex_map[i as usize]).collect();
            result.k_graph = h;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::super::{run_strip, StripConfig};
    use super::*;

    fn wrap(g: Graph, k: u32) -> StripResult {
        let cfg = StripConfig { debug_checks: true, ..StripConfig::new(k) };
        let mut r = run_strip(&g, &StripConfig { beta_override: Some(0.0), ..cfg }).unwrap();
        assert_eq!(r.iterations, 0);
        r.k_graph = g;
        r
    }

    #[test]
    fn reports() {
        let r = verify_k(&Graph::complete(4), 3, 4);
        assert_eq!(r, KReport { k1: true, k2: true, k3: true, k4: true });
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert!(!verify_k(&star, 1, 6).k1);
        assert!(!verify_k(&Graph::complete(5), 3, 5).k4);
        assert!(!verify_k(&Graph::complete(4), 3, 13).k3);
    }

    #[test]
    fn k2_counts_degree_k_neighbours() {
        // Vertex 0 has degree 4 and four neighbours of degree 3; k = 3 allows 2.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4), (1, 3), (2, 4)]).unwrap();
        assert_eq!((g.degree(0), g.degree(1)), (4, 3));
        assert!(!verify_k(&g, 3, 5).k2);
    }

    #[test]
    fn parity_already_even() {
        let r = enforce_parity(wrap(Graph::complete(4), 3), 3);
        assert_eq!(r.k4_action, K4Action::None);
        assert_eq!(r.k_graph.n(), 4);
    }

    #[test]
    fn parity_fix_on_k5() {
        let r = enforce_parity(wrap(Graph::complete(5), 3), 3);
        assert_eq!(r.k4_action, K4Action::Deleted(0));
        assert_eq!(r.k_graph, Graph::complete(4));
        assert_eq!(r.vertex_map, vec![1, 2, 3, 4]);
        let rep = verify_k(&r.k_graph, 3, 5);
        assert!(rep.k1 && rep.k4);
    }

    #[test]
    fn parity_fix_can_fail() {
        // Wheel with hub 0 and rim 1..5, plus vertex 6 on rim vertices 1, 3, 4.
        // Degrees: hub 5; 1, 3, 4 have 4; 2, 5, 6 have 3. Every high vertex
        // touches a degree-3 vertex and 3 * 7 is odd.
        let mut edges: Vec<(u32, u32)> = (1..6).map(|i| (0, i)).collect();
        edges.extend((1..6).map(|i| (i, i % 5 + 1)));
        edges.extend([(6, 1), (6, 3), (6, 4)]);
        let g = Graph::from_edges(7, edges).unwrap();
        let r = enforce_parity(wrap(g, 3), 3);
        assert_eq!(r.k4_action, K4Action::Failed);
        assert_eq!(r.k_graph.n(), 7);
    }
}
