//! k-factors: Tutte's condition, the gadget reduction to perfect matching,
//! certificate checks and the P1-P6 audit.

mod audit;
mod gadget;
mod matching;
mod tutte;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use audit::{audit_properties, PReport, PropertyAuditConfig, PropertyLine, EXACT_MAX_N};
pub use gadget::{gadget_reduce, Gadget};
pub use matching::{maximum_matching, perfect_matching};
pub use tutte::{brute_force_tutte, tutte_check, tutte_q, TutteWitness, BRUTE_FORCE_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KFactorError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(u32),
    #[error("vertex {0} is in both S and T")]
    Overlap(u32),
    #[error("vertex {vertex} has degree {degree} < k = {k}")]
    InfeasibleDegree { vertex: u32, degree: usize, k: u32 },
    #[error("{n} vertices exceeds the brute-force limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {0} carries a loop; k-factor search needs a loopless graph")]
    LoopNotSupported(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCertificate {
    pub k: u32,
    /// Sorted, each as `(u, v)` with `u < v`.
    pub edges: Vec<(u32, u32)>,
    pub f_degree: Vec<u32>,
}

impl FactorCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Finds a k-factor through the gadget, or `None` if there is none. Odd
/// `k n` is decided without building anything.
pub fn find_k_factor(g: &Graph, k: u32) -> Result<Option<FactorCertificate>, KFactorError> {
    if let Some(&(u, _)) = g.edges().iter().find(|&&(u, v)| u == v) {
        return Err(KFactorError::LoopNotSupported(u));
    }
    if (k as usize * g.n()) % 2 == 1 {
        return Ok(None);
    }
    let gadget = gadget_reduce(g, k)?;
    let Some(m) = perfect_matching(&gadget.graph) else {
        return Ok(None);
    };
    let edges: Vec<(u32, u32)> = gadget.pull_back(&m).into_iter().map(|i| g.edges()[i]).collect();
    let mut f_degree = vec![0u32; g.n()];
    for &(u, v) in &edges {
        f_degree[u as usize] += 1;
        f_degree[v as usize] += 1;
    }
    let cert = FactorCertificate { k, edges, f_degree };
    assert!(verify_k_factor(g, &cert.edges, k), "gadget pull-back must give a k-factor");
    Ok(Some(cert))
}

/// True iff `f` is a sub-multiset of the edges of `g` and every vertex has
/// exactly `k` incident `f`-edges, loops counting twice.
pub fn verify_k_factor(g: &Graph, f: &[(u32, u32)], k: u32) -> bool {
    let n = g.n();
    if f.iter().any(|&(u, v)| u as usize >= n || v as usize >= n) {
        return false;
    }
    let mut sorted: Vec<(u32, u32)> = f.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    sorted.sort_unstable();
    let host = g.edges();
    let mut j = 0;
    for e in &sorted {
        while j < host.len() && host[j] < *e {
            j += 1;
        }
        if j == host.len() || host[j] != *e {
            return false;
        }
        j += 1;
    }
    let mut deg = vec![0u32; n];
    for &(u, v) in &sorted {
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    deg.iter().all(|&d| d == k)
}
