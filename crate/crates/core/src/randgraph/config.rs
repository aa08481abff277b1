use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::RandGraphError;
use crate::graph::Graph;
use crate::seed::{self, StreamRng};

/// Vertex copies plus a perfect pairing on them. Copies of `v` are the ids
/// `offsets[v]..offsets[v + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    degrees: Vec<u32>,
    offsets: Vec<usize>,
    owner: Vec<u32>,
    partner: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    degrees: Vec<u32>,
    pairing: Vec<[u32; 2]>,
}

/// Result of collapsing a configuration to a simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub graph: Graph,
    pub loops: usize,
    /// Pairs beyond the first between the same two vertices.
    pub multi_edges: usize,
}

#[derive(Clone, Debug)]
pub struct SimpleSample {
    pub configuration: Configuration,
    pub attempts: usize,
}

fn layout(degrees: &[u32]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = Vec::with_capacity(degrees.len() + 1);
    offsets.push(0usize);
    let mut owner = Vec::new();
    for (v, &d) in degrees.iter().enumerate() {
        owner.extend(std::iter::repeat_n(v as u32, d as usize));
        offsets.push(owner.len());
    }
    (offsets, owner)
}

impl Configuration {
    /// Builds a configuration from explicit copy pairs.
    pub fn from_pairs(degrees: Vec<u32>, pairs: &[(u32, u32)]) -> Result<Self, RandGraphError> {
        let (offsets, owner) = layout(&degrees);
        let total = owner.len();
        let mut partner = vec![u32::MAX; total];
        for &(a, b) in pairs {
            let (ai, bi) = (a as usize, b as usize);
            if ai >= total || bi >= total || a == b {
                return Err(RandGraphError::InvalidPairing(format!("bad pair ({a}, {b})")));
            }
            if partner[ai] != u32::MAX || partner[bi] != u32::MAX {
                return Err(RandGraphError::InvalidPairing(format!("copy reused in ({a}, {b})")));
            }
            partner[ai] = b;
            partner[bi] = a;
        }
        if let Some(c) = partner.iter().position(|&p| p == u32::MAX) {
            return Err(RandGraphError::InvalidPairing(format!("copy {c} is unpaired")));
        }
        Ok(Configuration { degrees, offsets, owner, partner })
    }

    /// One copy per edge end, paired along the edges of `g`.
    pub fn from_multigraph(g: &Graph) -> Self {
        let degrees = g.degrees();
        let (offsets, owner) = layout(&degrees);
        let mut next = offsets[..g.n()].to_vec();
        let mut partner = vec![0u32; owner.len()];
        for &(u, v) in g.edges() {
            let a = next[u as usize];
            next[u as usize] += 1;
            let b = next[v as usize];
            next[v as usize] += 1;
            partner[a] = b as u32;
            partner[b] = a as u32;
        }
        Configuration { degrees, offsets, owner, partner }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn copy_count(&self) -> usize {
        self.owner.len()
    }

    pub fn copies(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn owner(&self, copy: usize) -> usize {
        self.owner[copy] as usize
    }

    pub fn partner(&self, copy: usize) -> usize {
        self.partner[copy] as usize
    }

    /// Each pair once, smaller copy first, sorted.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        (0..self.partner.len())
            .filter(|&a| a < self.partner[a] as usize)
            .map(|a| (a as u32, self.partner[a]))
            .collect()
    }

    /// Checks that the pairing is a fixed-point-free involution on all copies.
    pub fn is_valid(&self) -> bool {
        let t = self.partner.len();
        t % 2 == 0
            && self.partner.iter().enumerate().all(|(a, &b)| {
                (b as usize) < t && b as usize != a && self.partner[b as usize] as usize == a
            })
    }

    /// Every pair becomes an edge; loops and parallel edges are kept.
    pub fn to_multigraph(&self) -> Graph {
        let edges = self.pairs().into_iter().map(|(a, b)| (self.owner[a as usize], self.owner[b as usize]));
        Graph::from_multi_edges(self.n(), edges).expect("owners are in range")
    }

    pub fn to_json(&self) -> String {
        let j = ConfigurationJson {
            degrees: self.degrees.clone(),
            pairing: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RandGraphError> {
        let j: ConfigurationJson =
            serde_json::from_str(text).map_err(|e| RandGraphError::InvalidPairing(e.to_string()))?;
        let pairs: Vec<(u32, u32)> = j.pairing.iter().map(|p| (p[0], p[1])).collect();
        Self::from_pairs(j.degrees, &pairs)
    }
}

fn check_parity(degrees: &[u32]) -> Result<(), RandGraphError> {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return Err(RandGraphError::OddDegreeSum(total));
    }
    Ok(())
}

fn shuffle_pairing(degrees: &[u32], rng: &mut StreamRng) -> Configuration {
    let (offsets, owner) = layout(degrees);
    let mut copies: Vec<u32> = (0..owner.len() as u32).collect();
    copies.shuffle(rng);
    let mut partner = vec![0u32; owner.len()];
    for pair in copies.chunks_exact(2) {
        partner[pair[0] as usize] = pair[1];
        partner[pair[1] as usize] = pair[0];
    }
    Configuration { degrees: degrees.to_vec(), offsets, owner, partner }
}

/// Uniform pairing of the copies: shuffle them and pair consecutive entries.
pub fn sample_configuration(degrees: &[u32], seed: u64) -> Result<Configuration, RandGraphError> {
    check_parity(degrees)?;
    Ok(shuffle_pairing(degrees, &mut seed::rng(seed)))
}

/// Collapses a configuration to the simple graph of its distinct non-loop
/// adjacencies, counting what was dropped.
pub fn project_multigraph(cfg: &Configuration) -> Projection {
    let mut loops = 0;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(cfg.copy_count() / 2);
    for (a, b) in cfg.pairs() {
        let (u, v) = (cfg.owner[a as usize], cfg.owner[b as usize]);
        if u == v {
            loops += 1;
        } else {
            edges.push(if u < v { (u, v) } else { (v, u) });
        }
    }
    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    let multi_edges = before - edges.len();
    let graph = Graph::from_edges(cfg.n(), edges).expect("deduplicated loop-free edges");
    Projection { graph, loops, multi_edges }
}

fn is_simple(cfg: &Configuration, seen: &mut Vec<u32>) -> bool {
    seen.clear();
    for a in 0..cfg.copy_count() {
        let b = cfg.partner[a] as usize;
        if cfg.owner[a] == cfg.owner[b] {
            return false;
        }
    }
    for v in 0..cfg.n() {
        seen.clear();
        seen.extend(cfg.copies(v).map(|a| cfg.owner[cfg.partner[a] as usize]));
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Resamples uniform configurations until one projects to a simple graph.
/// The accepted configuration is uniform over simple realizations.
pub fn sample_simple_with_degrees(
    degrees: &[u32],
    seed: u64,
    max_attempts: usize,
) -> Result<SimpleSample, RandGraphError> {
    check_parity(degrees)?;
    let mut rng = seed::rng(seed);
    let mut scratch = Vec::new();
    for attempt in 1..=max_attempts {
        let cfg = shuffle_pairing(degrees, &mut rng);
        if is_simple(&cfg, &mut scratch) {
            return Ok(SimpleSample { configuration: cfg, attempts: attempt });
        }
    }
    Err(RandGraphError::Exhausted { attempts: max_attempts })
}
