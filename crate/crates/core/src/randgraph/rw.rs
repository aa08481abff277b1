use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::config::Configuration;
use super::RandGraphError;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    W0,
    W1,
    R,
}

/// Split degrees of one vertex. Copies paired with each other at the same
/// vertex (a loop) count twice toward that vertex's own class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitDegree {
    W0 { to_w0: u32, to_w1r: u32 },
    Other { to_r: u32, to_w0: u32, to_w1: u32 },
}

impl SplitDegree {
    pub fn total(&self) -> u32 {
        match *self {
            SplitDegree::W0 { to_w0, to_w1r } => to_w0 + to_w1r,
            SplitDegree::Other { to_r, to_w0, to_w1 } => to_r + to_w0 + to_w1,
        }
    }
}

/// The exposed data of a configuration under a partition `(W0, W1, R)`:
/// split degrees, and every pair with one copy in W1 and the other in
/// W1 or R, stored smaller copy first and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RwInfo {
    pub classes: Vec<VertexClass>,
    pub split: Vec<SplitDegree>,
    pub fixed_pairs: Vec<(u32, u32)>,
}

impl RwInfo {
    pub fn degrees(&self) -> Vec<u32> {
        self.split.iter().map(SplitDegree::total).collect()
    }
}

pub fn rw_extract(cfg: &Configuration, classes: &[VertexClass]) -> Result<RwInfo, RandGraphError> {
    if classes.len() != cfg.n() {
        return Err(RandGraphError::Infeasible(format!(
            "{} classes for a configuration on {} vertices",
            classes.len(),
            cfg.n()
        )));
    }
    let mut split = Vec::with_capacity(cfg.n());
    for v in 0..cfg.n() {
        let mut counts = [0u32; 3];
        for a in cfg.copies(v) {
            let w = cfg.owner(cfg.partner(a));
            counts[classes[w] as usize] += 1;
        }
        let [w0, w1, r] = counts;
        split.push(match classes[v] {
            VertexClass::W0 => SplitDegree::W0 { to_w0: w0, to_w1r: w1 + r },
            _ => SplitDegree::Other { to_r: r, to_w0: w0, to_w1: w1 },
        });
    }
    let fixed_pairs = cfg
        .pairs()
        .into_iter()
        .filter(|&(a, b)| {
            let (ca, cb) = (classes[cfg.owner(a as usize)], classes[cfg.owner(b as usize)]);
            (ca == VertexClass::W1 && cb != VertexClass::W0) || (cb == VertexClass::W1 && ca != VertexClass::W0)
        })
        .collect();
    Ok(RwInfo { classes: classes.to_vec(), split, fixed_pairs })
}

fn infeasible(msg: String) -> RandGraphError {
    RandGraphError::Infeasible(msg)
}

fn pair_up(copies: &mut [u32], partner: &mut [u32], rng: &mut seed::StreamRng) {
    copies.shuffle(rng);
    for p in copies.chunks_exact(2) {
        partner[p[0] as usize] = p[1];
        partner[p[1] as usize] = p[0];
    }
}

/// Draws a uniform configuration consistent with `info`:
///
/// 1. each R vertex splits its free copies between W0 and R targets;
/// 2. each W0 vertex splits its copies between W0 and W1-or-R targets;
/// 3. the W0-bound W0 copies are matched uniformly;
/// 4. the R-bound R copies are matched uniformly;
/// 5. the remaining W0 copies are matched uniformly against the W0-bound
///    copies of R and W1.
///
/// The fixed pairs are installed verbatim.
pub fn sample_from_rw(info: &RwInfo, seed: u64) -> Result<Configuration, RandGraphError> {
    let n = info.classes.len();
    if info.split.len() != n {
        return Err(infeasible("split degree count differs from class count".into()));
    }
    let degrees = info.degrees();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    for &d in &degrees {
        offsets.push(offsets.last().unwrap() + d as usize);
    }
    let total = offsets[n];
    let owner_of = |c: u32| -> Option<usize> {
        if c as usize >= total {
            return None;
        }
        Some(offsets.partition_point(|&o| o <= c as usize) - 1)
    };
    let mut partner = vec![u32::MAX; total];
    // Per vertex: copies fixed to W1 and to R through the pair list.
    let mut fixed_w1 = vec![0u32; n];
    let mut fixed_r = vec![0u32; n];
    for &(a, b) in &info.fixed_pairs {
        let (Some(u), Some(v)) = (owner_of(a), owner_of(b)) else {
            return Err(infeasible(format!("fixed pair ({a}, {b}) out of range")));
        };
        if a == b || partner[a as usize] != u32::MAX || partner[b as usize] != u32::MAX {
            return Err(infeasible(format!("fixed pair ({a}, {b}) reuses a copy")));
        }
        let (cu, cv) = (info.classes[u], info.classes[v]);
        let ok = (cu == VertexClass::W1 && cv != VertexClass::W0) || (cv == VertexClass::W1 && cu != VertexClass::W0);
        if !ok {
            return Err(infeasible(format!("fixed pair ({a}, {b}) is not a W1 to W1-or-R pair")));
        }
        partner[a as usize] = b;
        partner[b as usize] = a;
        for (x, cy) in [(u, cv), (v, cu)] {
            if cy == VertexClass::W1 {
                fixed_w1[x] += 1;
            } else {
                fixed_r[x] += 1;
            }
        }
    }

    let mut rng = seed::rng(seed);
    let mut w0_internal = Vec::new();
    let mut r_internal = Vec::new();
    let mut w0_side = Vec::new();
    let mut other_side = Vec::new();
    for v in 0..n {
        let mut free: Vec<u32> =
            (offsets[v]..offsets[v + 1]).filter(|&c| partner[c] == u32::MAX).map(|c| c as u32).collect();
        match (info.classes[v], info.split[v]) {
            (VertexClass::W0, SplitDegree::W0 { to_w0, to_w1r }) => {
                if fixed_w1[v] + fixed_r[v] != 0 {
                    return Err(infeasible(format!("W0 vertex {v} appears in the fixed pairs")));
                }
                free.shuffle(&mut rng);
                let (a, b) = free.split_at(to_w0 as usize);
                w0_internal.extend_from_slice(a);
                w0_side.extend_from_slice(b);
                debug_assert_eq!(b.len(), to_w1r as usize);
            }
            (VertexClass::W1, SplitDegree::Other { to_r, to_w0, to_w1 }) => {
                if fixed_w1[v] != to_w1 || fixed_r[v] != to_r || free.len() != to_w0 as usize {
                    return Err(infeasible(format!(
                        "W1 vertex {v}: fixed pairs give ({}, {}) to (W1, R), split says ({to_w1}, {to_r})",
                        fixed_w1[v], fixed_r[v]
                    )));
                }
                other_side.extend_from_slice(&free);
            }
            (VertexClass::R, SplitDegree::Other { to_r, to_w0, to_w1 }) => {
                if fixed_w1[v] != to_w1 || fixed_r[v] != 0 || free.len() != (to_w0 + to_r) as usize {
                    return Err(infeasible(format!(
                        "R vertex {v}: {} fixed W1 pairs against split to_w1 = {to_w1}",
                        fixed_w1[v]
                    )));
                }
                free.shuffle(&mut rng);
                let (a, b) = free.split_at(to_w0 as usize);
                other_side.extend_from_slice(a);
                r_internal.extend_from_slice(b);
            }
            (class, s) => {
                return Err(infeasible(format!("vertex {v} has class {class:?} but split {s:?}")));
            }
        }
    }
    if w0_internal.len() % 2 == 1 {
        return Err(infeasible(format!("odd number ({}) of W0-internal copies", w0_internal.len())));
    }
    if r_internal.len() % 2 == 1 {
        return Err(infeasible(format!("odd number ({}) of R-internal copies", r_internal.len())));
    }
    if w0_side.len() != other_side.len() {
        return Err(infeasible(format!(
            "bipartite sides differ: {} W0 copies against {} W1-or-R copies",
            w0_side.len(),
            other_side.len()
        )));
    }
    pair_up(&mut w0_internal, &mut partner, &mut rng);
    pair_up(&mut r_internal, &mut partner, &mut rng);
    w0_side.shuffle(&mut rng);
    for (&a, &b) in w0_side.iter().zip(&other_side) {
        partner[a as usize] = b;
        partner[b as usize] = a;
    }
    let pairs: Vec<(u32, u32)> =
        (0..total).filter(|&a| a < partner[a] as usize).map(|a| (a as u32, partner[a])).collect();
    Configuration::from_pairs(degrees, &pairs)
}
