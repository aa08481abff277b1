use serde::Serialize;

use super::KFactorError;
use crate::graph::Graph;

/// A pair `(S, T)` evaluated against Tutte's k-factor inequality
/// `k|S| + sum_{v in T_H} (d(v) - k) >= q(S,T) + e(S,T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteWitness {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    pub q: usize,
    pub e_st: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub violated: bool,
}

const NONE: u8 = 0;
const IN_S: u8 = 1;
const IN_T: u8 = 2;

fn side_map(n: usize, s: &[u32], t: &[u32]) -> Result<Vec<u8>, KFactorError> {
    let mut side = vec![NONE; n];
    for &v in s {
        if v as usize >= n {
            return Err(KFactorError::VertexOutOfRange(v));
        }
        side[v as usize] = IN_S;
    }
    for &v in t {
        if v as usize >= n {
            return Err(KFactorError::VertexOutOfRange(v));
        }
        if side[v as usize] == IN_S {
            return Err(KFactorError::Overlap(v));
        }
        side[v as usize] = IN_T;
    }
    Ok(side)
}

/// Components of `g - (S u T)` with their `(size, e(Q, T), has_high)`.
/// `comp` and `stack` are scratch buffers of length `n`.
fn components(
    g: &Graph,
    k: usize,
    side: &[u8],
    comp: &mut Vec<u32>,
    stack: &mut Vec<u32>,
) -> Vec<(usize, usize, bool)> {
    let n = g.n();
    comp.clear();
    comp.resize(n, u32::MAX);
    let mut out = Vec::new();
    for r in 0..n {
        if side[r] != NONE || comp[r] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        let (mut size, mut to_t, mut high) = (0usize, 0usize, false);
        comp[r] = id;
        stack.clear();
        stack.push(r as u32);
        while let Some(v) = stack.pop() {
            let v = v as usize;
            size += 1;
            high |= g.degree(v) > k;
            for &u in g.neighbors(v) {
                let u = u as usize;
                match side[u] {
                    IN_T => to_t += 1,
                    NONE if comp[u] == u32::MAX => {
                        comp[u] = id;
                        stack.push(u as u32);
                    }
                    _ => {}
                }
            }
        }
        out.push((size, to_t, high));
    }
    out
}

fn counted(k: usize, size: usize, to_t: usize) -> bool {
    (k * size) % 2 != to_t % 2
}

/// Number of components `Q` of `g - (S u T)` for which `k|Q|` and `e(Q, T)`
/// differ in parity.
pub fn tutte_q(g: &Graph, k: u32, s: &[u32], t: &[u32]) -> Result<usize, KFactorError> {
    let side = side_map(g.n(), s, t)?;
    let comps = components(g, k as usize, &side, &mut Vec::new(), &mut Vec::new());
    Ok(comps.iter().filter(|&&(size, to_t, _)| counted(k as usize, size, to_t)).count())
}

fn check_min_degree(g: &Graph, k: u32) -> Result<(), KFactorError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < k as usize) {
        return Err(KFactorError::InfeasibleDegree { vertex: v as u32, degree: g.degree(v), k });
    }
    Ok(())
}

struct Evaluation {
    q: usize,
    e_st: usize,
    lhs: i64,
    rhs: i64,
    m1: bool,
    m2: bool,
}

fn evaluate(
    g: &Graph,
    k: usize,
    side: &[u8],
    strict: bool,
    comp: &mut Vec<u32>,
    stack: &mut Vec<u32>,
) -> Evaluation {
    let mut lhs = 0i64;
    let mut e_st = 0usize;
    let mut m1 = true;
    for v in 0..g.n() {
        let d = g.degree(v);
        match side[v] {
            IN_S => {
                lhs += k as i64;
                m1 &= d > k;
                e_st += g.neighbors(v).iter().filter(|&&u| side[u as usize] == IN_T).count();
            }
            IN_T if d > k => lhs += if strict { 1 } else { (d - k) as i64 },
            _ => {}
        }
    }
    let mut q = 0;
    let mut m2 = true;
    for (size, to_t, high) in components(g, k, side, comp, stack) {
        if counted(k, size, to_t) {
            q += 1;
            m2 &= high;
        }
    }
    let rhs = (q + e_st) as i64;
    Evaluation { q, e_st, lhs, rhs, m1, m2 }
}

fn witness(side: &[u8], ev: &Evaluation) -> TutteWitness {
    let pick = |want| (0..side.len() as u32).filter(|&v| side[v as usize] == want).collect();
    TutteWitness { s: pick(IN_S), t: pick(IN_T), q: ev.q, e_st: ev.e_st, lhs: ev.lhs, rhs: ev.rhs, violated: ev.lhs < ev.rhs }
}

/// Evaluates both sides for one pair. With `strict`, the left side uses
/// `|T_H|` in place of `sum_{T_H} (d(v) - k)`, giving the stronger form.
pub fn tutte_check(g: &Graph, k: u32, s: &[u32], t: &[u32], strict: bool) -> Result<TutteWitness, KFactorError> {
    check_min_degree(g, k)?;
    let side = side_map(g.n(), s, t)?;
    let ev = evaluate(g, k as usize, &side, strict, &mut Vec::new(), &mut Vec::new());
    Ok(witness(&side, &ev))
}

pub const BRUTE_FORCE_MAX_N: usize = 16;

/// Tries all `3^n` disjoint pairs and returns the first violator, in the
/// order of a base-3 counter over vertices (0 = neither, 1 = S, 2 = T).
/// With `restrict_m1m2`, only pairs with `S` inside the high vertices and
/// a high vertex in every counted component are tried.
pub fn brute_force_tutte(g: &Graph, k: u32, restrict_m1m2: bool) -> Result<Option<TutteWitness>, KFactorError> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(KFactorError::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    check_min_degree(g, k)?;
    let k_us = k as usize;
    let mut side = vec![NONE; n];
    let (mut comp, mut stack) = (Vec::new(), Vec::new());
    loop {
        let skip = restrict_m1m2 && (0..n).any(|v| side[v] == IN_S && g.degree(v) <= k_us);
        if !skip {
            let ev = evaluate(g, k_us, &side, false, &mut comp, &mut stack);
            if ev.lhs < ev.rhs && (!restrict_m1m2 || (ev.m1 && ev.m2)) {
                return Ok(Some(witness(&side, &ev)));
            }
        }
        // Increment the base-3 counter.
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            side[i] += 1;
            if side[i] <= IN_T {
                break;
            }
            side[i] = NONE;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Triangles a1 a2 c and b1 b2 c: a1 = 0, a2 = 1, c = 2, b1 = 3, b2 = 4.
    fn bowtie() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn q_of_empty_sets() {
        assert_eq!(tutte_q(&Graph::cycle(5), 2, &[], &[]).unwrap(), 0);
        assert_eq!(tutte_q(&Graph::complete(5), 3, &[], &[]).unwrap(), 1);
        assert_eq!(tutte_q(&Graph::complete(4), 3, &[0, 1], &[2, 3]).unwrap(), 0);
    }

    #[test]
    fn q_on_bowtie() {
        assert_eq!(tutte_q(&bowtie(), 2, &[2], &[0]).unwrap(), 1);
        assert_eq!(tutte_q(&bowtie(), 2, &[2], &[2]), Err(KFactorError::Overlap(2)));
    }

    #[test]
    fn bowtie_violation() {
        let w = tutte_check(&bowtie(), 2, &[2], &[0, 1, 3, 4], false).unwrap();
        assert_eq!((w.lhs, w.rhs, w.q, w.e_st), (2, 4, 0, 4));
        assert!(w.violated);
        let w0 = tutte_check(&bowtie(), 2, &[], &[], false).unwrap();
        assert!(!w0.violated && w0.lhs == 0 && w0.rhs == 0);
    }

    #[test]
    fn five_cycle_has_no_violator() {
        assert_eq!(brute_force_tutte(&Graph::cycle(5), 2, false).unwrap(), None);
    }

    #[test]
    fn brute_force_verdicts() {
        assert_eq!(brute_force_tutte(&Graph::complete(4), 3, false).unwrap(), None);
        assert_eq!(brute_force_tutte(&Graph::complete(4), 3, true).unwrap(), None);
        let w = brute_force_tutte(&bowtie(), 2, false).unwrap().unwrap();
        assert!(w.violated);
        let w = brute_force_tutte(&bowtie(), 2, true).unwrap().unwrap();
        assert!(w.s.iter().all(|&v| bowtie().degree(v as usize) > 2));
        assert!(matches!(
            brute_force_tutte(&Graph::complete(17), 3, false),
            Err(KFactorError::TooLarge { n: 17, .. })
        ));
    }

    #[test]
    fn strict_form_is_stronger() {
        // K_4 with k = 1 and T = {0}: d - k = 2 in the sum form, 1 in the strict one.
        let a = tutte_check(&Graph::complete(4), 1, &[], &[0], false).unwrap();
        let b = tutte_check(&Graph::complete(4), 1, &[], &[0], true).unwrap();
        assert_eq!((a.lhs, b.lhs), (2, 1));
        assert_eq!(a.rhs, b.rhs);
    }
}
