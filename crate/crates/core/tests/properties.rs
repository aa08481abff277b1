mod common;

use kflab::harness::fmt_real;
use kflab::kcore::k_core;
use kflab::kfactor::{find_k_factor, maximum_matching, tutte_q, verify_k_factor};
use kflab::randgraph::{rw_extract, sample_configuration, sample_from_rw, VertexClass};
use kflab::strip::{run_strip, StripConfig};
use kflab::Graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..=max_m).prop_map(move |pairs| {
            Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))))
                .unwrap_or_else(|_| Graph::empty(n))
        })
    })
}

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..=max_m)
            .prop_map(move |pairs| Graph::from_multi_edges(n, pairs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matching_is_valid_and_maximum(g in graph(10, 25)) {
        let m = maximum_matching(&g);
        let mut used = vec![false; g.n()];
        for &(u, v) in &m {
            prop_assert!(g.neighbors(u as usize).contains(&v));
            prop_assert!(!used[u as usize] && !used[v as usize]);
            used[u as usize] = true;
            used[v as usize] = true;
        }
        // A 1-factor exists exactly when the matching is perfect.
        let perfect = 2 * m.len() == g.n();
        prop_assert_eq!(perfect, common::has_k_factor_by_edge_subsets(&g, 1));
    }

    #[test]
    fn k_core_is_idempotent_and_maximal(g in graph(30, 80), k in 1u32..5) {
        let r = k_core(&g, k);
        prop_assert!(r.core.min_degree().map_or(true, |d| d >= k as usize));
        let again = k_core(&r.core, k);
        prop_assert_eq!(again.core.n(), r.core.n());
        let mut rng = ChaCha8Rng::seed_from_u64(g.edges().len() as u64);
        let oracle = common::core_by_random_peeling(&g, k, &mut rng);
        prop_assert_eq!(oracle.into_iter().collect::<Vec<_>>(), r.vertex_map.clone());
    }

    #[test]
    fn k_factor_certificates_verify(g in multigraph(9, 30), k in 1u32..4) {
        match find_k_factor(&g, k) {
            Ok(Some(cert)) => prop_assert!(verify_k_factor(&g, &cert.edges, k)),
            Ok(None) => {}
            Err(_) => prop_assert!(g.edges().iter().any(|&(u, v)| u == v) || g.min_degree().unwrap_or(0) < k as usize),
        }
    }

    #[test]
    fn tutte_q_vanishes_when_s_and_t_cover(g in graph(8, 20), k in 1u32..4, mask in 0u32..256) {
        let s: Vec<u32> = (0..g.n() as u32).filter(|v| mask >> v & 1 == 1).collect();
        let t: Vec<u32> = (0..g.n() as u32).filter(|v| mask >> v & 1 == 0).collect();
        prop_assert_eq!(tutte_q(&g, k, &s, &t).unwrap(), 0);
    }

    #[test]
    fn strip_potential_identity(g in graph(40, 160), k in 2u32..5) {
        let core = k_core(&g, k).core;
        let cfg = StripConfig { debug_checks: true, record_trace: true, ..StripConfig::new(k) };
        let r = run_strip(&core, &cfg).unwrap();
        let w = cfg.potential_weight();
        prop_assert_eq!(r.observation_violations, 0);
        for t in &r.trace {
            prop_assert_eq!(t.x, t.a as f64 + k as f64 * t.b as f64 + w * t.d as f64);
        }
    }

    #[test]
    fn fmt_real_round_trips(x in -1e12f64..1e12) {
        let y: f64 = fmt_real(x).parse().unwrap();
        prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1e-300));
    }
}

#[test]
fn rw_resample_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let classes = [VertexClass::W0, VertexClass::W1, VertexClass::R];
    for i in 0..1000u64 {
        let n = rng.random_range(2..12usize);
        let mut degrees: Vec<u32> = (0..n).map(|_| rng.random_range(1..6)).collect();
        if degrees.iter().sum::<u32>() % 2 == 1 {
            degrees[0] += 1;
        }
        let class: Vec<VertexClass> = (0..n).map(|_| classes[rng.random_range(0..3)]).collect();
        let cfg = sample_configuration(&degrees, i).unwrap();
        let info = rw_extract(&cfg, &class).unwrap();
        let back = sample_from_rw(&info, i + 1).unwrap();
        assert!(back.is_valid());
        assert_eq!(back.degrees(), &degrees[..]);
        assert_eq!(rw_extract(&back, &class).unwrap(), info);
    }
}
