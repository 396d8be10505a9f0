mod common;

use idri_core::metric::Rational;
use idri_core::oracle::DEFAULT_CAP;
use idri_core::{
    aggregate, all_focal_stats, co_citer_multiplicities, compute_metric, condition_11, enumerate_q,
    focal_profile, render_decimal, render_percent, CitationGraph, FocalStats, IncludeRule,
    MetricStatus, PaperId, RefMode,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn edge_list() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..20, 0u8..20), 1..120)
}

fn to_ids(list: &[(u8, u8)]) -> Vec<(PaperId, PaperId)> {
    list.iter()
        .map(|&(a, b)| {
            (
                PaperId::new(format!("p{a}")).unwrap(),
                PaperId::new(format!("p{b}")).unwrap(),
            )
        })
        .collect()
}

proptest! {
    #[test]
    fn ingestion_is_order_independent(list in edge_list(), seed in any::<u64>()) {
        let (g1, s1) = CitationGraph::from_edges(to_ids(&list)).unwrap();
        let mut shuffled = list.clone();
        // deterministic permutation driven by the seed
        let n = shuffled.len();
        for i in (1..n).rev() {
            let j = (seed.wrapping_mul(i as u64 + 1).rotate_left(17) % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let (g2, s2) = CitationGraph::from_edges(to_ids(&shuffled)).unwrap();
        prop_assert_eq!(g1, g2);
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn graph_invariants_hold(list in edge_list()) {
        let (g, summary) = CitationGraph::from_edges(to_ids(&list)).unwrap();
        let total: usize = (0..g.len()).map(|j| g.references_of(j).len()).sum();
        prop_assert_eq!(total as u64, summary.edges_accepted);
        prop_assert_eq!(
            summary.edges_accepted + summary.duplicates_dropped + summary.self_loops_dropped,
            list.len() as u64
        );
        let rebuilt = g.rebuild_citers();
        for (i, citers) in rebuilt.iter().enumerate() {
            prop_assert_eq!(&citers[..], g.citers_of(i));
            prop_assert!(!g.references_of(i).contains(&(i as u32)));
            for &j in g.citers_of(i) {
                prop_assert!(g.references_of(j as usize).contains(&(i as u32)));
            }
        }
    }

    #[test]
    fn focal_stats_invariants(list in edge_list()) {
        let (g, _) = CitationGraph::from_edges(to_ids(&list)).unwrap();
        for id in g.ids() {
            let profile = focal_profile(&g, id.as_str(), RefMode::Dataset).unwrap();
            let st = &profile.stats;
            let m = &profile.multiplicities;
            prop_assert_eq!(st.d, m.values().sum::<u64>());
            prop_assert_eq!(st.k, m.len() as u64);
            prop_assert_eq!(st.q, m.values().map(|v| v - 1).sum::<u64>());
            prop_assert_eq!(st.k, st.d - st.q);
            prop_assert!(st.q <= st.d - st.k);
            if st.s >= 1 {
                // q <= D (s - 1) / s
                prop_assert!(st.q * st.s <= st.d * (st.s - 1));
            }
            prop_assert!(m.values().all(|&v| v >= 1 && v <= st.s));
        }
    }

    #[test]
    fn oracle_agrees_with_fast_path(list in edge_list()) {
        let (g, _) = CitationGraph::from_edges(to_ids(&list)).unwrap();
        for id in g.ids() {
            let fast = idri_core::focal_stats(&g, id.as_str(), RefMode::Dataset).unwrap().q;
            prop_assert_eq!(fast, enumerate_q(&g, id.as_str(), DEFAULT_CAP).unwrap());
        }
    }

    #[test]
    fn metric_bounds(s in 0u64..60, k in 0u64..200, extra in prop::collection::vec(0u64..60, 0..40)) {
        // build a consistent FocalStats from multiplicities in [1, s]
        let mults: Vec<u64> = extra.iter().take(k as usize).map(|e| 1 + e % s.max(1)).collect();
        let st = FocalStats {
            focal: PaperId::new("x").unwrap(),
            s,
            d: mults.iter().sum(),
            k: mults.len() as u64,
            q: mults.iter().map(|m| m - 1).sum(),
        };
        let m = compute_metric(&st);
        if m.status == MetricStatus::Ok {
            let xm = m.xm.unwrap();
            prop_assert!(xm >= Rational::zero() && xm <= m.xm_max.unwrap());
            prop_assert!(m.xm_max.unwrap() < Rational::one());
            let norm = m.xm_norm.unwrap();
            prop_assert!(norm >= Rational::zero() && norm <= Rational::one());
            prop_assert_eq!(m.idri.unwrap(), Rational::one() - norm);
        } else {
            prop_assert!(m.xm_norm.is_none() && m.idri.is_none());
        }
    }

    #[test]
    fn percent_matches_value_column(num in 0i128..100_000, den in 1i128..100_000) {
        let v = Rational::new(num.min(den), den);
        let pct = render_percent(&v);
        let expected = render_decimal(&(v * Rational::from_integer(100)), 1);
        prop_assert_eq!(pct, format!("{expected}%"));
    }

    #[test]
    fn aggregate_is_order_independent(seed in 0u64..500, rot in 0usize..10) {
        let g = common::random_graph(seed);
        let stats = all_focal_stats(&g, RefMode::Dataset).unwrap();
        if stats.iter().any(|st| st.s >= 1) {
            let a = aggregate("g", &stats, IncludeRule::default()).unwrap();
            let mut rotated = stats.clone();
            rotated.reverse();
            let len = rotated.len();
            rotated.rotate_left(rot % len);
            let b = aggregate("g", &rotated, IncludeRule::default()).unwrap();
            prop_assert_eq!(&a, &b);
            let render = |r: &Option<Rational>| r.map(|v| render_decimal(&v, 6));
            prop_assert_eq!(render(&a.idri_joint), render(&b.idri_joint));
        }
    }
}

#[test]
fn oracle_redundancy_fixtures() {
    for m in [1usize, 2, 3, 5] {
        let mut edges = Vec::new();
        for j in 0..m {
            let citer = PaperId::new(format!("c{j}")).unwrap();
            edges.push((citer.clone(), PaperId::new("i").unwrap()));
            edges.push((citer, PaperId::new("x").unwrap()));
        }
        let (g, _) = CitationGraph::from_edges(edges).unwrap();
        assert_eq!(enumerate_q(&g, "i", DEFAULT_CAP).unwrap(), m as u64 - 1);
        assert_eq!(
            co_citer_multiplicities(&g, "i")
                .unwrap()
                .values()
                .copied()
                .collect::<Vec<_>>(),
            [m as u64]
        );
    }
}

#[test]
fn pair_betweenness_diagnostic_on_corpus() {
    let mut pairs = 0;
    for g in common::corpus(60) {
        let ok: Vec<FocalStats> = all_focal_stats(&g, RefMode::Dataset)
            .unwrap()
            .into_iter()
            .filter(|st| st.s >= 2 && st.d >= 1)
            .collect();
        for a in 0..ok.len() {
            for b in a + 1..ok.len() {
                let pair = [ok[a].clone(), ok[b].clone()];
                let joint = aggregate("pair", &pair, IncludeRule::default()).unwrap();
                let na = compute_metric(&ok[a]).xm_norm.unwrap();
                let nb = compute_metric(&ok[b]).xm_norm.unwrap();
                let j = joint.xm_norm_joint.unwrap();
                if j < na.min(nb) || j > na.max(nb) {
                    assert!(condition_11(&ok[a], &ok[b]).unwrap() > Rational::zero());
                }
                pairs += 1;
            }
        }
    }
    assert!(pairs > 1000, "only {pairs} pairs");
}
