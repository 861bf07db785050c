use proptest::prelude::*;

use leavitt_rank::classify::{graph_trace, stable_rank, RankCertificate, RankMode, RankValue};
use leavitt_rank::constructions::{approx_tower, desingularize, quotient, restrict};
use leavitt_rank::cycles::{condition_k, condition_l, has_isolated_cycles, is_acyclic};
use leavitt_rank::document::GraphDocument;
use leavitt_rank::graph::{BundleSpec, Graph, Multiplicity, VertexSet};
use leavitt_rank::lattice::{
    breaking_vertices, close, closure, enumerate_hs_sets, is_hereditary_saturated, AdmissiblePair, HsSet,
    DEFAULT_LATTICE_LIMIT,
};
use leavitt_rank::oracle;

const LIMIT: usize = DEFAULT_LATTICE_LIMIT;

fn mult() -> impl Strategy<Value = Multiplicity> {
    prop_oneof![
        3 => (1u64..=3).prop_map(Multiplicity::Finite),
        1 => Just(Multiplicity::Omega),
    ]
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, mult()), 0..=8).prop_map(move |edges| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let bundles = edges
                .into_iter()
                .enumerate()
                .map(|(i, (s, t, m))| BundleSpec::new(format!("e{i}"), names[s].clone(), names[t].clone(), m));
            Graph::new(names.clone(), bundles).unwrap()
        })
    })
}

fn graph_and_sets() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        let set = prop::collection::btree_set(0..n, 0..=n).prop_map(|s| s.into_iter().collect::<VertexSet>());
        (Just(g), set.clone(), set)
    })
}

proptest! {
    #[test]
    fn closure_is_extensive_monotone_idempotent((g, a, b) in graph_and_sets()) {
        let ca = close(&g, &a);
        prop_assert!(a.is_subset(ca.set()));
        prop_assert!(is_hereditary_saturated(&g, ca.set()));
        prop_assert_eq!(close(&g, ca.set()), ca.clone());
        let union = a.union(&b);
        prop_assert!(ca.set().is_subset(close(&g, &union).set()));
        let staged = closure(&g, &a);
        prop_assert_eq!(&staged.set, &ca);
        prop_assert!(staged.stages.keys().copied().eq(ca.set().iter()));
    }

    #[test]
    fn reachability_is_reflexive_and_transitive((g, a, _) in graph_and_sets()) {
        for v in g.vertices() {
            prop_assert!(g.reaches(v, &VertexSet::singleton(v)));
        }
        let forward = g.reachable_from(&a);
        prop_assert_eq!(g.reachable_from(&forward), forward.clone());
        prop_assert!(a.is_subset(&forward));
    }

    #[test]
    fn lattice_matches_subset_filtering(g in graph()) {
        let fast: Vec<VertexSet> = enumerate_hs_sets(&g, LIMIT).unwrap().into_iter().map(HsSet::into_set).collect();
        prop_assert_eq!(fast.clone(), oracle::brute_force_lattice(&g).unwrap());
        for x in &fast {
            for y in &fast {
                prop_assert!(fast.contains(&x.intersection(y)));
            }
        }
    }

    #[test]
    fn document_round_trip(g in graph()) {
        let doc = GraphDocument::from_graph("g", &g);
        let again = GraphDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_graph().unwrap(), g);
    }

    #[test]
    fn rank_one_iff_acyclic_and_certificates_verify(g in graph()) {
        for mode in [RankMode::Unital, RankMode::StrictFinite] {
            let sr = stable_rank(&g, mode, LIMIT).unwrap();
            prop_assert_eq!(sr.value == RankValue::One, is_acyclic(&g));
            prop_assert_eq!(matches!(sr.certificate, RankCertificate::Acyclic), is_acyclic(&g));
            prop_assert!(sr.verify(&g, LIMIT));
        }
    }

    #[test]
    fn acyclic_graphs_satisfy_k_and_l_and_have_traces(g in graph()) {
        if is_acyclic(&g) {
            prop_assert!(condition_k(&g).holds && condition_l(&g).holds && has_isolated_cycles(&g));
            let t = graph_trace(&g).expect("acyclic graphs carry a trace");
            prop_assert!(t.check(&g).is_ok());
        }
        if condition_k(&g).holds {
            prop_assert!(condition_l(&g).holds);
        }
    }

    #[test]
    fn full_breaking_quotient_is_the_restriction(g in graph()) {
        prop_assert_eq!(restrict(&g, &HsSet::empty()), g.clone());
        for h in enumerate_hs_sets(&g, LIMIT).unwrap() {
            let b = breaking_vertices(&g, &h);
            let q = quotient(&g, &AdmissiblePair::new(&g, h.clone(), b).unwrap());
            prop_assert_eq!(q.graph, restrict(&g, &h));
            let none = quotient(&g, &AdmissiblePair::saturated(&g, h.clone()));
            prop_assert!(none.graph.vertex_count() >= g.vertex_count() - h.len());
        }
    }

    #[test]
    fn constructions_preserve_what_they_should(g in graph(), depth in 1u64..=3) {
        let d = desingularize(&g, depth);
        prop_assert!(d.graph.is_row_finite());
        prop_assert_eq!(is_acyclic(&d.graph), is_acyclic(&g));
        for stage in approx_tower(&g, depth).unwrap() {
            prop_assert!(stage.approx.graph.is_row_finite());
            if is_acyclic(&g) {
                prop_assert!(is_acyclic(&stage.approx.graph));
            }
            if has_isolated_cycles(&g) {
                prop_assert!(has_isolated_cycles(&stage.approx.graph));
            }
        }
    }

    #[test]
    fn row_finite_rank_agrees_with_oracle(g in graph()) {
        if let Some(expected) = oracle::row_finite_stable_rank(&g) {
            prop_assert_eq!(stable_rank(&g, RankMode::Unital, LIMIT).unwrap().value, expected);
        }
    }
}
