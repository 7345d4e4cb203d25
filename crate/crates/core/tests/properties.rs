use proptest::prelude::*;

use qsym_core::automorphism::{automorphisms, is_automorphism, verify_pair, SupportCatalog, DEFAULT_BUDGET};
use qsym_core::census::pattern_violations;
use qsym_core::classifier::{classify_with_complement, Status};
use qsym_core::constructors::{build_free, build_tensor, corona_k1, distinct_orders, Operation};
use qsym_core::graph::Graph;
use qsym_core::iso::{are_isomorphic, is_isomorphism};
use qsym_core::perm::Permutation;
use qsym_core::products::{self, ProductKind};
use qsym_core::reduction::{blocks, replay_strip, strip_high_degree_fixpoint, zero_pattern};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap_or(false))
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn relabel(g: &Graph, p: &Permutation) -> Graph {
    Graph::new(g.n(), g.edges().into_iter().map(|(u, v)| (p.apply(u), p.apply(v)))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 96,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn complement_is_an_involution(g in graph(9)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * g.n().saturating_sub(1) / 2);
    }

    #[test]
    fn serde_round_trip(g in graph(8)) {
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    #[test]
    fn permutation_group_laws((p, q) in (0..9usize).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let pq = p.compose(&q);
        for x in 0..p.len() {
            prop_assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
        let cycles: Vec<Vec<usize>> = p.cycles();
        let slices: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Permutation::from_cycles(p.len(), &slices).unwrap(), p);
    }

    #[test]
    fn relabeled_graphs_are_isomorphic((g, p) in graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let h = relabel(&g, &p);
        let w = are_isomorphic(&g, &h);
        prop_assert!(w.is_some());
        prop_assert!(is_isomorphism(&g, &h, &w.unwrap()));
        prop_assert_eq!(automorphisms(&g).unwrap().order, automorphisms(&h).unwrap().order);
    }

    #[test]
    fn enumerated_automorphisms_are_valid(g in graph(7)) {
        let set = automorphisms(&g).unwrap();
        prop_assert!(set.elements[0].is_identity());
        for p in &set.elements {
            prop_assert!(is_automorphism(&g, p).unwrap());
        }
        prop_assert_eq!(set.order, set.elements.len() as u64);
        let catalog = SupportCatalog::build(&g, DEFAULT_BUDGET).unwrap();
        if let Some((s, t)) = catalog.edge_free_pair(&g) {
            prop_assert!(verify_pair(&g, &s, &t, true));
        }
        if let Some((s, t)) = catalog.disjoint_pair() {
            prop_assert!(verify_pair(&g, &s, &t, false));
        }
        prop_assert_eq!(catalog.disjoint_pair().is_some() || catalog.edge_free_pair(&g).is_none(), true);
    }

    #[test]
    fn product_formulas_agree(g1 in graph(6), g2 in graph(6)) {
        for kind in ProductKind::TENSOR_STYLE {
            prop_assert_eq!(
                products::product(kind, &g1, &g2).unwrap(),
                products::product_by_formula(kind, &g1, &g2).unwrap()
            );
        }
        let c = products::corona(&g1, &g2);
        prop_assert_eq!(c.n(), g1.n() * (1 + g2.n()));
        prop_assert_eq!(c.edge_count(), g1.edge_count() + g1.n() * g2.edge_count() + g1.n() * g2.n());
    }

    #[test]
    fn zero_pattern_is_sound_and_symmetric(g in graph(8)) {
        let p = zero_pattern(&g);
        prop_assert!(pattern_violations(&g, &p).unwrap().is_empty());
        prop_assert!(p.asymmetry().is_none());
        let b = blocks(&p).unwrap();
        prop_assert_eq!(b.sizes().iter().sum::<usize>(), g.n());
    }

    #[test]
    fn strip_chain_replays(g in graph(9)) {
        let chain = strip_high_degree_fixpoint(&g);
        prop_assert_eq!(replay_strip(&g, &chain.removed), Some(chain.terminal.clone()));
        for v in 0..chain.terminal.n() {
            prop_assert!(chain.terminal.degree(v) + 2 < chain.terminal.n());
        }
    }

    #[test]
    fn reports_are_consistent_and_verifiable(g in graph(8)) {
        let r = classify_with_complement(&g);
        prop_assert!(!(r.bic.status == Status::NonCommutative && r.ban.status == Status::Commutative));
        if !g.contains_quadrangle() && r.bic.status.is_determined() && r.ban.status.is_determined() {
            prop_assert_eq!(r.bic.status, r.ban.status);
        }
        prop_assert!(r.verify(&g));
        let json = serde_json::to_string(&r).unwrap();
        let back: qsym_core::classifier::Report = serde_json::from_str(&json).unwrap();
        prop_assert!(back.verify(&g));
    }

    #[test]
    fn corona_k1_has_connected_complement(g in graph(8)) {
        prop_assume!(g.n() >= 2);
        prop_assert!(corona_k1(&g).complement().is_connected());
    }

    #[test]
    fn corona_automorphism_shadow(g1 in graph(4), g2 in graph(3)) {
        prop_assume!(g1.n() >= 2 && g1.isolated_vertices().is_empty());
        let a1 = automorphisms(&g1).unwrap().order;
        let a2 = automorphisms(&g2).unwrap().order;
        let c = automorphisms(&products::corona(&g1, &g2)).unwrap().order;
        prop_assert_eq!(c, a2.pow(g1.n() as u32) * a1);
    }

    #[test]
    fn free_construction(gs in prop::collection::vec(graph(4), 1..4)) {
        let (g, trace) = build_free(&gs).unwrap();
        prop_assert!(g.is_connected());
        prop_assert_eq!(trace.replay_single(&gs).unwrap(), g.clone());
        let union = trace.steps.iter().position(|s| s.operation == Operation::DisjointUnion);
        if let Some(i) = union {
            let mut orders = trace.steps[i].operand_orders.clone();
            orders.sort_unstable();
            orders.dedup();
            prop_assert_eq!(orders.len(), trace.steps[i].operand_orders.len());
            prop_assert!(trace.steps[i].guarantee);
            prop_assert_eq!(trace.steps[i + 1].operation, Operation::Cone);
        }
    }

    #[test]
    fn tensor_construction(gs in prop::collection::vec(graph(4), 1..4)) {
        let (g, trace) = build_tensor(&gs).unwrap();
        prop_assert!(g.is_connected());
        prop_assert_eq!(trace.replay_single(&gs).unwrap(), g.clone());
        let factors = gs.iter().filter(|h| h.n() >= 2).count();
        if factors >= 2 {
            let parts = g.complement().components();
            prop_assert_eq!(parts.len(), factors);
            let mut orders: Vec<usize> = parts.iter().map(Vec::len).collect();
            orders.sort_unstable();
            orders.dedup();
            prop_assert_eq!(orders.len(), factors);
            for part in &parts {
                prop_assert!(g.induced_subgraph(part).complement().is_connected());
            }
        }
    }

    #[test]
    fn distinct_orders_replays(gs in prop::collection::vec(graph(5), 1..5)) {
        let gs: Vec<Graph> = gs.into_iter().filter(|g| g.n() >= 2 && g.is_connected()).collect();
        let (out, trace) = distinct_orders(&gs).unwrap();
        let mut orders: Vec<usize> = out.iter().map(Graph::n).collect();
        orders.sort_unstable();
        orders.dedup();
        prop_assert_eq!(orders.len(), out.len());
        prop_assert_eq!(trace.replay(&gs).unwrap(), out);
    }
}
