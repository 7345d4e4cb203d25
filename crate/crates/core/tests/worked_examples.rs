use qsym_core::automorphism::{find_disjoint_pair, find_edge_free_disjoint_pair, verify_pair};
use qsym_core::classifier::{
    classify, classify_line_graph, classify_with_complement, classify_with_provenance, Certificate, Provenance,
    RuleId, Status,
};
use qsym_core::constructors::{build_free, build_wreath, gallery, Operation};
use qsym_core::graph::Graph;
use qsym_core::iso::is_isomorphism;
use qsym_core::perm::Permutation;
use qsym_core::products::{self, ProductKind};
use qsym_core::reduction::{blocks, degree_pattern, strip_high_degree, strip_high_degree_fixpoint};

use Status::{Commutative, NonCommutative};

#[test]
fn complete_bipartite_table() {
    for m in 1..=6 {
        for n in m..=6 {
            let r = classify(&Graph::complete_bipartite(m, n));
            let expected = if n >= 4 { NonCommutative } else { Commutative };
            assert_eq!(r.bic.status, expected, "K_{m},{n}");
            assert!(r.verify(&Graph::complete_bipartite(m, n)));
        }
    }
}

#[test]
fn k42_has_an_edge_free_pair() {
    let g = Graph::complete_bipartite(4, 2);
    let r = classify(&g);
    assert_eq!(r.bic.status, NonCommutative);
    assert_eq!(r.bic.rule, Some(RuleId::EdgeFreePair));
    assert!(matches!(r.bic.certificate, Some(Certificate::EdgeFreePair { .. })));
}

#[test]
fn k4_and_c4_against_their_complements() {
    for g in [Graph::complete(4), Graph::cycle(4)] {
        assert!(find_edge_free_disjoint_pair(&g).unwrap().is_none());
        let c = g.complement();
        let (s, t) = find_edge_free_disjoint_pair(&c).unwrap().unwrap();
        assert!(verify_pair(&c, &s, &t, true));
    }
    let r = classify(&Graph::cycle(4));
    assert_eq!((r.bic.status, r.ban.status), (Commutative, NonCommutative));
}

#[test]
fn fig7_is_commutative_by_blocks_or_stripping() {
    let g = gallery("fig7").unwrap();
    let r = classify(&g);
    assert_eq!(r.bic.status, Commutative);
    assert!(matches!(
        r.bic.certificate,
        Some(Certificate::SmallBlocks { .. } | Certificate::StripToCommutative { .. })
    ));
    let (stripped, removed) = strip_high_degree(&g);
    assert_eq!(removed, vec![4, 5]);
    assert_eq!(stripped, products::copies(&Graph::complete(2), 2).unwrap());
    let chain = strip_high_degree_fixpoint(&g);
    assert!(chain.terminal.n() <= 4);
    let shape = blocks(&degree_pattern(&g)).unwrap().shape();
    assert_eq!(shape, vec![3, 1, 1, 1]);
}

#[test]
fn c4_path_family_is_banica_noncommutative_only() {
    for n in 2..=4 {
        let g = gallery(&format!("c4path{n}")).unwrap();
        assert!(find_edge_free_disjoint_pair(&g).unwrap().is_none());
        let (s, t) = find_disjoint_pair(&g).unwrap().unwrap();
        assert!(verify_pair(&g, &s, &t, false));
        let r = classify(&g);
        assert_eq!(r.ban.status, NonCommutative);
        assert_ne!(r.bic.status, NonCommutative);
        let a = g.vertex("a").unwrap();
        let b = g.vertex("b").unwrap();
        let ab = Permutation::from_cycles(g.n(), &[&[a, b]]).unwrap();
        let mut swap = Vec::new();
        for i in 1..=n {
            swap.push([g.vertex(&i.to_string()).unwrap(), g.vertex(&format!("{i}'")).unwrap()]);
        }
        let cycles: Vec<&[usize]> = swap.iter().map(|c| c.as_slice()).collect();
        let tau = Permutation::from_cycles(g.n(), &cycles).unwrap();
        assert!(verify_pair(&g, &ab, &tau, false));
        assert!(!verify_pair(&g, &ab, &tau, true));
    }
}

#[test]
fn self_complementary_example() {
    let g = gallery("sc").unwrap();
    let r = classify_with_complement(&g);
    assert_eq!(r.bic.status, NonCommutative);
    assert_eq!(r.bic_complement.as_ref().unwrap().status, NonCommutative);
    let witness = r.self_complementary_witness.as_ref().unwrap();
    assert!(is_isomorphism(&g, &g.complement(), witness));
    let sigma = Permutation::from_cycles(8, &[&[4, 5]]).unwrap();
    let tau = Permutation::from_cycles(8, &[&[6, 7]]).unwrap();
    assert!(verify_pair(&g, &sigma, &tau, true));
    let c = g.complement();
    let sigma = Permutation::from_cycles(8, &[&[1, 2]]).unwrap();
    let tau = Permutation::from_cycles(8, &[&[0, 3]]).unwrap();
    assert!(verify_pair(&c, &sigma, &tau, true));
}

#[test]
fn c4_plus_k2_and_complement() {
    let g = gallery("c4k2").unwrap();
    let r = classify_with_complement(&g);
    assert_eq!(r.bic.status, NonCommutative);
    assert_eq!(r.bic_complement.unwrap().status, NonCommutative);
}

#[test]
fn tree_complements_are_commutative() {
    for name in ["t0", "cherry", "tree-center1", "tree-center2", "p5", "star4"] {
        let g = gallery(name).unwrap();
        let r = classify_with_complement(&g);
        assert_eq!(r.bic_complement.unwrap().status, Commutative, "{name}");
    }
}

#[test]
fn star_k13_is_consistent() {
    let r = classify(&Graph::star(3));
    assert_eq!(r.bic.status, r.ban.status);
    assert!(r.bic.status.is_determined());
}

#[test]
fn cherry_line_graph() {
    let r = classify_line_graph(&gallery("cherry").unwrap());
    assert_eq!(r.bic.status, NonCommutative);
    let t0 = gallery("t0").unwrap();
    let r = classify(&t0.line_graph());
    assert_eq!(r.bic.status, NonCommutative);
    assert_eq!(r.bic.rule, Some(RuleId::EdgeFreePair));
}

#[test]
fn product_and_corona_provenance() {
    let k4c = Graph::complete(4).complement();
    for kind in ProductKind::TENSOR_STYLE {
        let g = products::product(kind, &k4c, &Graph::complete(2)).unwrap();
        let r = classify_with_provenance(
            &g,
            Provenance::Product {
                product: kind,
                factors: [k4c.clone(), Graph::complete(2)],
            },
        );
        assert_eq!(r.bic.status, NonCommutative, "{}", kind.name());
        assert!(r.verify(&g));
    }
    let g = products::corona(&Graph::cycle(3), &Graph::path(2));
    let r = classify_with_provenance(
        &g,
        Provenance::Corona {
            base: Graph::cycle(3),
            fiber: Graph::path(2),
        },
    );
    assert_eq!(r.bic.status, NonCommutative);
    assert!(r.verify(&g));
}

#[test]
fn construction_provenance_keeps_status() {
    let input = gallery("fig7").unwrap();
    let g = qsym_core::constructors::corona_k1(&input);
    let r = classify_with_provenance(
        &g,
        Provenance::Construction {
            step: Operation::CoronaK1,
            input: input.clone(),
        },
    );
    assert_eq!(r.bic.status, Commutative);
    assert!(r.verify(&g));
}

#[test]
fn construction_shadows() {
    let (g, trace) = build_free(&[Graph::path(3), Graph::cycle(5)]).unwrap();
    assert_eq!(qsym_core::automorphism::automorphisms(&g).unwrap().order, 20);
    assert_eq!(trace.replay_single(&[Graph::path(3), Graph::cycle(5)]).unwrap(), g);
    let (g, trace) = build_wreath(&Graph::cycle(3), &Graph::path(2)).unwrap();
    assert_eq!(g.n(), 12);
    assert_eq!(qsym_core::automorphism::automorphisms(&g).unwrap().order, 48);
    assert_eq!(trace.replay_single(&[Graph::cycle(3), Graph::path(2)]).unwrap(), g);
}
