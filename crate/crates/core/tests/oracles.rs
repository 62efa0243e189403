//! The library against slow reference implementations.

mod common;

use proptest::prelude::*;
use regraph::catalog::*;
use regraph::enumerate::enumerate_connected_up_to;
use regraph::invariants::{cochordal_cover_number, induced_matching_number};
use regraph::regularity::betti_table;
use regraph::transforms::{subdivide_edge, triple_subdivision};
use regraph::{Engine, Graph, PrimeField, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let e: Vec<_> = all.into_iter().zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

#[test]
fn regularity_matches_reference_on_small_connected_graphs() {
    let gf2 = Engine::shared(PrimeField::gf2());
    for g in enumerate_connected_up_to(5).unwrap() {
        assert_eq!(gf2.reg(&g).unwrap(), common::regularity(&g, 2), "{g:?}");
        assert_eq!(induced_matching_number(&g), common::induced_matching_number(&g), "{g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn regularity_matches_reference(g in graph_strategy(7)) {
        let r2 = common::regularity(&g, 2);
        prop_assert_eq!(Engine::shared(PrimeField::gf2()).reg(&g).unwrap(), r2);
        prop_assert_eq!(Engine::shared(PrimeField::gf3()).reg(&g).unwrap(), common::regularity(&g, 3));
        prop_assert_eq!(induced_matching_number(&g), common::induced_matching_number(&g));
    }

    #[test]
    fn profiles_match_reference(g in graph_strategy(8)) {
        let p = Engine::shared(PrimeField::gf3()).profile(&g, g.vertices()).unwrap();
        let b = common::reduced_betti(&g, g.vertices().bits(), 3);
        for (k, &x) in b.iter().enumerate() {
            prop_assert_eq!(p.get(k as isize - 1), x as u64);
        }
    }
}

#[test]
fn c5_betti_table() {
    let t = betti_table(&cycle(5).unwrap(), PrimeField::gf2()).unwrap();
    assert_eq!((t.get(0, 0), t.get(1, 2), t.get(2, 3), t.get(3, 5)), (1, 5, 5, 1));
    assert_eq!(t.entries.values().sum::<u64>(), 12);
    assert_eq!((t.regularity(), t.projective_dimension()), (2, 3));
}

#[test]
fn betti_tables_agree_with_reference() {
    for g in enumerate_connected_up_to(5).unwrap() {
        let t = betti_table(&g, PrimeField::gf2()).unwrap();
        let mut total = 0u64;
        for mask in 0..1u64 << g.n() {
            total += common::reduced_betti(&g, mask, 2).iter().sum::<usize>() as u64;
        }
        assert_eq!(t.entries.values().sum::<u64>(), total, "{g:?}");
        assert_eq!(t.regularity(), common::regularity(&g, 2));
    }
}

#[test]
fn moebius_kantor_link_homology() {
    let mk = moebius_kantor();
    let link = mk.vertices() - mk.closed_nbrs(0);
    let b = common::reduced_betti(&mk, link.bits(), 2);
    assert_eq!(b, vec![0, 0, 0, 1, 1]);
    let p = Engine::shared(PrimeField::gf2()).profile(&mk, link).unwrap();
    assert_eq!(p.betti(), &[0, 0, 0, 1, 1]);
}

#[test]
fn path_homology_conventions() {
    // Ind(P3) is an edge plus a point; Ind(P4) is a path, hence acyclic
    let p3 = path(3).unwrap();
    assert_eq!(common::reduced_betti(&p3, p3.vertices().bits(), 2), vec![0, 1]);
    let p4 = path(4).unwrap();
    assert!(common::reduced_betti(&p4, p4.vertices().bits(), 2).iter().all(|&b| b == 0));
    let empty = Graph::empty(0).unwrap();
    assert_eq!(common::reduced_betti(&empty, 0, 2), vec![1]);
}

#[test]
fn cochordal_cover_numbers_match_brute_force() {
    let c4 = cycle(4).unwrap();
    let l = triple_subdivision(&c4, 0, 1).unwrap();
    assert_eq!(common::cochord(&c4), 1);
    assert_eq!(common::cochord(&l), 3);
    assert_eq!(cochordal_cover_number(&c4, 1_000_000).value(), Some(1));
    assert_eq!(cochordal_cover_number(&l, 1_000_000).value(), Some(3));
    for g in enumerate_connected_up_to(5).unwrap() {
        assert_eq!(cochordal_cover_number(&g, 1_000_000).value(), Some(common::cochord(&g)), "{g:?}");
    }
    let p = subdivide_edge(&path(3).unwrap(), 0, 1, 2).unwrap();
    assert_eq!(cochordal_cover_number(&p, 1_000_000).value(), Some(common::cochord(&p)));
}

#[test]
fn witness_subsets_realize_the_value() {
    let gf2 = Engine::shared(PrimeField::gf2());
    for g in [morey_villarreal(), cycle(8).unwrap(), r_graph(1).unwrap()] {
        let c = gf2.regularity(&g).unwrap();
        let b = common::reduced_betti(&g, c.witness_subset.bits(), 2);
        assert!(b.len() > c.value && b[c.value] > 0, "{g:?}");
        assert_eq!(c.witness_subset, c.witness_subset & g.vertices());
    }
    let _ = VertexSet::EMPTY;
}
