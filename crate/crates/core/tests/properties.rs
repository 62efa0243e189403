//! Invariants checked on random graphs.

use proptest::prelude::*;
use regraph::canon::canon;
use regraph::homology::{complex_homology, independence_complex, reduce_complex, reduced_homology_with, HomologyOptions};
use regraph::invariants::induced_matching_number;
use regraph::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use regraph::transforms::*;
use regraph::{Engine, Graph, PrimeField, VertexSet};

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let e: Vec<_> = all.into_iter().zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(1, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn gf2() -> std::sync::Arc<Engine> {
    Engine::shared(PrimeField::gf2())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels((g, perm) in with_perm(10)) {
        prop_assert_eq!(canon(&g), canon(&g.relabel(&perm)));
    }

    #[test]
    fn regularity_ignores_labels((g, perm) in with_perm(9)) {
        prop_assert_eq!(gf2().reg(&g).unwrap(), gf2().reg(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn fold_keeps_homology_and_euler(g in graph_strategy(1, 10)) {
        let c = independence_complex(&g).unwrap();
        let plain = complex_homology(&c, PrimeField::gf2()).unwrap();
        prop_assert_eq!(plain.euler_characteristic(), c.reduced_euler_characteristic());
        let folded = reduced_homology_with(&g, PrimeField::gf2(), HomologyOptions::default()).unwrap();
        prop_assert_eq!(&plain, &folded);
        let r = reduce_complex(&g);
        if !r.contractible {
            prop_assert_eq!(&plain, &complex_homology(&independence_complex(&r.graph).unwrap(), PrimeField::gf2()).unwrap());
        }
    }

    #[test]
    fn pruned_sweep_matches_full_sweep(g in graph_strategy(1, 7)) {
        if g.is_connected() {
            let e = gf2();
            prop_assert_eq!(e.reg(&g).unwrap(), e.regularity_unpruned(&g).unwrap().value);
        }
    }

    #[test]
    fn deleting_a_vertex_lowers_reg_by_at_most_one(g in graph_strategy(2, 9), v in 0usize..9) {
        let v = v % g.n();
        let (r, rv) = (gf2().reg(&g).unwrap(), gf2().reg(&g.delete_vertex(v).unwrap()).unwrap());
        prop_assert!(rv <= r && r <= rv + 1);
        let im = induced_matching_number(&g);
        prop_assert!(im <= r);
    }

    #[test]
    fn regularity_adds_over_components(a in graph_strategy(1, 6), b in graph_strategy(1, 6)) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(gf2().reg(&u).unwrap(), gf2().reg(&a).unwrap() + gf2().reg(&b).unwrap());
    }

    #[test]
    fn text_formats_round_trip(g in graph_strategy(0, 20)) {
        prop_assert_eq!(&from_graph6(&to_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&from_edge_list(&to_edge_list(&g)).unwrap(), &g);
    }

    #[test]
    fn lozin_adds_one(g in graph_strategy(2, 8), x in 0usize..8, split in any::<u64>()) {
        let x = x % g.n();
        let y = VertexSet(g.nbrs(x).bits() & split);
        let spec = LozinSpec { x, y, z: g.nbrs(x) - y };
        let l = lozin_transform(&g, &spec).unwrap();
        prop_assert_eq!(gf2().reg(&l).unwrap(), gf2().reg(&g).unwrap() + 1);
        prop_assert_eq!(induced_matching_number(&l), induced_matching_number(&g) + 1);
    }

    #[test]
    fn t_expansion_round_trip(g in graph_strategy(3, 8), z in 0usize..8, pick in 0usize..16) {
        let z = z % g.n();
        let cands = t_expansion_candidates(&g, z, 16);
        if let Some((p, _)) = cands.get(pick % cands.len().max(1)) {
            let e = t_expand(&g, z, p).unwrap();
            prop_assert_eq!(gf2().reg(&e).unwrap(), gf2().reg(&g).unwrap());
            let n = e.n();
            prop_assert_eq!(canon(&t_contract(&e, n - 2, n - 1).unwrap()), canon(&g));
        }
    }

    #[test]
    fn mate_traces_replay(g in graph_strategy(3, 8)) {
        let budget = MateBudget { depth: 2, states: 40, pairings_per_vertex: 4, target: None, macros: true };
        let r = mate_search(&g, &budget).unwrap();
        let text = r.trace.to_string();
        let parsed: MateTrace = text.parse().unwrap();
        prop_assert_eq!(canon(&parsed.replay(&g).unwrap()), r.best_form.clone());
        prop_assert_eq!(canon(&r.trace.expand_macros(&g).unwrap().replay(&g).unwrap()), r.best_form);
        prop_assert!(r.best_im <= gf2().reg(&g).unwrap());
    }
}

#[test]
fn field_comparison_on_six_vertices() {
    // logged only: regularity over GF(2) and GF(3) on all connected graphs n <= 6
    let gf3 = Engine::shared(PrimeField::gf3());
    let graphs = regraph::enumerate::enumerate_connected_up_to(6).unwrap();
    let differ = graphs.iter().filter(|g| gf2().reg(g).unwrap() != gf3.reg(g).unwrap()).count();
    eprintln!("GF(2) and GF(3) regularity differ on {differ} of {} connected graphs", graphs.len());
}
