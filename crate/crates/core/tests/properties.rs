use proptest::prelude::*;

use turan::canon::canonical_form;
use turan::detect::{brute_force_contains, contains_double_star, find_double_star, DoubleStar};
use turan::formulas::ex_dispatch;
use turan::io::{from_dot, from_edge_list, from_graph6, to_dot, to_edge_list, to_graph6};
use turan::oracle::{max_edges_free, SearchConfig};
use turan::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut b = Graph::builder(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        b.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            b.build()
        })
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn pattern() -> impl Strategy<Value = DoubleStar> {
    (1usize..=4, 1usize..=5).prop_map(|(a, b)| DoubleStar::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn encodings_round_trip(g in graph(40)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g), Some(g.n())).unwrap(), g.clone());
        prop_assert_eq!(from_dot(&to_dot(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_with_perm(12)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(canonical_form(&g).unwrap().edge_count(), g.edge_count());
    }

    #[test]
    fn union_is_associative(x in graph(6), y in graph(6), z in graph(6)) {
        let left = x.disjoint_union(&y).disjoint_union(&z);
        let right = x.disjoint_union(&y.disjoint_union(&z));
        prop_assert_eq!(left.n(), x.n() + y.n() + z.n());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn detector_matches_brute_force(g in graph(11), p in pattern()) {
        let found = find_double_star(&g, p);
        prop_assert_eq!(found.is_some(), brute_force_contains(&g, p).unwrap());
        if let Some(w) = found {
            prop_assert!(w.is_valid_in(&g, p));
        }
    }

    #[test]
    fn detection_is_symmetric(g in graph(14), p in pattern()) {
        prop_assert_eq!(contains_double_star(&g, p), contains_double_star(&g, p.swapped()));
    }

    #[test]
    fn containment_is_monotone(g in graph(12), p in pattern(), pick in any::<prop::sample::Index>()) {
        let missing: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        if !missing.is_empty() && contains_double_star(&g, p) {
            let (u, v) = missing[pick.index(missing.len())];
            prop_assert!(contains_double_star(&g.with_edge(u, v).unwrap(), p));
        }
    }

    #[test]
    fn low_degree_graphs_are_free(g in graph(14), p in pattern()) {
        // both centres need degree above min(a,b), one above max(a,b)
        if g.max_degree().unwrap_or(0) <= p.a().max(p.b()) {
            prop_assert!(!contains_double_star(&g, p));
        }
    }
}

#[test]
fn formula_is_nondecreasing_in_n() {
    for a in 1..=6u64 {
        for b in a + 1..=40 {
            let mut last = None;
            for n in 1..=200 {
                if let Some(f) = ex_dispatch(n, a, b) {
                    if let Some((m, v)) = last {
                        assert!(f.value >= v, "({n},{a},{b}) drops below n={m}");
                    }
                    last = Some((n, f.value));
                }
            }
        }
    }
}

#[test]
fn degree_cap_does_not_change_the_value() {
    for n in 1..=8 {
        for a in 1..=4 {
            for b in a..=4 {
                let capped = max_edges_free(n, a, b, &SearchConfig { warm_start: false, ..Default::default() }).unwrap();
                let uncapped = max_edges_free(
                    n,
                    a,
                    b,
                    &SearchConfig { warm_start: false, degree_cap_enabled: false, ..Default::default() },
                )
                .unwrap();
                assert_eq!(capped.value, uncapped.value, "({n},{a},{b})");
            }
        }
    }
}

#[test]
fn warm_start_and_threads_agree_with_cold_search() {
    for (n, a, b) in [(9, 3, 4), (10, 2, 3), (10, 1, 5), (9, 2, 2)] {
        let cold = max_edges_free(n, a, b, &SearchConfig { warm_start: false, ..Default::default() }).unwrap();
        let warm = max_edges_free(n, a, b, &SearchConfig::default()).unwrap();
        let par = max_edges_free(n, a, b, &SearchConfig { warm_start: false, threads: 3, ..Default::default() }).unwrap();
        assert_eq!(cold.value, warm.value);
        assert_eq!((cold.value, &cold.witnesses), (par.value, &par.witnesses));
        for r in [&cold, &warm, &par] {
            let g = r.witnesses[0].to_graph();
            assert_eq!(g.edge_count(), r.value);
            assert!(!contains_double_star(&g, DoubleStar::new(a, b).unwrap()));
        }
    }
}
