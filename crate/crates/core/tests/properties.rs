//! Invariants over random digraphs and random catalog parameters.

use std::collections::BTreeMap;

use chdigraph::iso::automorphisms;
use chdigraph::reach::all_classes;
use chdigraph::symmetry::canonical_code;
use chdigraph::{find_isomorphism, generate, line_digraph, Digraph, FamilySpec, IsoOptions};
use proptest::prelude::*;

/// Oriented graph on `n` vertices: each pair absent, forward or backward.
fn oriented(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(0u8..3, pairs).prop_map(move |choice| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match choice[k] {
                        1 => edges.push((u, v)),
                        2 => edges.push((v, u)),
                        _ => {}
                    }
                    k += 1;
                }
            }
            Digraph::from_edge_list(n, edges).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    oriented(max_n).prop_flat_map(|d| {
        let n = d.vertex_count();
        (Just(d), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn class_sizes(d: &Digraph) -> BTreeMap<usize, usize> {
    let mut sizes = BTreeMap::new();
    for c in all_classes(d) {
        *sizes.entry(c.len()).or_insert(0) += 1;
    }
    sizes
}

proptest! {
    #[test]
    fn relabelled_copies_are_found((d, perm) in with_permutation(9)) {
        let moved = d.permuted(&perm);
        let m = find_isomorphism(&d, &moved, IsoOptions::default()).unwrap();
        prop_assert!(m.is_some_and(|m| m.preserves(&d, &moved)));
    }

    #[test]
    fn canonical_codes_ignore_labels((d, perm) in with_permutation(6)) {
        prop_assert_eq!(canonical_code(&d), canonical_code(&d.permuted(&perm)));
    }

    #[test]
    fn automorphism_counts_are_invariant((d, perm) in with_permutation(7)) {
        let (a, _) = automorphisms(&d, 10_000);
        let (b, _) = automorphisms(&d.permuted(&perm), 10_000);
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(a.iter().all(|m| m.preserves(&d, &d)));
    }

    #[test]
    fn reachability_classes_partition_edges((d, perm) in with_permutation(10)) {
        let classes = all_classes(&d);
        let mut edges: Vec<_> = classes.iter().flatten().copied().collect();
        edges.sort_unstable();
        prop_assert_eq!(edges, d.edges().collect::<Vec<_>>());
        prop_assert_eq!(class_sizes(&d), class_sizes(&d.permuted(&perm)));
    }

    #[test]
    fn line_digraph_counts(d in oriented(9)) {
        let l = line_digraph(&d);
        prop_assert_eq!(l.vertex_count(), d.edge_count());
        let expected: usize = d.vertices().map(|v| d.in_degree(v) * d.out_degree(v)).sum();
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn m_balls_are_regular_inside(kappa in 3usize..5, m in 2usize..4, r in 2usize..4) {
        let spec = FamilySpec::M { kappa, m, r };
        prop_assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec.clone());
        let b = generate(&spec).unwrap().ball;
        prop_assert_eq!(b.digraph.triangle_count(), 0);
        for v in b.interior(1) {
            prop_assert_eq!(b.digraph.out_degree(v), kappa - 1);
            prop_assert_eq!(b.digraph.in_degree(v), kappa - 1);
        }
        prop_assert!(b.digraph.vertices().all(|v| b.distance(v) <= r));
        prop_assert!(b.boundary.iter().all(|&v| b.distance(v) == r));
    }

    #[test]
    fn trees_generate_trees(kappa in 1usize..4, lambda in 1usize..4, r in 1usize..5) {
        let b = generate(&FamilySpec::T { kappa, lambda, r }).unwrap().ball;
        prop_assert!(b.digraph.underlying_graph().is_tree());
    }
}
