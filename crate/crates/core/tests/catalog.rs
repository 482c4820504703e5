//! Catalog members through generation, classification, reachability and cuts.

use chdigraph::classify::{classify_digraph, Case};
use chdigraph::cuts::{ball_cut_system, build_structure_tree};
use chdigraph::families::finite::{complement_of_matching, complete_bipartite};
use chdigraph::reach::reachability_digraph;
use chdigraph::{find_isomorphism, generate, FamilySpec, Generated, IsoOptions};

fn gen(spec: &str) -> Generated {
    generate(&spec.parse::<FamilySpec>().unwrap()).unwrap()
}

#[test]
fn classifier_recovers_generated_labels() {
    for spec in [
        "T(kappa=2,lambda=3,r=5)",
        "X_lambda_T(T=triangle,lambda=2,r=5)",
        "DL(K(kappa=2,lambda=3),r=5)",
        "DL(CP(kappa=3),r=6)",
        "DL(C(m=2),r=6)",
        "M(kappa=3,m=2,r=6)",
        "M(kappa=3,m=3,r=6)",
        "M(kappa=4,m=2,r=5)",
        "Mprime(m=2,r=6)",
        "Mprime(m=3,r=6)",
    ] {
        let g = gen(spec);
        let label = classify_digraph(&g.ball).unwrap();
        assert!(label.names(&g.spec), "{spec} labelled {label}");
        assert!(label.case.is_classified(), "{spec}");
    }
}

#[test]
fn finite_and_degenerate_inputs() {
    let label = classify_digraph(&gen("CP(kappa=3)").ball).unwrap();
    assert_eq!(label.case, Case::NotInScope);
    let label = classify_digraph(&gen("line_of(Mprime(m=2,r=8))").ball).unwrap();
    assert_eq!(label.case, Case::Outside);
}

#[test]
fn reachability_digraphs_of_m_and_mprime() {
    for (spec, target) in [
        ("M(kappa=3,m=2,r=5)", complement_of_matching(3)),
        ("M(kappa=4,m=2,r=5)", complement_of_matching(4)),
        ("Mprime(m=2,r=5)", complete_bipartite(2, 2)),
    ] {
        let b = gen(spec).ball;
        let report = reachability_digraph(&b.digraph, &b.boundary_mask(), Some(b.root), 10).unwrap();
        assert!(report.all_isomorphic && report.compared > 0, "{spec}");
        let found = find_isomorphism(&report.delta.delta, &target, IsoOptions::default()).unwrap();
        assert!(found.is_some(), "{spec}");
    }
}

#[test]
fn cut_system_of_m() {
    let b = gen("M(kappa=3,m=2,r=6)").ball;
    let system = ball_cut_system(&b, 2).unwrap();
    assert_eq!(system.order(), Some(2));
    assert!(system.report.is_cut_system());
    let tree = build_structure_tree(&system).unwrap();
    assert_eq!(tree.edges.len() + 1, tree.node_count());
    assert!((0..tree.separators.len()).all(|i| tree.separator_degree(i) == 2));
}

#[test]
fn truncations_are_triangle_free() {
    for spec in ["M(kappa=3,m=2,r=5)", "Mprime(m=3,r=5)", "DL(CP(kappa=4),r=4)"] {
        assert_eq!(gen(spec).ball.digraph.triangle_count(), 0, "{spec}");
    }
    assert!(gen("X_lambda_T(T=triangle,lambda=2,r=3)").ball.digraph.triangle_count() > 0);
}
