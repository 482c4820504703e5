//! The acceptance suite: twelve checks over catalog members, truncated
//! balls and a brute-force oracle corpus. Each check reports pass or fail
//! with a one-line detail; nothing here mutates files.

use std::collections::BTreeMap;

use chdigraph::ball::DEFAULT_MARGIN;
use chdigraph::classify::{check_genericity, classify_digraph, Case};
use chdigraph::cuts::{ball_cut_system, build_structure_tree};
use chdigraph::families::finite::{complement_of_matching, complete_bipartite, generic_bipartite, tournament};
use chdigraph::families::TournamentKind;
use chdigraph::iso::{find_isomorphism, graphs_isomorphic, IsoOptions};
use chdigraph::reach::{all_classes, descendant_digraph, neighborhood_graph, reachability_class};
use chdigraph::symmetry::{check_arc_transitivity, check_homogeneity, witness_is_genuine, Mode, Outcome};
use chdigraph::{generate, BallDigraph, Digraph, FamilySpec, Generated, Graph, Vertex};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Checks expected to fail: the neighbourhood graph of an edge of `CP_κ`
/// is `CP_{κ−2}`, while check 8 asks for `CP_{κ−1}`.
pub const EXPECTED_FAILURES: &[usize] = &[8];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

pub const TITLES: [&str; 12] = [
    "tournament homogeneity",
    "reachability digraph of M",
    "reachability digraph of Mprime",
    "line digraph of DL over a cycle",
    "triangle-freeness",
    "arc-transitivity evidence",
    "descendant trees",
    "neighbourhood graph catalog",
    "cuts and structure tree",
    "classifier round trip",
    "oracle agreement",
    "genericity",
];

pub fn run(id: usize) -> CriterionResult {
    let (passed, detail) = match id {
        1 => tournament_homogeneity(),
        2 => reachability_of_m(),
        3 => reachability_of_mprime(),
        4 => line_of_dl(),
        5 => triangle_free(),
        6 => arc_transitivity(),
        7 => descendant_trees(),
        8 => neighbourhood_catalog(),
        9 => cuts_and_tree(),
        10 => classifier_round_trip(),
        11 => oracle_agreement(),
        12 => genericity(),
        _ => (false, format!("no check numbered {id}")),
    };
    CriterionResult {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=12).map(run).collect()
}

fn gen(spec: &str) -> Generated {
    let spec: FamilySpec = spec.parse().expect("suite specs parse");
    generate(&spec).expect("suite specs generate")
}

fn tournament_homogeneity() -> (bool, String) {
    let cases = [
        ("trivial", tournament(TournamentKind::Trivial, None), true),
        ("triangle", tournament(TournamentKind::Triangle, None), true),
        ("TT3", tournament(TournamentKind::Linear, Some(3)), false),
        ("TT4", tournament(TournamentKind::Linear, Some(4)), false),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d, expect) in cases {
        let d = d.expect("catalog tournaments build");
        let v = check_homogeneity(&d, Mode::Homogeneous, d.vertex_count());
        let genuine = v.witness.as_ref().is_none_or(|w| witness_is_genuine(&d, w));
        let good = v.outcome.passed() == expect && genuine && (expect || v.witness.is_some());
        ok &= good;
        parts.push(format!("{name}={}", v.outcome));
    }
    (ok, parts.join(", "))
}

/// Reachability digraph of the root's first out-edge, if it avoids the
/// boundary.
fn root_delta(b: &BallDigraph) -> Option<Digraph> {
    let head = *b.digraph.out_neighbors(b.root).first()?;
    let class = reachability_class(&b.digraph, (b.root, head)).ok()?;
    (!class.vertices.iter().any(|&v| b.is_boundary(v))).then_some(class.delta)
}

/// Every reachability class avoiding the boundary is isomorphic to `target`.
fn interior_classes_match(b: &BallDigraph, target: &Digraph) -> (usize, bool) {
    let mut count = 0;
    let mut all = true;
    for class in all_classes(&b.digraph) {
        if class.iter().any(|&(u, v)| b.is_boundary(u) || b.is_boundary(v)) {
            continue;
        }
        count += 1;
        let (delta, _) = b.digraph.edge_subdigraph(&class);
        all &= matches!(find_isomorphism(&delta, target, IsoOptions::default()), Ok(Some(_)));
    }
    (count, all && count > 0)
}

fn reachability_of_m() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (kappa, m) in [(3, 2), (3, 3), (4, 2)] {
        let g = gen(&format!("M(kappa={kappa},m={m},r=6)"));
        let cp = complement_of_matching(kappa);
        let root_ok = root_delta(&g.ball)
            .is_some_and(|d| matches!(find_isomorphism(&d, &cp, IsoOptions::default()), Ok(Some(_))));
        let (count, all) = interior_classes_match(&g.ball, &cp);
        ok &= root_ok && all;
        parts.push(format!("M({kappa},{m}): {count} interior classes ~ CP_{kappa} {}", root_ok && all));
    }
    (ok, parts.join("; "))
}

fn reachability_of_mprime() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    let k22 = complete_bipartite(2, 2);
    for m in [2, 3] {
        let g = gen(&format!("Mprime(m={m},r=6)"));
        let b = &g.ball;
        let root_ok = root_delta(b)
            .is_some_and(|d| matches!(find_isomorphism(&d, &k22, IsoOptions::default()), Ok(Some(_))));
        let (count, all) = interior_classes_match(b, &k22);
        let degrees = b
            .interior(1)
            .into_iter()
            .all(|v| b.digraph.out_degree(v) == 2 && b.digraph.in_degree(v) == 2);
        ok &= root_ok && all && degrees;
        parts.push(format!(
            "Mprime(m={m}): {count} interior classes ~ K_2,2 {}, interior degrees (2,2) {degrees}",
            root_ok && all
        ));
    }
    (ok, parts.join("; "))
}

/// Isomorphism of two balls that maps boundary to boundary.
pub fn balls_isomorphic(a: &BallDigraph, b: &BallDigraph) -> bool {
    let ca: Vec<usize> = a.boundary_mask().into_iter().map(usize::from).collect();
    let cb: Vec<usize> = b.boundary_mask().into_iter().map(usize::from).collect();
    matches!(
        find_isomorphism(&a.digraph, &b.digraph, IsoOptions::default().with_classes(&ca, &cb)),
        Ok(Some(_))
    )
}

fn line_of_dl() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2, 3] {
        let l = gen(&format!("line_of(DL(C(m={m}),r=7))"));
        let mp = gen(&format!("Mprime(m={m},r={})", l.ball.radius));
        let iso = balls_isomorphic(&l.ball, &mp.ball);
        ok &= iso;
        parts.push(format!(
            "m={m}: radius {} with {} vertices, boundary-respecting isomorphism {iso}",
            l.ball.radius,
            l.ball.digraph.vertex_count()
        ));
    }
    (ok, parts.join("; "))
}

fn triangle_free() -> (bool, String) {
    let specs = [
        "M(kappa=3,m=2,r=6)",
        "M(kappa=3,m=3,r=6)",
        "M(kappa=4,m=2,r=6)",
        "Mprime(m=2,r=6)",
        "Mprime(m=3,r=6)",
        "DL(K(kappa=2,lambda=3),r=6)",
        "DL(CP(kappa=3),r=6)",
        "DL(C(m=2),r=6)",
    ];
    let counts: Vec<usize> = specs.iter().map(|s| gen(s).ball.digraph.triangle_count()).collect();
    let total: usize = counts.iter().sum();
    (total == 0, format!("{} balls, {total} triangles", specs.len()))
}

fn arc_transitivity() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for s in ["M(kappa=3,m=2,r=7)", "DL(K(kappa=2,lambda=3),r=7)"] {
        let g = gen(s);
        let verdicts = check_arc_transitivity(&g.ball, 3, 3).expect("interior is non-empty");
        let all = verdicts.iter().all(|v| v.outcome == Outcome::PassLocal && !v.vacuous);
        ok &= all;
        let arcs: Vec<String> = verdicts.iter().map(|v| format!("{}", v.examined)).collect();
        parts.push(format!("{s}: pass_local for k<=3 {all} (arcs {})", arcs.join("/")));
    }
    (ok, parts.join("; "))
}

fn descendant_trees() -> (bool, String) {
    let g = gen("M(kappa=3,m=2,r=7)");
    let b = &g.ball;
    let d = &b.digraph;
    let inner = b.interior_mask(1);
    let sample: Vec<Vertex> = b.interior(DEFAULT_MARGIN).into_iter().take(20).collect();
    let mut ok = sample.len() == 20;
    for &x in &sample {
        let (_, hosts) = descendant_digraph(d, x).expect("sample vertices exist");
        let kept: Vec<Vertex> = hosts.into_iter().filter(|&v| inner[v]).collect();
        let sub = d.induced_subdigraph(&kept).expect("in range");
        let acyclic = sub.underlying_graph().is_forest();
        let uniform = kept.iter().all(|&v| d.out_degree(v) == 2);
        ok &= acyclic && uniform;
    }
    (ok, format!("{} vertices: descendants inside the ball acyclic with out-degree 2", sample.len()))
}

fn omega_of_first_edge(g: &Graph) -> Graph {
    let (x, y) = g.edges().next().expect("graph has an edge");
    neighborhood_graph(g, x, y).expect("edge exists").graph
}

fn neighbourhood_catalog() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, l) in [(2, 2), (3, 4)] {
        let omega = omega_of_first_edge(&complete_bipartite(k, l).underlying_graph());
        let good = graphs_isomorphic(&omega, &complete_bipartite(k - 1, l - 1).underlying_graph());
        ok &= good;
        parts.push(format!("K_{k},{l} -> K_{},{} {good}", k - 1, l - 1));
    }
    for k in [3, 4] {
        let omega = omega_of_first_edge(&complement_of_matching(k).underlying_graph());
        let asked = graphs_isomorphic(&omega, &complement_of_matching(k - 1).underlying_graph());
        let computed = graphs_isomorphic(&omega, &complement_of_matching(k - 2).underlying_graph());
        ok &= asked;
        parts.push(format!(
            "CP_{k} -> CP_{} {asked} ({} vertices, {} edges, ~ CP_{} {computed})",
            k - 1,
            omega.vertex_count(),
            omega.edge_count(),
            k - 2
        ));
    }
    let cycle = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).expect("cycle");
    let omega = omega_of_first_edge(&cycle);
    let good = omega.vertex_count() == 2 && omega.edge_count() == 0;
    ok &= good;
    parts.push(format!("C_6 -> 2 isolated vertices {good}"));
    (ok, parts.join("; "))
}

fn cuts_and_tree() -> (bool, String) {
    let g = gen("M(kappa=3,m=2,r=6)");
    let b = &g.ball;
    let d = &b.digraph;
    let system = match ball_cut_system(b, 2) {
        Ok(s) => s,
        Err(e) => return (false, format!("no cut system: {e}")),
    };
    let order_two = system.order() == Some(2) && system.cuts().iter().all(|c| c.order() == 2);
    let separators = system.separators();
    let clean = separators.iter().all(|s| {
        s.iter().all(|&x| {
            let reach = d.forward_reachable(x);
            s.iter().all(|&y| x == y || (!d.adjacent(x, y) && !reach.contains(&y)))
        })
    });
    let tree = match build_structure_tree(&system) {
        Ok(t) => t,
        Err(e) => return (false, format!("structure tree failed: {e}")),
    };
    let degree_two = (0..tree.separators.len()).all(|i| tree.separator_degree(i) == 2);
    // blocks cut off by the boundary are truncations, not blocks of the digraph
    let inner_blocks: Vec<&Vec<Vertex>> = tree
        .blocks
        .iter()
        .filter(|blk| !blk.iter().any(|&v| b.is_boundary(v)))
        .collect();
    let mut with_edges = 0;
    let single_class = inner_blocks.iter().all(|blk| {
        let sub = d.induced_subdigraph(blk).expect("in range");
        if sub.edge_count() == 0 {
            return true;
        }
        with_edges += 1;
        let (u, v) = sub.edges().next().expect("has an edge");
        let class = reachability_class(d, (blk[u], blk[v])).expect("edge exists");
        class.vertices == **blk && class.edges.len() == sub.edge_count()
    });
    let ok = order_two && clean && degree_two && single_class && with_edges > 0;
    (
        ok,
        format!(
            "{} cuts of order 2 only {order_two}; {} separators free of edges and directed paths {clean}; \
             tree with {} nodes, separator degree 2 {degree_two}; {with_edges} inner blocks with edges, \
             each one reachability digraph {single_class}",
            system.cuts().len(),
            separators.len(),
            tree.node_count()
        ),
    )
}

fn classifier_round_trip() -> (bool, String) {
    let specs = [
        "T(kappa=2,lambda=3,r=5)",
        "X_lambda_T(T=triangle,lambda=2,r=5)",
        "X_lambda_T(T=trivial,lambda=3,r=5)",
        "DL(K(kappa=2,lambda=3),r=5)",
        "DL(CP(kappa=3),r=6)",
        "DL(C(m=2),r=6)",
        "M(kappa=3,m=2,r=6)",
        "Mprime(m=2,r=6)",
    ];
    let mut ok = true;
    let mut misses = Vec::new();
    for s in specs {
        let g = gen(s);
        let named = classify_digraph(&g.ball).is_ok_and(|l| l.names(&g.spec));
        ok &= named;
        if !named {
            misses.push(s);
        }
    }
    let line = gen("line_of(Mprime(m=2,r=8))");
    let outside = classify_digraph(&line.ball).is_ok_and(|l| l.case == Case::Outside);
    ok &= outside;
    let detail = if misses.is_empty() {
        format!("{} labels recovered; line digraph of Mprime(m=2) outside {outside}", specs.len())
    } else {
        format!("missed {}; line digraph outside {outside}", misses.join(", "))
    };
    (ok, detail)
}

fn genericity() -> (bool, String) {
    let pass = generic_bipartite(16, 2, 1)
        .map(|d| check_genericity(&d.underlying_graph(), 2).is_ok_and(|r| r.passed))
        .unwrap_or(false);
    let k33 = check_genericity(&complete_bipartite(3, 3).underlying_graph(), 1).expect("bipartite");
    let witness_ok = k33
        .witness
        .as_ref()
        .is_some_and(|(w, _)| w.u.is_empty() && w.w.len() == 1);
    (
        pass && !k33.passed && witness_ok,
        format!(
            "16+16 generic at t=2 {pass}; K_3,3 at t=1 {} with witness {:?}",
            if k33.passed { "passes" } else { "fails" },
            k33.witness.map(|(w, _)| (w.u, w.w))
        ),
    )
}

// brute-force oracle

fn code_under(n: usize, edges: &[(Vertex, Vertex)], perm: &[Vertex]) -> u64 {
    edges.iter().fold(0, |acc, &(u, v)| acc | 1 << (perm[u] * n + perm[v]))
}

/// Smallest adjacency code over all relabellings.
pub fn brute_canonical(d: &Digraph) -> u64 {
    let n = d.vertex_count();
    let edges: Vec<_> = d.edges().collect();
    (0..n)
        .permutations(n)
        .map(|p| code_under(n, &edges, &p))
        .min()
        .unwrap_or(0)
}

fn brute_automorphisms(d: &Digraph) -> Vec<Vec<Vertex>> {
    let n = d.vertex_count();
    (0..n)
        .permutations(n)
        .filter(|p| d.edges().all(|(u, v)| d.has_edge(p[u], p[v])))
        .collect()
}

fn induced_connected(g: &Graph, set: &[Vertex]) -> bool {
    g.induced(set).map(|(h, _)| h.is_connected()).unwrap_or(false)
}

/// Every isomorphism between (connected) induced subdigraphs extends to an
/// automorphism, by enumeration of all subset pairs and bijections.
pub fn brute_homogeneous(d: &Digraph, connected: bool) -> bool {
    let n = d.vertex_count();
    let g = d.underlying_graph();
    let auts = brute_automorphisms(d);
    for k in 1..=n {
        let subsets: Vec<Vec<Vertex>> = (0..n)
            .combinations(k)
            .filter(|s| !connected || induced_connected(&g, s))
            .collect();
        for x in &subsets {
            for y in &subsets {
                for image in y.iter().copied().permutations(k) {
                    let is_iso = x.iter().enumerate().all(|(i, &a)| {
                        x.iter()
                            .enumerate()
                            .all(|(j, &b)| d.has_edge(a, b) == d.has_edge(image[i], image[j]))
                    });
                    if is_iso && !auts.iter().any(|p| x.iter().zip(&image).all(|(&a, &b)| p[a] == b)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// One digraph per isomorphism class on `n` vertices.
pub fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<[Vertex; 2]> = (0..n).array_combinations().collect();
    let mut seen = BTreeMap::new();
    for choice in 0..3usize.pow(pairs.len() as u32) {
        let mut c = choice;
        let mut edges = Vec::new();
        for &[u, v] in &pairs {
            match c % 3 {
                1 => edges.push((u, v)),
                2 => edges.push((v, u)),
                _ => {}
            }
            c /= 3;
        }
        let d = Digraph::from_edge_list(n, edges).expect("oriented by construction");
        seen.entry(brute_canonical(&d)).or_insert(d);
    }
    seen.into_values().collect()
}

/// Random oriented graphs on `n` vertices.
pub fn random_digraphs(n: usize, count: usize, seed: u64) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let edges = (0..n).array_combinations().filter_map(|[u, v]| match rng.gen_range(0..3) {
                1 => Some((u, v)),
                2 => Some((v, u)),
                _ => None,
            });
            Digraph::from_edge_list(n, edges.collect::<Vec<_>>()).expect("oriented by construction")
        })
        .collect()
}

fn oracle_agreement() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut corpus: Vec<Digraph> = (1..=5).flat_map(all_digraphs).collect();
    let small = corpus.len();
    corpus.extend(random_digraphs(6, 50, 6));
    let codes: Vec<u64> = corpus.iter().map(brute_canonical).collect();
    let mut disagreements = Vec::new();
    let mut iso_checks = 0;
    // each digraph against a random relabelling of itself
    for (i, d) in corpus.iter().enumerate() {
        let mut perm: Vec<Vertex> = d.vertices().collect();
        perm.shuffle(&mut rng);
        let moved = d.permuted(&perm);
        iso_checks += 1;
        match find_isomorphism(d, &moved, IsoOptions::default()) {
            Ok(Some(m)) if m.preserves(d, &moved) => {}
            _ => disagreements.push(format!("relabelled #{i}")),
        }
    }
    // every pair with equal vertex and edge counts
    for i in 0..corpus.len() {
        for j in i + 1..corpus.len() {
            let (a, b) = (&corpus[i], &corpus[j]);
            if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
                continue;
            }
            iso_checks += 1;
            let found = matches!(find_isomorphism(a, b, IsoOptions::default()), Ok(Some(_)));
            if found != (codes[i] == codes[j]) {
                disagreements.push(format!("pair #{i}/#{j}"));
            }
        }
    }
    let mut homog_checks = 0;
    let mut homogeneous = 0;
    for (i, d) in corpus.iter().enumerate() {
        for (mode, connected) in [(Mode::Homogeneous, false), (Mode::CHomogeneous, true)] {
            homog_checks += 1;
            let fast = check_homogeneity(d, mode, d.vertex_count()).outcome == Outcome::Pass;
            let slow = brute_homogeneous(d, connected);
            homogeneous += usize::from(slow);
            if fast != slow {
                disagreements.push(format!("{mode:?} #{i}"));
            }
        }
    }
    (
        disagreements.is_empty(),
        format!(
            "{small} classes on <=5 vertices + 50 random on 6; {iso_checks} isomorphism and {homog_checks} \
             homogeneity comparisons ({homogeneous} positive), {} disagreements{}",
            disagreements.len(),
            disagreements.first().map(|d| format!(" (first {d})")).unwrap_or_default()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_values() {
        // oriented graphs up to isomorphism on 1..4 vertices
        let counts: Vec<usize> = (1..=4).map(|n| all_digraphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42]);
    }

    #[test]
    fn brute_homogeneity_on_small_tournaments() {
        let triangle = tournament(TournamentKind::Triangle, None).unwrap();
        let tt3 = tournament(TournamentKind::Linear, Some(3)).unwrap();
        assert!(brute_homogeneous(&triangle, false));
        assert!(!brute_homogeneous(&tt3, false));
        assert!(!brute_homogeneous(&tt3, true));
    }

    #[test]
    fn unknown_check() {
        assert!(!run(13).passed);
    }
}
