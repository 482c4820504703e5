//! Generators for the catalog families: exact finite members and
//! radius-truncated balls of the infinite ones.

pub mod amalgam;
pub mod finite;
pub mod scaffold;
pub mod spec;

use thiserror::Error;

use crate::arcs::line_digraph;
use crate::ball::{ball, shell_end_proxies, BallDigraph, DEFAULT_MARGIN};
use crate::digraph::{Digraph, Vertex};

pub use amalgam::Amalgam;
pub use scaffold::{ConstructionTrace, CyclicOrder, Scaffold};
pub use spec::{FamilySpec, TournamentKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cannot parse family: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} needs a radius of at least 1")]
    ZeroRadius(String),
    #[error("{0} does not generate a bipartite digraph oriented from one side to the other")]
    NotBipartite(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Note attached to `DL(T_{κ,λ})`.
pub const TREE_NOTE: &str = "underlying graph is a tree; not Type II";
pub const PALEY_NOTE: &str = "Paley tournament used as a finite stand-in for the generic tournament";
pub const UNDIRECTED_NOTE: &str =
    "undirected family: each K_kappa block carries its transitive orientation";
pub const SLICE_NOTE: &str = "finite slice of an infinite tournament; no homogeneity claim";

/// A generated family member.
#[derive(Debug, Clone)]
pub struct Generated {
    pub spec: FamilySpec,
    pub ball: BallDigraph,
    pub notes: Vec<String>,
    pub trace: Option<ConstructionTrace>,
}

impl Generated {
    pub fn digraph(&self) -> &Digraph {
        &self.ball.digraph
    }

    fn exact(spec: &FamilySpec, d: Digraph) -> Self {
        Generated {
            spec: spec.clone(),
            ball: BallDigraph::exact(d),
            notes: Vec::new(),
            trace: None,
        }
    }

    fn lazy(spec: &FamilySpec, b: BallDigraph) -> Self {
        Generated {
            spec: spec.clone(),
            ball: b,
            notes: Vec::new(),
            trace: None,
        }
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::InvalidParameter(msg()))
    }
}

fn require_radius(spec: &FamilySpec, r: usize) -> Result<(), FamilyError> {
    if r == 0 {
        Err(FamilyError::ZeroRadius(spec.kind_name().to_string()))
    } else {
        Ok(())
    }
}

/// Tree in which every vertex has out-degree `out` and in-degree `inn`.
pub fn arc_tree(out: usize, inn: usize) -> Amalgam {
    let arc = Digraph::from_edge_list(2, [(0, 1)]).expect("single arc");
    Amalgam::new(arc, move |p| {
        let (o, i) = if p == 0 { (out - 1, inn) } else { (out, inn - 1) };
        let mut v = vec![0; o];
        v.extend(std::iter::repeat_n(1, i));
        v
    })
}

/// Semi-regular tree: block is one arc, tails get `κ` arcs, heads `λ`.
pub fn semi_regular_tree(kappa: usize, lambda: usize) -> Amalgam {
    let arc = Digraph::from_edge_list(2, [(0, 1)]).expect("single arc");
    Amalgam::new(arc, move |p| if p == 0 { vec![0; kappa - 1] } else { vec![1; lambda - 1] })
}

/// Every vertex in `lambda` copies of `block`, at the same position.
pub fn block_tree(block: Digraph, lambda: usize) -> Amalgam {
    Amalgam::new(block, move |p| vec![p; lambda - 1])
}

/// `DL(Δ)` for a bipartite `Δ` whose sources are `0..sources`.
pub fn dl_amalgam(delta: Digraph, sources: usize) -> Amalgam {
    Amalgam::new(delta, move |p| if p < sources { vec![sources] } else { vec![0] })
}

/// Relabels a bipartite `d` (every vertex a source or a sink, none
/// isolated) so that the sources come first. Returns the relabelled
/// digraph and the number of sources.
pub fn sources_first(d: &Digraph) -> Option<(Digraph, usize)> {
    let is_source = |v: Vertex| d.in_degree(v) == 0 && d.out_degree(v) > 0;
    let is_sink = |v: Vertex| d.out_degree(v) == 0 && d.in_degree(v) > 0;
    if !d.vertices().all(|v| is_source(v) || is_sink(v)) {
        return None;
    }
    let order: Vec<Vertex> = d
        .vertices()
        .filter(|&v| is_source(v))
        .chain(d.vertices().filter(|&v| is_sink(v)))
        .collect();
    let mut perm = vec![0; d.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    let sources = d.vertices().filter(|&v| is_source(v)).count();
    Some((d.permuted(&perm), sources))
}

/// Generates `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    generate_with_order(spec, CyclicOrder::Generation)
}

/// Generates `spec`, using `order` for the cyclic orders of `M` and `M'`.
pub fn generate_with_order(spec: &FamilySpec, order: CyclicOrder) -> Result<Generated, FamilyError> {
    match spec {
        &FamilySpec::T { kappa, lambda, r } => {
            require(kappa >= 1 && lambda >= 1, || "T needs kappa, lambda >= 1".into())?;
            require_radius(spec, r)?;
            Ok(Generated::lazy(spec, ball(&semi_regular_tree(kappa, lambda), r)))
        }
        &FamilySpec::K { kappa, lambda } => {
            require(kappa >= 1 && lambda >= 1, || "K needs kappa, lambda >= 1".into())?;
            Ok(Generated::exact(spec, finite::complete_bipartite(kappa, lambda)))
        }
        &FamilySpec::CP { kappa } => {
            require(kappa >= 1, || "CP needs kappa >= 1".into())?;
            Ok(Generated::exact(spec, finite::complement_of_matching(kappa)))
        }
        &FamilySpec::C { m } => {
            require(m >= 2, || "C needs m >= 2".into())?;
            Ok(Generated::exact(spec, finite::alternating_cycle(m)))
        }
        &FamilySpec::XUndirected { kappa, lambda, r } => {
            require(kappa >= 2 && lambda >= 2, || "X_undirected needs kappa, lambda >= 2".into())?;
            require_radius(spec, r)?;
            let block = finite::tournament(TournamentKind::Linear, Some(kappa))?;
            let mut g = Generated::lazy(spec, ball(&block_tree(block, lambda), r));
            g.notes.push(UNDIRECTED_NOTE.into());
            Ok(g)
        }
        &FamilySpec::XLambdaT {
            tournament,
            n,
            lambda,
            out,
            r,
        } => {
            require_radius(spec, r)?;
            if tournament == TournamentKind::Trivial {
                // one-vertex blocks: the degree-λ tree, read with `out` arcs
                // leaving each vertex
                require(lambda >= 2, || "X_lambda_T(trivial) needs lambda >= 2".into())?;
                let out = out.unwrap_or(lambda.div_ceil(2));
                require(out >= 1 && out < lambda, || "out must lie in 1..lambda".into())?;
                return Ok(Generated::lazy(spec, ball(&arc_tree(out, lambda - out), r)));
            }
            require(out.is_none(), || "out= only applies to T=trivial".into())?;
            require(lambda >= 2, || "X_lambda_T needs lambda >= 2".into())?;
            let block = finite::tournament(tournament, n)?;
            let mut g = Generated::lazy(spec, ball(&block_tree(block, lambda), r));
            match tournament {
                TournamentKind::PaleyGeneric => g.notes.push(PALEY_NOTE.into()),
                TournamentKind::Linear | TournamentKind::CircularP => g.notes.push(SLICE_NOTE.into()),
                _ => {}
            }
            Ok(g)
        }
        FamilySpec::DL { inner, r } => {
            require_radius(spec, *r)?;
            if let FamilySpec::T { kappa, lambda, .. } = **inner {
                require(kappa >= 1 && lambda >= 1, || "T needs kappa, lambda >= 1".into())?;
                let mut g = Generated::lazy(spec, ball(&arc_tree(kappa, lambda), *r));
                g.notes.push(TREE_NOTE.into());
                return Ok(g);
            }
            if !inner.is_finite() || matches!(**inner, FamilySpec::Tournament { .. }) {
                return Err(FamilyError::NotBipartite(inner.to_string()));
            }
            let (delta, sources) = sources_first(&generate(inner)?.ball.digraph)
                .ok_or_else(|| FamilyError::NotBipartite(inner.to_string()))?;
            Ok(Generated::lazy(spec, ball(&dl_amalgam(delta, sources), *r)))
        }
        &FamilySpec::M { kappa, m, r } => {
            require(kappa >= 3 && m >= 2, || "M needs kappa >= 3 and m >= 2".into())?;
            require(kappa <= 255 && m <= 255, || "M supports degrees up to 255".into())?;
            require_radius(spec, r)?;
            let (b, trace) = scaffold::build(&Scaffold::m(kappa, m, order), r);
            let mut g = Generated::lazy(spec, b);
            g.trace = Some(trace);
            Ok(g)
        }
        &FamilySpec::MPrime { m, r } => {
            require(m >= 2, || "Mprime needs m >= 2".into())?;
            require(m <= 127, || "Mprime supports m up to 127".into())?;
            require_radius(spec, r)?;
            let order = match order {
                CyclicOrder::Seeded(_) => CyclicOrder::Generation,
                o => o,
            };
            let (b, trace) = scaffold::build(&Scaffold::m_prime(m, order), r);
            let mut g = Generated::lazy(spec, b);
            g.trace = Some(trace);
            Ok(g)
        }
        &FamilySpec::Tournament { kind, n } => {
            let mut g = Generated::exact(spec, finite::tournament(kind, n)?);
            match kind {
                TournamentKind::PaleyGeneric => g.notes.push(PALEY_NOTE.into()),
                TournamentKind::Linear | TournamentKind::CircularP => g.notes.push(SLICE_NOTE.into()),
                _ => {}
            }
            Ok(g)
        }
        &FamilySpec::GenericBipartite { n, t, seed } => {
            Ok(Generated::exact(spec, finite::generic_bipartite(n, t, seed)?))
        }
        FamilySpec::LineOf { inner } => {
            let base = generate_with_order(inner, order)?;
            let mut g = Generated::lazy(spec, line_ball(&base.ball));
            g.notes = base.notes;
            Ok(g)
        }
    }
}

/// The line digraph of a ball, as a ball. Edges with an endpoint on the
/// boundary of `b` may miss neighbours, so the result is re-rooted at the
/// first out-edge of the root and truncated at the largest radius for which
/// every vertex strictly inside is complete. Exact inputs give exact output.
pub fn line_ball(b: &BallDigraph) -> BallDigraph {
    let l = line_digraph(&b.digraph);
    let edges: Vec<(Vertex, Vertex)> = b.digraph.edges().collect();
    let root = match b.digraph.out_neighbors(b.root).first() {
        Some(&w) => edges.binary_search(&(b.root, w)).expect("edge present"),
        None => match b.digraph.in_neighbors(b.root).first() {
            Some(&w) => edges.binary_search(&(w, b.root)).expect("edge present"),
            None => return BallDigraph::exact(l),
        },
    };
    if b.is_exact() {
        return BallDigraph::exact_at(l, root);
    }
    let faithful: Vec<bool> = edges
        .iter()
        .map(|&(u, v)| !b.is_boundary(u) && !b.is_boundary(v))
        .collect();
    let dist = l.underlying_graph().distances(&[root]);
    let far = dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
    let radius = (0..=far)
        .find(|&r| l.vertices().any(|v| dist[v] == r && !faithful[v]))
        .unwrap_or(far);
    let keep: Vec<Vertex> = l.vertices().filter(|&v| dist[v] <= radius).collect();
    let sub = l.induced_subdigraph(&keep).expect("vertices in range");
    let new_root = keep.binary_search(&root).expect("root kept");
    let sub_dist = sub.underlying_graph().distances(&[new_root]);
    let boundary: Vec<Vertex> = sub.vertices().filter(|&v| sub_dist[v] == radius).collect();
    let proxies = shell_end_proxies(&sub.underlying_graph(), &sub_dist, radius, &boundary, DEFAULT_MARGIN);
    BallDigraph::from_parts(sub, new_root, radius, boundary, proxies)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Generated {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn semi_regular_tree_ball() {
        let g = gen("T(kappa=2,lambda=3,r=2)");
        assert_eq!(g.ball.digraph.vertex_count(), 7);
        assert_eq!(g.ball.boundary.len(), 4);
        assert_eq!(g.ball.digraph.out_degree(g.ball.root), 2);
    }

    #[test]
    fn triangle_blocks() {
        let g = gen("X_lambda_T(T=triangle,lambda=2,r=2)");
        let d = g.digraph();
        assert_eq!((d.out_degree(0), d.in_degree(0)), (2, 2));
        assert_eq!(d.underlying_graph().triangle_count(), 2 + 4);
    }

    #[test]
    fn dl_degrees() {
        let g = gen("DL(C(m=2),r=2)");
        for v in g.ball.interior(1) {
            assert_eq!((g.digraph().out_degree(v), g.digraph().in_degree(v)), (2, 2));
        }
        let g = gen("DL(K(kappa=2,lambda=3),r=1)");
        assert_eq!((g.digraph().out_degree(0), g.digraph().in_degree(0)), (3, 2));
        let g = gen("DL(T(kappa=2,lambda=3,r=1),r=3)");
        assert!(g.notes.iter().any(|n| n == TREE_NOTE));
        assert!(g.digraph().underlying_graph().is_tree());
    }

    #[test]
    fn rejections() {
        for s in [
            "M(kappa=2,m=2,r=3)",
            "M(kappa=3,m=1,r=3)",
            "M(kappa=3,m=2,r=0)",
            "Mprime(m=1,r=3)",
            "DL(M(kappa=3,m=2,r=2),r=2)",
            "DL(tournament(kind=triangle),r=2)",
            "X_lambda_T(T=triangle,lambda=2,out=1,r=2)",
            "C(m=1)",
        ] {
            assert!(generate(&s.parse().unwrap()).is_err(), "{s}");
        }
    }

    #[test]
    fn line_ball_radius() {
        let g = gen("line_of(DL(C(m=2),r=5))");
        assert!(g.ball.radius >= 3);
        for v in g.ball.interior(1) {
            assert_eq!((g.digraph().out_degree(v), g.digraph().in_degree(v)), (2, 2));
        }
        let exact = gen("line_of(tournament(kind=triangle))");
        assert!(exact.ball.is_exact());
        assert_eq!(exact.digraph().edge_count(), 3);
    }
}
