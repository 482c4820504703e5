//! Matching digraphs and bipartite graphs against the catalog of
//! connected-homogeneous families.
//!
//! Structural tests (trees, triangles, connectivity, degree patterns) pick a
//! candidate family; ball inputs are then confirmed by regenerating the
//! candidate at the same radius and comparing interiors up to rooted
//! isomorphism.

use std::fmt;

use thiserror::Error;

use crate::ball::{ball, BallDigraph};
use crate::digraph::{Digraph, Graph, Vertex};
use crate::families::finite::{find_unwitnessed, Unwitnessed};
use crate::families::{dl_amalgam, generate, FamilySpec, TournamentKind};
use crate::iso::{find_isomorphism, IsoOptions};
use crate::reach::reachability_class;

/// Largest `m` tried when fitting `M(κ, m)` and `M'(2m)`.
pub const MAX_FITTED_M: usize = 8;
/// Work budget for the genericity scan used by the classifier.
const GENERICITY_BUDGET: f64 = 2e6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("input is not connected")]
    Disconnected,
    #[error("input is empty")]
    Empty,
}

/// How strongly a label is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    /// The input is a finite graph that matches the family exactly.
    Exact,
    /// Matched on the interior of a truncation.
    LocalEvidence,
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Confidence::Exact => "exact",
            Confidence::LocalEvidence => "local-evidence",
        })
    }
}

/// Which branch of the catalog a label belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Tree with constant in- and out-degrees.
    Tree,
    /// Tree-like amalgam of homogeneous tournaments.
    TournamentBlocks,
    DlCp,
    DlCycle,
    DlComplete,
    DlGeneric,
    /// Connectivity two with `CP_κ` reachability digraphs.
    M,
    /// Connectivity two with `K_{2,2}` reachability digraphs.
    MPrime,
    BipartiteTree,
    BipartiteCycle,
    BipartiteComplete,
    BipartiteCp,
    BipartiteGeneric,
    Outside,
    NotInScope,
    InsufficientRadius,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::Tree => "tree",
            Case::TournamentBlocks => "tournament-blocks",
            Case::DlCp => "dl-cp",
            Case::DlCycle => "dl-cycle",
            Case::DlComplete => "dl-complete",
            Case::DlGeneric => "dl-generic",
            Case::M => "M",
            Case::MPrime => "Mprime",
            Case::BipartiteTree => "semi-regular-tree",
            Case::BipartiteCycle => "even-cycle",
            Case::BipartiteComplete => "complete-bipartite",
            Case::BipartiteCp => "complement-of-matching",
            Case::BipartiteGeneric => "generic-bipartite",
            Case::Outside => "outside-classification",
            Case::NotInScope => "not-in-scope",
            Case::InsufficientRadius => "insufficient-radius",
        }
    }

    /// `TypeI`, `TypeII`, `Bipartite` or `Unclassified`.
    pub fn type_name(self) -> &'static str {
        match self {
            Case::Tree | Case::TournamentBlocks => "TypeI",
            Case::DlCp | Case::DlCycle | Case::DlComplete | Case::DlGeneric | Case::M | Case::MPrime => "TypeII",
            Case::BipartiteTree
            | Case::BipartiteCycle
            | Case::BipartiteComplete
            | Case::BipartiteCp
            | Case::BipartiteGeneric => "Bipartite",
            Case::Outside | Case::NotInScope | Case::InsufficientRadius => "Unclassified",
        }
    }

    pub fn is_classified(self) -> bool {
        self.type_name() != "Unclassified"
    }
}

/// A catalog verdict with fitted parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogLabel {
    pub case: Case,
    /// Canonical family text without radius, e.g. `M(kappa=3,m=2)`.
    pub family: Option<String>,
    /// Other names of the same family.
    pub aliases: Vec<String>,
    pub confidence: Confidence,
    /// Genericity level reached, for generic labels.
    pub genericity: Option<usize>,
    pub reason: Option<String>,
}

impl CatalogLabel {
    fn new(case: Case, family: impl Into<String>, confidence: Confidence) -> Self {
        CatalogLabel {
            case,
            family: Some(family.into()),
            aliases: Vec::new(),
            confidence,
            genericity: None,
            reason: None,
        }
    }

    fn unclassified(case: Case, reason: impl Into<String>) -> Self {
        CatalogLabel {
            case,
            family: None,
            aliases: Vec::new(),
            confidence: Confidence::LocalEvidence,
            genericity: None,
            reason: Some(reason.into()),
        }
    }

    fn with_aliases(mut self, aliases: Vec<String>) -> Self {
        self.aliases = aliases;
        self
    }

    /// Whether the label names `spec` (radius ignored), directly or by alias.
    pub fn names(&self, spec: &FamilySpec) -> bool {
        // generic members are named by the level reached, not by seed
        match spec {
            FamilySpec::GenericBipartite { t, .. } => {
                return self.case == Case::BipartiteGeneric && self.genericity.is_some_and(|g| g >= *t);
            }
            FamilySpec::DL { inner, .. } => {
                if let FamilySpec::GenericBipartite { t, .. } = **inner {
                    return self.case == Case::DlGeneric && self.genericity.is_some_and(|g| g >= t);
                }
            }
            _ => {}
        }
        let spec = match *spec {
            // the trivial-block tree defaults to ⌈λ/2⌉ outgoing arcs
            FamilySpec::XLambdaT {
                tournament: TournamentKind::Trivial,
                n,
                lambda,
                out: None,
                r,
            } => FamilySpec::XLambdaT {
                tournament: TournamentKind::Trivial,
                n,
                lambda,
                out: Some(lambda.div_ceil(2)),
                r,
            },
            ref other => other.clone(),
        };
        let text = without_radius(&spec.to_string());
        self.family.as_deref() == Some(&text) || self.aliases.contains(&text)
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} case={}", self.case.type_name(), self.case.name())?;
        if let Some(family) = &self.family {
            write!(f, " {family}")?;
        }
        if let Some(t) = self.genericity {
            write!(f, " t={t}")?;
        }
        write!(f, " confidence={}", self.confidence)?;
        if !self.aliases.is_empty() {
            write!(f, " aliases={}", self.aliases.join(";"))?;
        }
        if let Some(reason) = &self.reason {
            write!(f, " reason=\"{reason}\"")?;
        }
        Ok(())
    }
}

/// Drops every `,r=<n>` argument from a canonical family string.
pub fn without_radius(spec: &str) -> String {
    let mut out = String::with_capacity(spec.len());
    let mut rest = spec;
    while let Some(i) = rest.find(",r=") {
        out.push_str(&rest[..i]);
        let tail = &rest[i + 3..];
        let digits = tail.bytes().take_while(u8::is_ascii_digit).count();
        rest = &tail[digits..];
    }
    out.push_str(rest);
    out
}

/// Outcome of a genericity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub t: usize,
    pub passed: bool,
    /// The first unmet demand and whether its sets lie in the first side.
    pub witness: Option<(Unwitnessed, bool)>,
}

/// Scans every disjoint `(U, W)` with `|U| + |W| ≤ t` inside each side and
/// asks for a vertex of the other side adjacent to all of `U` and none of `W`.
pub fn check_genericity(g: &Graph, t: usize) -> Result<GenericityReport, ClassifyError> {
    let (x, y) = g.bipartition().ok_or(ClassifyError::NotBipartite)?;
    Ok(genericity_on_sides(g, &x, &y, t))
}

fn genericity_on_sides(g: &Graph, x: &[Vertex], y: &[Vertex], t: usize) -> GenericityReport {
    let adjacent = |v: Vertex, u: Vertex| g.has_edge(v, u);
    let witness = find_unwitnessed(&adjacent, x, y, t)
        .map(|w| (w, true))
        .or_else(|| find_unwitnessed(&adjacent, y, x, t).map(|w| (w, false)));
    GenericityReport {
        t,
        passed: witness.is_none(),
        witness,
    }
}

/// Largest `t ≤ 4` whose scan fits the budget.
fn affordable_t(side: usize, other: usize) -> usize {
    let mut cost = 0.0;
    let mut choose = 1.0;
    let mut best = 0;
    for k in 1..=4usize.min(side) {
        choose *= (side + 1 - k) as f64 / k as f64;
        cost += choose * 2f64.powi(k as i32) * other as f64;
        if cost > GENERICITY_BUDGET {
            break;
        }
        best = k;
    }
    best
}

/// Classifies a connected bipartite graph: semi-regular tree, even cycle,
/// complete bipartite, complement of a perfect matching, or generic.
/// `sides` fixes which side comes first in the fitted parameters.
pub fn classify_reachability_graph(
    g: &Graph,
    sides: Option<(&[Vertex], &[Vertex])>,
) -> Result<CatalogLabel, ClassifyError> {
    if g.vertex_count() == 0 {
        return Err(ClassifyError::Empty);
    }
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let (x, y) = match sides {
        Some((x, y)) => (x.to_vec(), y.to_vec()),
        None => g.bipartition().ok_or(ClassifyError::NotBipartite)?,
    };
    let is_bipartition = x.len() + y.len() == g.vertex_count()
        && g.edges().all(|(u, v)| x.contains(&u) != x.contains(&v));
    if !is_bipartition {
        return Err(ClassifyError::NotBipartite);
    }
    let max_degree = |side: &[Vertex]| side.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
    if g.is_tree() {
        let (k, l) = (max_degree(&x), max_degree(&y));
        return Ok(CatalogLabel::new(
            Case::BipartiteTree,
            format!("T(kappa={k},lambda={l})"),
            Confidence::LocalEvidence,
        ));
    }
    if g.is_cycle() {
        let m = g.vertex_count() / 2;
        let mut aliases = Vec::new();
        if m == 2 {
            aliases.push("K(kappa=2,lambda=2)".to_string());
        }
        if m == 3 {
            aliases.push("CP(kappa=3)".to_string());
        }
        return Ok(CatalogLabel::new(Case::BipartiteCycle, format!("C(m={m})"), Confidence::Exact).with_aliases(aliases));
    }
    let (k, l) = (x.len(), y.len());
    if g.edge_count() == k * l {
        return Ok(CatalogLabel::new(
            Case::BipartiteComplete,
            format!("K(kappa={k},lambda={l})"),
            Confidence::Exact,
        ));
    }
    let misses_one = |side: &[Vertex], other: usize| side.iter().all(|&v| g.degree(v) + 1 == other);
    if k == l && misses_one(&x, l) && misses_one(&y, k) {
        return Ok(CatalogLabel::new(Case::BipartiteCp, format!("CP(kappa={k})"), Confidence::Exact));
    }
    let t = affordable_t(k.max(l), k.max(l));
    if t >= 2 {
        let report = genericity_on_sides(g, &x, &y, t);
        let reached = if report.passed {
            Some(t)
        } else {
            (1..t).rev().find(|&s| genericity_on_sides(g, &x, &y, s).passed)
        };
        if let Some(level) = reached.filter(|&s| s >= 2) {
            let mut label = CatalogLabel::new(
                Case::BipartiteGeneric,
                format!("generic_bipartite(t={level})"),
                Confidence::LocalEvidence,
            );
            label.genericity = Some(level);
            return Ok(label);
        }
    }
    Ok(CatalogLabel::unclassified(
        Case::Outside,
        "bipartite graph matches no catalog entry",
    ))
}

/// Components of `G − v` that meet `N(v)`.
pub fn cut_components_at(g: &Graph, v: Vertex) -> usize {
    let mut removed = vec![false; g.vertex_count()];
    removed[v] = true;
    let neighbors = g.neighbors(v);
    g.components_without(&removed)
        .iter()
        .filter(|c| c.iter().any(|w| neighbors.binary_search(w).is_ok()))
        .count()
}

/// Whether the vertices within `radius − margin` of the roots of `a` and
/// `b` induce isomorphic digraphs by an isomorphism that keeps distances to
/// the root.
pub fn interiors_isomorphic(a: &BallDigraph, b: &BallDigraph, margin: usize) -> bool {
    if a.radius != b.radius {
        return false;
    }
    let pick = |x: &BallDigraph| {
        let keep = x.interior(margin);
        let classes: Vec<usize> = keep.iter().map(|&v| x.distance(v)).collect();
        let sub = x.digraph.induced_subdigraph(&keep).expect("interior vertices are in range");
        (sub, classes)
    };
    let (da, ca) = pick(a);
    let (db, cb) = pick(b);
    if da.vertex_count() != db.vertex_count() || da.edge_count() != db.edge_count() {
        return false;
    }
    matches!(
        find_isomorphism(&da, &db, IsoOptions::default().with_classes(&ca, &cb)),
        Ok(Some(_))
    )
}

/// Classifies a connected digraph, given as a ball or an exact digraph.
pub fn classify_digraph(b: &BallDigraph) -> Result<CatalogLabel, ClassifyError> {
    let d = &b.digraph;
    if d.vertex_count() == 0 {
        return Err(ClassifyError::Empty);
    }
    let g = d.underlying_graph();
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    if b.end_proxies.len() < 2 {
        return Ok(CatalogLabel::unclassified(
            Case::NotInScope,
            "at most one end at this radius",
        ));
    }
    if g.is_tree() {
        return Ok(classify_tree(b));
    }
    if g.triangle_count() > 0 {
        return Ok(classify_tournament_blocks(b, &g));
    }
    Ok(classify_triangle_free(b, &g))
}

fn classify_tree(b: &BallDigraph) -> CatalogLabel {
    let d = &b.digraph;
    let inner = b.interior(1);
    let profile: std::collections::BTreeSet<(usize, usize)> =
        inner.iter().map(|&v| (d.out_degree(v), d.in_degree(v))).collect();
    let degrees: Vec<(usize, usize)> = profile.into_iter().collect();
    match degrees.as_slice() {
        [(o, 0), (0, i)] | [(0, i), (o, 0)] => CatalogLabel::new(
            Case::Tree,
            format!("T(kappa={o},lambda={i})"),
            Confidence::LocalEvidence,
        ),
        [(o, i)] if *o > 0 && *i > 0 => CatalogLabel::new(
            Case::Tree,
            format!("X_lambda_T(T=trivial,lambda={},out={o})", o + i),
            Confidence::LocalEvidence,
        )
        .with_aliases(vec![format!("DL(T(kappa={o},lambda={i}))")]),
        _ => CatalogLabel::unclassified(Case::Outside, "tree without constant in- and out-degrees"),
    }
}

fn classify_tournament_blocks(b: &BallDigraph, g: &Graph) -> CatalogLabel {
    let d = &b.digraph;
    let root = b.root;
    let neighbors = g.neighbors(root).to_vec();
    let (ng, host) = g.induced(&neighbors).expect("neighbours are in range");
    let parts = ng.components();
    // cut-vertex amalgam: the neighbourhood splits into cliques, one per block
    let cliques = parts.iter().all(|p| p.iter().all(|&u| p.iter().all(|&w| u == w || ng.has_edge(u, w))));
    if parts.len() < 2 || !cliques || cut_components_at(g, root) != parts.len() {
        return CatalogLabel::unclassified(Case::Outside, "triangles present but not in cut-vertex-separated blocks");
    }
    let mut block: Vec<Vertex> = parts[0].iter().map(|&i| host[i]).collect();
    block.push(root);
    block.sort_unstable();
    let t = d.induced_subdigraph(&block).expect("block vertices are in range");
    let lambda = parts.len();
    let triangle = Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).expect("directed triangle");
    if t.vertex_count() != 3 || !crate::iso::are_isomorphic(&t, &triangle) {
        return CatalogLabel::unclassified(
            Case::Outside,
            format!("blocks are {}-vertex tournaments other than the directed triangle", t.vertex_count()),
        );
    }
    let spec = FamilySpec::XLambdaT {
        tournament: TournamentKind::Triangle,
        n: None,
        lambda,
        out: None,
        r: b.radius,
    };
    confirm(b, &spec, Case::TournamentBlocks)
}

fn confirm(b: &BallDigraph, spec: &FamilySpec, case: Case) -> CatalogLabel {
    match generate(spec) {
        Ok(candidate) if interiors_isomorphic(b, &candidate.ball, 1) => {
            CatalogLabel::new(case, without_radius(&spec.to_string()), Confidence::LocalEvidence)
        }
        _ => CatalogLabel::unclassified(
            Case::Outside,
            format!("regenerated {} differs on the interior", without_radius(&spec.to_string())),
        ),
    }
}

fn classify_triangle_free(b: &BallDigraph, g: &Graph) -> CatalogLabel {
    let d = &b.digraph;
    let Some(&head) = d.out_neighbors(b.root).first() else {
        return CatalogLabel::unclassified(Case::Outside, "root has no out-neighbour");
    };
    let class = reachability_class(d, (b.root, head)).expect("root edge exists");
    if class.vertices.iter().any(|&v| b.is_boundary(v)) {
        return CatalogLabel::unclassified(
            Case::InsufficientRadius,
            "reachability digraph of the root reaches the boundary",
        );
    }
    let Some((delta, sources)) = root_first(&class.delta, &class.vertices, b.root) else {
        return CatalogLabel::unclassified(Case::Outside, "reachability digraph is not bipartite source-to-sink");
    };
    let dg = delta.underlying_graph();
    let x: Vec<Vertex> = (0..sources).collect();
    let y: Vec<Vertex> = (sources..delta.vertex_count()).collect();
    let Ok(inner) = classify_reachability_graph(&dg, Some((&x, &y))) else {
        return CatalogLabel::unclassified(Case::Outside, "reachability digraph is not bipartite");
    };
    if !inner.case.is_classified() {
        return CatalogLabel::unclassified(Case::Outside, "reachability digraph is outside the bipartite catalog");
    }
    let inner_name = inner.family.clone().unwrap_or_default();
    if cut_components_at(g, b.root) >= 2 {
        let case = match inner.case {
            Case::BipartiteCp => Case::DlCp,
            Case::BipartiteCycle => Case::DlCycle,
            Case::BipartiteComplete => Case::DlComplete,
            Case::BipartiteGeneric => Case::DlGeneric,
            _ => return CatalogLabel::unclassified(Case::Outside, "cut vertices with a tree reachability digraph"),
        };
        // the sink that glues to the next copy matters unless Δ is edge-transitive
        let matched = (sources..delta.vertex_count()).any(|sink| {
            let mut perm: Vec<Vertex> = delta.vertices().collect();
            perm.swap(sources, sink);
            let glued = delta.permuted(&perm);
            interiors_isomorphic(b, &ball(&dl_amalgam(glued, sources), b.radius), 1)
        });
        if !matched {
            return CatalogLabel::unclassified(Case::Outside, format!("DL({inner_name}) differs on the interior"));
        }
        let mut label = CatalogLabel::new(case, format!("DL({inner_name})"), Confidence::LocalEvidence)
            .with_aliases(inner.aliases.iter().map(|a| format!("DL({a})")).collect());
        label.genericity = inner.genericity;
        return label;
    }
    // connectivity at least two: fit M(κ, m) or M'(2m)
    let kappa = match (inner.case, inner_name.as_str()) {
        (Case::BipartiteCp, _) => Some(sources),
        (Case::BipartiteCycle, "C(m=3)") => Some(3),
        _ => None,
    };
    let is_k22 = inner_name == "C(m=2)";
    let candidates: Vec<(FamilySpec, Case)> = (2..=MAX_FITTED_M)
        .filter_map(|m| match (kappa, is_k22) {
            (Some(kappa), _) if kappa >= 3 => Some((FamilySpec::M { kappa, m, r: b.radius }, Case::M)),
            (_, true) => Some((FamilySpec::MPrime { m, r: b.radius }, Case::MPrime)),
            _ => None,
        })
        .collect();
    if candidates.is_empty() {
        return CatalogLabel::unclassified(
            Case::Outside,
            format!("no cut vertex and reachability digraph {inner_name} fits no connectivity-two family"),
        );
    }
    for (spec, case) in candidates {
        let Ok(candidate) = generate(&spec) else { continue };
        if interiors_isomorphic(b, &candidate.ball, 1) {
            return CatalogLabel::new(case, without_radius(&spec.to_string()), Confidence::LocalEvidence);
        }
    }
    CatalogLabel::unclassified(
        Case::Outside,
        format!("no cut vertex, reachability digraph {inner_name}, and no M or Mprime member with m <= {MAX_FITTED_M} matches"),
    )
}

/// Relabels a source-to-sink bipartite `delta` so that the vertex behind
/// `root` comes first, then the other sources, then the sinks. Returns the
/// relabelled digraph and its number of sources.
fn root_first(delta: &Digraph, hosts: &[Vertex], root: Vertex) -> Option<(Digraph, usize)> {
    let is_source = |v: Vertex| delta.in_degree(v) == 0 && delta.out_degree(v) > 0;
    let is_sink = |v: Vertex| delta.out_degree(v) == 0 && delta.in_degree(v) > 0;
    if !delta.vertices().all(|v| is_source(v) || is_sink(v)) {
        return None;
    }
    let start = hosts.iter().position(|&h| h == root)?;
    let order: Vec<Vertex> = std::iter::once(start)
        .chain(delta.vertices().filter(|&v| v != start && is_source(v)))
        .chain(delta.vertices().filter(|&v| is_sink(v)))
        .collect();
    let mut perm = vec![0; delta.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    let sources = delta.vertices().filter(|&v| is_source(v)).count();
    Some((delta.permuted(&perm), sources))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::finite::{alternating_cycle, complement_of_matching, complete_bipartite, generic_bipartite};

    #[test]
    fn radius_is_dropped() {
        assert_eq!(without_radius("DL(K(kappa=2,lambda=3),r=5)"), "DL(K(kappa=2,lambda=3))");
        assert_eq!(without_radius("M(kappa=3,m=2,r=12)"), "M(kappa=3,m=2)");
        assert_eq!(without_radius("CP(kappa=3)"), "CP(kappa=3)");
    }

    #[test]
    fn bipartite_catalog() {
        let l = classify_reachability_graph(&complete_bipartite(3, 5).underlying_graph(), None).unwrap();
        assert_eq!((l.case, l.family.as_deref()), (Case::BipartiteComplete, Some("K(kappa=3,lambda=5)")));
        let l = classify_reachability_graph(&complement_of_matching(4).underlying_graph(), None).unwrap();
        assert_eq!((l.case, l.family.as_deref()), (Case::BipartiteCp, Some("CP(kappa=4)")));
        assert_eq!(l.confidence, Confidence::Exact);
        let l = classify_reachability_graph(&alternating_cycle(3).underlying_graph(), None).unwrap();
        assert_eq!((l.case, l.family.as_deref()), (Case::BipartiteCycle, Some("C(m=3)")));
        assert!(l.names(&FamilySpec::CP { kappa: 3 }));
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(classify_reachability_graph(&triangle, None), Err(ClassifyError::NotBipartite));
    }

    #[test]
    fn genericity_scan() {
        let d = generic_bipartite(16, 2, 7).unwrap();
        assert!(check_genericity(&d.underlying_graph(), 2).unwrap().passed);
        let k33 = check_genericity(&complete_bipartite(3, 3).underlying_graph(), 1).unwrap();
        let (w, _) = k33.witness.unwrap();
        assert!(w.u.is_empty() && w.w.len() == 1);
        let cp3 = complement_of_matching(3).underlying_graph();
        assert!(check_genericity(&cp3, 1).unwrap().passed);
        assert!(!check_genericity(&cp3, 2).unwrap().passed);
    }

    #[test]
    fn finite_inputs_are_out_of_scope() {
        let l = classify_digraph(&BallDigraph::exact(complete_bipartite(2, 3))).unwrap();
        assert_eq!(l.case, Case::NotInScope);
    }

    #[test]
    fn label_line() {
        let l = CatalogLabel::new(Case::M, "M(kappa=3,m=2)", Confidence::LocalEvidence);
        assert_eq!(l.to_string(), "TypeII case=M M(kappa=3,m=2) confidence=local-evidence");
    }
}
