//! Vertex separations, cut systems, separators, blocks and the structure
//! tree, on finite graphs where designated vertex sets stand in for ends.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::ball::{BallDigraph, DEFAULT_MARGIN};
use crate::digraph::{Graph, Vertex};
use crate::iso::graph_automorphisms;

/// Largest graph on which automorphism-based checks run.
pub const AUTOMORPHISM_LIMIT: usize = 60;
const AUTOMORPHISM_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("side is empty")]
    EmptySide,
    #[error("complement of the side is empty")]
    EmptyComplement,
    #[error("sides do not cover every vertex")]
    NotCovering,
    #[error("edge {0}-{1} joins the two wings")]
    CrossingEdge(Vertex, Vertex),
    #[error("separations belong to different graphs")]
    HostMismatch,
    #[error("no end proxies")]
    NoEndProxies,
    #[error("cuts {0} and {1} are not nested")]
    NotNested(usize, usize),
    #[error("cuts have different orders")]
    NotMinimal,
    #[error("structure graph is not a tree: {0}")]
    NotATree(String),
}

/// Shape of the host graph, used to catch mixed-up inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Host {
    vertices: usize,
    edges: usize,
}

impl Host {
    fn of(g: &Graph) -> Self {
        Host {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        }
    }
}

fn set_of(n: usize, vs: impl IntoIterator<Item = Vertex>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(vs);
    s
}

fn members(s: &FixedBitSet) -> Vec<Vertex> {
    s.ones().collect()
}

fn difference(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut d = a.clone();
    d.difference_with(b);
    d
}

fn intersection(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut d = a.clone();
    d.intersect_with(b);
    d
}

fn neighborhood(g: &Graph, s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.vertex_count());
    for v in s.ones() {
        out.extend(g.neighbors(v).iter().copied().filter(|&w| !s.contains(w)));
    }
    out
}

/// Components of `G[s]`.
fn components_in(g: &Graph, s: &FixedBitSet) -> Vec<FixedBitSet> {
    let n = g.vertex_count();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    for start in s.ones() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = FixedBitSet::with_capacity(n);
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if s.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn is_connected_in(g: &Graph, s: &FixedBitSet) -> bool {
    components_in(g, s).len() == 1
}

/// A separation `(A, B)`: `A ∪ B = V` and no edge between `A∖B` and `B∖A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    a: FixedBitSet,
    b: FixedBitSet,
    essential: bool,
    host: Host,
}

impl Separation {
    /// Validates `(A, B)` against `g` and evaluates essentiality.
    pub fn new(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<Self, CutError> {
        let n = g.vertex_count();
        if let Some(&v) = a.iter().chain(b).find(|&&v| v >= n) {
            return Err(CutError::UnknownVertex(v));
        }
        Self::from_sets(g, set_of(n, a.iter().copied()), set_of(n, b.iter().copied()))
    }

    fn from_sets(g: &Graph, a: FixedBitSet, b: FixedBitSet) -> Result<Self, CutError> {
        let n = g.vertex_count();
        let mut cover = a.clone();
        cover.union_with(&b);
        if cover.count_ones(..) != n {
            return Err(CutError::NotCovering);
        }
        let wa = difference(&a, &b);
        let wb = difference(&b, &a);
        for u in wa.ones() {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| wb.contains(v)) {
                return Err(CutError::CrossingEdge(u, v));
            }
        }
        let sep = intersection(&a, &b);
        let essential = wa.count_ones(..) > 0
            && wb.count_ones(..) > 0
            && is_connected_in(g, &wa)
            // minimal separator of its wings: every separator vertex sees both
            && sep.ones().all(|s| {
                let ns = g.neighbors(s);
                ns.iter().any(|&v| wa.contains(v)) && ns.iter().any(|&v| wb.contains(v))
            });
        Ok(Separation {
            a,
            b,
            essential,
            host: Host::of(g),
        })
    }

    pub fn side_a(&self) -> Vec<Vertex> {
        members(&self.a)
    }

    pub fn side_b(&self) -> Vec<Vertex> {
        members(&self.b)
    }

    pub fn separator(&self) -> Vec<Vertex> {
        members(&self.separator_set())
    }

    fn separator_set(&self) -> FixedBitSet {
        intersection(&self.a, &self.b)
    }

    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    /// Vertex set of the wing `G[A∖B]`.
    pub fn wing_a(&self) -> Vec<Vertex> {
        members(&difference(&self.a, &self.b))
    }

    /// Vertex set of the wing `G[B∖A]`.
    pub fn wing_b(&self) -> Vec<Vertex> {
        members(&difference(&self.b, &self.a))
    }

    pub fn is_essential(&self) -> bool {
        self.essential
    }

    /// The same separation with its sides swapped.
    pub fn flipped(&self, g: &Graph) -> Separation {
        Self::from_sets(g, self.b.clone(), self.a.clone()).expect("swapping sides keeps validity")
    }

    fn side(&self, i: usize) -> &FixedBitSet {
        if i == 0 {
            &self.a
        } else {
            &self.b
        }
    }
}

/// `(A, ∼)`: the separation `(A, (V∖A) ∪ N(V∖A))`.
pub fn separation_from_side(g: &Graph, a: &[Vertex]) -> Result<Separation, CutError> {
    let n = g.vertex_count();
    if let Some(&v) = a.iter().find(|&&v| v >= n) {
        return Err(CutError::UnknownVertex(v));
    }
    let a = set_of(n, a.iter().copied());
    if a.count_ones(..) == 0 {
        return Err(CutError::EmptySide);
    }
    if a.count_ones(..) == n {
        return Err(CutError::EmptyComplement);
    }
    Separation::from_sets(g, a.clone(), tilde_complement(g, &a))
}

/// `(V∖A) ∪ N(V∖A)`.
fn tilde_complement(g: &Graph, a: &FixedBitSet) -> FixedBitSet {
    let mut rest = a.clone();
    rest.toggle_range(..);
    let mut b = neighborhood(g, &rest);
    b.union_with(&rest);
    b
}

/// Outcome of a check that may be skipped for cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Holds,
    Fails,
    Unverified,
}

impl Check {
    fn from_bool(b: bool) -> Self {
        if b {
            Check::Holds
        } else {
            Check::Fails
        }
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Check::Holds => "holds",
            Check::Fails => "fails",
            Check::Unverified => "unverified",
        })
    }
}

/// Which defining conditions a set of separations meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemReport {
    pub all_essential: bool,
    pub minimal: bool,
    pub nested: bool,
    /// First pair of cut indices that is not nested.
    pub unnested_pair: Option<(usize, usize)>,
    /// Every cut has another cut whose first side lies in its second side.
    pub condition_i: bool,
    /// Components of a second wing that host a cut wing are cut wings.
    pub condition_ii: bool,
    /// Every pair of cuts has matching quadrant components that are wings.
    pub condition_iii: bool,
    /// Both sides of every cut contain a full end proxy.
    pub ends_separated: bool,
    pub aut_invariant: Check,
    pub separator_transitive: Check,
}

impl SystemReport {
    pub fn is_cut_system(&self) -> bool {
        self.all_essential && self.condition_i && self.condition_ii && self.condition_iii
    }

    pub fn is_basic(&self) -> bool {
        self.is_cut_system()
            && self.minimal
            && self.nested
            && self.ends_separated
            && self.aut_invariant == Check::Holds
            && self.separator_transitive == Check::Holds
    }
}

/// A finite family of separations with its condition report.
#[derive(Debug, Clone)]
pub struct CutSystem {
    graph: Graph,
    cuts: Vec<Separation>,
    end_proxies: Vec<Vec<Vertex>>,
    /// Wings `C` with `(C ∪ N(C), ∼)` in the system.
    components: Vec<FixedBitSet>,
    pub report: SystemReport,
}

impl CutSystem {
    /// Collects `cuts` (duplicates dropped) and evaluates every condition.
    pub fn new(g: &Graph, cuts: Vec<Separation>, end_proxies: Vec<Vec<Vertex>>) -> Result<Self, CutError> {
        let host = Host::of(g);
        if cuts.iter().any(|c| c.host != host) {
            return Err(CutError::HostMismatch);
        }
        let mut unique: Vec<Separation> = Vec::new();
        for c in cuts {
            if !unique.contains(&c) {
                unique.push(c);
            }
        }
        let components = unique
            .iter()
            .filter_map(|c| {
                let wing = difference(&c.a, &c.b);
                let mut side = neighborhood(g, &wing);
                side.union_with(&wing);
                let other = tilde_complement(g, &side);
                (side == c.a && other == c.b).then_some(wing)
            })
            .collect();
        let mut system = CutSystem {
            graph: g.clone(),
            cuts: unique,
            end_proxies,
            components,
            report: SystemReport {
                all_essential: false,
                minimal: false,
                nested: false,
                unnested_pair: None,
                condition_i: false,
                condition_ii: false,
                condition_iii: false,
                ends_separated: false,
                aut_invariant: Check::Unverified,
                separator_transitive: Check::Unverified,
            },
        };
        system.report = system.evaluate();
        Ok(system)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cuts(&self) -> &[Separation] {
        &self.cuts
    }

    pub fn end_proxies(&self) -> &[Vec<Vertex>] {
        &self.end_proxies
    }

    pub fn order(&self) -> Option<usize> {
        self.cuts.iter().map(Separation::order).min()
    }

    /// Distinct separators, ascending.
    pub fn separators(&self) -> Vec<Vec<Vertex>> {
        let set: BTreeSet<Vec<Vertex>> = self.cuts.iter().map(Separation::separator).collect();
        set.into_iter().collect()
    }

    fn evaluate(&self) -> SystemReport {
        let g = &self.graph;
        let cuts = &self.cuts;
        let n = g.vertex_count();
        let all_essential = !cuts.is_empty() && cuts.iter().all(Separation::is_essential);
        let min = self.order();
        let minimal = cuts.iter().all(|c| Some(c.order()) == min);
        let mut unnested_pair = None;
        'outer: for i in 0..cuts.len() {
            for j in i + 1..cuts.len() {
                if !self.nested_pair(&cuts[i], &cuts[j]) {
                    unnested_pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let condition_i = cuts.iter().all(|c| cuts.iter().any(|x| x.a.is_subset(&c.b)));
        let condition_ii = cuts.iter().all(|c| {
            components_in(g, &difference(&c.b, &c.a)).into_iter().all(|comp| {
                let hosts = cuts.iter().any(|x| difference(&x.a, &x.b).is_subset(&comp));
                !hosts || self.components.contains(&comp)
            })
        });
        let wings: Vec<FixedBitSet> = cuts
            .iter()
            .flat_map(|c| [difference(&c.a, &c.b), difference(&c.b, &c.a)])
            .collect();
        let is_wing_component = |s: FixedBitSet| components_in(g, &s).iter().any(|c| wings.contains(c));
        let condition_iii = cuts.iter().enumerate().all(|(i, c)| {
            let (x, y) = (difference(&c.a, &c.b), difference(&c.b, &c.a));
            cuts[i..].iter().all(|d| {
                let (x2, y2) = (difference(&d.a, &d.b), difference(&d.b, &d.a));
                (is_wing_component(intersection(&x, &x2)) && is_wing_component(intersection(&y, &y2)))
                    || (is_wing_component(intersection(&y, &x2)) && is_wing_component(intersection(&x, &y2)))
            })
        });
        let proxies: Vec<FixedBitSet> = self.end_proxies.iter().map(|p| set_of(n, p.iter().copied())).collect();
        let ends_separated = cuts.iter().all(|c| {
            let (x, y) = (difference(&c.a, &c.b), difference(&c.b, &c.a));
            proxies.iter().any(|p| p.is_subset(&x)) && proxies.iter().any(|p| p.is_subset(&y))
        });
        let (aut_invariant, separator_transitive) = self.symmetry_checks();
        SystemReport {
            all_essential,
            minimal,
            nested: unnested_pair.is_none(),
            unnested_pair,
            condition_i,
            condition_ii,
            condition_iii,
            ends_separated,
            aut_invariant,
            separator_transitive,
        }
    }

    fn symmetry_checks(&self) -> (Check, Check) {
        let g = &self.graph;
        if g.vertex_count() > AUTOMORPHISM_LIMIT || self.cuts.is_empty() {
            return (Check::Unverified, Check::Unverified);
        }
        let (auts, complete) = graph_automorphisms(g, AUTOMORPHISM_CAP);
        if !complete {
            return (Check::Unverified, Check::Unverified);
        }
        let n = g.vertex_count();
        let image = |s: &FixedBitSet, perm: &[Vertex]| set_of(n, s.ones().map(|v| perm[v]));
        let perms: Vec<Vec<Vertex>> = auts.iter().map(|m| m.to_vec(n)).collect();
        let invariant = perms.iter().all(|p| {
            self.cuts.iter().all(|c| {
                let moved = (image(&c.a, p), image(&c.b, p));
                self.cuts.iter().any(|d| d.a == moved.0 && d.b == moved.1)
            })
        });
        let separators: Vec<FixedBitSet> = self.cuts.iter().map(Separation::separator_set).collect();
        let first = &separators[0];
        let transitive = separators
            .iter()
            .all(|s| perms.iter().any(|p| image(first, p) == *s));
        (Check::from_bool(invariant), Check::from_bool(transitive))
    }

    /// Whether some wing of `(X, ∼)` hosts no system component.
    fn wing_free(&self, x: &FixedBitSet) -> bool {
        let y = tilde_complement(&self.graph, x);
        let wings = [difference(x, &y), difference(&y, x)];
        wings
            .iter()
            .any(|w| !self.components.iter().any(|c| c.is_subset(w)))
    }

    fn nested_pair(&self, s: &Separation, t: &Separation) -> bool {
        let mut seps = s.separator_set();
        seps.union_with(&t.separator_set());
        (0..2).any(|i| {
            (0..2).any(|j| {
                intersection(s.side(1 - i), t.side(1 - j)).is_superset(&seps)
                    && self.wing_free(&intersection(s.side(i), t.side(j)))
            })
        })
    }
}

/// Whether two cuts are nested relative to `system`: for some sides
/// `A_i, B_j`, one wing of `(A_i ∩ B_j, ∼)` contains no wing `C` of the
/// system with `(C ∪ N(C), ∼)` in the system, and `A_{1−i} ∩ B_{1−j}`
/// contains both separators.
pub fn are_nested(s1: &Separation, s2: &Separation, system: &CutSystem) -> Result<bool, CutError> {
    let host = Host::of(&system.graph);
    if s1.host != host || s2.host != host {
        return Err(CutError::HostMismatch);
    }
    Ok(system.nested_pair(s1, s2))
}

/// Result of [`enumerate_candidate_cuts`].
#[derive(Debug, Clone)]
pub struct CutEnumeration {
    pub cuts: Vec<Separation>,
    /// Smallest order at which some separation exists; `None` when nothing
    /// up to the cap separates two proxies.
    pub order: Option<usize>,
    pub max_order: usize,
    /// Separator candidates tried.
    pub examined: usize,
}

/// All essential separations `(C ∪ S, V∖C)` of the smallest order up to
/// `max_order` where `C` is a component of `G − S` containing a whole end
/// proxy and another proxy lies wholly outside `C ∪ S`. Separator vertices
/// are drawn from vertices outside every proxy.
pub fn enumerate_candidate_cuts(
    g: &Graph,
    end_proxies: &[Vec<Vertex>],
    max_order: usize,
) -> Result<CutEnumeration, CutError> {
    let mut allowed = vec![true; g.vertex_count()];
    for &v in end_proxies.iter().flatten() {
        if v >= g.vertex_count() {
            return Err(CutError::UnknownVertex(v));
        }
        allowed[v] = false;
    }
    enumerate_candidate_cuts_among(g, end_proxies, max_order, &allowed)
}

/// [`enumerate_candidate_cuts`] with an explicit mask of separator candidates.
pub fn enumerate_candidate_cuts_among(
    g: &Graph,
    end_proxies: &[Vec<Vertex>],
    max_order: usize,
    allowed: &[bool],
) -> Result<CutEnumeration, CutError> {
    let n = g.vertex_count();
    let proxies: Vec<&Vec<Vertex>> = end_proxies.iter().filter(|p| !p.is_empty()).collect();
    if proxies.len() < 2 {
        return Err(CutError::NoEndProxies);
    }
    if let Some(&v) = proxies.iter().copied().flatten().find(|&&v| v >= n) {
        return Err(CutError::UnknownVertex(v));
    }
    let candidates: Vec<Vertex> = (0..n).filter(|&v| allowed.get(v).copied().unwrap_or(false)).collect();
    let mut examined = 0;
    for k in 0..=max_order.min(candidates.len()) {
        let mut cuts = Vec::new();
        for_each_combination(candidates.len(), k, |idx| {
            examined += 1;
            let mut removed = vec![false; n];
            for &i in idx {
                removed[candidates[i]] = true;
            }
            cuts.extend(cuts_at(g, &proxies, &removed, idx.iter().map(|&i| candidates[i])));
        });
        if !cuts.is_empty() {
            return Ok(CutEnumeration {
                cuts,
                order: Some(k),
                max_order,
                examined,
            });
        }
    }
    Ok(CutEnumeration {
        cuts: Vec::new(),
        order: None,
        max_order,
        examined,
    })
}

fn cuts_at(
    g: &Graph,
    proxies: &[&Vec<Vertex>],
    removed: &[bool],
    separator: impl Iterator<Item = Vertex>,
) -> Vec<Separation> {
    let n = g.vertex_count();
    let s = set_of(n, separator);
    let mut out = Vec::new();
    for comp in g.components_without(removed) {
        let c = set_of(n, comp);
        let mut rest = c.clone();
        rest.union_with(&s);
        rest.toggle_range(..);
        let inside = proxies.iter().any(|p| p.iter().all(|&v| c.contains(v)));
        let outside = proxies.iter().any(|p| p.iter().all(|&v| rest.contains(v)));
        if !inside || !outside || neighborhood(g, &c) != s {
            continue;
        }
        if !s.ones().all(|v| g.neighbors(v).iter().any(|&w| rest.contains(w))) {
            continue;
        }
        let mut a = c.clone();
        a.union_with(&s);
        let mut b = rest;
        b.union_with(&s);
        let sep = Separation::from_sets(g, a, b).expect("component sides form a separation");
        debug_assert!(sep.is_essential());
        out.push(sep);
    }
    out
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The cut system of a ball: separators avoid the outer shell, the ball's
/// end proxies stand in for ends.
pub fn ball_cut_system(b: &BallDigraph, max_order: usize) -> Result<CutSystem, CutError> {
    let g = b.digraph.underlying_graph();
    let allowed = b.interior_mask(DEFAULT_MARGIN);
    let found = enumerate_candidate_cuts_among(&g, &b.end_proxies, max_order, &allowed)?;
    CutSystem::new(&g, found.cuts, b.end_proxies.clone())
}

/// Separators and blocks of a nested minimal system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlocksAndSeparators {
    pub separators: Vec<Vec<Vertex>>,
    pub blocks: Vec<Vec<Vertex>>,
}

/// Separators of the system cuts, and the maximal vertex sets that lie on
/// one side of every cut (and not in both) and contain the separator of
/// some cut whose first side contains them.
pub fn derive_blocks_and_separators(system: &CutSystem) -> Result<BlocksAndSeparators, CutError> {
    if let Some((i, j)) = system.report.unnested_pair {
        return Err(CutError::NotNested(i, j));
    }
    if !system.report.minimal {
        return Err(CutError::NotMinimal);
    }
    let g = &system.graph;
    let n = g.vertex_count();
    // u and v are compatible unless some cut puts them in opposite wings
    let mut compatible: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s.set(v, false);
            s
        })
        .collect();
    for c in &system.cuts {
        let wa = difference(&c.a, &c.b);
        let wb = difference(&c.b, &c.a);
        for u in wa.ones() {
            compatible[u].difference_with(&wb);
        }
        for u in wb.ones() {
            compatible[u].difference_with(&wa);
        }
    }
    let mut cliques = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    bron_kerbosch(
        &compatible,
        FixedBitSet::with_capacity(n),
        all,
        FixedBitSet::with_capacity(n),
        &mut cliques,
    );
    let separators: Vec<FixedBitSet> = system.cuts.iter().map(Separation::separator_set).collect();
    let mut blocks: Vec<Vec<Vertex>> = cliques
        .into_iter()
        .filter(|k| !separators.iter().any(|s| k.is_subset(s)))
        .filter(|k| {
            system
                .cuts
                .iter()
                .any(|c| k.is_subset(&c.a) && c.separator_set().is_subset(k))
        })
        .map(|k| members(&k))
        .collect();
    blocks.sort();
    Ok(BlocksAndSeparators {
        separators: system.separators(),
        blocks,
    })
}

/// Maximal cliques with pivoting.
fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: FixedBitSet,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if p.count_ones(..) == 0 {
        if x.count_ones(..) == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .max_by_key(|&u| p.intersection(&adj[u]).count())
        .expect("p is non-empty");
    let branch: Vec<Vertex> = p.difference(&adj[pivot]).collect();
    for v in branch {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(adj, r2, intersection(&p, &adj[v]), intersection(&x, &adj[v]), out);
        p.set(v, false);
        x.insert(v);
    }
}

/// Kind of a structure tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Separator,
    Block,
}

/// Bipartite containment graph between separators and blocks, checked to be
/// a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTree {
    pub separators: Vec<Vec<Vertex>>,
    pub blocks: Vec<Vec<Vertex>>,
    /// `(separator index, block index)` with the separator inside the block.
    pub edges: Vec<(usize, usize)>,
}

impl StructureTree {
    pub fn node_count(&self) -> usize {
        self.separators.len() + self.blocks.len()
    }

    pub fn separator_degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == i).count()
    }

    pub fn block_degree(&self, j: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == j).count()
    }

    /// Nodes as one graph: separators first, then blocks.
    pub fn as_graph(&self) -> Graph {
        let s = self.separators.len();
        Graph::from_edges(self.node_count(), self.edges.iter().map(|&(i, j)| (i, s + j)))
            .expect("separator and block indices are distinct")
    }

    /// DOT rendering: separators as boxes, blocks as ellipses.
    pub fn to_dot(&self, label: impl Fn(Vertex) -> String) -> String {
        let name = |set: &[Vertex]| set.iter().map(|&v| label(v)).collect::<Vec<_>>().join(",");
        let mut out = String::from("graph structure_tree {\n");
        for (i, s) in self.separators.iter().enumerate() {
            let _ = writeln!(out, "  s{i} [shape=box, label=\"{{{}}}\"];", name(s));
        }
        for (j, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "  b{j} [shape=ellipse, label=\"{{{}}}\"];", name(b));
        }
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "  s{i} -- b{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the structure tree of a nested minimal system. Fails with a
/// diagnostic naming the offending separators when the containment graph is
/// disconnected or has a cycle.
pub fn build_structure_tree(system: &CutSystem) -> Result<StructureTree, CutError> {
    let BlocksAndSeparators { separators, blocks } = derive_blocks_and_separators(system)?;
    let mut edges = Vec::new();
    for (i, s) in separators.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate() {
            if s.iter().all(|v| b.binary_search(v).is_ok()) {
                edges.push((i, j));
            }
        }
    }
    let tree = StructureTree {
        separators,
        blocks,
        edges,
    };
    let g = tree.as_graph();
    let show = |v: usize| -> String {
        if v < tree.separators.len() {
            format!("separator {:?}", tree.separators[v])
        } else {
            format!("block {:?}", tree.blocks[v - tree.separators.len()])
        }
    };
    let comps = g.components();
    if comps.len() > 1 {
        return Err(CutError::NotATree(format!(
            "{} components; {} and {} are not linked",
            comps.len(),
            show(comps[0][0]),
            show(comps[1][0])
        )));
    }
    if let Some((u, v)) = cycle_edge(&g) {
        return Err(CutError::NotATree(format!(
            "cycle through {} and {}",
            show(u),
            show(v)
        )));
    }
    Ok(tree)
}

/// An edge closing a cycle, found by union-find.
fn cycle_edge(g: &Graph) -> Option<(Vertex, Vertex)> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for (u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Some((u, v));
        }
        parent[ru] = rv;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Two K4s sharing vertex 3.
    fn two_k4() -> Graph {
        let mut e = Vec::new();
        for block in [[0, 1, 2, 3], [3, 4, 5, 6]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    e.push((block[i], block[j]));
                }
            }
        }
        Graph::from_edges(7, e).unwrap()
    }

    #[test]
    fn tilde_separations() {
        let s = separation_from_side(&cycle(6), &[0, 1, 2]).unwrap();
        assert_eq!(s.separator(), vec![0, 2]);
        assert_eq!(s.order(), 2);
        let s = separation_from_side(&two_k4(), &[0, 1, 2, 3]).unwrap();
        assert_eq!(s.separator(), vec![3]);
        assert!(s.is_essential());
        let s = separation_from_side(&path(3), &[0, 1]).unwrap();
        assert_eq!(s.separator(), vec![1]);
        assert_eq!(separation_from_side(&path(3), &[0, 1, 2]), Err(CutError::EmptyComplement));
        assert_eq!(separation_from_side(&path(3), &[]), Err(CutError::EmptySide));
    }

    #[test]
    fn validation() {
        let g = path(4);
        assert_eq!(Separation::new(&g, &[0, 1], &[2, 3]), Err(CutError::CrossingEdge(1, 2)));
        assert_eq!(Separation::new(&g, &[0, 1], &[1, 2]), Err(CutError::NotCovering));
        // a superfluous separator vertex makes it inessential
        assert!(!Separation::new(&g, &[0, 1, 2], &[1, 2, 3]).unwrap().is_essential());
        assert!(Separation::new(&g, &[0, 1, 2], &[2, 3]).unwrap().is_essential());
    }

    fn path_system() -> (Graph, CutSystem) {
        let g = path(5);
        let found = enumerate_candidate_cuts(&g, &[vec![0], vec![4]], 1).unwrap();
        let sys = CutSystem::new(&g, found.cuts, vec![vec![0], vec![4]]).unwrap();
        (g, sys)
    }

    #[test]
    fn nestedness() {
        let (g, sys) = path_system();
        let at1 = Separation::new(&g, &[0, 1], &[1, 2, 3, 4]).unwrap();
        let at3 = Separation::new(&g, &[0, 1, 2, 3], &[3, 4]).unwrap();
        assert!(are_nested(&at1, &at3, &sys).unwrap());
        assert!(are_nested(&at3, &at1, &sys).unwrap());
        assert!(are_nested(&at1, &at1, &sys).unwrap());
        assert!(sys.report.nested);

        // 6-cycle with the cuts at {0,3} and {1,4}
        let c = cycle(6);
        let sides = [[0, 1, 2, 3], [3, 4, 5, 0], [1, 2, 3, 4], [4, 5, 0, 1]];
        let cuts: Vec<Separation> = sides
            .iter()
            .map(|a| separation_from_side(&c, a).unwrap())
            .collect();
        let sys6 = CutSystem::new(&c, cuts.clone(), Vec::new()).unwrap();
        assert!(!are_nested(&cuts[0], &cuts[2], &sys6).unwrap());
        assert!(!sys6.report.nested);
        assert!(are_nested(&cuts[0], &cuts[1], &sys6).unwrap());

        let other = Separation::new(&cycle(5), &[0, 1, 2], &[2, 3, 4, 0]).unwrap();
        assert_eq!(are_nested(&other, &cuts[0], &sys6), Err(CutError::HostMismatch));
    }

    #[test]
    fn enumeration() {
        let g = two_k4();
        let found = enumerate_candidate_cuts(&g, &[vec![0, 1, 2], vec![4, 5, 6]], 2).unwrap();
        assert_eq!(found.order, Some(1));
        assert_eq!(found.cuts.len(), 2);
        assert!(found.cuts.iter().all(|c| c.separator() == vec![3]));
        assert!(matches!(enumerate_candidate_cuts(&cycle(6), &[], 2), Err(CutError::NoEndProxies)));
        // a cycle cannot be cut by one vertex
        let found = enumerate_candidate_cuts(&cycle(6), &[vec![0], vec![3]], 1).unwrap();
        assert_eq!(found.order, None);
        let found = enumerate_candidate_cuts(&cycle(6), &[vec![0], vec![3]], 2).unwrap();
        assert_eq!(found.order, Some(2));
        assert!(found.cuts.iter().all(|c| c.is_essential()));
    }

    #[test]
    fn blocks_and_tree_of_two_k4() {
        let g = two_k4();
        let proxies = vec![vec![0, 1, 2], vec![4, 5, 6]];
        let found = enumerate_candidate_cuts(&g, &proxies, 2).unwrap();
        let sys = CutSystem::new(&g, found.cuts, proxies).unwrap();
        assert!(sys.report.is_cut_system());
        assert!(sys.report.is_basic());
        let bs = derive_blocks_and_separators(&sys).unwrap();
        assert_eq!(bs.separators, vec![vec![3]]);
        assert_eq!(bs.blocks, vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]);
        let t = build_structure_tree(&sys).unwrap();
        assert_eq!(t.node_count(), 3);
        assert_eq!(t.separator_degree(0), 2);
        assert!(t.to_dot(|v| v.to_string()).contains("shape=box"));
    }

    #[test]
    fn path_blocks_are_edges() {
        let g = path(4);
        let proxies = vec![vec![0], vec![3]];
        let found = enumerate_candidate_cuts(&g, &proxies, 1).unwrap();
        let sys = CutSystem::new(&g, found.cuts, proxies).unwrap();
        let bs = derive_blocks_and_separators(&sys).unwrap();
        assert_eq!(bs.separators, vec![vec![1], vec![2]]);
        assert_eq!(bs.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let t = build_structure_tree(&sys).unwrap();
        assert_eq!(t.node_count(), 5);

        // a single cut on a path gives a 3-node tree
        let one = Separation::new(&g, &[0, 1], &[1, 2, 3]).unwrap();
        let sys = CutSystem::new(&g, vec![one.clone(), one.flipped(&g)], Vec::new()).unwrap();
        assert_eq!(build_structure_tree(&sys).unwrap().node_count(), 3);
    }

    #[test]
    fn unnested_system_is_refused() {
        let c = cycle(6);
        let cuts = [[0, 1, 2, 3], [1, 2, 3, 4]]
            .iter()
            .map(|a| separation_from_side(&c, a).unwrap())
            .collect();
        let sys = CutSystem::new(&c, cuts, Vec::new()).unwrap();
        assert!(matches!(derive_blocks_and_separators(&sys), Err(CutError::NotNested(0, 1))));
    }
}
