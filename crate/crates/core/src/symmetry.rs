//! Homogeneity, connected-homogeneity and k-arc-transitivity verdicts.
//!
//! Exact verdicts search full automorphisms of a finite digraph. On a ball
//! the same questions are asked of interior configurations, and an
//! isomorphism only has to extend to the surrounding neighbourhoods, which
//! yields the weaker verdict [`Outcome::PassLocal`].

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::arcs::enumerate_k_arcs;
use crate::ball::BallDigraph;
use crate::digraph::{Digraph, Graph, Vertex};
use crate::iso::{find_isomorphism, for_each_isomorphism, IsoError, IsoOptions, VertexMapping};

pub const DEFAULT_MAX_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Homogeneous,
    CHomogeneous,
    KArcTransitive(usize),
    VertexTransitive,
    EdgeTransitive,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Homogeneous => write!(f, "homogeneous"),
            Property::CHomogeneous => write!(f, "c_homogeneous"),
            Property::KArcTransitive(k) => write!(f, "{k}_arc_transitive"),
            Property::VertexTransitive => write!(f, "vertex_transitive"),
            Property::EdgeTransitive => write!(f, "edge_transitive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// Every configuration examined extends on its neighbourhood; evidence,
    /// not proof.
    PassLocal,
}

impl Outcome {
    pub fn passed(self) -> bool {
        self != Outcome::Fail
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::PassLocal => "pass_local",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An isomorphism between induced subdigraphs on `x` and `y` (as
    /// `map`) that has no extension.
    Extension {
        x: Vec<Vertex>,
        y: Vec<Vertex>,
        map: VertexMapping,
    },
    /// No automorphism carries the arc `base` onto `other`.
    Arcs { base: Vec<Vertex>, other: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryVerdict {
    pub property: Property,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub max_size: Option<usize>,
    pub margin: Option<usize>,
    /// Configurations examined (subsets or arcs).
    pub examined: usize,
    /// Set when no configuration exists, so the verdict holds vacuously.
    pub vacuous: bool,
}

impl SymmetryVerdict {
    fn new(property: Property, max_size: Option<usize>, margin: Option<usize>) -> Self {
        SymmetryVerdict {
            property,
            outcome: Outcome::Pass,
            witness: None,
            max_size,
            margin,
            examined: 0,
            vacuous: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("margin must be at least 1")]
    ZeroMargin,
    #[error("no vertex lies in the interior at margin {0}")]
    EmptyInterior(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Homogeneous,
    CHomogeneous,
}

/// Calls `f` on every vertex subset of size `1..=max_size` drawn from
/// `allowed` that is connected in `g` (or every subset, when `connected` is
/// false), each exactly once, as a sorted vector.
pub fn for_each_subset(
    g: &Graph,
    allowed: &[bool],
    max_size: usize,
    connected: bool,
    f: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let verts: Vec<Vertex> = g.vertices().filter(|&v| allowed[v]).collect();
    if !connected {
        for size in 1..=max_size.min(verts.len()) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let set: Vec<Vertex> = idx.iter().map(|&i| verts[i]).collect();
                f(&set)?;
                let mut i = size;
                let advanced = loop {
                    if i == 0 {
                        break false;
                    }
                    i -= 1;
                    if idx[i] < verts.len() - size + i {
                        idx[i] += 1;
                        for j in i + 1..size {
                            idx[j] = idx[j - 1] + 1;
                        }
                        break true;
                    }
                };
                if !advanced {
                    break;
                }
            }
        }
        return ControlFlow::Continue(());
    }
    // connected sets, each grown from its smallest vertex
    for &v in &verts {
        let ext: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| w > v && allowed[w]).collect();
        let mut set = vec![v];
        extend_connected(g, allowed, v, &mut set, ext, max_size, f)?;
    }
    ControlFlow::Continue(())
}

fn extend_connected(
    g: &Graph,
    allowed: &[bool],
    start: Vertex,
    set: &mut Vec<Vertex>,
    mut ext: Vec<Vertex>,
    max_size: usize,
    f: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut sorted = set.clone();
    sorted.sort_unstable();
    f(&sorted)?;
    if set.len() == max_size {
        return ControlFlow::Continue(());
    }
    while let Some(w) = ext.pop() {
        // exclusive neighbours of w: adjacent to w, not in or next to the set
        let mut next = ext.clone();
        for &z in g.neighbors(w) {
            if z > start
                && allowed[z]
                && !set.contains(&z)
                && !next.contains(&z)
                && z != w
                && !set.iter().any(|&s| g.has_edge(s, z))
            {
                next.push(z);
            }
        }
        set.push(w);
        extend_connected(g, allowed, start, set, next, max_size, f)?;
        set.pop();
    }
    ControlFlow::Continue(())
}

/// Canonical code of a small digraph: the lexicographically least adjacency
/// bit string over all vertex orders. `None` above 7 vertices.
pub fn canonical_code(d: &Digraph) -> Option<u64> {
    let n = d.vertex_count();
    if n > 7 {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut code = 0u64;
        for i in 0..n {
            for j in 0..n {
                code = code << 1 | d.has_edge(perm[i], perm[j]) as u64;
            }
        }
        best = best.min(code);
        if !next_permutation(&mut perm) {
            return Some(best);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Collects subsets into isomorphism classes of their induced subdigraphs.
struct Classes {
    by_code: BTreeMap<(usize, u64), usize>,
    reps: Vec<(Vec<Vertex>, Digraph)>,
    members: Vec<Vec<Vec<Vertex>>>,
}

impl Classes {
    fn new() -> Self {
        Classes {
            by_code: BTreeMap::new(),
            reps: Vec::new(),
            members: Vec::new(),
        }
    }

    fn add(&mut self, d: &Digraph, set: &[Vertex]) {
        let sub = d.induced_subdigraph(set).expect("in range");
        let class = match canonical_code(&sub) {
            Some(code) => *self.by_code.entry((set.len(), code)).or_insert_with(|| {
                self.reps.push((set.to_vec(), sub.clone()));
                self.members.push(Vec::new());
                self.reps.len() - 1
            }),
            None => match self
                .reps
                .iter()
                .position(|(_, r)| matches!(find_isomorphism(r, &sub, IsoOptions::default()), Ok(Some(_))))
            {
                Some(i) => i,
                None => {
                    self.reps.push((set.to_vec(), sub.clone()));
                    self.members.push(Vec::new());
                    self.reps.len() - 1
                }
            },
        };
        self.members[class].push(set.to_vec());
    }

    /// Classes ordered by subset size, largest first, so that witnesses
    /// are as large as the bound allows.
    fn largest_first(&self) -> Vec<(&(Vec<Vertex>, Digraph), &Vec<Vec<Vertex>>)> {
        let mut order: Vec<usize> = (0..self.reps.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.reps[i].0.len()));
        order.into_iter().map(|i| (&self.reps[i], &self.members[i])).collect()
    }
}

/// Every isomorphism `D[x] → D[y]`, as maps between host vertices.
fn subset_isomorphisms(d: &Digraph, x: &[Vertex], y: &[Vertex], f: &mut dyn FnMut(VertexMapping) -> ControlFlow<()>) {
    let dx = d.induced_subdigraph(x).expect("in range");
    let dy = d.induced_subdigraph(y).expect("in range");
    for_each_isomorphism(&dx, &dy, IsoOptions::default(), |m| {
        f(VertexMapping::from_pairs(m.pairs().map(|(a, b)| (x[a], y[b]))))
    })
    .expect("no seed");
}

/// Exact check on a finite digraph: every isomorphism between (connected)
/// induced subdigraphs on at most `max_size` vertices extends to an
/// automorphism.
pub fn check_homogeneity(d: &Digraph, mode: Mode, max_size: usize) -> SymmetryVerdict {
    let property = match mode {
        Mode::Homogeneous => Property::Homogeneous,
        Mode::CHomogeneous => Property::CHomogeneous,
    };
    let mut verdict = SymmetryVerdict::new(property, Some(max_size), None);
    let g = d.underlying_graph();
    let allowed = vec![true; d.vertex_count()];
    let mut classes = Classes::new();
    let _ = for_each_subset(&g, &allowed, max_size, mode == Mode::CHomogeneous, &mut |s| {
        classes.add(d, s);
        ControlFlow::Continue(())
    });
    for (rep, members) in classes.largest_first() {
        for y in members {
            verdict.examined += 1;
            let mut failure = None;
            subset_isomorphisms(d, &rep.0, y, &mut |phi| {
                match find_isomorphism(d, d, IsoOptions::seeded(&phi)) {
                    Ok(Some(_)) => ControlFlow::Continue(()),
                    Ok(None) | Err(_) => {
                        failure = Some(phi);
                        ControlFlow::Break(())
                    }
                }
            });
            if let Some(map) = failure {
                verdict.outcome = Outcome::Fail;
                verdict.witness = Some(Witness::Extension {
                    x: rep.0.clone(),
                    y: y.clone(),
                    map,
                });
                return verdict;
            }
        }
    }
    verdict.vacuous = verdict.examined == 0;
    verdict
}

/// Vertices within `radius` of `set` in `g`, with their distances.
pub fn neighborhood(g: &Graph, set: &[Vertex], radius: usize) -> Vec<(Vertex, usize)> {
    let mut dist: BTreeMap<Vertex, usize> = set.iter().map(|&v| (v, 0)).collect();
    let mut queue: VecDeque<Vertex> = set.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        let dv = dist[&v];
        if dv == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist.into_iter().collect()
}

/// Whether `phi` extends to an isomorphism between the radius-`radius`
/// neighbourhoods of its domain and image that preserves the distance to
/// the respective set.
pub fn extends_locally(d: &Digraph, g: &Graph, phi: &VertexMapping, radius: usize) -> bool {
    let (x, y): (Vec<Vertex>, Vec<Vertex>) = phi.pairs().unzip();
    let nx = neighborhood(g, &x, radius);
    let ny = neighborhood(g, &y, radius);
    if nx.len() != ny.len() {
        return false;
    }
    let vx: Vec<Vertex> = nx.iter().map(|p| p.0).collect();
    let vy: Vec<Vertex> = ny.iter().map(|p| p.0).collect();
    let cx: Vec<usize> = nx.iter().map(|p| p.1).collect();
    let cy: Vec<usize> = ny.iter().map(|p| p.1).collect();
    let dx = d.induced_subdigraph(&vx).expect("in range");
    let dy = d.induced_subdigraph(&vy).expect("in range");
    let seed = VertexMapping::from_pairs(phi.pairs().map(|(a, b)| {
        (
            vx.binary_search(&a).expect("domain inside"),
            vy.binary_search(&b).expect("image inside"),
        )
    }));
    matches!(
        find_isomorphism(&dx, &dy, IsoOptions::seeded(&seed).with_classes(&cx, &cy)),
        Ok(Some(_))
    )
}

/// Connected-homogeneity on a ball: every isomorphism between connected
/// induced subdigraphs on at most `max_size` interior vertices must extend
/// to the radius-`(margin − 1)` neighbourhoods. Exact balls get the exact
/// verdict of [`check_homogeneity`].
pub fn check_local_c_homogeneity(
    b: &BallDigraph,
    max_size: usize,
    margin: usize,
) -> Result<SymmetryVerdict, SymmetryError> {
    if margin == 0 {
        return Err(SymmetryError::ZeroMargin);
    }
    if b.is_exact() {
        let mut v = check_homogeneity(&b.digraph, Mode::CHomogeneous, max_size);
        v.margin = Some(margin);
        return Ok(v);
    }
    let allowed = b.interior_mask(margin);
    if !allowed.iter().any(|&a| a) {
        return Err(SymmetryError::EmptyInterior(margin));
    }
    let d = &b.digraph;
    let g = d.underlying_graph();
    let mut verdict = SymmetryVerdict::new(Property::CHomogeneous, Some(max_size), Some(margin));
    let mut classes = Classes::new();
    let _ = for_each_subset(&g, &allowed, max_size, true, &mut |s| {
        classes.add(d, s);
        ControlFlow::Continue(())
    });
    for (rep, members) in classes.largest_first() {
        for y in members {
            verdict.examined += 1;
            let mut failure = None;
            subset_isomorphisms(d, &rep.0, y, &mut |phi| {
                if extends_locally(d, &g, &phi, margin - 1) {
                    ControlFlow::Continue(())
                } else {
                    failure = Some(phi);
                    ControlFlow::Break(())
                }
            });
            if let Some(map) = failure {
                verdict.outcome = Outcome::Fail;
                verdict.witness = Some(Witness::Extension {
                    x: rep.0.clone(),
                    y: y.clone(),
                    map,
                });
                return Ok(verdict);
            }
        }
    }
    verdict.outcome = Outcome::PassLocal;
    verdict.vacuous = verdict.examined == 0;
    Ok(verdict)
}

fn arc_map(base: &[Vertex], other: &[Vertex]) -> VertexMapping {
    VertexMapping::from_pairs(base.iter().copied().zip(other.iter().copied()))
}

/// k-arc-transitivity for every `k` in `0..=k_max`. On an exact input a base
/// arc is mapped to every other arc by automorphisms; on a ball the arcs are
/// those inside the interior at `margin`, the base arc starts at the root
/// when possible, and maps only need to extend to radius-`(margin − 1)`
/// neighbourhoods.
pub fn check_arc_transitivity(
    b: &BallDigraph,
    k_max: usize,
    margin: usize,
) -> Result<Vec<SymmetryVerdict>, SymmetryError> {
    if margin == 0 {
        return Err(SymmetryError::ZeroMargin);
    }
    let d = &b.digraph;
    let g = d.underlying_graph();
    let allowed = b.interior_mask(margin);
    if !allowed.iter().any(|&a| a) {
        return Err(SymmetryError::EmptyInterior(margin));
    }
    let mut verdicts = Vec::new();
    for k in 0..=k_max {
        let local = !b.is_exact();
        let mut verdict = SymmetryVerdict::new(
            Property::KArcTransitive(k),
            None,
            local.then_some(margin),
        );
        let arcs: Vec<Vec<Vertex>> = enumerate_k_arcs(d, k, None)
            .into_iter()
            .map(|a| a.vertices)
            .filter(|a| a.iter().all(|&v| allowed[v]))
            .collect();
        if arcs.is_empty() {
            verdict.vacuous = true;
            if local {
                verdict.outcome = Outcome::PassLocal;
            }
            verdicts.push(verdict);
            continue;
        }
        let base = arcs
            .iter()
            .find(|a| a[0] == b.root)
            .unwrap_or(&arcs[0])
            .clone();
        for other in &arcs {
            verdict.examined += 1;
            let phi = arc_map(&base, other);
            let ok = if local {
                phi.preserves(d, d) && extends_locally(d, &g, &phi, margin - 1)
            } else {
                match find_isomorphism(d, d, IsoOptions::seeded(&phi)) {
                    Ok(found) => found.is_some(),
                    Err(IsoError::SeedNotPartialIsomorphism(..)) => false,
                    Err(e) => panic!("arc seed is well-formed: {e}"),
                }
            };
            if !ok {
                verdict.outcome = Outcome::Fail;
                verdict.witness = Some(Witness::Arcs {
                    base: base.clone(),
                    other: other.clone(),
                });
                break;
            }
        }
        if verdict.outcome == Outcome::Pass && local {
            verdict.outcome = Outcome::PassLocal;
        }
        verdicts.push(verdict);
    }
    Ok(verdicts)
}

/// Vertex-transitivity, read as 0-arc-transitivity.
pub fn check_vertex_transitivity(b: &BallDigraph, margin: usize) -> Result<SymmetryVerdict, SymmetryError> {
    let mut v = check_arc_transitivity(b, 0, margin)?.remove(0);
    v.property = Property::VertexTransitive;
    Ok(v)
}

/// Edge-transitivity, read as 1-arc-transitivity.
pub fn check_edge_transitivity(b: &BallDigraph, margin: usize) -> Result<SymmetryVerdict, SymmetryError> {
    let mut all = check_arc_transitivity(b, 1, margin)?;
    let mut v = if all[0].outcome == Outcome::Fail || all.len() == 1 {
        all.remove(0)
    } else {
        all.remove(1)
    };
    v.property = Property::EdgeTransitive;
    Ok(v)
}

/// Re-checks a failure witness: the map is an isomorphism between the
/// induced subdigraphs and exhaustive search finds no extension to an
/// automorphism.
pub fn witness_is_genuine(d: &Digraph, w: &Witness) -> bool {
    match w {
        Witness::Extension { map, .. } => {
            map.preserves(d, d) && matches!(find_isomorphism(d, d, IsoOptions::seeded(map)), Ok(None))
        }
        Witness::Arcs { base, other } => {
            let phi = arc_map(base, other);
            !matches!(find_isomorphism(d, d, IsoOptions::seeded(&phi)), Ok(Some(_)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive(n: usize) -> Digraph {
        Digraph::from_edge_list(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn subset_counts() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let all = vec![true; 4];
        let mut n = 0;
        let _ = for_each_subset(&p4, &all, 4, true, &mut |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        // 4 + 3 + 2 + 1 intervals
        assert_eq!(n, 10);
        let mut n = 0;
        let _ = for_each_subset(&p4, &all, 2, false, &mut |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(n, 4 + 6);
    }

    #[test]
    fn canonical_codes() {
        let t = triangle();
        let rotated = t.permuted(&[2, 0, 1]);
        assert_eq!(canonical_code(&t), canonical_code(&rotated));
        assert_ne!(canonical_code(&t), canonical_code(&transitive(3)));
    }

    #[test]
    fn triangle_is_homogeneous() {
        let v = check_homogeneity(&triangle(), Mode::Homogeneous, 3);
        assert_eq!(v.outcome, Outcome::Pass);
    }

    #[test]
    fn transitive_tournament_fails_on_edges() {
        let d = transitive(3);
        let v = check_homogeneity(&d, Mode::CHomogeneous, 2);
        assert_eq!(v.outcome, Outcome::Fail);
        let w = v.witness.unwrap();
        assert!(witness_is_genuine(&d, &w));
        let Witness::Extension { x, y, .. } = w else { panic!() };
        assert_eq!((x.len(), y.len()), (2, 2));
        assert!(d.adjacent(x[0], x[1]) && d.adjacent(y[0], y[1]));
    }

    #[test]
    fn arc_transitivity_of_cycles() {
        let c6 = Digraph::from_edge_list(6, (0..6).map(|i| if i % 2 == 0 { (i, (i + 1) % 6) } else { ((i + 1) % 6, i) })).unwrap();
        let v = check_arc_transitivity(&BallDigraph::exact(c6), 1, 1).unwrap();
        // sources and sinks are not interchangeable, edges are
        assert_eq!(v[0].outcome, Outcome::Fail);
        assert_eq!(v[1].outcome, Outcome::Pass);
        let v = check_arc_transitivity(&BallDigraph::exact(transitive(3)), 1, 1).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.outcome == Outcome::Fail));
    }
}
