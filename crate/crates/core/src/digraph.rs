//! Finite digraphs and their underlying undirected graphs.
//!
//! A [`Digraph`] carries an irreflexive, antisymmetric edge relation over the
//! dense vertex set `0..n`. Adjacency lists are kept sorted so every
//! enumeration in the crate is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("loop edge at ({0},{0})")]
    Loop(Vertex),
    #[error("antisymmetry violated at ({0},{1})/({1},{0})")]
    Antisymmetry(Vertex, Vertex),
    #[error("edge ({0},{1}) has an endpoint outside 0..{2}")]
    OutOfRange(Vertex, Vertex, usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("({0},{1}) is not an edge")]
    UnknownEdge(Vertex, Vertex),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// A finite digraph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Digraph {
    /// Builds a digraph from an edge list, rejecting loops, 2-cycles and
    /// out-of-range endpoints. Repeated edges collapse into one.
    pub fn from_edge_list(
        vertex_count: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, DigraphError> {
        let mut out = vec![BTreeSet::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(DigraphError::OutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            if out[v].contains(&u) {
                return Err(DigraphError::Antisymmetry(v, u));
            }
            out[u].insert(v);
        }
        let out: Vec<Vec<Vertex>> = out.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Self::from_sorted_out(out))
    }

    fn from_sorted_out(out: Vec<Vec<Vertex>>) -> Self {
        let mut inn = vec![Vec::new(); out.len()];
        let mut edge_count = 0;
        for (u, heads) in out.iter().enumerate() {
            for &v in heads {
                inn[v].push(u);
                edge_count += 1;
            }
        }
        Digraph {
            out,
            inn,
            edge_count,
            labels: None,
        }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted_out(vec![Vec::new(); vertex_count])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, DigraphError> {
        if labels.len() != self.vertex_count() {
            return Err(DigraphError::LabelCount {
                expected: self.vertex_count(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable name of `v`: its label when present, otherwise the id.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.out.len()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, heads)| heads.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    /// `N(v) = N⁺(v) ∪ N⁻(v)`, sorted.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        merge_sorted(&self.out[v], &self.inn[v])
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inn[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.out.len() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    /// Neighborhood of a vertex set: `N(X) = (⋃ N(x)) ∖ X`.
    pub fn set_neighborhood(&self, set: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
        set.iter()
            .flat_map(|&x| self.out[x].iter().chain(&self.inn[x]).copied())
            .filter(|y| !set.contains(y))
            .collect()
    }

    pub fn underlying_graph(&self) -> Graph {
        let adj = self.vertices().map(|v| self.neighbors(v)).collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// The digraph with every edge reversed.
    pub fn reversed(&self) -> Digraph {
        let mut d = Self::from_sorted_out(self.inn.clone());
        d.labels = self.labels.clone();
        d
    }

    /// Induced subdigraph on `set`. Vertex `i` of the result is the `i`-th
    /// smallest element of `set`; labels are carried over.
    pub fn induced_subdigraph(&self, set: &[Vertex]) -> Result<Digraph, DigraphError> {
        let mut sorted: Vec<Vertex> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = BTreeMap::new();
        for (i, &v) in sorted.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(DigraphError::UnknownVertex(v));
            }
            index.insert(v, i);
        }
        let out = sorted
            .iter()
            .map(|&v| {
                self.out[v]
                    .iter()
                    .filter_map(|w| index.get(w).copied())
                    .collect()
            })
            .collect();
        let mut d = Self::from_sorted_out(out);
        d.labels = Some(sorted.iter().map(|&v| self.label(v)).collect());
        Ok(d)
    }

    /// Subdigraph formed by an edge set: vertices are the endpoints (sorted),
    /// edges exactly the given ones. Returns the digraph and the vertex map.
    pub fn edge_subdigraph(&self, edges: &[Edge]) -> (Digraph, Vec<Vertex>) {
        let verts: Vec<Vertex> = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut d = Digraph::from_edge_list(
            verts.len(),
            edges.iter().map(|(u, v)| (index[u], index[v])),
        )
        .expect("sub-relation of a digraph is a digraph");
        d.labels = Some(verts.iter().map(|&v| self.label(v)).collect());
        (d, verts)
    }

    /// Returns a copy without the given edge.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Digraph, DigraphError> {
        if !self.has_edge(u, v) {
            return Err(DigraphError::UnknownEdge(u, v));
        }
        let mut d = Digraph::from_edge_list(
            self.vertex_count(),
            self.edges().filter(|&e| e != (u, v)),
        )?;
        d.labels = self.labels.clone();
        Ok(d)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Digraph {
        let mut d = Digraph::from_edge_list(
            self.vertex_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
        .expect("permutation preserves validity");
        if let Some(labels) = &self.labels {
            let mut l = vec![String::new(); labels.len()];
            for (v, lab) in labels.iter().enumerate() {
                l[perm[v]] = lab.clone();
            }
            d.labels = Some(l);
        }
        d
    }

    /// Number of triangles of the underlying graph.
    pub fn triangle_count(&self) -> usize {
        self.underlying_graph().triangle_count()
    }

    /// Multiset of `(d⁺, d⁻)` pairs.
    pub fn degree_profile(&self) -> BTreeMap<(usize, usize), usize> {
        let mut profile = BTreeMap::new();
        for v in self.vertices() {
            *profile
                .entry((self.out_degree(v), self.in_degree(v)))
                .or_insert(0) += 1;
        }
        profile
    }

    /// Vertices reachable from `x` along directed paths (including `x`),
    /// in breadth-first order.
    pub fn forward_reachable(&self, x: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.vertex_count()];
        let mut order = vec![x];
        seen[x] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in &self.out[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }
}

/// An undirected simple graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, DigraphError> {
        let mut adj = vec![BTreeSet::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(DigraphError::OutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(DigraphError::Loop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Self::from_sorted_adjacency(
            adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        ))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn induced(&self, set: &[Vertex]) -> Result<(Graph, Vec<Vertex>), DigraphError> {
        let mut sorted: Vec<Vertex> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in sorted.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(DigraphError::UnknownVertex(v));
            }
            index[v] = i;
        }
        let adj = sorted
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Ok((Graph::from_sorted_adjacency(adj), sorted))
    }

    /// Breadth-first distances from a set of sources; `usize::MAX` marks
    /// unreachable vertices. Vertices in `blocked` are never entered.
    pub fn distances_avoiding(&self, sources: &[Vertex], blocked: &[bool]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX && !blocked.get(s).copied().unwrap_or(false) {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX && !blocked.get(w).copied().unwrap_or(false) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances(&self, sources: &[Vertex]) -> Vec<usize> {
        self.distances_avoiding(sources, &[])
    }

    /// Connected components of the graph with `removed` vertices deleted,
    /// each sorted, ordered by smallest member.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut result: Vec<Vec<Vertex>> = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX || removed.get(s).copied().unwrap_or(false) {
                continue;
            }
            let id = result.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX && !removed.get(w).copied().unwrap_or(false) {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            result.push(members);
        }
        result
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_without(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1
            && self.edge_count + 1 == self.vertex_count()
            && self.is_connected()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.vertex_count()
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.vertex_count() >= 3 && self.vertices().all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Two-colouring per component, the smallest vertex of each component
    /// on side 0; `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut side = vec![u8::MAX; self.vertex_count()];
        for s in self.vertices() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for v in self.vertices() {
            if side[v] == 0 {
                a.push(v)
            } else {
                b.push(v)
            }
        }
        Some((a, b))
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (u, v) in self.edges() {
            // common neighbours w > v close a triangle counted once
            let (a, b) = (&self.adj[u], &self.adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if a[i] > v {
                            count += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        count
    }

    /// Exact vertex connectivity. Complete graphs on `n` vertices have
    /// connectivity `n - 1`; disconnected graphs have 0.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.vertex_count();
        if n <= 1 {
            return 0;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = self.vertices().map(|v| self.degree(v)).min().unwrap_or(0);
        if self.edge_count == n * (n - 1) / 2 {
            return n - 1;
        }
        // Even's scheme: some vertex among the first best+1 avoids a minimum cut.
        let mut i = 0;
        while i <= best && i < n {
            for j in 0..n {
                if j != i && !self.has_edge(i, j) {
                    best = best.min(self.local_connectivity(i, j, best));
                }
            }
            i += 1;
        }
        best
    }

    /// Number of internally vertex-disjoint `s`-`t` paths, capped at `cap`.
    /// `s` and `t` must be distinct and non-adjacent.
    pub fn local_connectivity(&self, s: Vertex, t: Vertex, cap: usize) -> usize {
        // vertex v splits into v_in = 2v, v_out = 2v + 1 with unit capacity
        let n = self.vertex_count();
        let mut flow: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        let cap_of = |a: usize, b: usize| -> i32 {
            if a / 2 == b / 2 {
                if a.is_multiple_of(2) && b == a + 1 {
                    let v = a / 2;
                    if v == s || v == t {
                        i32::MAX / 4
                    } else {
                        1
                    }
                } else {
                    0
                }
            } else if a % 2 == 1 && b.is_multiple_of(2) && self.has_edge(a / 2, b / 2) {
                1
            } else {
                0
            }
        };
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut total = 0;
        while total < cap {
            let mut prev = vec![usize::MAX; 2 * n];
            prev[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(a) = queue.pop_front() {
                if a == sink {
                    break;
                }
                let v = a / 2;
                let mut next: Vec<usize> = Vec::new();
                if a % 2 == 0 {
                    next.push(a + 1);
                    for &w in &self.adj[v] {
                        next.push(2 * w + 1);
                    }
                } else {
                    next.push(a - 1);
                    for &w in &self.adj[v] {
                        next.push(2 * w);
                    }
                }
                for b in next {
                    if prev[b] != usize::MAX {
                        continue;
                    }
                    let f = flow.get(&(a, b)).copied().unwrap_or(0);
                    if cap_of(a, b) - f > 0 {
                        prev[b] = a;
                        queue.push_back(b);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                break;
            }
            let mut b = sink;
            while b != source {
                let a = prev[b];
                *flow.entry((a, b)).or_insert(0) += 1;
                *flow.entry((b, a)).or_insert(0) -= 1;
                b = a;
            }
            total += 1;
        }
        total
    }
}

fn merge_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

/// Summary produced by [`analyze_basic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicReport {
    pub connected: bool,
    pub contains_triangle: bool,
    pub vertex_connectivity: usize,
    pub degree_profile: BTreeMap<(usize, usize), usize>,
    pub bipartition: Option<(Vec<Vertex>, Vec<Vertex>)>,
}

pub fn analyze_basic(d: &Digraph) -> BasicReport {
    let g = d.underlying_graph();
    BasicReport {
        connected: g.is_connected(),
        contains_triangle: g.triangle_count() > 0,
        vertex_connectivity: g.vertex_connectivity(),
        degree_profile: d.degree_profile(),
        bipartition: g.bipartition(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn edge_list_validation() {
        assert_eq!(triangle().edge_count(), 3);
        let err = Digraph::from_edge_list(2, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err.to_string(), "antisymmetry violated at (0,1)/(1,0)");
        assert_eq!(
            Digraph::from_edge_list(2, [(1, 1)]).unwrap_err(),
            DigraphError::Loop(1)
        );
        assert!(matches!(
            Digraph::from_edge_list(2, [(0, 2)]),
            Err(DigraphError::OutOfRange(0, 2, 2))
        ));
        let trivial = Digraph::from_edge_list(1, []).unwrap();
        assert_eq!((trivial.vertex_count(), trivial.edge_count()), (1, 0));
    }

    #[test]
    fn underlying_graph_keeps_edges() {
        let g = triangle().underlying_graph();
        assert_eq!(g.edge_count(), 3);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        let k23 = Digraph::from_edge_list(5, (0..2).flat_map(|a| (2..5).map(move |b| (a, b)))).unwrap();
        let u = k23.underlying_graph();
        assert_eq!(u.edge_count(), 6);
        assert_eq!(u.bipartition().unwrap(), (vec![0, 1], vec![2, 3, 4]));
        let c6 = Digraph::from_edge_list(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)]).unwrap();
        assert!(c6.underlying_graph().is_cycle());
    }

    #[test]
    fn induced_subdigraphs() {
        let e = triangle().induced_subdigraph(&[0, 1]).unwrap();
        assert_eq!(e.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(matches!(
            triangle().induced_subdigraph(&[0, 7]),
            Err(DigraphError::UnknownVertex(7))
        ));
        let k23 = Digraph::from_edge_list(5, (0..2).flat_map(|a| (2..5).map(move |b| (a, b)))).unwrap();
        let star = k23.induced_subdigraph(&[0, 2, 3, 4]).unwrap();
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.out_degree(0), 3);
    }

    #[test]
    fn basic_report_triangle() {
        let r = analyze_basic(&triangle());
        assert!(r.connected && r.contains_triangle);
        assert_eq!(r.vertex_connectivity, 2);
        assert_eq!(r.degree_profile, BTreeMap::from([((1, 1), 3)]));
        assert!(r.bipartition.is_none());
    }

    #[test]
    fn connectivity_values() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.vertex_connectivity(), 1);
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(c6.vertex_connectivity(), 2);
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(k33.vertex_connectivity(), 3);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.vertex_connectivity(), 0);
    }

    #[test]
    fn triangles_and_trees() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.triangle_count(), 4);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_tree() && star.is_forest());
        assert!(!k4.is_forest());
    }
}
