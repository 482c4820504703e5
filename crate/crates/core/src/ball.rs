//! Radius-truncated balls of locally finite digraphs.
//!
//! A [`LazyDigraph`] describes an infinite digraph by its neighbourhoods;
//! [`ball`] explores it breadth-first in the underlying graph and marks the
//! vertices whose neighbourhoods were cut off.

use std::collections::{BTreeMap, VecDeque};

use crate::digraph::{Digraph, Graph, Vertex};

/// Default distance from the boundary below which vertices count as interior.
pub const DEFAULT_MARGIN: usize = 2;

/// A locally finite digraph given by neighbourhood queries.
pub trait LazyDigraph {
    type Addr: Clone + Ord;

    fn root(&self) -> Self::Addr;
    fn out_neighbors(&self, a: &Self::Addr) -> Vec<Self::Addr>;
    fn in_neighbors(&self, a: &Self::Addr) -> Vec<Self::Addr>;
    fn label(&self, a: &Self::Addr) -> String;
}

/// A finite digraph with a root, a radius and a marked boundary. Finite
/// family members are wrapped with an empty boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallDigraph {
    pub digraph: Digraph,
    pub root: Vertex,
    pub radius: usize,
    /// Vertices whose neighbourhood is incomplete, ascending.
    pub boundary: Vec<Vertex>,
    /// Groups of boundary vertices standing in for ends.
    pub end_proxies: Vec<Vec<Vertex>>,
    distances: Vec<usize>,
}

impl BallDigraph {
    /// Wraps a finite digraph: root 0, no boundary, radius the eccentricity
    /// of the root.
    pub fn exact(digraph: Digraph) -> Self {
        Self::exact_at(digraph, 0)
    }

    pub fn exact_at(digraph: Digraph, root: Vertex) -> Self {
        let distances = if digraph.vertex_count() == 0 {
            Vec::new()
        } else {
            digraph.underlying_graph().distances(&[root])
        };
        let radius = distances.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
        BallDigraph {
            digraph,
            root,
            radius,
            boundary: Vec::new(),
            end_proxies: Vec::new(),
            distances,
        }
    }

    /// Assembles a ball from parts; distances are recomputed from `root`.
    pub fn from_parts(
        digraph: Digraph,
        root: Vertex,
        radius: usize,
        boundary: Vec<Vertex>,
        end_proxies: Vec<Vec<Vertex>>,
    ) -> Self {
        let distances = digraph.underlying_graph().distances(&[root]);
        let mut boundary = boundary;
        boundary.sort_unstable();
        boundary.dedup();
        BallDigraph {
            digraph,
            root,
            radius,
            boundary,
            end_proxies,
            distances,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.boundary.binary_search(&v).is_ok()
    }

    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.digraph.vertex_count()];
        for &v in &self.boundary {
            mask[v] = true;
        }
        mask
    }

    /// Underlying-graph distance from the root.
    pub fn distance(&self, v: Vertex) -> usize {
        self.distances[v]
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    /// Vertices within `radius − margin` of the root; everything when the
    /// ball is exact.
    pub fn interior(&self, margin: usize) -> Vec<Vertex> {
        let mask = self.interior_mask(margin);
        self.digraph.vertices().filter(|&v| mask[v]).collect()
    }

    pub fn interior_mask(&self, margin: usize) -> Vec<bool> {
        if self.is_exact() {
            return vec![true; self.digraph.vertex_count()];
        }
        match self.radius.checked_sub(margin) {
            Some(limit) => self.distances.iter().map(|&d| d <= limit).collect(),
            None => vec![false; self.digraph.vertex_count()],
        }
    }

    /// The same ball with new end proxies.
    pub fn with_end_proxies(mut self, end_proxies: Vec<Vec<Vertex>>) -> Self {
        self.end_proxies = end_proxies;
        self
    }
}

/// Components of the outer shell `{v : dist(v) > radius − depth}`, each
/// intersected with the boundary. Every such group is the visible trace of
/// at least one way to leave the ball.
pub fn shell_end_proxies(
    g: &Graph,
    distances: &[usize],
    radius: usize,
    boundary: &[Vertex],
    depth: usize,
) -> Vec<Vec<Vertex>> {
    let limit = radius.saturating_sub(depth);
    let removed: Vec<bool> = distances.iter().map(|&d| d <= limit).collect();
    let mut is_boundary = vec![false; g.vertex_count()];
    for &v in boundary {
        is_boundary[v] = true;
    }
    let mut proxies: Vec<Vec<Vertex>> = g
        .components_without(&removed)
        .into_iter()
        .map(|c| c.into_iter().filter(|&v| is_boundary[v]).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    for p in &mut proxies {
        p.sort_unstable();
    }
    proxies.sort();
    proxies
}

/// Breadth-first ball of radius `radius` around the root of `lazy`, taken in
/// the underlying graph. Vertex 0 is the root; vertices are numbered in
/// discovery order. Boundary = vertices at distance exactly `radius`.
pub fn ball<L: LazyDigraph>(lazy: &L, radius: usize) -> BallDigraph {
    ball_addressed(lazy, radius).0
}

/// [`ball`] together with the address behind every vertex.
pub fn ball_addressed<L: LazyDigraph>(lazy: &L, radius: usize) -> (BallDigraph, Vec<L::Addr>) {
    let root = lazy.root();
    let mut index: BTreeMap<L::Addr, Vertex> = BTreeMap::new();
    let mut addrs = vec![root.clone()];
    let mut dist = vec![0usize];
    index.insert(root, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut outs: Vec<Vec<L::Addr>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        if dist[i] == radius {
            continue;
        }
        let a = addrs[i].clone();
        let out = lazy.out_neighbors(&a);
        let inn = lazy.in_neighbors(&a);
        for b in out.iter().chain(&inn) {
            if !index.contains_key(b) {
                let j = addrs.len();
                index.insert(b.clone(), j);
                addrs.push(b.clone());
                dist.push(dist[i] + 1);
                queue.push_back(j);
            }
        }
    }
    for a in &addrs {
        outs.push(lazy.out_neighbors(a));
    }
    let mut edges = Vec::new();
    for (i, out) in outs.iter().enumerate() {
        for b in out {
            if let Some(&j) = index.get(b) {
                edges.push((i, j));
            }
        }
    }
    let labels = addrs.iter().map(|a| lazy.label(a)).collect();
    let digraph = Digraph::from_edge_list(addrs.len(), edges)
        .expect("lazy digraph must be irreflexive and antisymmetric")
        .with_labels(labels)
        .expect("one label per vertex");
    let boundary: Vec<Vertex> = (0..addrs.len()).filter(|&v| dist[v] == radius).collect();
    let end_proxies = shell_end_proxies(
        &digraph.underlying_graph(),
        &dist,
        radius,
        &boundary,
        DEFAULT_MARGIN,
    );
    let b = BallDigraph {
        digraph,
        root: 0,
        radius,
        boundary,
        end_proxies,
        distances: dist,
    };
    (b, addrs)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The directed line `… → -1 → 0 → 1 → …`.
    struct Line;

    impl LazyDigraph for Line {
        type Addr = i64;
        fn root(&self) -> i64 {
            0
        }
        fn out_neighbors(&self, a: &i64) -> Vec<i64> {
            vec![a + 1]
        }
        fn in_neighbors(&self, a: &i64) -> Vec<i64> {
            vec![a - 1]
        }
        fn label(&self, a: &i64) -> String {
            a.to_string()
        }
    }

    #[test]
    fn line_ball() {
        let b = ball(&Line, 3);
        assert_eq!(b.digraph.vertex_count(), 7);
        assert_eq!(b.digraph.edge_count(), 6);
        assert_eq!(b.boundary.len(), 2);
        assert_eq!(b.end_proxies.len(), 2);
        assert_eq!(b.interior(2).len(), 3);
        assert_eq!(b.digraph.label(b.root), "0");
    }

    #[test]
    fn exact_wrapper() {
        let d = Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = BallDigraph::exact(d);
        assert!(b.is_exact());
        assert_eq!(b.radius, 1);
        assert_eq!(b.interior(5).len(), 3);
    }
}
