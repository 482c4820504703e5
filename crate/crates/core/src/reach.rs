//! Reachability classes, descendant digraphs and neighbourhood graphs.
//!
//! Two edges are reachable from one another when some alternating walk
//! traverses both. Consecutive edges of an alternating walk share a tail or
//! share a head, so the classes are the connected components of the relation
//! "shares a tail or shares a head".

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digraph::{Digraph, Edge, Graph, Vertex};
use crate::iso::{find_isomorphism, IsoOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error("({0},{1}) is not an edge")]
    UnknownEdge(Vertex, Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("{{{0},{1}}} is not an edge of the graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("no reachability class avoids the excluded vertices")]
    NoInteriorEdge,
}

/// One class of the reachability relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachClass {
    pub representative: Edge,
    /// Class edges in lexicographic order.
    pub edges: Vec<Edge>,
    /// The class as a digraph on its endpoints.
    pub delta: Digraph,
    /// `vertices[i]` is the host vertex behind vertex `i` of `delta`.
    pub vertices: Vec<Vertex>,
    /// The class is all of the edge set. On a ball this only speaks for
    /// the ball.
    pub universal: bool,
}

/// Class index of every edge, edges taken in lexicographic order, with
/// classes numbered by their smallest edge.
pub fn edge_classes(d: &Digraph) -> (Vec<Edge>, Vec<usize>) {
    let edges: Vec<Edge> = d.edges().collect();
    let index = |e: Edge| edges.binary_search(&e).expect("edge present");
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for v in d.vertices() {
        let outs = d.out_neighbors(v);
        for w in outs.windows(2) {
            union(index((v, w[0])), index((v, w[1])));
        }
        let ins = d.in_neighbors(v);
        for w in ins.windows(2) {
            union(index((w[0], v)), index((w[1], v)));
        }
    }
    let mut number = vec![usize::MAX; edges.len()];
    let mut next = 0;
    let mut class = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        let r = find(&mut parent, i);
        if number[r] == usize::MAX {
            number[r] = next;
            next += 1;
        }
        class.push(number[r]);
    }
    (edges, class)
}

/// All reachability classes as edge lists, ordered by their smallest edge.
pub fn all_classes(d: &Digraph) -> Vec<Vec<Edge>> {
    let (edges, class) = edge_classes(d);
    let count = class.iter().copied().max().map_or(0, |c| c + 1);
    let mut out = vec![Vec::new(); count];
    for (e, c) in edges.into_iter().zip(class) {
        out[c].push(e);
    }
    out
}

fn build_class(d: &Digraph, representative: Edge, edges: Vec<Edge>) -> ReachClass {
    let (delta, vertices) = d.edge_subdigraph(&edges);
    let universal = edges.len() == d.edge_count();
    ReachClass {
        representative,
        edges,
        delta,
        vertices,
        universal,
    }
}

/// The class of `e`.
pub fn reachability_class(d: &Digraph, e: Edge) -> Result<ReachClass, ReachError> {
    if e.0 >= d.vertex_count() || e.1 >= d.vertex_count() || !d.has_edge(e.0, e.1) {
        return Err(ReachError::UnknownEdge(e.0, e.1));
    }
    let (edges, class) = edge_classes(d);
    let c = class[edges.binary_search(&e).expect("edge present")];
    let members = edges
        .into_iter()
        .zip(class)
        .filter(|&(_, k)| k == c)
        .map(|(f, _)| f)
        .collect();
    Ok(build_class(d, e, members))
}

/// A representative reachability digraph together with a census of classes.
#[derive(Debug, Clone)]
pub struct ReachabilityReport {
    pub delta: ReachClass,
    pub class_count: usize,
    /// Classes whose vertices all avoid the excluded set.
    pub interior_class_count: usize,
    /// Interior classes compared against the representative.
    pub compared: usize,
    /// Every compared class was isomorphic to the representative.
    pub all_isomorphic: bool,
    /// Set when the input is a truncation and universality cannot be judged.
    pub caveat: Option<String>,
}

/// Picks the interior class containing the smallest edge incident to
/// `prefer` (or the overall smallest interior class), then compares up to
/// `sample` other interior classes against it.
pub fn reachability_digraph(
    d: &Digraph,
    excluded: &[bool],
    prefer: Option<Vertex>,
    sample: usize,
) -> Result<ReachabilityReport, ReachError> {
    let classes = all_classes(d);
    let inside = |edges: &Vec<Edge>| {
        edges
            .iter()
            .all(|&(u, v)| !excluded.get(u).copied().unwrap_or(false) && !excluded.get(v).copied().unwrap_or(false))
    };
    let interior: Vec<usize> = (0..classes.len()).filter(|&i| inside(&classes[i])).collect();
    let chosen = prefer
        .and_then(|x| {
            interior
                .iter()
                .copied()
                .find(|&i| classes[i].iter().any(|&(u, v)| u == x || v == x))
        })
        .or_else(|| interior.first().copied())
        .ok_or(ReachError::NoInteriorEdge)?;
    let delta = build_class(d, classes[chosen][0], classes[chosen].clone());
    let mut compared = 0;
    let mut all_isomorphic = true;
    for &i in interior.iter().filter(|&&i| i != chosen).take(sample) {
        let (other, _) = d.edge_subdigraph(&classes[i]);
        compared += 1;
        if !matches!(
            find_isomorphism(&delta.delta, &other, IsoOptions::default()),
            Ok(Some(_))
        ) {
            all_isomorphic = false;
        }
    }
    let truncated = excluded.iter().any(|&b| b);
    Ok(ReachabilityReport {
        caveat: truncated.then(|| "universality judged within the ball only".to_string()),
        delta,
        class_count: classes.len(),
        interior_class_count: interior.len(),
        compared,
        all_isomorphic,
    })
}

/// The descendant digraph of `x`: everything reachable along directed paths,
/// induced. Returns the digraph and the host vertex behind each of its
/// vertices (ascending).
pub fn descendant_digraph(d: &Digraph, x: Vertex) -> Result<(Digraph, Vec<Vertex>), ReachError> {
    if x >= d.vertex_count() {
        return Err(ReachError::UnknownVertex(x));
    }
    let mut reach = d.forward_reachable(x);
    reach.sort_unstable();
    let sub = d.induced_subdigraph(&reach).expect("vertices are in range");
    Ok((sub, reach))
}

/// The neighbourhood graph of an edge `xy` of `G`: the subgraph induced on
/// `N(x) ∪ N(y) − {x, y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodGraph {
    pub graph: Graph,
    /// Host vertex behind each vertex of `graph` (ascending).
    pub vertices: Vec<Vertex>,
    /// `N(x) − y`, host ids.
    pub side_x: Vec<Vertex>,
    /// `N(y) − x`, host ids.
    pub side_y: Vec<Vertex>,
}

pub fn neighborhood_graph(g: &Graph, x: Vertex, y: Vertex) -> Result<NeighborhoodGraph, ReachError> {
    if x >= g.vertex_count() || y >= g.vertex_count() || !g.has_edge(x, y) {
        return Err(ReachError::NotAnEdge(x, y));
    }
    let side_x: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|&v| v != y).collect();
    let side_y: Vec<Vertex> = g.neighbors(y).iter().copied().filter(|&v| v != x).collect();
    let set: BTreeSet<Vertex> = side_x.iter().chain(&side_y).copied().collect();
    let set: Vec<Vertex> = set.into_iter().collect();
    let (graph, vertices) = g.induced(&set).expect("vertices are in range");
    Ok(NeighborhoodGraph {
        graph,
        vertices,
        side_x,
        side_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn alternating_cycle(m: usize) -> Digraph {
        let n = 2 * m;
        Digraph::from_edge_list(
            n,
            (0..n).map(|i| if i % 2 == 0 { (i, (i + 1) % n) } else { ((i + 1) % n, i) }),
        )
        .unwrap()
    }

    /// Closure by repeatedly adding edges that continue an alternating walk.
    fn closure_oracle(d: &Digraph, e: Edge) -> BTreeSet<Edge> {
        let mut class = BTreeSet::from([e]);
        loop {
            let mut grown = class.clone();
            for &(a, b) in &class {
                for f in d.edges() {
                    if f.0 == a || f.1 == b {
                        grown.insert(f);
                    }
                }
            }
            if grown.len() == class.len() {
                return class;
            }
            class = grown;
        }
    }

    #[test]
    fn triangle_has_singleton_classes() {
        let t = triangle();
        assert_eq!(all_classes(&t).len(), 3);
        let c = reachability_class(&t, (0, 1)).unwrap();
        assert_eq!(c.edges, vec![(0, 1)]);
        assert!(!c.universal);
    }

    #[test]
    fn alternating_cycle_is_one_class() {
        for m in 2..5 {
            let c = alternating_cycle(m);
            let class = reachability_class(&c, (0, 1)).unwrap();
            assert!(class.universal);
            assert_eq!(class.edges.len(), 2 * m);
        }
    }

    #[test]
    fn classes_match_closure() {
        let d = Digraph::from_edge_list(6, [(0, 1), (2, 1), (2, 3), (3, 4), (5, 4), (1, 5)]).unwrap();
        for e in d.edges() {
            let got: BTreeSet<Edge> = reachability_class(&d, e).unwrap().edges.into_iter().collect();
            assert_eq!(got, closure_oracle(&d, e));
        }
    }

    #[test]
    fn unknown_edge() {
        assert_eq!(
            reachability_class(&triangle(), (1, 0)),
            Err(ReachError::UnknownEdge(1, 0))
        );
    }

    #[test]
    fn descendants() {
        let e = Digraph::from_edge_list(2, [(0, 1)]).unwrap();
        let (d, v) = descendant_digraph(&e, 0).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count(), v), (2, 1, vec![0, 1]));
        let (d, _) = descendant_digraph(&triangle(), 2).unwrap();
        assert_eq!(d.edge_count(), 3);
        assert!(descendant_digraph(&triangle(), 7).is_err());
    }

    #[test]
    fn neighborhood_graphs() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let om = neighborhood_graph(&c6, 0, 1).unwrap();
        assert_eq!(om.vertices, vec![2, 5]);
        assert_eq!(om.graph.edge_count(), 0);
        let k22 = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let om = neighborhood_graph(&k22, 0, 2).unwrap();
        assert_eq!((om.graph.vertex_count(), om.graph.edge_count()), (2, 1));
        assert!(neighborhood_graph(&c6, 0, 2).is_err());
    }

    #[test]
    fn representative_avoids_excluded() {
        let c = alternating_cycle(3);
        let mut excluded = vec![false; 6];
        let r = reachability_digraph(&c, &excluded, None, 4).unwrap();
        assert_eq!(r.class_count, 1);
        assert!(r.caveat.is_none());
        excluded[3] = true;
        assert_eq!(
            reachability_digraph(&c, &excluded, None, 4).unwrap_err(),
            ReachError::NoInteriorEdge
        );
    }
}
