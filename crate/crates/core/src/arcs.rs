//! Walks, arcs and the line digraph.

use thiserror::Error;

use crate::digraph::{Digraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Directed walk with pairwise distinct vertices (a k-arc).
    Arc,
    /// Walk with pairwise distinct vertices, orientation ignored.
    Path,
    /// Consecutive vertices adjacent.
    Walk,
    /// Walk whose consecutive traversed edges alternate between forward
    /// and backward.
    AlternatingWalk,
    /// A path that is also an arc.
    DirectedPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("{0} -> {1} is not an edge")]
    WrongOrientation(Vertex, Vertex),
    #[error("vertex {0} repeats")]
    Repeated(Vertex),
    #[error("edges at positions {0} and {1} do not alternate")]
    NotAlternating(usize, usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcSequence {
    pub vertices: Vec<Vertex>,
    pub kind: ArcKind,
}

impl ArcSequence {
    /// Checks the sequence against `d`.
    pub fn new(d: &Digraph, vertices: Vec<Vertex>, kind: ArcKind) -> Result<Self, ArcError> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= d.vertex_count()) {
            return Err(ArcError::UnknownVertex(v));
        }
        let distinct = matches!(kind, ArcKind::Arc | ArcKind::Path | ArcKind::DirectedPath);
        if distinct {
            let mut seen = std::collections::BTreeSet::new();
            for &v in &vertices {
                if !seen.insert(v) {
                    return Err(ArcError::Repeated(v));
                }
            }
        }
        let directed = matches!(kind, ArcKind::Arc | ArcKind::DirectedPath);
        let mut forward = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !d.adjacent(a, b) {
                return Err(ArcError::NotAdjacent(a, b));
            }
            if directed && !d.has_edge(a, b) {
                return Err(ArcError::WrongOrientation(a, b));
            }
            forward.push(d.has_edge(a, b));
        }
        if kind == ArcKind::AlternatingWalk {
            for (i, w) in forward.windows(2).enumerate() {
                if w[0] == w[1] {
                    return Err(ArcError::NotAlternating(i, i + 1));
                }
            }
        }
        Ok(ArcSequence { vertices, kind })
    }

    /// Number of traversed edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// All k-arcs of `d`, optionally only those starting at `anchor`, in
/// lexicographic order of their vertex sequences.
pub fn enumerate_k_arcs(d: &Digraph, k: usize, anchor: Option<Vertex>) -> Vec<ArcSequence> {
    let mut result = Vec::new();
    let starts: Vec<Vertex> = match anchor {
        Some(a) => vec![a],
        None => d.vertices().collect(),
    };
    let mut on_path = vec![false; d.vertex_count()];
    for s in starts {
        let mut path = vec![s];
        on_path[s] = true;
        extend_arcs(d, k, &mut path, &mut on_path, &mut result);
        on_path[s] = false;
    }
    result
}

fn extend_arcs(
    d: &Digraph,
    k: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<ArcSequence>,
) {
    if path.len() == k + 1 {
        out.push(ArcSequence {
            vertices: path.clone(),
            kind: ArcKind::Arc,
        });
        return;
    }
    let last = *path.last().expect("non-empty");
    for &w in d.out_neighbors(last) {
        if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_arcs(d, k, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// The line digraph: one vertex per edge of `d` (in lexicographic edge
/// order), and an edge `(u,v) -> (v,w)` for every 2-arc `u v w`.
/// Labels read `tail>head` using the labels of `d`.
pub fn line_digraph(d: &Digraph) -> Digraph {
    let edges: Vec<(Vertex, Vertex)> = d.edges().collect();
    let index = |e: (Vertex, Vertex)| edges.binary_search(&e).expect("edge present");
    let mut arcs = Vec::new();
    for (i, &(_, v)) in edges.iter().enumerate() {
        for &w in d.out_neighbors(v) {
            arcs.push((i, index((v, w))));
        }
    }
    let labels = edges
        .iter()
        .map(|&(u, v)| format!("{}>{}", d.label(u), d.label(v)))
        .collect();
    Digraph::from_edge_list(edges.len(), arcs)
        .expect("line digraph of a digraph is a digraph")
        .with_labels(labels)
        .expect("one label per edge")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn alternating_c4() -> Digraph {
        Digraph::from_edge_list(4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn k_arcs() {
        assert!(enumerate_k_arcs(&alternating_c4(), 2, None).is_empty());
        let arcs = enumerate_k_arcs(&triangle(), 2, None);
        assert_eq!(arcs.len(), 3);
        assert_eq!(arcs[0].vertices, vec![0, 1, 2]);
        assert_eq!(enumerate_k_arcs(&triangle(), 0, Some(1)).len(), 1);
        // a 3-arc would revisit a vertex
        assert!(enumerate_k_arcs(&triangle(), 3, None).is_empty());
    }

    #[test]
    fn sequence_validation() {
        let c4 = alternating_c4();
        assert!(ArcSequence::new(&c4, vec![0, 1, 2, 3, 0], ArcKind::AlternatingWalk).is_ok());
        assert_eq!(
            ArcSequence::new(&triangle(), vec![0, 1, 2], ArcKind::AlternatingWalk),
            Err(ArcError::NotAlternating(0, 1))
        );
        assert_eq!(
            ArcSequence::new(&triangle(), vec![1, 0], ArcKind::Arc),
            Err(ArcError::WrongOrientation(1, 0))
        );
        assert!(ArcSequence::new(&triangle(), vec![1, 0], ArcKind::Path).is_ok());
        assert_eq!(
            ArcSequence::new(&triangle(), vec![0, 1, 2, 0], ArcKind::Arc),
            Err(ArcError::Repeated(0))
        );
        assert!(ArcSequence::new(&triangle(), vec![0, 1, 2, 0], ArcKind::Walk).is_ok());
        assert_eq!(
            ArcSequence::new(&c4, vec![0, 2], ArcKind::Walk),
            Err(ArcError::NotAdjacent(0, 2))
        );
    }

    #[test]
    fn line_digraph_examples() {
        let l = line_digraph(&triangle());
        assert_eq!((l.vertex_count(), l.edge_count()), (3, 3));
        assert!(l.vertices().all(|v| l.out_degree(v) == 1 && l.in_degree(v) == 1));

        let l = line_digraph(&alternating_c4());
        assert_eq!((l.vertex_count(), l.edge_count()), (4, 0));

        let path = Digraph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        let l = line_digraph(&path);
        assert_eq!(l.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(l.labels().unwrap(), &["0>1".to_string(), "1>2".to_string()]);
    }
}
