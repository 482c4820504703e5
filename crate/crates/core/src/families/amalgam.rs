//! Tree-like amalgams of a finite block digraph.
//!
//! Every vertex lies in one copy of the block it was reached through (its
//! parent copy) and in further copies it owns. `own_positions(p)` lists the
//! positions a vertex takes in its own copies, given its position `p` in the
//! parent copy. A vertex address is the chain of `(copy, position)` steps
//! from the root copy: `[(0, j)]` is position `j` of the root copy, and
//! appending `(c, q)` moves to position `q` of the `c`-th copy (1-based)
//! owned by the prefix.

use crate::ball::LazyDigraph;
use crate::digraph::{Digraph, Vertex};

pub type Address = Vec<(u16, u16)>;

pub struct Amalgam {
    block: Digraph,
    own: Box<dyn Fn(usize) -> Vec<usize>>,
}

impl Amalgam {
    pub fn new(block: Digraph, own_positions: impl Fn(usize) -> Vec<usize> + 'static) -> Self {
        Amalgam {
            block,
            own: Box::new(own_positions),
        }
    }

    pub fn block(&self) -> &Digraph {
        &self.block
    }

    fn own_positions(&self, a: &Address) -> Vec<usize> {
        let &(_, pos) = a.last().expect("addresses are non-empty");
        (self.own)(pos as usize)
    }

    /// Every copy containing `a`: the members with their positions, and the
    /// position of `a` itself.
    fn copies(&self, a: &Address) -> Vec<(Vec<(Address, usize)>, usize)> {
        let b = self.block.vertex_count();
        let mut copies = Vec::new();
        let &(c, q) = a.last().expect("addresses are non-empty");
        let parent = if a.len() == 1 {
            (0..b).map(|j| (vec![(0u16, j as u16)], j)).collect()
        } else {
            let owner: Address = a[..a.len() - 1].to_vec();
            let owner_pos = self.own_positions(&owner)[c as usize - 1];
            let mut members = vec![(owner.clone(), owner_pos)];
            for j in (0..b).filter(|&j| j != owner_pos) {
                let mut m = owner.clone();
                m.push((c, j as u16));
                members.push((m, j));
            }
            members
        };
        copies.push((parent, q as usize));
        for (i, p) in self.own_positions(a).into_iter().enumerate() {
            let c = (i + 1) as u16;
            let mut members = vec![(a.clone(), p)];
            for j in (0..b).filter(|&j| j != p) {
                let mut m = a.clone();
                m.push((c, j as u16));
                members.push((m, j));
            }
            copies.push((members, p));
        }
        copies
    }

    fn neighbors(&self, a: &Address, out: bool) -> Vec<Address> {
        let mut result = Vec::new();
        for (members, me) in self.copies(a) {
            for (m, pos) in members {
                let edge = if out {
                    self.block.has_edge(me, pos)
                } else {
                    self.block.has_edge(pos, me)
                };
                if edge {
                    result.push(m);
                }
            }
        }
        result
    }

    /// Number of block copies through each vertex.
    pub fn copies_per_vertex(&self, pos: Vertex) -> usize {
        1 + (self.own)(pos).len()
    }
}

impl LazyDigraph for Amalgam {
    type Addr = Address;

    fn root(&self) -> Address {
        vec![(0, 0)]
    }

    fn out_neighbors(&self, a: &Address) -> Vec<Address> {
        self.neighbors(a, true)
    }

    fn in_neighbors(&self, a: &Address) -> Vec<Address> {
        self.neighbors(a, false)
    }

    fn label(&self, a: &Address) -> String {
        a.iter()
            .map(|(c, p)| format!("{c}.{p}"))
            .collect::<Vec<_>>()
            .join("/")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball;

    fn arc_tree(out: usize, inn: usize) -> Amalgam {
        let arc = Digraph::from_edge_list(2, [(0, 1)]).unwrap();
        Amalgam::new(arc, move |p| {
            let (o, i) = if p == 0 { (out - 1, inn) } else { (out, inn - 1) };
            let mut v = vec![0; o];
            v.extend(std::iter::repeat_n(1, i));
            v
        })
    }

    #[test]
    fn regular_arc_tree() {
        let b = ball(&arc_tree(2, 1), 3);
        // 3-regular tree: 1 + 3 + 6 + 12
        assert_eq!(b.digraph.vertex_count(), 22);
        for v in b.interior(1) {
            assert_eq!((b.digraph.out_degree(v), b.digraph.in_degree(v)), (2, 1));
        }
        assert!(b.digraph.underlying_graph().is_tree());
    }

    #[test]
    fn neighbour_relation_is_symmetric() {
        let a = arc_tree(2, 2);
        let b = ball(&a, 3);
        let labels = b.digraph.labels().unwrap().to_vec();
        for v in b.interior(1) {
            for &w in b.digraph.out_neighbors(v) {
                assert!(b.digraph.in_neighbors(w).contains(&v), "{} {}", labels[v], labels[w]);
            }
        }
    }
}
