//! The subdivided-tree constructions `M(κ,m)` and `M'(2m)`.
//!
//! Both start from a semi-regular tree with parts `U` and `W`, subdivide
//! every tree edge once and keep only the subdivision vertices. A tree node
//! is the port path from the root (a `U` node); for non-root nodes port 0
//! leads back to the parent. A subdivision vertex is named by the path of
//! the deeper endpoint of its tree edge.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ball::{ball_addressed, BallDigraph, LazyDigraph};

pub type Node = Vec<u8>;

/// How the neighbourhood of each `U` node is cyclically ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CyclicOrder {
    /// Port order.
    #[default]
    Generation,
    /// Port order reversed (for `M'`, indices `i ↦ 2m+1−i`).
    Reversed,
    /// A pseudo-random order per node, reproducible from the seed. `M` only.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Edges from `x` to `σ(y)` for every other `y` at the `W` end of `x`.
    M,
    /// Edges from `a_w, σ(a_w)` to `b_w, σ(b_w)`.
    MPrime,
}

/// Lazy description of `M(κ,m)` or `M'(2m)`.
#[derive(Debug, Clone)]
pub struct Scaffold {
    u_degree: usize,
    w_degree: usize,
    order: CyclicOrder,
    rule: Rule,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Scaffold {
    /// `M(κ,m)`: tree `T_{κ,m}` with `U` nodes of degree `m` and `W` nodes of
    /// degree `κ`.
    pub fn m(kappa: usize, m: usize, order: CyclicOrder) -> Self {
        Scaffold {
            u_degree: m,
            w_degree: kappa,
            order,
            rule: Rule::M,
        }
    }

    /// `M'(2m)`: tree `T_{2,2m}`.
    pub fn m_prime(m: usize, order: CyclicOrder) -> Self {
        assert!(
            !matches!(order, CyclicOrder::Seeded(_)),
            "M' orders are fixed by the parity enumeration"
        );
        Scaffold {
            u_degree: 2 * m,
            w_degree: 2,
            order,
            rule: Rule::MPrime,
        }
    }

    fn is_u(node: &[u8]) -> bool {
        node.len().is_multiple_of(2)
    }

    fn degree(&self, node: &[u8]) -> usize {
        if Self::is_u(node) {
            self.u_degree
        } else {
            self.w_degree
        }
    }

    /// Subdivision vertex behind `port` of `node`.
    fn edge_at(node: &[u8], port: usize) -> Node {
        if !node.is_empty() && port == 0 {
            node.to_vec()
        } else {
            let mut e = node.to_vec();
            e.push(port as u8);
            e
        }
    }

    /// Port of `node` leading to subdivision vertex `e`.
    fn port_of(node: &[u8], e: &[u8]) -> usize {
        if e == node {
            0
        } else {
            debug_assert_eq!(&e[..e.len() - 1], node);
            e[e.len() - 1] as usize
        }
    }

    fn incident(&self, node: &[u8]) -> Vec<Node> {
        (0..self.degree(node)).map(|p| Self::edge_at(node, p)).collect()
    }

    /// `(u_y, w_y)`.
    pub fn ends(e: &[u8]) -> (Node, Node) {
        let parent = e[..e.len() - 1].to_vec();
        if Self::is_u(&parent) {
            (parent, e.to_vec())
        } else {
            (e.to_vec(), parent)
        }
    }

    /// Cyclic order of the ports of a `U` node, as a port sequence.
    fn port_cycle(&self, u: &[u8]) -> Vec<usize> {
        let d = self.u_degree;
        match self.order {
            CyclicOrder::Generation => (0..d).collect(),
            CyclicOrder::Reversed => (0..d).rev().collect(),
            CyclicOrder::Seeded(seed) => {
                let key = u.iter().fold(splitmix(seed), |h, &p| splitmix(h ^ (p as u64 + 1)));
                let mut ports: Vec<usize> = (0..d).collect();
                ports.shuffle(&mut ChaCha8Rng::seed_from_u64(splitmix(key ^ u.len() as u64)));
                ports
            }
        }
    }

    /// Offset of the 1-based parity enumeration at `u` (`M'` only): the
    /// index of port `p` is `((p + shift) mod 2m) + 1`, reversed when asked.
    fn shift(&self, u: &[u8]) -> usize {
        let d = self.u_degree;
        let mut shift = 0;
        let mut depth = 2;
        while depth <= u.len() {
            let port_at_grandparent = u[depth - 2] as usize;
            // forward index; the edge towards the grandparent is port 0 here
            let i0 = (port_at_grandparent + shift) % d + 1;
            shift = if i0.is_multiple_of(2) { 0 } else { 1 };
            depth += 2;
        }
        // a reversed enumeration flips every parity, so the choice made for
        // the forward enumeration stays valid
        shift
    }

    fn index_with_shift(&self, port: usize, shift: usize) -> usize {
        let d = self.u_degree;
        let i = (port + shift) % d + 1;
        match self.order {
            CyclicOrder::Reversed => d + 1 - i,
            _ => i,
        }
    }

    /// 1-based index of subdivision vertex `e` at its `U` end (`M'` only).
    pub fn index(&self, e: &[u8]) -> usize {
        let (u, _) = Self::ends(e);
        self.index_with_shift(Self::port_of(&u, e), self.shift(&u))
    }

    fn edge_with_index(&self, u: &[u8], index: usize) -> Node {
        let d = self.u_degree;
        let forward = match self.order {
            CyclicOrder::Reversed => d + 1 - index,
            _ => index,
        };
        let port = (forward - 1 + d - self.shift(u) % d) % d;
        Self::edge_at(u, port)
    }

    /// Successor of `e` in the cyclic order at its `U` end.
    pub fn sigma(&self, e: &[u8]) -> Node {
        self.step(e, true)
    }

    pub fn sigma_inverse(&self, e: &[u8]) -> Node {
        self.step(e, false)
    }

    fn step(&self, e: &[u8], forward: bool) -> Node {
        let (u, _) = Self::ends(e);
        let d = self.u_degree;
        match self.rule {
            Rule::MPrime => {
                let i = self.index(e);
                let j = if forward { i % d + 1 } else { (i + d - 2) % d + 1 };
                self.edge_with_index(&u, j)
            }
            Rule::M => {
                let cycle = self.port_cycle(&u);
                let p = Self::port_of(&u, e);
                let at = cycle.iter().position(|&q| q == p).expect("port in cycle");
                let next = if forward { (at + 1) % d } else { (at + d - 1) % d };
                Self::edge_at(&u, cycle[next])
            }
        }
    }

    /// `(a_w, b_w)`: the neighbours of `w` with even and odd index (`M'`).
    pub fn pair(&self, w: &[u8]) -> (Node, Node) {
        let n = self.incident(w);
        if self.index(&n[0]).is_multiple_of(2) {
            (n[0].clone(), n[1].clone())
        } else {
            (n[1].clone(), n[0].clone())
        }
    }

    pub fn label(e: &[u8]) -> String {
        format!("e{}", join(e))
    }

    pub fn node_label(node: &[u8]) -> String {
        let tag = if Self::is_u(node) { "u" } else { "w" };
        format!("{tag}{}", join(node))
    }
}

fn join(path: &[u8]) -> String {
    path.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(".")
}

impl LazyDigraph for Scaffold {
    type Addr = Node;

    fn root(&self) -> Node {
        vec![0]
    }

    fn out_neighbors(&self, x: &Node) -> Vec<Node> {
        match self.rule {
            Rule::M => {
                let (_, w) = Self::ends(x);
                self.incident(&w)
                    .into_iter()
                    .filter(|y| y != x)
                    .map(|y| self.sigma(&y))
                    .collect()
            }
            Rule::MPrime => {
                let w = if self.index(x).is_multiple_of(2) {
                    Self::ends(x).1
                } else {
                    Self::ends(&self.sigma_inverse(x)).1
                };
                let (_, b) = self.pair(&w);
                let sb = self.sigma(&b);
                vec![b, sb]
            }
        }
    }

    fn in_neighbors(&self, x: &Node) -> Vec<Node> {
        match self.rule {
            Rule::M => {
                let y = self.sigma_inverse(x);
                let (_, w) = Self::ends(&y);
                self.incident(&w).into_iter().filter(|z| *z != y).collect()
            }
            Rule::MPrime => {
                let w = if self.index(x) % 2 == 1 {
                    Self::ends(x).1
                } else {
                    Self::ends(&self.sigma_inverse(x)).1
                };
                let (a, _) = self.pair(&w);
                let sa = self.sigma(&a);
                vec![a, sa]
            }
        }
    }

    fn label(&self, x: &Node) -> String {
        Self::label(x)
    }
}

/// Per-vertex record of how a ball vertex arose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub label: String,
    pub u: String,
    pub w: String,
    pub sigma: String,
    /// `M'` only: 1-based index at the `U` end.
    pub index: Option<usize>,
}

/// Audit data for an `M` or `M'` ball.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructionTrace {
    /// `U` nodes touched by the ball.
    pub u_nodes: Vec<String>,
    /// `W` nodes touched by the ball.
    pub w_nodes: Vec<String>,
    /// One entry per ball vertex, in vertex order.
    pub vertices: Vec<TraceEntry>,
    /// Neighbourhood of each touched `U` node in cyclic order.
    pub cyclic_orders: BTreeMap<String, Vec<String>>,
    /// `(a_w, b_w)` for each touched `W` node (`M'` only).
    pub pairs: BTreeMap<String, (String, String)>,
}

impl ConstructionTrace {
    /// Whether σ walks each recorded neighbourhood as one cycle.
    pub fn sigma_is_cyclic(&self, scaffold: &Scaffold) -> bool {
        self.cyclic_orders.iter().all(|(_, order)| {
            order.len() == scaffold.u_degree && {
                let mut seen = std::collections::BTreeSet::new();
                order.iter().all(|l| seen.insert(l.clone()))
            }
        })
    }
}

/// Builds the ball and its trace.
pub fn build(scaffold: &Scaffold, radius: usize) -> (BallDigraph, ConstructionTrace) {
    let (b, addrs) = ball_addressed(scaffold, radius);
    let mut trace = ConstructionTrace::default();
    let mut us = std::collections::BTreeSet::new();
    let mut ws = std::collections::BTreeSet::new();
    for e in &addrs {
        let (u, w) = Scaffold::ends(e);
        trace.vertices.push(TraceEntry {
            label: Scaffold::label(e),
            u: Scaffold::node_label(&u),
            w: Scaffold::node_label(&w),
            sigma: Scaffold::label(&scaffold.sigma(e)),
            index: (scaffold.rule == Rule::MPrime).then(|| scaffold.index(e)),
        });
        us.insert(u);
        ws.insert(w);
    }
    for u in &us {
        let start = Scaffold::edge_at(u, 0);
        let mut order = vec![Scaffold::label(&start)];
        let mut e = scaffold.sigma(&start);
        while e != start && order.len() <= scaffold.u_degree {
            order.push(Scaffold::label(&e));
            e = scaffold.sigma(&e);
        }
        trace.cyclic_orders.insert(Scaffold::node_label(u), order);
    }
    if scaffold.rule == Rule::MPrime {
        for w in &ws {
            let (a, b2) = scaffold.pair(w);
            trace
                .pairs
                .insert(Scaffold::node_label(w), (Scaffold::label(&a), Scaffold::label(&b2)));
        }
    }
    trace.u_nodes = us.iter().map(|u| Scaffold::node_label(u)).collect();
    trace.w_nodes = ws.iter().map(|w| Scaffold::node_label(w)).collect();
    (b, trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_degrees(b: &BallDigraph) -> std::collections::BTreeSet<(usize, usize)> {
        b.interior(1)
            .into_iter()
            .map(|v| (b.digraph.out_degree(v), b.digraph.in_degree(v)))
            .collect()
    }

    #[test]
    fn m_degrees() {
        for (kappa, m) in [(3, 2), (3, 3), (4, 2)] {
            let (b, trace) = build(&Scaffold::m(kappa, m, CyclicOrder::Generation), 4);
            assert_eq!(interior_degrees(&b), [(kappa - 1, kappa - 1)].into());
            assert!(trace.sigma_is_cyclic(&Scaffold::m(kappa, m, CyclicOrder::Generation)));
            assert!(b.digraph.labels().unwrap().iter().all(|l| l.starts_with('e')));
        }
    }

    #[test]
    fn m_prime_degrees_and_parity() {
        for m in [2, 3] {
            for order in [CyclicOrder::Generation, CyclicOrder::Reversed] {
                let s = Scaffold::m_prime(m, order);
                let (b, trace) = build(&s, 4);
                assert_eq!(interior_degrees(&b), [(2, 2)].into());
                for (a, bw) in trace.pairs.values() {
                    let ia = trace.vertices.iter().find(|t| &t.label == a).map(|t| t.index);
                    let ib = trace.vertices.iter().find(|t| &t.label == bw).map(|t| t.index);
                    if let (Some(Some(ia)), Some(Some(ib))) = (ia, ib) {
                        assert_eq!((ia % 2, ib % 2), (0, 1));
                    }
                }
                assert!(trace.sigma_is_cyclic(&s));
            }
        }
    }

    #[test]
    fn neighbourhoods_agree() {
        for s in [
            Scaffold::m(3, 2, CyclicOrder::Generation),
            Scaffold::m(4, 3, CyclicOrder::Seeded(9)),
            Scaffold::m_prime(3, CyclicOrder::Generation),
            Scaffold::m_prime(2, CyclicOrder::Reversed),
        ] {
            let (_, addrs) = ball_addressed(&s, 3);
            for x in &addrs {
                for y in s.out_neighbors(x) {
                    assert!(s.in_neighbors(&y).contains(x));
                }
                for y in s.in_neighbors(x) {
                    assert!(s.out_neighbors(&y).contains(x));
                }
                assert_eq!(s.sigma_inverse(&s.sigma(x)), *x);
            }
        }
    }
}
