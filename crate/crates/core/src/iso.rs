//! Exact isomorphism search with partial-isomorphism seeds.
//!
//! The engine is a backtracking matcher over a joint colour refinement of
//! both inputs. Candidates for each vertex are drawn from the image of an
//! already-matched neighbour, so connected inputs are explored along their
//! breadth-first structure. Every mapping handed out is re-verified to
//! preserve edges and non-edges.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use thiserror::Error;

use crate::digraph::{Digraph, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("seed maps {0} outside the target vertex set")]
    SeedOutOfRange(Vertex),
    #[error("seed is not injective: {0} and {1} share an image")]
    SeedNotInjective(Vertex, Vertex),
    #[error("seed does not preserve adjacency between {0} and {1}")]
    SeedNotPartialIsomorphism(Vertex, Vertex),
    #[error("class vector has length {got}, expected {expected}")]
    ClassLength { expected: usize, got: usize },
}

/// An injective association between vertices of two digraphs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct VertexMapping {
    map: BTreeMap<Vertex, Vertex>,
}

impl VertexMapping {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        VertexMapping {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, from: Vertex, to: Vertex) {
        self.map.insert(from, to);
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.map.get(&v).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Whether the domain is all of `0..vertex_count`.
    pub fn is_total(&self, vertex_count: usize) -> bool {
        self.map.len() == vertex_count && self.map.keys().all(|&v| v < vertex_count)
    }

    pub fn is_injective(&self) -> bool {
        let mut images: Vec<Vertex> = self.map.values().copied().collect();
        images.sort_unstable();
        images.windows(2).all(|w| w[0] != w[1])
    }

    pub fn inverse(&self) -> VertexMapping {
        VertexMapping::from_pairs(self.pairs().map(|(a, b)| (b, a)))
    }

    /// For all `u, v` in the domain: `uv ∈ E(d1) ⇔ f(u)f(v) ∈ E(d2)`.
    pub fn preserves(&self, d1: &Digraph, d2: &Digraph) -> bool {
        self.preserves_relation(&|u, v| d1.has_edge(u, v), &|u, v| d2.has_edge(u, v))
    }

    pub fn preserves_graph(&self, g1: &Graph, g2: &Graph) -> bool {
        self.preserves_relation(&|u, v| g1.has_edge(u, v), &|u, v| g2.has_edge(u, v))
    }

    fn preserves_relation(
        &self,
        r1: &dyn Fn(Vertex, Vertex) -> bool,
        r2: &dyn Fn(Vertex, Vertex) -> bool,
    ) -> bool {
        if !self.is_injective() {
            return false;
        }
        let pairs: Vec<(Vertex, Vertex)> = self.pairs().collect();
        pairs.iter().all(|&(u, fu)| {
            pairs
                .iter()
                .all(|&(v, fv)| u == v || r1(u, v) == r2(fu, fv))
        })
    }

    /// Dense form `f[v]`; panics when the mapping is not total on `0..n`.
    pub fn to_vec(&self, n: usize) -> Vec<Vertex> {
        (0..n).map(|v| self.map[&v]).collect()
    }
}

/// Optional constraints for the search.
#[derive(Debug, Clone, Copy, Default)]
pub struct IsoOptions<'a> {
    /// Partial isomorphism the result must extend.
    pub seed: Option<&'a VertexMapping>,
    /// Vertex classes; vertices may only map within equal class ids.
    pub classes: Option<(&'a [usize], &'a [usize])>,
}

impl<'a> IsoOptions<'a> {
    pub fn seeded(seed: &'a VertexMapping) -> Self {
        IsoOptions {
            seed: Some(seed),
            classes: None,
        }
    }

    pub fn with_classes(mut self, c1: &'a [usize], c2: &'a [usize]) -> Self {
        self.classes = Some((c1, c2));
        self
    }
}

/// A full isomorphism `d1 → d2` extending the seed and honouring the classes,
/// or `None` when none exists.
pub fn find_isomorphism(
    d1: &Digraph,
    d2: &Digraph,
    opts: IsoOptions<'_>,
) -> Result<Option<VertexMapping>, IsoError> {
    let mut found = None;
    for_each_isomorphism(d1, d2, opts, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn are_isomorphic(d1: &Digraph, d2: &Digraph) -> bool {
    matches!(find_isomorphism(d1, d2, IsoOptions::default()), Ok(Some(_)))
}

/// Visits every isomorphism `d1 → d2` honouring `opts` until the visitor breaks.
pub fn for_each_isomorphism(
    d1: &Digraph,
    d2: &Digraph,
    opts: IsoOptions<'_>,
    mut visit: impl FnMut(&VertexMapping) -> ControlFlow<()>,
) -> Result<(), IsoError> {
    let r1 = Relation::from_digraph(d1);
    let r2 = Relation::from_digraph(d2);
    run(&r1, &r2, opts, &mut |m| {
        debug_assert!(m.preserves(d1, d2));
        visit(m)
    })
}

pub fn find_graph_isomorphism(
    g1: &Graph,
    g2: &Graph,
    opts: IsoOptions<'_>,
) -> Result<Option<VertexMapping>, IsoError> {
    let r1 = Relation::from_graph(g1);
    let r2 = Relation::from_graph(g2);
    let mut found = None;
    run(&r1, &r2, opts, &mut |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn graphs_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    matches!(
        find_graph_isomorphism(g1, g2, IsoOptions::default()),
        Ok(Some(_))
    )
}

/// Automorphisms of `d`, up to `cap` of them. The flag reports whether the
/// enumeration finished.
pub fn automorphisms(d: &Digraph, cap: usize) -> (Vec<VertexMapping>, bool) {
    let mut all = Vec::new();
    let mut complete = true;
    for_each_isomorphism(d, d, IsoOptions::default(), |m| {
        if all.len() == cap {
            complete = false;
            return ControlFlow::Break(());
        }
        all.push(m.clone());
        ControlFlow::Continue(())
    })
    .expect("no seed, no error");
    (all, complete)
}

/// Automorphisms of an undirected graph, up to `cap` of them, with the
/// same completeness flag as [`automorphisms`].
pub fn graph_automorphisms(g: &Graph, cap: usize) -> (Vec<VertexMapping>, bool) {
    let r = Relation::from_graph(g);
    let mut all = Vec::new();
    let mut complete = true;
    run(&r, &r, IsoOptions::default(), &mut |m| {
        if all.len() == cap {
            complete = false;
            return ControlFlow::Break(());
        }
        all.push(m.clone());
        ControlFlow::Continue(())
    })
    .expect("no seed, no error");
    (all, complete)
}

/// Adjacency in a form both digraphs and graphs reduce to.
struct Relation {
    n: usize,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    words: usize,
    bits: Vec<u64>,
    edge_count: usize,
}

impl Relation {
    fn build(n: usize, out: Vec<Vec<Vertex>>, inn: Vec<Vec<Vertex>>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut edge_count = 0;
        for (u, heads) in out.iter().enumerate() {
            for &v in heads {
                bits[u * words + v / 64] |= 1 << (v % 64);
                edge_count += 1;
            }
        }
        Relation {
            n,
            out,
            inn,
            words,
            bits,
            edge_count,
        }
    }

    fn from_digraph(d: &Digraph) -> Self {
        let out = d.vertices().map(|v| d.out_neighbors(v).to_vec()).collect();
        let inn = d.vertices().map(|v| d.in_neighbors(v).to_vec()).collect();
        Self::build(d.vertex_count(), out, inn)
    }

    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
        Self::build(g.vertex_count(), adj.clone(), adj)
    }

    #[inline]
    fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

fn run(
    r1: &Relation,
    r2: &Relation,
    opts: IsoOptions<'_>,
    visit: &mut dyn FnMut(&VertexMapping) -> ControlFlow<()>,
) -> Result<(), IsoError> {
    if let Some((c1, c2)) = opts.classes {
        if c1.len() != r1.n {
            return Err(IsoError::ClassLength {
                expected: r1.n,
                got: c1.len(),
            });
        }
        if c2.len() != r2.n {
            return Err(IsoError::ClassLength {
                expected: r2.n,
                got: c2.len(),
            });
        }
    }
    let seed: Vec<(Vertex, Vertex)> = opts.seed.map(|s| s.pairs().collect()).unwrap_or_default();
    for &(u, v) in &seed {
        if u >= r1.n {
            return Err(IsoError::SeedOutOfRange(u));
        }
        if v >= r2.n {
            return Err(IsoError::SeedOutOfRange(v));
        }
    }
    let mut image_owner: HashMap<Vertex, Vertex> = HashMap::new();
    for &(u, v) in &seed {
        if let Some(&w) = image_owner.get(&v) {
            return Err(IsoError::SeedNotInjective(w, u));
        }
        image_owner.insert(v, u);
    }
    for &(u, fu) in &seed {
        for &(v, fv) in &seed {
            if u != v && r1.has(u, v) != r2.has(fu, fv) {
                return Err(IsoError::SeedNotPartialIsomorphism(u, v));
            }
        }
    }
    if r1.n != r2.n || r1.edge_count != r2.edge_count {
        return Ok(());
    }
    let Some(colors) = refine(r1, r2, &seed, opts.classes) else {
        return Ok(());
    };
    let mut m = Matcher::new(r1, r2, colors, &seed);
    m.search(visit);
    Ok(())
}

/// Joint colour refinement of both relations. Returns `None` when the colour
/// histograms differ, which rules out any isomorphism.
fn refine(
    r1: &Relation,
    r2: &Relation,
    seed: &[(Vertex, Vertex)],
    classes: Option<(&[usize], &[usize])>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = r1.n;
    let mut key1: Vec<(usize, usize, usize, usize)> = (0..n)
        .map(|v| {
            let class = classes.map_or(0, |c| c.0[v]);
            (class, usize::MAX, r1.out[v].len(), r1.inn[v].len())
        })
        .collect();
    let mut key2: Vec<(usize, usize, usize, usize)> = (0..n)
        .map(|v| {
            let class = classes.map_or(0, |c| c.1[v]);
            (class, usize::MAX, r2.out[v].len(), r2.inn[v].len())
        })
        .collect();
    for (i, &(u, v)) in seed.iter().enumerate() {
        key1[u].1 = i;
        key2[v].1 = i;
    }
    let mut c1 = compress(&key1, &key2);
    let mut c2 = c1.split_off(n);
    let mut count = distinct(&c1, &c2);
    loop {
        let sig = |r: &Relation, c: &[usize], v: Vertex| -> (usize, Vec<usize>, Vec<usize>) {
            let mut o: Vec<usize> = r.out[v].iter().map(|&w| c[w]).collect();
            let mut i: Vec<usize> = r.inn[v].iter().map(|&w| c[w]).collect();
            o.sort_unstable();
            i.sort_unstable();
            (c[v], o, i)
        };
        let s1: Vec<_> = (0..n).map(|v| sig(r1, &c1, v)).collect();
        let s2: Vec<_> = (0..n).map(|v| sig(r2, &c2, v)).collect();
        let mut next1 = compress(&s1, &s2);
        let next2 = next1.split_off(n);
        let next_count = distinct(&next1, &next2);
        c1 = next1;
        c2 = next2;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let mut hist: HashMap<usize, isize> = HashMap::new();
    for &c in &c1 {
        *hist.entry(c).or_insert(0) += 1;
    }
    for &c in &c2 {
        *hist.entry(c).or_insert(0) -= 1;
    }
    if hist.values().any(|&x| x != 0) {
        return None;
    }
    Some((c1, c2))
}

fn compress<K: Ord + Clone>(a: &[K], b: &[K]) -> Vec<usize> {
    let mut all: Vec<&K> = a.iter().chain(b).collect();
    all.sort();
    all.dedup();
    a.iter()
        .chain(b)
        .map(|k| all.binary_search(&k).expect("present"))
        .collect()
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

#[derive(Clone, Copy)]
enum Via {
    Out(Vertex),
    In(Vertex),
    Free,
}

struct Matcher<'r> {
    r1: &'r Relation,
    r2: &'r Relation,
    c1: Vec<usize>,
    c2: Vec<usize>,
    by_color2: HashMap<usize, Vec<Vertex>>,
    order: Vec<Vertex>,
    via: Vec<Via>,
    seeded: usize,
    map12: Vec<usize>,
    map21: Vec<usize>,
}

const UNMAPPED: usize = usize::MAX;

impl<'r> Matcher<'r> {
    fn new(
        r1: &'r Relation,
        r2: &'r Relation,
        (c1, c2): (Vec<usize>, Vec<usize>),
        seed: &[(Vertex, Vertex)],
    ) -> Self {
        let n = r1.n;
        let mut by_color2: HashMap<usize, Vec<Vertex>> = HashMap::new();
        for v in 0..n {
            by_color2.entry(c2[v]).or_default().push(v);
        }
        let mut class_size: HashMap<usize, usize> = HashMap::new();
        for &c in &c1 {
            *class_size.entry(c).or_insert(0) += 1;
        }
        // matching order: seed first, then greedily the vertex with the most
        // already-ordered neighbours, preferring small colour classes
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut via = Vec::with_capacity(n);
        let place = |v: Vertex, order: &mut Vec<Vertex>, links: &mut Vec<usize>, placed: &mut Vec<bool>| {
            placed[v] = true;
            order.push(v);
            for &w in r1.out[v].iter().chain(&r1.inn[v]) {
                links[w] += 1;
            }
        };
        for &(u, _) in seed {
            place(u, &mut order, &mut links, &mut placed);
            via.push(Via::Free);
        }
        let mut map12 = vec![UNMAPPED; n];
        let mut map21 = vec![UNMAPPED; n];
        for &(u, v) in seed {
            map12[u] = v;
            map21[v] = u;
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| (usize::MAX - links[v], class_size[&c1[v]], v))
                .expect("unplaced vertex exists");
            let parent_in = r1.inn[next].iter().copied().find(|&p| placed[p]);
            let parent_out = r1.out[next].iter().copied().find(|&p| placed[p]);
            let how = match (parent_in, parent_out) {
                (Some(p), _) => Via::Out(p),
                (None, Some(p)) => Via::In(p),
                (None, None) => Via::Free,
            };
            place(next, &mut order, &mut links, &mut placed);
            via.push(how);
        }
        Matcher {
            r1,
            r2,
            c1,
            c2,
            by_color2,
            order,
            via,
            seeded: seed.len(),
            map12,
            map21,
        }
    }

    fn candidates(&self, pos: usize) -> Vec<Vertex> {
        let u = self.order[pos];
        let color = self.c1[u];
        let pool: &[Vertex] = match self.via[pos] {
            // u is an out-neighbour of p, so its image is an out-neighbour of f(p)
            Via::Out(p) => &self.r2.out[self.map12[p]],
            Via::In(p) => &self.r2.inn[self.map12[p]],
            Via::Free => self.by_color2.get(&color).map_or(&[], Vec::as_slice),
        };
        pool.iter()
            .copied()
            .filter(|&v| self.map21[v] == UNMAPPED && self.c2[v] == color)
            .collect()
    }

    fn feasible(&self, u: Vertex, v: Vertex) -> bool {
        let (r1, r2) = (self.r1, self.r2);
        let mut mapped_out = 0;
        for &w in &r1.out[u] {
            let fw = self.map12[w];
            if fw != UNMAPPED {
                if !r2.has(v, fw) {
                    return false;
                }
                mapped_out += 1;
            }
        }
        let mut mapped_in = 0;
        for &w in &r1.inn[u] {
            let fw = self.map12[w];
            if fw != UNMAPPED {
                if !r2.has(fw, v) {
                    return false;
                }
                mapped_in += 1;
            }
        }
        let out2 = r2.out[v].iter().filter(|&&x| self.map21[x] != UNMAPPED).count();
        let in2 = r2.inn[v].iter().filter(|&&x| self.map21[x] != UNMAPPED).count();
        out2 == mapped_out && in2 == mapped_in
    }

    fn emit(&self, visit: &mut dyn FnMut(&VertexMapping) -> ControlFlow<()>) -> ControlFlow<()> {
        let m = VertexMapping::from_pairs(self.map12.iter().copied().enumerate());
        // independent re-verification of every edge; bijectivity is by construction
        for u in 0..self.r1.n {
            for &w in &self.r1.out[u] {
                assert!(
                    self.r2.has(self.map12[u], self.map12[w]),
                    "matcher produced an edge-violating map"
                );
            }
        }
        visit(&m)
    }

    fn search(&mut self, visit: &mut dyn FnMut(&VertexMapping) -> ControlFlow<()>) {
        let n = self.order.len();
        let start = self.seeded;
        if start == n {
            let _ = self.emit(visit);
            return;
        }
        let mut cands: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut next = vec![0usize; n];
        let mut pos = start;
        cands[pos] = self.candidates(pos);
        loop {
            if next[pos] < cands[pos].len() {
                let v = cands[pos][next[pos]];
                next[pos] += 1;
                let u = self.order[pos];
                if !self.feasible(u, v) {
                    continue;
                }
                self.map12[u] = v;
                self.map21[v] = u;
                if pos + 1 == n {
                    let flow = self.emit(visit);
                    self.map12[u] = UNMAPPED;
                    self.map21[v] = UNMAPPED;
                    if flow.is_break() {
                        return;
                    }
                    continue;
                }
                pos += 1;
                cands[pos] = self.candidates(pos);
                next[pos] = 0;
            } else {
                if pos == start {
                    return;
                }
                pos -= 1;
                let u = self.order[pos];
                let v = self.map12[u];
                self.map12[u] = UNMAPPED;
                self.map21[v] = UNMAPPED;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive3() -> Digraph {
        Digraph::from_edge_list(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn seeded_rotation() {
        let seed = VertexMapping::from_pairs([(0, 1)]);
        let m = find_isomorphism(&triangle(), &triangle(), IsoOptions::seeded(&seed))
            .unwrap()
            .unwrap();
        assert_eq!(m.to_vec(3), vec![1, 2, 0]);
        assert!(m.preserves(&triangle(), &triangle()));
    }

    #[test]
    fn different_degree_multisets() {
        assert!(find_isomorphism(&transitive3(), &triangle(), IsoOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn invalid_seeds() {
        let t = triangle();
        let s = VertexMapping::from_pairs([(0, 1), (1, 1)]);
        assert!(matches!(
            find_isomorphism(&t, &t, IsoOptions::seeded(&s)),
            Err(IsoError::SeedNotInjective(..))
        ));
        let s = VertexMapping::from_pairs([(0, 1), (1, 0)]);
        assert!(matches!(
            find_isomorphism(&t, &t, IsoOptions::seeded(&s)),
            Err(IsoError::SeedNotPartialIsomorphism(..))
        ));
        let s = VertexMapping::from_pairs([(0, 5)]);
        assert!(matches!(
            find_isomorphism(&t, &t, IsoOptions::seeded(&s)),
            Err(IsoError::SeedOutOfRange(5))
        ));
    }

    #[test]
    fn classes_are_respected() {
        let t = triangle();
        let c1 = [0, 1, 1];
        let c2 = [1, 0, 1];
        let m = find_isomorphism(&t, &t, IsoOptions::default().with_classes(&c1, &c2))
            .unwrap()
            .unwrap();
        assert_eq!(m.get(0), Some(1));
        let c2 = [1, 1, 1];
        assert!(find_isomorphism(&t, &t, IsoOptions::default().with_classes(&c1, &c2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&triangle(), 100).0.len(), 3);
        assert_eq!(automorphisms(&transitive3(), 100).0.len(), 1);
        let k23 = Digraph::from_edge_list(5, (0..2).flat_map(|a| (2..5).map(move |b| (a, b)))).unwrap();
        assert_eq!(automorphisms(&k23, 100).0.len(), 12);
        let (some, complete) = automorphisms(&k23, 5);
        assert_eq!(some.len(), 5);
        assert!(!complete);
    }

    #[test]
    fn undirected_matching() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let relabeled = Graph::from_edges(6, [(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        assert!(graphs_isomorphic(&c6, &relabeled));
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!graphs_isomorphic(&c6, &two_triangles));
    }
}
