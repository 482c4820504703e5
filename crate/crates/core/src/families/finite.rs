//! Finite family members: bipartite catalog digraphs, tournaments and
//! finite approximations of the generic bipartite digraph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::TournamentKind;
use super::FamilyError;
use crate::digraph::{Digraph, Vertex};

/// `K_{κ,λ}`: sources `0..κ`, sinks `κ..κ+λ`.
pub fn complete_bipartite(kappa: usize, lambda: usize) -> Digraph {
    Digraph::from_edge_list(
        kappa + lambda,
        (0..kappa).flat_map(|a| (kappa..kappa + lambda).map(move |b| (a, b))),
    )
    .expect("bipartite orientation")
}

/// `CP_κ`: `a_i → b_j` for `i ≠ j`, with `a_i = i` and `b_j = κ + j`.
pub fn complement_of_matching(kappa: usize) -> Digraph {
    Digraph::from_edge_list(
        2 * kappa,
        (0..kappa).flat_map(|i| (0..kappa).filter(move |&j| j != i).map(move |j| (i, kappa + j))),
    )
    .expect("bipartite orientation")
}

/// Alternating cycle of length `2m`: even vertices are sources.
pub fn alternating_cycle(m: usize) -> Digraph {
    let n = 2 * m;
    Digraph::from_edge_list(
        n,
        (0..n).map(|i| if i % 2 == 0 { (i, (i + 1) % n) } else { ((i + 1) % n, i) }),
    )
    .expect("alternating orientation")
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

pub fn tournament(kind: TournamentKind, n: Option<usize>) -> Result<Digraph, FamilyError> {
    let bad = |msg: String| Err(FamilyError::InvalidParameter(msg));
    match kind {
        TournamentKind::Trivial => match n {
            None | Some(1) => Ok(Digraph::empty(1)),
            Some(n) => bad(format!("the trivial tournament has 1 vertex, not {n}")),
        },
        TournamentKind::Triangle => match n {
            None | Some(3) => Ok(Digraph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).expect("cycle")),
            Some(n) => bad(format!("the triangle has 3 vertices, not {n}")),
        },
        TournamentKind::Linear => {
            let Some(n) = n.filter(|&n| n >= 1) else {
                return bad("linear tournaments need n >= 1".into());
            };
            Ok(Digraph::from_edge_list(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
                .expect("transitive tournament"))
        }
        TournamentKind::CircularP => {
            let Some(n) = n.filter(|&n| n % 2 == 1) else {
                return bad("circular_P needs an odd n".into());
            };
            // vertex i sits at angle -π + 2πi/n; x → y iff (x − y) mod 2π ∈ (0, π]
            let half = (n - 1) / 2;
            Ok(Digraph::from_edge_list(
                n,
                (0..n).flat_map(|i| (0..n).filter(move |&j| ((i + n - j) % n).wrapping_sub(1) < half).map(move |j| (i, j))),
            )
            .expect("each pair is oriented once"))
        }
        TournamentKind::PaleyGeneric => {
            let Some(q) = n.filter(|&q| is_prime(q) && q % 4 == 3) else {
                return bad("paley_generic needs a prime n with n ≡ 3 (mod 4)".into());
            };
            let residues: Vec<bool> = {
                let mut r = vec![false; q];
                for x in 1..q {
                    r[x * x % q] = true;
                }
                r
            };
            Ok(Digraph::from_edge_list(
                q,
                (0..q).flat_map(|i| {
                    let residues = residues.clone();
                    (0..q).filter(move |&j| residues[(j + q - i) % q]).map(move |j| (i, j))
                }),
            )
            .expect("-1 is a non-residue, so each pair is oriented once"))
        }
    }
}

/// Bipartite digraph with parts `0..n` (sources) and `n..2n` (sinks).
#[derive(Debug, Clone)]
struct Sides {
    n: usize,
    adj: Vec<Vec<bool>>,
}

/// A demand `(U, W)` on one side that no vertex of the other side meets:
/// no `v` is adjacent to all of `U` and to none of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unwitnessed {
    pub u: Vec<Vertex>,
    pub w: Vec<Vertex>,
}

/// Scans all disjoint `(U, W)` within `side` with `1 ≤ |U| + |W| ≤ t` and
/// returns the first one with no witness among `others`.
pub fn find_unwitnessed(
    adjacent: &dyn Fn(Vertex, Vertex) -> bool,
    side: &[Vertex],
    others: &[Vertex],
    t: usize,
) -> Option<Unwitnessed> {
    for size in 1..=t.min(side.len()) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            // every split of the chosen set into U and W
            for mask in 0u32..(1 << size) {
                let u: Vec<Vertex> = (0..size).filter(|&i| mask >> i & 1 == 1).map(|i| side[combo[i]]).collect();
                let w: Vec<Vertex> = (0..size).filter(|&i| mask >> i & 1 == 0).map(|i| side[combo[i]]).collect();
                let met = others.iter().any(|&v| {
                    u.iter().all(|&x| adjacent(v, x)) && w.iter().all(|&x| !adjacent(v, x))
                });
                if !met {
                    return Some(Unwitnessed { u, w });
                }
            }
            if !next_combination(&mut combo, side.len()) {
                break;
            }
        }
    }
    None
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Sides {
    fn edge(&self, x: Vertex, y: Vertex) -> bool {
        let (a, b) = if x < self.n { (x, y) } else { (y, x) };
        a < self.n && b >= self.n && self.adj[a][b - self.n]
    }

    fn set(&mut self, x: Vertex, y: Vertex, on: bool) {
        let (a, b) = if x < self.n { (x, y) } else { (y, x) };
        self.adj[a][b - self.n] = on;
    }

    fn first_gap(&self, t: usize) -> Option<(Unwitnessed, bool)> {
        let xs: Vec<Vertex> = (0..self.n).collect();
        let ys: Vec<Vertex> = (self.n..2 * self.n).collect();
        let adjacent = |v: Vertex, x: Vertex| self.edge(v, x);
        if let Some(gap) = find_unwitnessed(&adjacent, &xs, &ys, t) {
            return Some((gap, true));
        }
        find_unwitnessed(&adjacent, &ys, &xs, t).map(|gap| (gap, false))
    }

    fn to_digraph(&self) -> Digraph {
        let n = self.n;
        Digraph::from_edge_list(
            2 * n,
            (0..n).flat_map(|a| (0..n).filter(move |&b| self.adj[a][b]).map(move |b| (a, n + b))),
        )
        .expect("bipartite orientation")
    }
}

/// Bounded repair budget for the generic generator.
const REPAIRS: usize = 20_000;

/// A bipartite digraph on `n + n` vertices, edges from `0..n` to `n..2n`,
/// meeting every extension demand of total size `≤ t` on both sides.
/// Starts from a seeded random graph and repairs unmet demands one at a time
/// by rewiring a random vertex of the other side.
pub fn generic_bipartite(n: usize, t: usize, seed: u64) -> Result<Digraph, FamilyError> {
    if n == 0 || t == 0 {
        return Err(FamilyError::InvalidParameter(
            "generic_bipartite needs n >= 1 and t >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Sides {
        n,
        adj: (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect()).collect(),
    };
    let mut last = None;
    for _ in 0..REPAIRS {
        match g.first_gap(t) {
            None => return Ok(g.to_digraph()),
            Some((gap, x_side)) => {
                let v = if x_side { n + rng.gen_range(0..n) } else { rng.gen_range(0..n) };
                for &x in &gap.u {
                    g.set(v, x, true);
                }
                for &x in &gap.w {
                    g.set(v, x, false);
                }
                last = Some(gap);
            }
        }
    }
    let gap = last.expect("at least one repair happened");
    Err(FamilyError::Verification(format!(
        "no witness for U={:?}, W={:?} after {REPAIRS} repairs",
        gap.u, gap.w
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        let cp = complement_of_matching(3);
        assert_eq!(cp.edge_count(), 6);
        assert!(!cp.has_edge(0, 3));
        let c = alternating_cycle(3);
        assert_eq!(c.edge_count(), 6);
        assert!(c.vertices().all(|v| c.out_degree(v) == 0 || c.in_degree(v) == 0));
    }

    #[test]
    fn tournaments_are_tournaments() {
        for (kind, n) in [
            (TournamentKind::Trivial, None),
            (TournamentKind::Triangle, None),
            (TournamentKind::Linear, Some(5)),
            (TournamentKind::CircularP, Some(7)),
            (TournamentKind::PaleyGeneric, Some(7)),
            (TournamentKind::PaleyGeneric, Some(11)),
        ] {
            let t = tournament(kind, n).unwrap();
            let v = t.vertex_count();
            assert_eq!(t.edge_count(), v * (v - 1) / 2, "{kind:?}");
        }
        let p = tournament(TournamentKind::CircularP, Some(5)).unwrap();
        assert!(p.vertices().all(|v| p.out_degree(v) == 2));
        assert!(p.has_edge(1, 0) && p.has_edge(2, 0) && p.has_edge(0, 3));
        assert!(tournament(TournamentKind::CircularP, Some(4)).is_err());
        assert!(tournament(TournamentKind::PaleyGeneric, Some(5)).is_err());
        assert!(tournament(TournamentKind::Linear, None).is_err());
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn generic_level_one() {
        let d = generic_bipartite(8, 1, 3).unwrap();
        assert_eq!(d.vertex_count(), 16);
        for v in 0..8 {
            assert!(d.out_degree(v) > 0 && d.out_degree(v) < 8);
        }
        for v in 8..16 {
            assert!(d.in_degree(v) > 0 && d.in_degree(v) < 8);
        }
    }

    #[test]
    fn unreachable_level_is_reported() {
        // with 2 + 2 vertices no vertex can witness all four two-element demands
        assert!(matches!(
            generic_bipartite(2, 2, 1),
            Err(FamilyError::Verification(_))
        ));
    }
}
