//! The circulant graph `C_n(1, s)`: nodes, arcs, BFS distances and the half-line cut.
//!
//! Distances here come from breadth-first search only. Every closed-form
//! distance quantity elsewhere in the crate is checked against this module.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Node = usize;

/// A validated `C_n(1, s)` with `n = q*s + r`, `0 <= r < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CirculantGraph {
    n: usize,
    s: usize,
    q: usize,
    r: usize,
}

/// Direction and kind of a link. Clockwise means `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArcClass {
    RingCw,
    RingAcw,
    SkipCw,
    SkipAcw,
}

impl ArcClass {
    pub const ALL: [ArcClass; 4] = [
        ArcClass::RingCw,
        ArcClass::RingAcw,
        ArcClass::SkipCw,
        ArcClass::SkipAcw,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn reversed(self) -> ArcClass {
        match self {
            ArcClass::RingCw => ArcClass::RingAcw,
            ArcClass::RingAcw => ArcClass::RingCw,
            ArcClass::SkipCw => ArcClass::SkipAcw,
            ArcClass::SkipAcw => ArcClass::SkipCw,
        }
    }

    pub fn is_ring(self) -> bool {
        matches!(self, ArcClass::RingCw | ArcClass::RingAcw)
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ArcClass::RingCw => "ring+",
            ArcClass::RingAcw => "ring-",
            ArcClass::SkipCw => "skip+",
            ArcClass::SkipAcw => "skip-",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Arc {
    pub tail: Node,
    pub head: Node,
    pub class: ArcClass,
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc {}->{} ({})", self.tail, self.head, self.class)
    }
}

impl CirculantGraph {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        let domain = |constraint| Error::Domain {
            n: n as i64,
            s: s as i64,
            constraint,
        };
        if n < 5 {
            return Err(domain("n >= 5"));
        }
        if s <= 1 {
            return Err(domain("s > 1"));
        }
        if 2 * s >= n {
            return Err(domain("s < n/2"));
        }
        Ok(CirculantGraph {
            n,
            s,
            q: n / s,
            r: n % s,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `x ⊕ k` for any signed offset, always a canonical residue.
    pub fn offset(&self, x: Node, k: i64) -> Node {
        (x as i64 + k).rem_euclid(self.n as i64) as Node
    }

    pub fn add(&self, x: Node, y: Node) -> Node {
        (x + y) % self.n
    }

    pub fn sub(&self, x: Node, y: Node) -> Node {
        (x + self.n - y % self.n) % self.n
    }

    pub fn step(&self, x: Node, class: ArcClass) -> Node {
        match class {
            ArcClass::RingCw => self.add(x, 1),
            ArcClass::RingAcw => self.sub(x, 1),
            ArcClass::SkipCw => self.add(x, self.s),
            ArcClass::SkipAcw => self.sub(x, self.s),
        }
    }

    pub fn neighbours(&self, x: Node) -> [Node; 4] {
        ArcClass::ALL.map(|c| self.step(x, c))
    }

    /// The class of the arc `(x, y)`, if `x` and `y` are adjacent.
    pub fn arc_class(&self, x: Node, y: Node) -> Option<ArcClass> {
        ArcClass::ALL.into_iter().find(|&c| self.step(x, c) == y)
    }

    pub fn arc(&self, tail: Node, class: ArcClass) -> Arc {
        Arc {
            tail,
            head: self.step(tail, class),
            class,
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |x| ArcClass::ALL.map(|c| self.arc(x, c)))
    }

    pub fn arc_count(&self) -> usize {
        4 * self.n
    }

    pub fn edge_count(&self) -> usize {
        2 * self.n
    }

    /// Dense arc index in `0..4n`.
    pub fn arc_id(&self, tail: Node, class: ArcClass) -> usize {
        4 * tail + class.index()
    }

    pub fn arc_from_id(&self, id: usize) -> Arc {
        self.arc(id / 4, ArcClass::ALL[id % 4])
    }

    /// Dense undirected edge index in `0..2n`; both orientations map to the same id.
    pub fn edge_id(&self, tail: Node, class: ArcClass) -> usize {
        match class {
            ArcClass::RingCw => 2 * tail,
            ArcClass::RingAcw => 2 * self.sub(tail, 1),
            ArcClass::SkipCw => 2 * tail + 1,
            ArcClass::SkipAcw => 2 * self.sub(tail, self.s) + 1,
        }
    }

    pub fn edge_from_id(&self, id: usize) -> Arc {
        let class = if id % 2 == 0 {
            ArcClass::RingCw
        } else {
            ArcClass::SkipCw
        };
        self.arc(id / 2, class)
    }

    /// BFS distances from `source` to every node.
    pub fn distances_from(&self, source: Node) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let next = dist[x] + 1;
            for y in self.neighbours(x) {
                if dist[y] == u32::MAX {
                    dist[y] = next;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, x: Node, y: Node) -> u32 {
        self.distances_from(x)[y]
    }

    /// `sum_i d(0, i)` by BFS.
    pub fn distance_sum_from_zero(&self) -> u64 {
        self.distances_from(0).iter().map(|&d| u64::from(d)).sum()
    }

    /// Number of edges leaving `U = {0, .., floor(n/2) - 1}`, counted edge by edge.
    pub fn cut_size_halfline(&self) -> usize {
        let half = self.n / 2;
        let inside = |x: Node| x < half;
        (0..self.n)
            .flat_map(|x| [(x, self.add(x, 1)), (x, self.add(x, self.s))])
            .filter(|&(x, y)| inside(x) != inside(y))
            .count()
    }
}

impl fmt::Display for CirculantGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}(1,{})", self.n, self.s)
    }
}

/// Every valid `(n, s)` with `n` in the given inclusive range, in lexicographic order.
pub fn valid_instances(n_lo: usize, n_hi: usize) -> impl Iterator<Item = CirculantGraph> {
    (n_lo.max(5)..=n_hi).flat_map(|n| {
        (2..n)
            .take_while(move |&s| 2 * s < n)
            .map(move |s| CirculantGraph::new(n, s).expect("enumerated parameters are valid"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_derives_quotient_and_remainder() {
        let g = CirculantGraph::new(7, 2).unwrap();
        assert_eq!((g.q(), g.r()), (3, 1));
        let g = CirculantGraph::new(12, 3).unwrap();
        assert_eq!((g.q(), g.r()), (4, 0));
    }

    #[test]
    fn build_rejects_each_constraint() {
        let err = CirculantGraph::new(12, 6).unwrap_err();
        assert!(err.to_string().contains("s < n/2 violated"), "{err}");
        let err = CirculantGraph::new(12, 1).unwrap_err();
        assert!(err.to_string().contains("s > 1 violated"), "{err}");
        let err = CirculantGraph::new(4, 2).unwrap_err();
        assert!(err.to_string().contains("n >= 5 violated"), "{err}");
        assert!(CirculantGraph::new(13, 6).is_ok());
    }

    #[test]
    fn bfs_distances() {
        let g = CirculantGraph::new(7, 2).unwrap();
        assert_eq!(g.distance(0, 3), 2);
        let g = CirculantGraph::new(12, 3).unwrap();
        assert_eq!(g.distance(0, 5), 3);
        assert_eq!(g.distance(4, 4), 0);
    }

    #[test]
    fn distance_sums() {
        let sum = |n, s| CirculantGraph::new(n, s).unwrap().distance_sum_from_zero();
        assert_eq!(sum(7, 2), 8);
        assert_eq!(sum(12, 3), 20);
        assert_eq!(sum(25, 5), 60);
    }

    #[test]
    fn halfline_cut() {
        let cut = |n, s| CirculantGraph::new(n, s).unwrap().cut_size_halfline();
        assert_eq!(cut(7, 2), 6);
        assert_eq!(cut(12, 3), 8);
        assert_eq!(cut(25, 5), 12);
    }

    #[test]
    fn cut_is_two_s_plus_two_up_to_500() {
        for g in valid_instances(5, 500) {
            assert_eq!(g.cut_size_halfline(), 2 * g.s() + 2, "{g}");
        }
    }

    #[test]
    fn four_distinct_neighbours_and_edge_ids() {
        for g in valid_instances(5, 40) {
            let mut seen_edges = vec![0u32; g.edge_count()];
            for arc in g.arcs() {
                seen_edges[g.edge_id(arc.tail, arc.class)] += 1;
                assert_eq!(g.arc_from_id(g.arc_id(arc.tail, arc.class)), arc);
                assert_eq!(
                    g.edge_id(arc.head, arc.class.reversed()),
                    g.edge_id(arc.tail, arc.class)
                );
            }
            // each undirected edge is hit by exactly its two arcs
            assert!(seen_edges.iter().all(|&c| c == 2), "{g}");
            for x in 0..g.n() {
                let mut nb = g.neighbours(x).to_vec();
                nb.sort_unstable();
                nb.dedup();
                assert_eq!(nb.len(), 4);
            }
            assert_eq!(g.arcs().count(), 4 * g.n());
        }
    }

    #[test]
    fn valid_instance_count() {
        // n = 5..=30, pairs (2k-1, 2k) each admit k-2 skips
        let brute = (5..=30usize)
            .map(|n| (2..n).filter(|&s| 2 * s < n).count())
            .sum::<usize>();
        assert_eq!(valid_instances(5, 30).count(), brute);
        assert_eq!(brute, 182);
    }
}
