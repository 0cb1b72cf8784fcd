//! The symmetric all-to-all routing: one "skips then rings" path per ordered pair.
//!
//! The path from `0` to `d <= n/2` takes `floor(d/s)` clockwise skips and then
//! the remaining ring steps, overshooting by one skip and walking back when the
//! remainder exceeds `s/2`. Destinations past `n/2` use the mirror image, and
//! every other source uses a translate. Translation makes all arcs of one class
//! carry the same load, which is what the load formulas below count.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{delta_term, epsilon};
use crate::error::{Error, Result};
use crate::graph::{Arc, ArcClass, CirculantGraph, Node};
use crate::Rational;

/// Signed step counts of a path: `skips` skip links followed by `rings` ring links.
/// Negative means anticlockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PathClass {
    pub skips: i64,
    pub rings: i64,
}

impl PathClass {
    pub fn new(skips: i64, rings: i64) -> Self {
        PathClass { skips, rings }
    }

    pub fn reversed(self) -> Self {
        PathClass::new(-self.skips, -self.rings)
    }

    pub fn len(self) -> usize {
        (self.skips.unsigned_abs() + self.rings.unsigned_abs()) as usize
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    /// Net displacement `i*s + j` (not reduced mod n).
    pub fn displacement(self, s: usize) -> i64 {
        self.skips * s as i64 + self.rings
    }

    /// Arc classes in traversal order.
    pub fn steps(self) -> impl Iterator<Item = ArcClass> {
        let skip = if self.skips >= 0 {
            ArcClass::SkipCw
        } else {
            ArcClass::SkipAcw
        };
        let ring = if self.rings >= 0 {
            ArcClass::RingCw
        } else {
            ArcClass::RingAcw
        };
        std::iter::repeat(skip)
            .take(self.skips.unsigned_abs() as usize)
            .chain(std::iter::repeat(ring).take(self.rings.unsigned_abs() as usize))
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.skips, self.rings)
    }
}

/// A node sequence from source to destination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedPath {
    pub nodes: Vec<Node>,
}

impl OrientedPath {
    pub fn source(&self) -> Node {
        self.nodes[0]
    }

    pub fn destination(&self) -> Node {
        *self.nodes.last().unwrap()
    }

    /// Arc classes of consecutive node pairs, or an error if two of them are not adjacent.
    pub fn classes(&self, g: &CirculantGraph) -> Result<Vec<ArcClass>> {
        self.nodes
            .windows(2)
            .map(|w| {
                g.arc_class(w[0], w[1]).ok_or_else(|| {
                    Error::MalformedPath(format!("{} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect()
    }

    pub fn translate(&self, g: &CirculantGraph, k: Node) -> OrientedPath {
        OrientedPath {
            nodes: self.nodes.iter().map(|&v| g.add(v, k)).collect(),
        }
    }
}

impl fmt::Display for OrientedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn check_offset(g: &CirculantGraph, d: usize) -> Result<()> {
    if d == 0 || d >= g.n() {
        return Err(Error::Range {
            what: "offset d",
            value: d as i64,
            lo: 1,
            hi: g.n() as i64 - 1,
        });
    }
    Ok(())
}

/// The explicit path `P_{0,d}`, built node by node.
pub fn base_path(g: &CirculantGraph, d: usize) -> Result<OrientedPath> {
    check_offset(g, d)?;
    let (n, s) = (g.n(), g.s());
    if d > n / 2 {
        let mirror = base_path(g, n - d)?;
        let mut nodes = mirror.nodes;
        for v in nodes.iter_mut().skip(1) {
            *v = n - *v;
        }
        return Ok(OrientedPath { nodes });
    }
    let (i, j) = (d / s, d % s);
    let mut nodes = Vec::new();
    if j <= s / 2 {
        nodes.extend((0..=i).map(|k| k * s));
        nodes.extend((1..=j).map(|k| i * s + k));
    } else {
        nodes.extend((0..=i + 1).map(|k| k * s));
        nodes.extend((1..=s - j).map(|k| (i + 1) * s - k));
    }
    Ok(OrientedPath {
        nodes: nodes.into_iter().map(|v| v % n).collect(),
    })
}

/// The class of `P_{0,d}`, computed arithmetically without building the path.
pub fn base_class(g: &CirculantGraph, d: usize) -> Result<PathClass> {
    check_offset(g, d)?;
    let (n, s) = (g.n(), g.s());
    if d > n / 2 {
        return Ok(base_class(g, n - d)?.reversed());
    }
    let (i, j) = ((d / s) as i64, (d % s) as i64);
    let s = s as i64;
    Ok(if j <= s / 2 {
        PathClass::new(i, j)
    } else {
        PathClass::new(i + 1, j - s)
    })
}

/// The full routing, stored as one class per offset `d = y ⊖ x`.
#[derive(Debug, Clone)]
pub struct Routing {
    graph: CirculantGraph,
    classes: Vec<PathClass>,
}

impl Routing {
    pub fn build(g: &CirculantGraph) -> Routing {
        let mut classes = Vec::with_capacity(g.n());
        classes.push(PathClass::new(0, 0));
        for d in 1..g.n() {
            classes.push(base_class(g, d).expect("offset in range"));
        }
        Routing {
            graph: *g,
            classes,
        }
    }

    pub fn graph(&self) -> &CirculantGraph {
        &self.graph
    }

    /// Number of paths, `n(n-1)`.
    pub fn len(&self) -> usize {
        self.graph.n() * (self.graph.n() - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Class of the path for offset `d`.
    pub fn class_of_offset(&self, d: usize) -> PathClass {
        self.classes[d]
    }

    pub fn class(&self, x: Node, y: Node) -> PathClass {
        self.classes[self.graph.sub(y, x)]
    }

    /// Classes of `P_{0,d}` for `d = 1..n-1`.
    pub fn base_classes(&self) -> &[PathClass] {
        &self.classes[1..]
    }

    pub fn path(&self, x: Node, y: Node) -> Result<OrientedPath> {
        let n = self.graph.n();
        if x >= n || y >= n || x == y {
            return Err(Error::MalformedPath(format!(
                "no routed path for pair ({x}, {y}) in {}",
                self.graph
            )));
        }
        let mut nodes = vec![x];
        let mut v = x;
        for step in self.class(x, y).steps() {
            v = self.graph.step(v, step);
            nodes.push(v);
        }
        Ok(OrientedPath { nodes })
    }

    /// Arcs of `P_{x,y}` in traversal order.
    pub fn arcs(&self, x: Node, y: Node) -> impl Iterator<Item = Arc> + '_ {
        let g = self.graph;
        let mut v = x;
        self.class(x, y).steps().map(move |c| {
            let arc = g.arc(v, c);
            v = arc.head;
            arc
        })
    }

    /// Every ordered pair `(x, y)`, `x != y`, source-major.
    pub fn pairs(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        let n = self.graph.n();
        (0..n).flat_map(move |x| (1..n).map(move |d| (x, (x + d) % n)))
    }
}

/// Per-class arc loads of a routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LoadProfile {
    pub ring_cw: u64,
    pub ring_acw: u64,
    pub skip_cw: u64,
    pub skip_acw: u64,
    pub max_arc_load: u64,
    pub max_edge_load: u64,
}

impl LoadProfile {
    fn from_class_loads(ring_cw: u64, ring_acw: u64, skip_cw: u64, skip_acw: u64) -> Self {
        LoadProfile {
            ring_cw,
            ring_acw,
            skip_cw,
            skip_acw,
            max_arc_load: ring_cw.max(ring_acw).max(skip_cw).max(skip_acw),
            max_edge_load: (ring_cw + ring_acw).max(skip_cw + skip_acw),
        }
    }

    pub fn class_load(&self, class: ArcClass) -> u64 {
        match class {
            ArcClass::RingCw => self.ring_cw,
            ArcClass::RingAcw => self.ring_acw,
            ArcClass::SkipCw => self.skip_cw,
            ArcClass::SkipAcw => self.skip_acw,
        }
    }
}

/// Loads from the base paths alone: the link usage of `P_{0,d}`, `d = 1..n-1`,
/// equals the load of every arc of that class. Linear in `n`.
pub fn base_load_profile(rt: &Routing) -> LoadProfile {
    let mut counts = [0u64; 4];
    for cls in rt.base_classes() {
        for (steps, pos, neg) in [
            (cls.rings, ArcClass::RingCw, ArcClass::RingAcw),
            (cls.skips, ArcClass::SkipCw, ArcClass::SkipAcw),
        ] {
            let slot = if steps >= 0 { pos } else { neg };
            counts[slot.index()] += steps.unsigned_abs();
        }
    }
    LoadProfile::from_class_loads(counts[0], counts[1], counts[2], counts[3])
}

/// Load of every arc, by walking all `n(n-1)` paths. Indexed by [`CirculantGraph::arc_id`].
pub fn brute_force_arc_loads(rt: &Routing) -> Vec<u64> {
    let g = rt.graph();
    let mut loads = vec![0u64; g.arc_count()];
    for d in 1..g.n() {
        let cls = rt.class_of_offset(d);
        for x in 0..g.n() {
            let mut v = x;
            for step in cls.steps() {
                loads[g.arc_id(v, step)] += 1;
                v = g.step(v, step);
            }
        }
    }
    loads
}

/// Per-class loads from brute force, checking that each class is uniform.
pub fn brute_force_load_profile(rt: &Routing) -> Result<LoadProfile> {
    let g = rt.graph();
    let loads = brute_force_arc_loads(rt);
    let mut per_class = [0u64; 4];
    for class in ArcClass::ALL {
        let first = loads[g.arc_id(0, class)];
        if let Some(x) = (0..g.n()).find(|&x| loads[g.arc_id(x, class)] != first) {
            return Err(Error::Consistency(format!(
                "{} carries {} paths but {} carries {first}",
                g.arc(x, class),
                loads[g.arc_id(x, class)],
                g.arc(0, class)
            )));
        }
        per_class[class.index()] = first;
    }
    Ok(LoadProfile::from_class_loads(
        per_class[0],
        per_class[1],
        per_class[2],
        per_class[3],
    ))
}

/// Base-path loads, cross-checked against the full brute-force count.
pub fn load_profile(rt: &Routing) -> Result<LoadProfile> {
    let counted = base_load_profile(rt);
    let brute = brute_force_load_profile(rt)?;
    if counted != brute {
        return Err(Error::Consistency(format!(
            "base-path loads {counted:?} differ from brute-force loads {brute:?}"
        )));
    }
    Ok(counted)
}

fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// The two closed-form terms for the maximum arc load: `(ring term, skip term)`.
///
/// The ring term counts clockwise ring links when `q` is even and anticlockwise
/// ones when `q` is odd; the skip term counts clockwise skip links.
pub fn max_arc_load_terms(g: &CirculantGraph) -> (Rational, Rational) {
    let (s, q, r) = (g.s() as i128, g.q() as i128, g.r() as i128);
    let eps_s = i128::from(epsilon(g.s() as i64));
    let ring_base = rat(q, 4) * rat((s * s) / 2, 1);
    if q % 2 == 0 {
        let ring = ring_base + rat((r / 2) * ((r + 2) / 2), 2);
        let skip = rat(q * q * s, 8) + rat(q, 2) * (rat(r / 2, 1) + rat(eps_s, 2));
        (ring, skip)
    } else {
        let ring = ring_base + delta_term(g);
        let skip = rat((q * q - 1) * s, 8) + rat(q + 1, 2) * rat((r + eps_s) / 2, 1);
        (ring, skip)
    }
}

/// Closed form for the maximum arc load of the routing.
pub fn max_arc_load_formula(g: &CirculantGraph) -> Result<u64> {
    let (ring, skip) = max_arc_load_terms(g);
    for (name, t) in [("ring", ring), ("skip", skip)] {
        if !t.is_integer() {
            return Err(Error::Consistency(format!(
                "{g}: {name} load term {t} is not an integer"
            )));
        }
    }
    Ok(ring.max(skip).to_integer().to_u64().expect("loads are non-negative"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LoadCase {
    A,
    B,
    C,
    D,
    E,
    /// `s` near a non-integral `sqrt(n)`, where no case applies.
    Gap,
}

impl fmt::Display for LoadCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LoadCase::A => "a",
            LoadCase::B => "b",
            LoadCase::C => "c",
            LoadCase::D => "d",
            LoadCase::E => "e",
            LoadCase::Gap => "gap",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadBound {
    pub case: LoadCase,
    pub value: Rational,
}

/// Case-wise upper bound on the maximum arc load; square-root thresholds are
/// compared on squares so the case choice is exact.
pub fn arc_load_upper_bound(g: &CirculantGraph) -> Result<LoadBound> {
    let (n, s, q, r) = (g.n() as i128, g.s() as i128, g.q() as i128, g.r() as i128);
    let eps_s = i128::from(epsilon(g.s() as i64));
    let q_even = q % 2 == 0;
    let (case, value) = if q_even && s * s <= n - 1 {
        (LoadCase::A, rat(q * (n + r + 2 * eps_s), 8))
    } else if !q_even && (s + 1) * (s + 1) <= n {
        (LoadCase::B, rat(q * (n + r + 2 * eps_s) + s, 8))
    } else if q == s && s * s == n {
        (LoadCase::C, rat(s * (n - eps_s), 8))
    } else if q_even && (s - 1) * (s - 1) >= n {
        (LoadCase::D, rat(s * n + r - eps_s * q, 8))
    } else if !q_even && s * s >= n {
        (LoadCase::E, rat(s * (n + r + 2) - eps_s * q, 8))
    } else {
        (LoadCase::Gap, Rational::from_integer(i128::from(max_arc_load_formula(g)?)))
    };
    Ok(LoadBound { case, value })
}
