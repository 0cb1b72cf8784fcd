//! The integer-lattice picture of `C_n(1, s)`.
//!
//! A point `(x1, x2)` of `Z^2` is labelled by node `x1 + x2*s mod n`. The
//! label-zero points form a sublattice `X`, and the graph distance from `0`
//! to `l(v)` is the L1 distance from `v` to `X`. With a packed basis of `X`
//! that distance is attained at one of the four corners of the basis
//! parallelogram, which gives an exact distance formula independent of BFS.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct LatticePoint {
    pub x1: i64,
    pub x2: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x1: 0, x2: 0 };

    pub fn new(x1: i64, x2: i64) -> Self {
        LatticePoint { x1, x2 }
    }

    /// L1 norm.
    pub fn norm(self) -> u64 {
        self.x1.unsigned_abs() + self.x2.unsigned_abs()
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x1, -self.x2)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x1, self.x2)
    }
}

pub fn label(g: &CirculantGraph, p: LatticePoint) -> Node {
    let n = g.n() as i128;
    (i128::from(p.x1) + i128::from(p.x2) * g.s() as i128).rem_euclid(n) as Node
}

/// Which hypothesis produced the basis. `A`: `r <= q, 2r <= s+1`;
/// `B`: `r <= q, 2r >= s+1`; `C`: `r >= q, r+q >= s+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisCase {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PackedBasis {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub case: BasisCase,
}

impl PackedBasis {
    pub fn corners(&self) -> [LatticePoint; 4] {
        [LatticePoint::ORIGIN, self.a, self.b, self.a + self.b]
    }

    /// `max(|a|, |b|) <= min(|a - b|, |a + b|)`.
    pub fn is_packed(&self) -> bool {
        let longest = self.a.norm().max(self.b.norm());
        let shortest_diag = (self.a - self.b).norm().min((self.a + self.b).norm());
        longest <= shortest_diag
    }

    pub fn determinant(&self) -> i64 {
        self.a.x1 * self.b.x2 - self.a.x2 * self.b.x1
    }
}

/// The packed basis for the sublattice `X`, or `None` when `r > q` and `r + q < s + 1`.
pub fn packed_basis(g: &CirculantGraph) -> Option<PackedBasis> {
    let (s, q, r) = (g.s() as i64, g.q() as i64, g.r() as i64);
    let a = LatticePoint::new(s, -1);
    let case = if r <= q && 2 * r <= s + 1 {
        BasisCase::A
    } else if r <= q && 2 * r >= s + 1 {
        BasisCase::B
    } else if r >= q && r + q >= s + 1 {
        BasisCase::C
    } else {
        return None;
    };
    let b = match case {
        BasisCase::A => LatticePoint::new(r, q),
        BasisCase::B | BasisCase::C => LatticePoint::new(r - s, q + 1),
    };
    Some(PackedBasis { a, b, case })
}

/// The half-open parallelogram `[a, b)` of a basis, indexed by label.
///
/// Membership `v = alpha*a + beta*b` with `0 <= alpha, beta < 1` is decided on
/// the integer numerators of Cramer's rule, so no rounding is involved.
#[derive(Debug, Clone)]
pub struct Parallelogram {
    basis: PackedBasis,
    by_label: Vec<LatticePoint>,
}

impl Parallelogram {
    pub fn new(g: &CirculantGraph, basis: PackedBasis) -> Result<Self> {
        let det = basis.determinant();
        if det.unsigned_abs() != g.n() as u64 {
            return Err(Error::Consistency(format!(
                "basis {} {} has determinant {det}, expected ±{}",
                basis.a,
                basis.b,
                g.n()
            )));
        }
        let within = |num: i64| {
            if det > 0 {
                (0..det).contains(&num)
            } else {
                num <= 0 && num > det
            }
        };
        let corners = basis.corners();
        let lo1 = corners.iter().map(|c| c.x1).min().unwrap();
        let hi1 = corners.iter().map(|c| c.x1).max().unwrap();
        let lo2 = corners.iter().map(|c| c.x2).min().unwrap();
        let hi2 = corners.iter().map(|c| c.x2).max().unwrap();

        let mut by_label: Vec<Option<LatticePoint>> = vec![None; g.n()];
        let mut count = 0usize;
        for x1 in lo1..=hi1 {
            for x2 in lo2..=hi2 {
                let alpha = x1 * basis.b.x2 - x2 * basis.b.x1;
                let beta = basis.a.x1 * x2 - basis.a.x2 * x1;
                if !(within(alpha) && within(beta)) {
                    continue;
                }
                let v = LatticePoint::new(x1, x2);
                let l = label(g, v);
                if let Some(prev) = by_label[l] {
                    return Err(Error::Consistency(format!(
                        "label {l} carried by both {prev} and {v} in [a, b)"
                    )));
                }
                by_label[l] = Some(v);
                count += 1;
            }
        }
        if count != g.n() {
            return Err(Error::Consistency(format!(
                "[a, b) holds {count} lattice points, expected {}",
                g.n()
            )));
        }
        Ok(Parallelogram {
            basis,
            by_label: by_label.into_iter().map(|p| p.unwrap()).collect(),
        })
    }

    pub fn basis(&self) -> &PackedBasis {
        &self.basis
    }

    /// The unique point of `[a, b)` labelled `target`.
    pub fn point(&self, target: Node) -> LatticePoint {
        self.by_label[target]
    }

    /// Distance from `v` to the nearest corner of the closed parallelogram.
    pub fn corner_distance(&self, target: Node) -> u64 {
        let v = self.point(target);
        self.basis
            .corners()
            .iter()
            .map(|&c| (v - c).norm())
            .min()
            .unwrap()
    }
}

/// `d(0, target)` from the corner formula.
pub fn corner_distance(g: &CirculantGraph, basis: PackedBasis, target: Node) -> Result<u64> {
    if target >= g.n() {
        return Err(Error::Range {
            what: "target",
            value: target as i64,
            lo: 0,
            hi: g.n() as i64 - 1,
        });
    }
    Ok(Parallelogram::new(g, basis)?.corner_distance(target))
}

/// Whether the distance-sum hypothesis `r <= q or r + q >= s + 1` holds.
pub fn distance_sum_hypothesis(g: &CirculantGraph) -> bool {
    g.r() <= g.q() || g.r() + g.q() >= g.s() + 1
}

/// `floor((s+1)^2 / 2)`, a lower bound on `sum_i d(0, i)` under the hypothesis above.
pub fn distance_sum_lower_bound(g: &CirculantGraph) -> Option<u64> {
    distance_sum_hypothesis(g).then(|| {
        let s1 = g.s() as u64 + 1;
        s1 * s1 / 2
    })
}

/// `sqrt(n) (n - 1) / 2`, the exact distance sum when `s = q = sqrt(n)`.
pub fn sqrt_case_distance_sum(g: &CirculantGraph) -> Option<u64> {
    let (n, s) = (g.n() as u64, g.s() as u64);
    (s * s == n).then(|| s * (n - 1) / 2)
}
