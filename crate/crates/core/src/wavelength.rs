//! Wavelength assignment for the symmetric routing.
//!
//! Colours are integer triples `(c1, i, j)` where `(i, j)` is the path class,
//! so paths of different classes never collide. Inside a class the first
//! coordinate is chosen from the source node so that paths sharing a link
//! differ. Classes with `j < 0` reuse the colour of the mirror class `(-i, -j)`
//! in the arc variant; in the edge variant they get its negation, which doubles
//! the palette but keeps opposite-direction traversals of an edge apart.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::epsilon;
use crate::error::{Error, Result};
use crate::graph::{ArcClass, CirculantGraph, Node};
use crate::routing::{OrientedPath, Routing};
use crate::Rational;

pub use crate::routing::PathClass;

/// Which conflicts the colouring must avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Paths sharing a directed arc must differ.
    Arc,
    /// Paths sharing an undirected edge must differ.
    Edge,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Arc => "arc",
            Variant::Edge => "edge",
        })
    }
}

/// `sign * (c1, c2, c3)`; `sign` is `-1` only for mirrored classes in the edge variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Colour {
    pub sign: i8,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = if self.sign < 0 { "-" } else { "" };
        write!(f, "{neg}({},{},{})", self.c1, self.c2, self.c3)
    }
}

/// Read the signed class off a path that goes skips first, then rings.
pub fn path_class(g: &CirculantGraph, p: &OrientedPath) -> Result<PathClass> {
    let classes = p.classes(g)?;
    let skips = classes.iter().take_while(|c| !c.is_ring()).count();
    let (skip_part, ring_part) = classes.split_at(skips);
    let uniform = |part: &[ArcClass]| part.windows(2).all(|w| w[0] == w[1]);
    if !uniform(skip_part) || !uniform(ring_part) || ring_part.iter().any(|c| !c.is_ring()) {
        return Err(Error::MalformedPath(format!(
            "{p} is not a run of skips followed by a run of rings"
        )));
    }
    let signed = |part: &[ArcClass]| match part.first() {
        Some(ArcClass::RingAcw | ArcClass::SkipAcw) => -(part.len() as i64),
        _ => part.len() as i64,
    };
    Ok(PathClass::new(signed(skip_part), signed(ring_part)))
}

/// `alpha = |j| / gcd(s, |j|)`, `beta = s / gcd(s, |j|)`, so `alpha*s = beta*|j|`.
pub fn alpha_beta(g: &CirculantGraph, j: i64) -> Result<(i64, i64)> {
    if j == 0 {
        return Err(Error::Range {
            what: "ring steps j",
            value: 0,
            lo: 1,
            hi: (g.s() / 2) as i64,
        });
    }
    let s = g.s() as i64;
    let aj = j.abs();
    let d = s.gcd(&aj);
    Ok((aj / d, s / d))
}

fn check_class(g: &CirculantGraph, cls: PathClass) -> Result<()> {
    let (i, j) = (cls.skips, cls.rings);
    let ok = (i, j) != (0, 0)
        && i.unsigned_abs() as usize <= g.q().div_ceil(2)
        && j.unsigned_abs() as usize <= g.s() / 2
        && 2 * cls.displacement(g.s()).unsigned_abs() as usize <= g.n();
    if ok {
        Ok(())
    } else {
        Err(Error::MalformedPath(format!("{cls} is not a routed class of {g}")))
    }
}

/// Colour of a class with `j > 0` and `|i| <= j`.
fn ring_heavy_colour(g: &CirculantGraph, x: i64, j: i64) -> i64 {
    let n = g.n() as i64;
    let s = g.s() as i64;
    let (alpha, _) = alpha_beta(g, j).expect("j > 0");
    let xa = x / (alpha * s);
    let offset = (x + xa / 2).rem_euclid(j);
    let band = if 2 * x <= n { 0 } else { 2 };
    (band + epsilon(xa)) * j + offset
}

/// Colour of a class with `|i| > j >= 0`. The six source ranges are tested
/// independently; exactly one has to match.
fn skip_heavy_colour(g: &CirculantGraph, x: i64, i: i64, j: i64, wrap: WrapRule) -> Result<i64> {
    let (n, s, q, r) = (g.n() as i64, g.s() as i64, g.q() as i64, g.r() as i64);
    let half = q / 2;
    let ai = i.abs();
    let x0 = x % s;
    let xs = x / s;
    let low = x0 <= s - j;
    let cands = [
        (x < half * s && low, (x0 + xs).rem_euclid(ai)),
        (x < (half - 1) * s && !low, i + (x0 + xs).rem_euclid(ai)),
        ((half - 1) * s <= x && x < half * s && !low, 2 * i + x0 + j - s),
        (
            half * s <= x && x <= n - j && low,
            i + (x0 + xs + s - q - r - 1).rem_euclid(ai),
        ),
        (
            half * s <= x && x <= n - j && !low,
            (x0 + xs - q - r).rem_euclid(ai),
        ),
        (
            x > n - j,
            match wrap {
                WrapRule::Direct => 2 * i + x + j - n,
                WrapRule::Shifted => 2 * i + (x + j - n + 1).rem_euclid(j.max(1)),
            },
        ),
    ];
    let mut hits = cands.iter().filter(|(hit, _)| *hit);
    match (hits.next(), hits.next()) {
        (Some(&(_, c1)), None) => Ok(c1),
        (None, _) => Err(Error::Consistency(format!(
            "{g}: no source range covers x={x} for class ({i},{j})"
        ))),
        (Some(_), Some(_)) => Err(Error::Consistency(format!(
            "{g}: several source ranges cover x={x} for class ({i},{j})"
        ))),
    }
}

/// First coordinate for sources `x > n - j` of a skip-heavy class.
///
/// `Direct` uses `2i + x + j - n`, which collides with the colours of row
/// `floor(q/2) - 1` when `|i| = ceil(q/2)`: such paths meet on a skip arc across
/// node 0 (first at `C_26(1,5)`, class `(-3, 2)`). `Shifted` rotates the same
/// `j` values by one inside `[2i, 2i + j)`, so the class still uses at most
/// `2|i| + j` colours and the collision disappears.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WrapRule {
    Direct,
    #[default]
    Shifted,
}

/// Colour of the path of class `cls` leaving `x`.
pub fn colour_of(g: &CirculantGraph, x: Node, cls: PathClass, variant: Variant) -> Result<Colour> {
    colour_with_rule(g, x, cls, variant, WrapRule::Shifted)
}

pub fn colour_with_rule(
    g: &CirculantGraph,
    x: Node,
    cls: PathClass,
    variant: Variant,
    wrap: WrapRule,
) -> Result<Colour> {
    if x >= g.n() {
        return Err(Error::Range {
            what: "source node",
            value: x as i64,
            lo: 0,
            hi: g.n() as i64 - 1,
        });
    }
    check_class(g, cls)?;
    let mirrored = cls.rings < 0;
    let PathClass { skips: i, rings: j } = if mirrored { cls.reversed() } else { cls };
    let x = x as i64;
    let c1 = if j > 0 && i.abs() <= j {
        ring_heavy_colour(g, x, j)
    } else {
        skip_heavy_colour(g, x, i, j, wrap)?
    };
    let sign = if mirrored && variant == Variant::Edge { -1 } else { 1 };
    Ok(Colour {
        sign,
        c1,
        c2: i,
        c3: j,
    })
}

/// A colouring of every routed path, already checked for conflicts.
#[derive(Debug, Clone, Serialize)]
pub struct ColouringResult {
    pub variant: Variant,
    pub distinct_count: u64,
    pub conflict_free: bool,
    #[serde(skip)]
    colours: Vec<Colour>,
    #[serde(skip)]
    n: usize,
}

impl ColouringResult {
    /// Colour of the path from `x` to `y`.
    pub fn colour(&self, x: Node, y: Node) -> Colour {
        let d = (y + self.n - x) % self.n;
        self.colours[x * (self.n - 1) + d - 1]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }
}

/// Colour every path of the routing, then verify exhaustively that no two
/// paths with the same colour share a link (a directed arc, or an undirected
/// edge in the edge variant).
pub fn colour_routing(rt: &Routing, variant: Variant) -> Result<ColouringResult> {
    colour_routing_with_rule(rt, variant, WrapRule::Shifted)
}

pub fn colour_routing_with_rule(
    rt: &Routing,
    variant: Variant,
    wrap: WrapRule,
) -> Result<ColouringResult> {
    let g = *rt.graph();
    let n = g.n();
    let mut colours = Vec::with_capacity(rt.len());
    for x in 0..n {
        for d in 1..n {
            colours.push(colour_with_rule(&g, x, rt.class_of_offset(d), variant, wrap)?);
        }
    }

    let mut buckets: HashMap<Colour, Vec<u32>> = HashMap::new();
    for (idx, c) in colours.iter().enumerate() {
        buckets.entry(*c).or_default().push(idx as u32);
    }

    let link_count = match variant {
        Variant::Arc => g.arc_count(),
        Variant::Edge => g.edge_count(),
    };
    // (bucket stamp, owning path) per link
    let mut claimed: Vec<(u32, u32)> = vec![(u32::MAX, 0); link_count];
    let pair_of = |idx: u32| {
        let (x, d) = (idx as usize / (n - 1), idx as usize % (n - 1) + 1);
        (x, (x + d) % n)
    };
    let mut keys: Vec<&Colour> = buckets.keys().collect();
    keys.sort_unstable();
    for (stamp, colour) in keys.into_iter().enumerate() {
        let stamp = stamp as u32;
        for &idx in &buckets[colour] {
            let (x, y) = pair_of(idx);
            for arc in rt.arcs(x, y) {
                let link = match variant {
                    Variant::Arc => g.arc_id(arc.tail, arc.class),
                    Variant::Edge => g.edge_id(arc.tail, arc.class),
                };
                let slot = &mut claimed[link];
                if slot.0 == stamp {
                    let shown = match variant {
                        Variant::Arc => arc.to_string(),
                        Variant::Edge => {
                            let e = g.edge_from_id(link);
                            format!("edge {{{}, {}}}", e.tail, e.head)
                        }
                    };
                    return Err(Error::ColourConflict {
                        link: shown,
                        first: pair_of(slot.1),
                        second: (x, y),
                        colour: colour.to_string(),
                    });
                }
                *slot = (stamp, idx);
            }
        }
    }

    Ok(ColouringResult {
        variant,
        distinct_count: buckets.len() as u64,
        conflict_free: true,
        colours,
        n,
    })
}

/// How `floor(s/2)` compares with `ceil(q/2)`; picks the closed form for the palette size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `floor(s/2) <= ceil(q/2) - 2`
    FewRings,
    /// `ceil(q/2) - 1 <= floor(s/2) <= ceil(q/2)`
    Balanced,
    /// `floor(s/2) >= ceil(q/2) + 1`
    ManyRings,
}

impl Regime {
    pub fn of(g: &CirculantGraph) -> Regime {
        let f = (g.s() / 2) as i64;
        let c = g.q().div_ceil(2) as i64;
        if f <= c - 2 {
            Regime::FewRings
        } else if f <= c {
            Regime::Balanced
        } else {
            Regime::ManyRings
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::FewRings => "few_rings",
            Regime::Balanced => "balanced",
            Regime::ManyRings => "many_rings",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColourCount {
    /// Palette size summed class by class over the full `(i, j)` rectangle.
    pub palette: u64,
    pub regime: Regime,
    /// The regime's closed form; equal to `palette`.
    pub closed_form: Rational,
}

/// Palette size as a sum over classes: `4j` colours when `j >= |i|`,
/// `2|i| + j` when `0 <= j < |i|`, nothing new for `j < 0`.
pub fn palette_sum(g: &CirculantGraph) -> u64 {
    let f = (g.s() / 2) as u64;
    let c = g.q().div_ceil(2) as u64;
    let gamma1 = f.min(c);
    let gamma2 = (f + 1).min(c);
    let ring_square: u64 = (1..=gamma1).map(|j| (2 * j + 1) * 4 * j).sum();
    let ring_band: u64 = (gamma1 + 1..=f).map(|j| (2 * c + 1) * 4 * j).sum();
    // sum_{j<i} (4i + 2j) = 4i^2 + i(i-1)
    let skip_square: u64 = (1..=gamma2).map(|i| 4 * i * i + i * (i - 1)).sum();
    // sum_{j<=f} (4i + 2j) = 4i(f+1) + f(f+1)
    let skip_band: u64 = (gamma2 + 1..=c).map(|i| 4 * i * (f + 1) + f * (f + 1)).sum();
    ring_square + ring_band + skip_square + skip_band
}

/// Closed form of the palette size in the given regime.
pub fn palette_closed_form(g: &CirculantGraph, regime: Regime) -> Rational {
    let q = g.q() as i128;
    let f = (g.s() / 2) as i128;
    let f1 = f + 1;
    let eq = Rational::from_integer(i128::from(epsilon(g.q() as i64)));
    let r = |a: i128, b: i128| Rational::new(a, b);
    match regime {
        Regime::FewRings => {
            // odd-q term re-derived from the class sum: (f+1)(3f + 6q + 9)/6
            r(f1 * (3 * q * q + 6 * q + (3 * q + 10) * f + 8 * f * f), 6)
                + eq * r(f1 * (3 * f + 6 * q + 9), 6)
        }
        Regime::Balanced => {
            r(5 * q * q * q + 12 * q * q + 4 * q, 24)
                + r(2 * f * f1 * (4 * f + 5), 3)
                + eq * r(5 * q * q + 13 * q + 7, 8)
        }
        Regime::ManyRings => {
            r(q * q * q + 12 * q * q + 20 * q, 24)
                + r((2 * q + 2) * f * f1, 1)
                + eq * (r(q * q + 9 * q + 11, 8) + r(2 * f1 * f, 1))
        }
    }
}

/// Palette size by summation and by the regime's closed form; they must agree.
pub fn colour_count_formula(g: &CirculantGraph) -> Result<ColourCount> {
    let palette = palette_sum(g);
    let regime = Regime::of(g);
    let closed_form = palette_closed_form(g, regime);
    if closed_form != Rational::from_integer(palette as i128) {
        return Err(Error::Consistency(format!(
            "{g}: palette sum {palette} differs from {regime} closed form {closed_form}"
        )));
    }
    debug_assert!(closed_form.to_integer().to_u64() == Some(palette));
    Ok(ColourCount {
        palette,
        regime,
        closed_form,
    })
}
