//! Closed-form lower and upper bounds on the forwarding and optical indices,
//! and the brackets assembled from them.
//!
//! All bounds are exact rationals. The one irrational bound (the mean-distance
//! bound, which involves `sqrt(2n)`) is evaluated in floating point and turned
//! into a rational that is rounded down with a `1e-9` relative guard, except
//! when `2n` is a perfect square and it can be evaluated exactly.

use std::fmt;

use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::routing::{
    arc_load_upper_bound, base_load_profile, brute_force_load_profile, max_arc_load_formula,
    LoadCase, LoadProfile, Routing,
};
use crate::wavelength::{colour_count_formula, colour_routing, Variant};
use crate::Rational;

/// 1 for odd `x`, 0 for even.
pub fn epsilon(x: i64) -> i64 {
    x.rem_euclid(2)
}

fn rat(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// Correction term for the anticlockwise ring load when `q` is odd.
pub fn delta_term(g: &CirculantGraph) -> Rational {
    let (s, r) = (g.s() as i128, g.r() as i128);
    if s % 2 == 0 {
        rat(s, 4) + rat((r / 2) * (s - (r + 2) / 2), 2)
    } else {
        let h = (r + 1) / 2;
        rat(h * (s - h), 2)
    }
}

/// `a + (eps(s) + eps(q)) / 2`.
pub fn kappa(g: &CirculantGraph, a: i64) -> Rational {
    int(i128::from(a)) + rat(i128::from(epsilon(g.s() as i64) + epsilon(g.q() as i64)), 2)
}

/// The skip `s` above which the mean-distance bound beats the cut bound:
/// `3n(n^2 - eps(n)) / ((n-1)(sqrt(2n) - 7)^3) - 1`. Needs `n >= 25`.
pub fn delta_threshold(n: u64) -> Result<f64> {
    let gap = (2.0 * n as f64).sqrt() - 7.0;
    if n <= 24 || gap <= 0.0 {
        return Err(Error::Domain {
            n: n as i64,
            s: 0,
            constraint: "sqrt(2n) > 7",
        });
    }
    let nf = n as f64;
    let eps = epsilon(n as i64) as f64;
    Ok(3.0 * nf * (nf * nf - eps) / ((nf - 1.0) * gap.powi(3)) - 1.0)
}

/// Cut bound `floor(n/2) ceil(n/2) / (s+1)` on the edge-forwarding index.
pub fn lower_cut(g: &CirculantGraph) -> Rational {
    let n = g.n() as i128;
    rat(n * n - i128::from(epsilon(n as i64)), 4 * (g.s() as i128 + 1))
}

/// The mean-distance bound `(n-1)(sqrt(2n) - 7)^3 / (12n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanDistanceBound {
    /// Floating-point value, possibly negative.
    pub raw: f64,
    /// A rational not exceeding `raw`, clamped at 0.
    pub value: Rational,
    /// Whether `value` equals the bound exactly.
    pub exact: bool,
}

pub fn lower_mean_distance(g: &CirculantGraph) -> MeanDistanceBound {
    let n = g.n() as i128;
    let nf = n as f64;
    let raw = (nf - 1.0) * ((2.0 * nf).sqrt() - 7.0).powi(3) / (12.0 * nf);

    let root = (2 * n as u128).sqrt() as i128;
    if root * root == 2 * n {
        let gap = root - 7;
        let exact = gap
            .checked_pow(3)
            .and_then(|c| c.checked_mul(n - 1))
            .map(|num| rat(num, 12 * n));
        if let Some(v) = exact {
            let value = if v < Rational::zero() { Rational::zero() } else { v };
            return MeanDistanceBound {
                raw,
                value,
                exact: v >= Rational::zero(),
            };
        }
    }
    const SCALE: f64 = 1e6;
    let guarded = (raw * (1.0 - 1e-9) * SCALE).floor();
    let value = if guarded > 0.0 {
        rat(guarded as i128, SCALE as i128)
    } else {
        Rational::zero()
    };
    MeanDistanceBound {
        raw,
        value,
        exact: false,
    }
}

/// `sum_{x,y} d(x,y) / |E| = (sum_i d(0,i)) / 2`, from a BFS distance sum.
pub fn lower_distance_sum_exact(distance_sum: u64) -> Rational {
    rat(distance_sum as i128, 2)
}

/// `floor((s+1)^2/2) / 2`, valid when `r <= q` or `r + q >= s + 1`.
pub fn lower_packed_distance_sum(g: &CirculantGraph) -> Option<Rational> {
    crate::lattice::distance_sum_lower_bound(g).map(|v| rat(v as i128, 2))
}

/// `sqrt(n)(n-1)/4`, valid when `s = q = sqrt(n)`.
pub fn lower_square_case(g: &CirculantGraph) -> Option<Rational> {
    let (n, s) = (g.n() as i128, g.s() as i128);
    (s * s == n).then(|| rat(s * (n - 1), 4))
}

/// Where a bound value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Cut,
    MeanDistance,
    DistanceSum,
    PackedDistanceSum,
    SquareDistanceSum,
    ForwardingClosedForm,
    LoadCaseBound,
    LoadFormula,
    RoutingLoad,
    OpticalClosedForm,
    Palette,
    Colouring,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub source: Source,
}

impl Bound {
    fn new(value: Rational, source: Source) -> Self {
        Bound { value, source }
    }

    fn halved(self) -> Self {
        Bound::new(self.value / int(2), self.source)
    }

    fn doubled(self) -> Self {
        Bound::new(self.value * int(2), self.source)
    }
}

/// Constructive values available for one instance. Fields left `None` were not computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Evidence {
    pub loads: Option<LoadProfile>,
    pub distance_sum: Option<u64>,
    pub arc_colours: Option<u64>,
    pub edge_colours: Option<u64>,
}

impl Evidence {
    /// Only what is linear in `n`: the per-class loads counted over base paths.
    pub fn closed_form(g: &CirculantGraph) -> Evidence {
        Evidence {
            loads: Some(base_load_profile(&Routing::build(g))),
            ..Evidence::default()
        }
    }

    /// Everything, including BFS, brute-force loads and both colourings.
    pub fn exhaustive(g: &CirculantGraph) -> Result<Evidence> {
        let rt = Routing::build(g);
        let loads = crate::routing::load_profile(&rt)?;
        let arc = colour_routing(&rt, Variant::Arc)?;
        let edge = colour_routing(&rt, Variant::Edge)?;
        Ok(Evidence {
            loads: Some(loads),
            distance_sum: Some(g.distance_sum_from_zero()),
            arc_colours: Some(arc.distinct_count),
            edge_colours: Some(edge.distinct_count),
        })
    }

    /// Loads from brute force and the BFS distance sum, without colourings.
    pub fn with_distances(g: &CirculantGraph) -> Result<Evidence> {
        let rt = Routing::build(g);
        Ok(Evidence {
            loads: Some(brute_force_load_profile(&rt)?),
            distance_sum: Some(g.distance_sum_from_zero()),
            ..Evidence::default()
        })
    }
}

/// Every applicable lower bound on the edge-forwarding index, in a fixed order.
pub fn edge_lower_bounds(g: &CirculantGraph, ev: &Evidence) -> Vec<Bound> {
    let mut out = vec![
        Bound::new(lower_cut(g), Source::Cut),
        Bound::new(lower_mean_distance(g).value, Source::MeanDistance),
    ];
    if let Some(v) = lower_packed_distance_sum(g) {
        out.push(Bound::new(v, Source::PackedDistanceSum));
    }
    if let Some(v) = lower_square_case(g) {
        out.push(Bound::new(v, Source::SquareDistanceSum));
    }
    if let Some(sum) = ev.distance_sum {
        out.push(Bound::new(lower_distance_sum_exact(sum), Source::DistanceSum));
    }
    out
}

/// Largest applicable lower bound; ties keep the earlier source, so a closed
/// form is preferred over the BFS distance sum it matches.
pub fn best_edge_lower(g: &CirculantGraph, ev: &Evidence) -> Bound {
    edge_lower_bounds(g, ev)
        .into_iter()
        .reduce(|best, b| if b.value > best.value { b } else { best })
        .expect("cut bound always applies")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Pi,
    PiArc,
    W,
    WArc,
}

/// Which closed-form regime applies; `Uncovered` between non-integral thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    C,
    Uncovered,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
            Case::Uncovered => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub target: Target,
    pub case: Case,
    pub lower: Bound,
    pub upper: Bound,
    pub achieved: Option<u64>,
    pub ratio: Option<Rational>,
}

impl BoundReport {
    fn new(target: Target, case: Case, lower: Bound, upper: Bound, achieved: Option<u64>) -> Self {
        let ratio = (lower.value > Rational::zero()).then(|| upper.value / lower.value);
        BoundReport {
            target,
            case,
            lower,
            upper,
            achieved,
            ratio,
        }
    }

    pub fn is_tight(&self) -> bool {
        self.lower.value == self.upper.value
    }
}

/// Brackets for the arc and edge version of one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bracket {
    pub arc: BoundReport,
    pub edge: BoundReport,
}

/// Regime of the forwarding closed forms, decided on squares:
/// `s <= sqrt(n) - 1`, `s = sqrt(n)`, `s >= sqrt(n) + 1`.
pub fn forwarding_case(g: &CirculantGraph) -> Case {
    let (n, s) = (g.n() as u128, g.s() as u128);
    if (s + 1) * (s + 1) <= n {
        Case::A
    } else if s * s == n {
        Case::B
    } else if (s - 1) * (s - 1) >= n {
        Case::C
    } else {
        Case::Uncovered
    }
}

/// Closed-form upper bound on the arc-forwarding index for the case, if any.
pub fn forwarding_closed_form(g: &CirculantGraph, case: Case) -> Option<Rational> {
    let (n, s, r) = (g.n() as i128, g.s() as i128, g.r() as i128);
    let eps_s = i128::from(epsilon(s as i64));
    match case {
        Case::A => Some(rat((n - r) * (n + r + 2) + s * s, 8 * s)),
        Case::B => Some(rat(s * (n - eps_s), 8)),
        Case::C => Some(rat(s * s * (n + r + 2) - eps_s * (n - r), 8 * s)),
        Case::Uncovered => None,
    }
}

/// Bracket on the arc-forwarding index (and the edge index derived from it).
pub fn forwarding_bracket(g: &CirculantGraph, ev: &Evidence) -> Result<Bracket> {
    let case = forwarding_case(g);
    let edge_lower = best_edge_lower(g, ev);
    let arc_upper = match forwarding_closed_form(g, case) {
        Some(v) => Bound::new(v, Source::ForwardingClosedForm),
        None => {
            let lb = arc_load_upper_bound(g)?;
            if lb.case == LoadCase::Gap {
                Bound::new(int(i128::from(max_arc_load_formula(g)?)), Source::LoadFormula)
            } else {
                Bound::new(lb.value, Source::LoadCaseBound)
            }
        }
    };
    let arc = BoundReport::new(
        Target::PiArc,
        case,
        edge_lower.halved(),
        arc_upper,
        ev.loads.map(|l| l.max_arc_load),
    );
    let edge_upper = match ev.loads {
        Some(l) => Bound::new(int(i128::from(l.max_edge_load)), Source::RoutingLoad),
        None => arc_upper.doubled(),
    };
    let edge = BoundReport::new(
        Target::Pi,
        case,
        edge_lower,
        edge_upper,
        ev.loads.map(|l| l.max_edge_load),
    );
    Ok(Bracket { arc, edge })
}

fn below_threshold(g: &CirculantGraph, k: Rational) -> bool {
    // s <= sqrt(n - r + k^2) + k
    let s = int(g.s() as i128);
    let x = int((g.n() - g.r()) as i128) + k * k;
    s - k < Rational::zero() || (s - k) * (s - k) <= x
}

fn above_threshold(g: &CirculantGraph, k: Rational) -> bool {
    // sqrt(n - r + k^2) + k <= s
    let s = int(g.s() as i128);
    let x = int((g.n() - g.r()) as i128) + k * k;
    s - k >= Rational::zero() && x <= (s - k) * (s - k)
}

/// Regime of the optical closed forms, from the `kappa` thresholds.
pub fn optical_case(g: &CirculantGraph) -> Case {
    if g.s() >= 2 && below_threshold(g, kappa(g, -2)) {
        Case::A
    } else if above_threshold(g, kappa(g, -1)) && below_threshold(g, kappa(g, 0)) {
        Case::B
    } else if above_threshold(g, kappa(g, 1)) && 2 * g.s() < g.n() {
        Case::C
    } else {
        Case::Uncovered
    }
}

/// Closed-form upper bound on the directed optical index for the case, if any.
pub fn optical_closed_form(g: &CirculantGraph, case: Case) -> Option<Rational> {
    let (s, q) = (g.s() as i128, g.q() as i128);
    let eq = i128::from(epsilon(q as i64));
    match case {
        // the palette's few-rings form with floor(s/2) relaxed to s/2
        Case::A => Some(rat(
            (s + 2) * (6 * q * q + 3 * q * (s + 4) + s * (4 * s + 10) + eq * (12 * q + 3 * s + 18)),
            24,
        )),
        Case::B => Some(
            rat(q * (q + 2) * (5 * q + 2), 24)
                + rat(s * (s + 2) * (2 * s + 5), 6)
                + rat(eq * (5 * q * q + 13 * q + 7), 8),
        ),
        Case::C => Some(
            rat(q * (q + 2) * (q + 10), 24)
                + rat(s * (s + 2) * (q + 1), 2)
                + rat(eq * ((q + 5) * (q + 5) + 4 * (s + 1) * (s + 1)), 8),
        ),
        Case::Uncovered => None,
    }
}

/// Bracket on the directed optical index and on the undirected one.
///
/// Lower bounds carry over from the forwarding indices; the undirected upper
/// bound is twice the directed one.
pub fn optical_bracket(g: &CirculantGraph, ev: &Evidence) -> Result<Bracket> {
    let case = optical_case(g);
    let fwd = forwarding_bracket(g, ev)?;
    let arc_upper = match optical_closed_form(g, case) {
        Some(v) => Bound::new(v, Source::OpticalClosedForm),
        None => match ev.arc_colours {
            Some(c) => Bound::new(int(i128::from(c)), Source::Colouring),
            None => Bound::new(
                int(i128::from(colour_count_formula(g)?.palette)),
                Source::Palette,
            ),
        },
    };
    Ok(Bracket {
        arc: BoundReport::new(Target::WArc, case, fwd.arc.lower, arc_upper, ev.arc_colours),
        edge: BoundReport::new(
            Target::W,
            case,
            fwd.edge.lower,
            arc_upper.doubled(),
            ev.edge_colours,
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioDiagnostics {
    /// Constructive maximum edge load over the best edge-forwarding lower bound.
    pub forwarding_ratio: Option<Rational>,
    /// Arc colours used (palette size when not coloured) over the directed optical lower bound.
    pub optical_ratio: Option<Rational>,
    /// `2 <= s <= sqrt(3n/2)`.
    pub small_skip_regime: bool,
    /// `3 <= s <= 3 sqrt(n) / (2 sqrt 2) - 1`.
    pub moderate_skip_regime: bool,
    /// Mean distance from a node to the others, `sum_i d(0,i) / (n-1)`.
    pub mean_distance: Option<Rational>,
}

pub fn ratio_diagnostics(g: &CirculantGraph, ev: &Evidence) -> Result<RatioDiagnostics> {
    let (n, s) = (g.n() as u128, g.s() as u128);
    let edge_lower = best_edge_lower(g, ev).value;
    let arc_lower = edge_lower / int(2);
    let over = |num: Option<u64>, den: Rational| {
        num.filter(|_| den > Rational::zero())
            .map(|v| int(i128::from(v)) / den)
    };
    let colours = match ev.arc_colours {
        Some(c) => Some(c),
        None => Some(colour_count_formula(g)?.palette),
    };
    Ok(RatioDiagnostics {
        forwarding_ratio: over(ev.loads.map(|l| l.max_edge_load), edge_lower),
        optical_ratio: over(colours, arc_lower),
        small_skip_regime: s >= 2 && 2 * s * s <= 3 * n,
        moderate_skip_regime: s >= 3 && 8 * (s + 1) * (s + 1) <= 9 * n,
        mean_distance: ev
            .distance_sum
            .map(|d| rat(d as i128, g.n() as i128 - 1)),
    })
}

/// Decimal approximation of a rational, for display.
pub fn approx(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
