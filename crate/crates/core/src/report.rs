//! Per-instance report combining every module, with JSON, table and CSV renderings.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::bounds::{
    approx, delta_threshold, edge_lower_bounds, forwarding_bracket, lower_mean_distance,
    optical_bracket, ratio_diagnostics, Bound, BoundReport, Case, Evidence, Source, Target,
};
use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::routing::{
    arc_load_upper_bound, base_load_profile, load_profile, max_arc_load_formula, LoadProfile,
    Routing,
};
use crate::verify::{verify, Check, Status, Suite};
use crate::wavelength::{colour_count_formula, colour_routing, Variant};
use crate::Rational;

/// Largest `n` for which brute-force oracles run by default.
pub const DEFAULT_MAX_EXHAUSTIVE: usize = 2000;

/// A rational rendered as `{"num": p, "den": q, "approx": x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Rational", 3)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.serialize_field("approx", &approx(&self.0))?;
        st.end()
    }
}

/// A value that is either computed or skipped (serialized as the string `"skipped"`).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Maybe<T> {
    Computed(T),
    Skipped(&'static str),
}

impl<T> From<Option<T>> for Maybe<T> {
    fn from(v: Option<T>) -> Self {
        match v {
            Some(v) => Maybe::Computed(v),
            None => Maybe::Skipped("skipped"),
        }
    }
}

impl<T> Maybe<T> {
    pub fn as_option(&self) -> Option<&T> {
        match self {
            Maybe::Computed(v) => Some(v),
            Maybe::Skipped(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    FormulaOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub n: usize,
    pub s: usize,
    pub q: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Loads {
    /// `brute_force` (every path walked) or `base_paths` (the `n - 1` paths from node 0).
    pub counted_by: &'static str,
    pub ring_cw: u64,
    pub ring_acw: u64,
    pub skip_cw: u64,
    pub skip_acw: u64,
    pub max_arc: u64,
    pub max_edge: u64,
    pub max_arc_formula: u64,
    pub load_case: String,
    pub load_case_bound: Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBound {
    pub source: Source,
    pub value: Exact,
}

#[derive(Debug, Clone, Serialize)]
pub struct Distances {
    pub distance_sum: Maybe<u64>,
    pub mean_distance: Maybe<Exact>,
    pub mean_distance_bound_raw: f64,
    pub lower_bounds: Vec<LowerBound>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEnd {
    pub value: Exact,
    pub source: Source,
}

impl From<Bound> for BoundEnd {
    fn from(b: Bound) -> Self {
        BoundEnd {
            value: Exact(b.value),
            source: b.source,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketEntry {
    pub target: Target,
    pub case: Case,
    pub lower: BoundEnd,
    pub upper: BoundEnd,
    pub achieved: Maybe<u64>,
    pub ratio: Maybe<Exact>,
    pub tight: bool,
}

impl From<BoundReport> for BracketEntry {
    fn from(b: BoundReport) -> Self {
        BracketEntry {
            target: b.target,
            case: b.case,
            lower: b.lower.into(),
            upper: b.upper.into(),
            achieved: b.achieved.into(),
            ratio: b.ratio.map(Exact).into(),
            tight: b.is_tight(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Colouring {
    pub palette: u64,
    pub regime: String,
    pub arc_colours: Maybe<u64>,
    pub edge_colours: Maybe<u64>,
    pub arc_conflict_free: Maybe<bool>,
    pub edge_conflict_free: Maybe<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub forwarding_ratio: Maybe<Exact>,
    pub optical_ratio: Maybe<Exact>,
    pub small_skip_regime: bool,
    pub moderate_skip_regime: bool,
    pub delta_threshold: Maybe<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub version: &'static str,
    pub instance: Instance,
    pub mode: Mode,
    pub loads: Loads,
    pub distances: Distances,
    pub brackets: Vec<BracketEntry>,
    pub colouring: Colouring,
    pub diagnostics: Diagnostics,
    pub verification: Maybe<Verification>,
}

impl ReportDocument {
    pub fn bracket(&self, target: Target) -> &BracketEntry {
        self.brackets
            .iter()
            .find(|b| b.target == target)
            .expect("all four targets are reported")
    }

    pub fn verification_passed(&self) -> Option<bool> {
        self.verification.as_option().map(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Brute-force oracles run only when `n <= max_exhaustive`.
    pub max_exhaustive: usize,
    /// Run the invariant suites (exhaustive mode only).
    pub verify: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_exhaustive: DEFAULT_MAX_EXHAUSTIVE,
            verify: true,
        }
    }
}

struct Computed {
    loads: LoadProfile,
    counted_by: &'static str,
    evidence: Evidence,
    arc_ok: Option<bool>,
    edge_ok: Option<bool>,
}

fn compute(g: &CirculantGraph, exhaustive: bool) -> Result<Computed> {
    let rt = Routing::build(g);
    if !exhaustive {
        let loads = base_load_profile(&rt);
        return Ok(Computed {
            loads,
            counted_by: "base_paths",
            evidence: Evidence {
                loads: Some(loads),
                ..Evidence::default()
            },
            arc_ok: None,
            edge_ok: None,
        });
    }
    let loads = load_profile(&rt)?;
    let arc = colour_routing(&rt, Variant::Arc);
    let edge = colour_routing(&rt, Variant::Edge);
    Ok(Computed {
        loads,
        counted_by: "brute_force",
        evidence: Evidence {
            loads: Some(loads),
            distance_sum: Some(g.distance_sum_from_zero()),
            arc_colours: arc.as_ref().ok().map(|c| c.distinct_count),
            edge_colours: edge.as_ref().ok().map(|c| c.distinct_count),
        },
        arc_ok: Some(arc.is_ok()),
        edge_ok: Some(edge.is_ok()),
    })
}

/// Build the full report for one instance.
///
/// Consistency failures of the closed forms themselves are returned as errors;
/// failures of the invariant suites are recorded in `verification`.
pub fn build_report(g: &CirculantGraph, opts: ReportOptions) -> Result<ReportDocument> {
    let exhaustive = g.n() <= opts.max_exhaustive;
    let c = compute(g, exhaustive)?;
    let ev = c.evidence;
    let formula = max_arc_load_formula(g)?;
    if formula != c.loads.max_arc_load {
        return Err(Error::Consistency(format!(
            "{g}: max arc load {} differs from closed form {formula}",
            c.loads.max_arc_load
        )));
    }
    let case_bound = arc_load_upper_bound(g)?;
    let fwd = forwarding_bracket(g, &ev)?;
    let opt = optical_bracket(g, &ev)?;
    let counts = colour_count_formula(g)?;
    let diag = ratio_diagnostics(g, &ev)?;
    let md = lower_mean_distance(g);

    let verification = (exhaustive && opts.verify).then(|| {
        let v = verify(g, Suite::All);
        Verification {
            passed: v.passed(),
            checks: v.checks,
        }
    });

    Ok(ReportDocument {
        version: env!("CARGO_PKG_VERSION"),
        instance: Instance {
            n: g.n(),
            s: g.s(),
            q: g.q(),
            r: g.r(),
        },
        mode: if exhaustive {
            Mode::Exhaustive
        } else {
            Mode::FormulaOnly
        },
        loads: Loads {
            counted_by: c.counted_by,
            ring_cw: c.loads.ring_cw,
            ring_acw: c.loads.ring_acw,
            skip_cw: c.loads.skip_cw,
            skip_acw: c.loads.skip_acw,
            max_arc: c.loads.max_arc_load,
            max_edge: c.loads.max_edge_load,
            max_arc_formula: formula,
            load_case: case_bound.case.to_string(),
            load_case_bound: Exact(case_bound.value),
        },
        distances: Distances {
            distance_sum: ev.distance_sum.into(),
            mean_distance: diag.mean_distance.map(Exact).into(),
            mean_distance_bound_raw: md.raw,
            lower_bounds: edge_lower_bounds(g, &ev)
                .into_iter()
                .map(|b| LowerBound {
                    source: b.source,
                    value: Exact(b.value),
                })
                .collect(),
        },
        brackets: vec![
            fwd.edge.into(),
            fwd.arc.into(),
            opt.edge.into(),
            opt.arc.into(),
        ],
        colouring: Colouring {
            palette: counts.palette,
            regime: counts.regime.to_string(),
            arc_colours: ev.arc_colours.into(),
            edge_colours: ev.edge_colours.into(),
            arc_conflict_free: c.arc_ok.into(),
            edge_conflict_free: c.edge_ok.into(),
        },
        diagnostics: Diagnostics {
            forwarding_ratio: diag.forwarding_ratio.map(Exact).into(),
            optical_ratio: diag.optical_ratio.map(Exact).into(),
            small_skip_regime: diag.small_skip_regime,
            moderate_skip_regime: diag.moderate_skip_regime,
            delta_threshold: delta_threshold(g.n() as u64).ok().into(),
        },
        verification: verification.into(),
    })
}

fn show(r: &Exact) -> String {
    r.0.to_string()
}

fn show_maybe<T: ToString>(m: &Maybe<T>) -> String {
    match m {
        Maybe::Computed(v) => v.to_string(),
        Maybe::Skipped(s) => (*s).to_string(),
    }
}

impl std::fmt::Display for Exact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{} (~{:.4})", self.0, approx(&self.0))
        }
    }
}

/// Plain-text rendering for terminals.
pub fn render_table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let i = &doc.instance;
    let _ = writeln!(
        out,
        "C_{}(1,{})  q={} r={}  mode={}",
        i.n,
        i.s,
        i.q,
        i.r,
        match doc.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::FormulaOnly => "formula-only",
        }
    );
    let l = &doc.loads;
    let _ = writeln!(
        out,
        "loads ({}): ring+ {}  ring- {}  skip+ {}  skip- {}",
        l.counted_by, l.ring_cw, l.ring_acw, l.skip_cw, l.skip_acw
    );
    let _ = writeln!(
        out,
        "max arc load {} (closed form {}), max edge load {}",
        l.max_arc, l.max_arc_formula, l.max_edge
    );
    let _ = writeln!(out, "load case {}: bound {}", l.load_case, l.load_case_bound);
    let d = &doc.distances;
    let _ = writeln!(
        out,
        "distance sum from 0: {}  mean distance: {}",
        show_maybe(&d.distance_sum),
        show_maybe(&d.mean_distance)
    );
    for lb in &d.lower_bounds {
        let _ = writeln!(out, "  lower bound {:<20} {}", lb.source.to_string(), lb.value);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<7}{:<6}{:<34}{:<10}", "index", "case", "bracket", "achieved");
    for b in &doc.brackets {
        let name = match b.target {
            Target::Pi => "pi",
            Target::PiArc => "pi_arc",
            Target::W => "w",
            Target::WArc => "w_arc",
        };
        let bracket = format!("[{}, {}]", show(&b.lower.value), show(&b.upper.value));
        let _ = writeln!(
            out,
            "{:<7}{:<6}{:<34}{:<10}{}",
            name,
            b.case.to_string(),
            bracket,
            show_maybe(&b.achieved),
            if b.tight { "TIGHT" } else { "" }
        );
        let _ = writeln!(
            out,
            "{:13}lower: {}  upper: {}",
            "", b.lower.source, b.upper.source
        );
    }
    let c = &doc.colouring;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "palette {} ({}), arc colours {}, edge colours {}",
        c.palette,
        c.regime,
        show_maybe(&c.arc_colours),
        show_maybe(&c.edge_colours)
    );
    let g = &doc.diagnostics;
    let _ = writeln!(
        out,
        "forwarding ratio {}, optical ratio {}",
        show_maybe(&g.forwarding_ratio),
        show_maybe(&g.optical_ratio)
    );
    match &doc.verification {
        Maybe::Computed(v) => {
            let failed: Vec<_> = v.checks.iter().filter(|c| c.status == Status::Fail).collect();
            if failed.is_empty() {
                let _ = writeln!(out, "verification: pass ({} checks)", v.checks.len());
            } else {
                for f in failed {
                    let _ = writeln!(out, "verification FAIL {}: {}", f.name, f.detail);
                }
            }
        }
        Maybe::Skipped(_) => {
            let _ = writeln!(out, "verification: skipped");
        }
    }
    out
}

/// Header comment written before the CSV header row.
pub const CSV_SCHEMA: &str = "# circroute-schema v1";

/// One sweep row. Field order is the CSV column order.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub s: usize,
    pub q: usize,
    pub r: usize,
    pub status: String,
    pub mode: &'static str,
    pub max_arc_load: Option<u64>,
    pub max_edge_load: Option<u64>,
    pub max_arc_formula: Option<u64>,
    pub load_case: String,
    pub load_case_bound: String,
    pub distance_sum: Option<u64>,
    pub pi_lower: String,
    pub pi_lower_source: String,
    pub pi_upper: String,
    pub forwarding_case: String,
    pub pi_arc_lower: String,
    pub pi_arc_upper: String,
    pub optical_case: String,
    pub w_arc_upper: String,
    pub palette: Option<u64>,
    pub regime: String,
    pub arc_colours: Option<u64>,
    pub edge_colours: Option<u64>,
    pub forwarding_ratio: Option<f64>,
    pub optical_ratio: Option<f64>,
    pub small_skip_regime: Option<bool>,
    pub moderate_skip_regime: Option<bool>,
    pub routing_ok: Option<bool>,
    pub lattice_ok: Option<bool>,
    pub colouring_ok: Option<bool>,
}

impl SweepRow {
    fn empty(g: &CirculantGraph, status: String) -> SweepRow {
        SweepRow {
            n: g.n(),
            s: g.s(),
            q: g.q(),
            r: g.r(),
            status,
            mode: "",
            max_arc_load: None,
            max_edge_load: None,
            max_arc_formula: None,
            load_case: String::new(),
            load_case_bound: String::new(),
            distance_sum: None,
            pi_lower: String::new(),
            pi_lower_source: String::new(),
            pi_upper: String::new(),
            forwarding_case: String::new(),
            pi_arc_lower: String::new(),
            pi_arc_upper: String::new(),
            optical_case: String::new(),
            w_arc_upper: String::new(),
            palette: None,
            regime: String::new(),
            arc_colours: None,
            edge_colours: None,
            forwarding_ratio: None,
            optical_ratio: None,
            small_skip_regime: None,
            moderate_skip_regime: None,
            routing_ok: None,
            lattice_ok: None,
            colouring_ok: None,
        }
    }
}

/// Compute one sweep row. Never fails: problems end up in `status`.
pub fn sweep_row(g: &CirculantGraph, max_exhaustive: usize) -> SweepRow {
    let opts = ReportOptions {
        max_exhaustive,
        verify: true,
    };
    let doc = match build_report(g, opts) {
        Ok(doc) => doc,
        Err(e) => return SweepRow::empty(g, format!("error: {e}")),
    };
    let (suites, status) = match &doc.verification {
        Maybe::Computed(v) => {
            let checks = crate::verify::Verification {
                checks: v.checks.clone(),
            };
            let status = match checks.first_failure() {
                None => "ok".to_string(),
                Some(c) => format!("invariant_failure: {}", c.name),
            };
            (
                [
                    checks.suite_passed(Suite::Routing),
                    checks.suite_passed(Suite::Lattice),
                    checks.suite_passed(Suite::Colouring),
                ],
                status,
            )
        }
        Maybe::Skipped(_) => ([None; 3], "ok".to_string()),
    };
    let pi = doc.bracket(Target::Pi);
    let pi_arc = doc.bracket(Target::PiArc);
    let w_arc = doc.bracket(Target::WArc);
    let ratio = |m: &Maybe<Exact>| m.as_option().map(|r| approx(&r.0));
    SweepRow {
        mode: match doc.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::FormulaOnly => "formula_only",
        },
        max_arc_load: Some(doc.loads.max_arc),
        max_edge_load: Some(doc.loads.max_edge),
        max_arc_formula: Some(doc.loads.max_arc_formula),
        load_case: doc.loads.load_case.clone(),
        load_case_bound: show(&doc.loads.load_case_bound),
        distance_sum: doc.distances.distance_sum.as_option().copied(),
        pi_lower: show(&pi.lower.value),
        pi_lower_source: pi.lower.source.to_string(),
        pi_upper: show(&pi.upper.value),
        forwarding_case: pi_arc.case.to_string(),
        pi_arc_lower: show(&pi_arc.lower.value),
        pi_arc_upper: show(&pi_arc.upper.value),
        optical_case: w_arc.case.to_string(),
        w_arc_upper: show(&w_arc.upper.value),
        palette: Some(doc.colouring.palette),
        regime: doc.colouring.regime.clone(),
        arc_colours: doc.colouring.arc_colours.as_option().copied(),
        edge_colours: doc.colouring.edge_colours.as_option().copied(),
        forwarding_ratio: ratio(&doc.diagnostics.forwarding_ratio),
        optical_ratio: ratio(&doc.diagnostics.optical_ratio),
        small_skip_regime: Some(doc.diagnostics.small_skip_regime),
        moderate_skip_regime: Some(doc.diagnostics.moderate_skip_regime),
        routing_ok: suites[0],
        lattice_ok: suites[1],
        colouring_ok: suites[2],
        ..SweepRow::empty(g, status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(n: usize, s: usize) -> ReportDocument {
        build_report(&CirculantGraph::new(n, s).unwrap(), ReportOptions::default()).unwrap()
    }

    #[test]
    fn tight_square_instance() {
        let doc = report(25, 5);
        let pi = doc.bracket(Target::Pi);
        assert_eq!((pi.lower.value.0, pi.upper.value.0), (Rational::from(30), Rational::from(30)));
        assert!(pi.tight);
        assert_eq!(doc.verification_passed(), Some(true));
        let table = render_table(&doc);
        assert!(table.contains("[30, 30]") && table.contains("TIGHT"), "{table}");
    }

    #[test]
    fn json_fields() {
        let doc = report(12, 3);
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["loads"]["max_arc"], 7);
        assert_eq!(v["colouring"]["palette"], 34);
        assert_eq!(v["brackets"][0]["lower"]["value"]["num"], 10);
        assert_eq!(v["brackets"][0]["lower"]["value"]["den"], 1);
        assert_eq!(v["distances"]["distance_sum"], 20);
        assert_eq!(doc.to_json(), report(12, 3).to_json());
    }

    #[test]
    fn formula_only_mode() {
        let g = CirculantGraph::new(3000, 40).unwrap();
        let doc = build_report(&g, ReportOptions::default()).unwrap();
        assert_eq!(doc.mode, Mode::FormulaOnly);
        assert_eq!(doc.distances.distance_sum, Maybe::Skipped("skipped"));
        assert_eq!(doc.verification_passed(), None);
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(v["colouring"]["arc_colours"], "skipped");
    }

    #[test]
    fn sweep_row_for_tight_instance() {
        let row = sweep_row(&CirculantGraph::new(25, 5).unwrap(), 2000);
        assert_eq!(row.status, "ok");
        assert_eq!(row.forwarding_ratio, Some(1.0));
        assert_eq!(row.routing_ok, Some(true));
    }
}
