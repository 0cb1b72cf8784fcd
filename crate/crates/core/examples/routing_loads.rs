// The all-to-all routing: paths are a run of skips followed by a run of ring
// steps. Its per-class arc loads are counted twice (walking all n(n-1) paths,
// and from the n-1 paths out of node 0) and compared with the closed form.

use circroute::routing::{self, arc_load_upper_bound, max_arc_load_formula};
use circroute::{CirculantGraph, Routing};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = CirculantGraph::new(20, 4)?;
    let rt = Routing::build(&g);
    for (x, y) in [(0, 6), (0, 7), (3, 10), (15, 2)] {
        println!("{x} -> {y}: {}  class {}", rt.path(x, y)?, rt.class(x, y));
    }

    for (n, s) in [(7, 2), (12, 3), (25, 5), (60, 7), (144, 12)] {
        let g = CirculantGraph::new(n, s)?;
        let rt = Routing::build(&g);
        let loads = routing::load_profile(&rt)?;
        let formula = max_arc_load_formula(&g)?;
        let bound = arc_load_upper_bound(&g)?;
        println!(
            "{g}: ring+ {} ring- {} skip+ {} skip- {} | max arc {} (closed form {formula}), max edge {} | case {} bound {}",
            loads.ring_cw,
            loads.ring_acw,
            loads.skip_cw,
            loads.skip_acw,
            loads.max_arc_load,
            loads.max_edge_load,
            bound.case,
            bound.value
        );
        if loads.max_arc_load != formula {
            return Err(format!("{g}: load formula mismatch").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
