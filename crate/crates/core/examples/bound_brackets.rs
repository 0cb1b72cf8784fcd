// Lower and upper bounds on the forwarding and optical indices, with and
// without brute-force evidence.

use circroute::bounds::{
    approx, delta_threshold, forwarding_bracket, optical_bracket, ratio_diagnostics, Evidence,
};
use circroute::CirculantGraph;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, s) in [(25, 5), (12, 3), (7, 2), (200, 14)] {
        let g = CirculantGraph::new(n, s)?;
        let ev = Evidence::exhaustive(&g)?;
        let fwd = forwarding_bracket(&g, &ev)?;
        let opt = optical_bracket(&g, &ev)?;
        println!("{g}");
        for rep in [fwd.edge, fwd.arc, opt.edge, opt.arc] {
            println!(
                "  {:?}: case {} [{} ({}), {} ({})] achieved {:?}{}",
                rep.target,
                rep.case,
                rep.lower.value,
                rep.lower.source,
                rep.upper.value,
                rep.upper.source,
                rep.achieved,
                if rep.is_tight() { "  TIGHT" } else { "" }
            );
        }
    }

    // A million nodes: closed forms plus the O(n) base-path loads only.
    for s in [500, 1000] {
        let g = CirculantGraph::new(1_000_000, s)?;
        let ev = Evidence::closed_form(&g);
        let fwd = forwarding_bracket(&g, &ev)?;
        let diag = ratio_diagnostics(&g, &ev)?;
        println!(
            "{g}: pi_arc case {} in [{:.1}, {:.1}], forwarding ratio {:.4}",
            fwd.arc.case,
            approx(&fwd.arc.lower.value),
            approx(&fwd.arc.upper.value),
            diag.forwarding_ratio.map(|r| approx(&r)).unwrap_or(f64::NAN)
        );
    }
    println!("cut bound beats the mean-distance bound for s <= {:.3} at n = 1250", delta_threshold(1250)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
