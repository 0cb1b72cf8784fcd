// Colour every routed path so that paths sharing an arc (or an edge) differ,
// then compare the colours used with the palette size.

use circroute::routing::load_profile;
use circroute::wavelength::{colour_count_formula, colour_routing, colour_routing_with_rule, WrapRule};
use circroute::{CirculantGraph, Routing, Variant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, s) in [(7, 2), (12, 3), (25, 5), (26, 5), (60, 8)] {
        let g = CirculantGraph::new(n, s)?;
        let rt = Routing::build(&g);
        let arc = colour_routing(&rt, Variant::Arc)?;
        let edge = colour_routing(&rt, Variant::Edge)?;
        let palette = colour_count_formula(&g)?;
        let load = load_profile(&rt)?.max_arc_load;
        println!(
            "{g}: {} arc colours (max arc load {load}), {} edge colours, palette {} ({})",
            arc.distinct_count, edge.distinct_count, palette.palette, palette.regime
        );
        println!(
            "  path 0 -> 1 gets {}, path 1 -> 0 gets {}",
            arc.colour(0, 1),
            arc.colour(1, 0)
        );
    }

    // The unrotated wrap-around rule reuses a colour on a shared arc here.
    let rt = Routing::build(&CirculantGraph::new(26, 5)?);
    match colour_routing_with_rule(&rt, Variant::Arc, WrapRule::Direct) {
        Ok(_) => return Err("expected a conflict with the direct wrap rule".into()),
        Err(e) => println!("direct wrap rule: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
