// Build a few circulant graphs, run BFS from node 0 and look at the cut that
// separates the ring into two halves.

use circroute::CirculantGraph;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, s) in [(7, 2), (12, 3), (25, 5), (100, 7)] {
        let g = CirculantGraph::new(n, s)?;
        let dist = g.distances_from(0);
        let diameter = dist.iter().max().copied().unwrap_or(0);
        println!(
            "{g}: q={} r={}, {} arcs, diameter {diameter}, distance sum {}, half-ring cut {}",
            g.q(),
            g.r(),
            g.arc_count(),
            g.distance_sum_from_zero(),
            g.cut_size_halfline()
        );
        println!("  neighbours of 0: {:?}", g.neighbours(0));
    }

    // The constructor names the violated constraint.
    match CirculantGraph::new(12, 6) {
        Ok(_) => return Err("s = n/2 should be rejected".into()),
        Err(e) => println!("{e}"),
    }

    let count = circroute::graph::valid_instances(5, 30).count();
    println!("{count} valid (n, s) pairs with 5 <= n <= 30");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
