// Distances in C_n(1,s) from the lattice of points (x1, x2) with x1 + x2*s = 0 (mod n):
// with a packed basis, the distance to a node is the L1 distance from its point in
// the fundamental parallelogram to the nearest corner.

use circroute::lattice::{distance_sum_lower_bound, packed_basis, Parallelogram};
use circroute::CirculantGraph;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, s) in [(23, 5), (29, 6), (40, 7), (34, 10), (200, 14)] {
        let g = CirculantGraph::new(n, s)?;
        let Some(basis) = packed_basis(&g) else {
            println!("{g}: no packed basis (r={} > q={} and r+q < s+1)", g.r(), g.q());
            continue;
        };
        let para = Parallelogram::new(&g, basis)?;
        let bfs = g.distances_from(0);
        let agree = (0..n).all(|t| para.corner_distance(t) == u64::from(bfs[t]));
        println!(
            "{g}: case {:?} basis {} , {}  det {}  corner distance = BFS: {agree}",
            basis.case,
            basis.a,
            basis.b,
            basis.determinant()
        );
        if !agree {
            return Err(format!("{g}: corner distances disagree with BFS").into());
        }
        let t = n / 3;
        println!(
            "  node {t} sits at {} and is {} steps away",
            para.point(t),
            para.corner_distance(t)
        );
        if let Some(lb) = distance_sum_lower_bound(&g) {
            println!("  distance sum {} >= {lb}", g.distance_sum_from_zero());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
