//! Count lattice points, and even lattice points, of small lattice polytopes.
//!
//! Usage: `cargo run --example polytope_points -- 4`

use enriques_cusps::polytope::{pyramid, square, weighted_triangle, PointLattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let side: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);
    for (name, p) in [(format!("square side {side}"), square(side)), ("weighted triangle".into(), weighted_triangle()), ("pyramid".into(), pyramid())] {
        let full = p.lattice_points(PointLattice::Full).len();
        let even = p.lattice_points(PointLattice::Even).len();
        println!("{name:<20} {full:>4} points, {even:>4} even");
    }
    Ok(())
}
