//! Solving for periodic orbits of a prescribed itinerary.
//!
//! cargo run --example solve_cycle

use pwl_tongues::cycles::{first_component_adjugate, solve_cycle};
use pwl_tongues::pwlmap::pws2d;
use pwl_tongues::words::make_rotational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = pws2d(-0.444, -0.6);
    for ell in [1, 2] {
        let word = make_rotational(ell, 2, 7)?;
        let cycle = solve_cycle(&map, &word)?;
        println!(
            "{word}: {:?}, largest multiplier {:.6}, stable = {}",
            cycle.admissibility,
            cycle.max_modulus(),
            cycle.stable
        );
        for (s, y) in word.iter().zip(&cycle.points) {
            println!("  {s:?} ({:+.6}, {:+.6})", y[0], y[1]);
        }
        // the closed-form first component agrees with the linear solve
        let x1 = first_component_adjugate(&map, &word)?;
        println!("  x1 = {x1:.12} (solve: {:.12})", cycle.points[0][0]);
    }
    Ok(())
}
