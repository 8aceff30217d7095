//! Fixed points of both pieces, their admissibility and invertibility.
//!
//! cargo run --example fixed_points

use pwl_tongues::pwlmap::{normal_form_2d, pws2d};

fn main() {
    for (name, map) in [
        ("pws2d(-0.444, -0.6)", pws2d(-0.444, -0.6)),
        (
            "nf2d(0.3, -1.8, -0.1, -0.3)",
            normal_form_2d(0.3, -1.8, -0.1, -0.3),
        ),
    ] {
        println!("{name}: {:?}", map.invertibility());
        for report in map.fixed_points() {
            println!(
                "  x^{:?} = {:?}  {:?}, multipliers {:?}",
                report.side, report.point, report.admissibility, report.multipliers
            );
        }
    }
}
