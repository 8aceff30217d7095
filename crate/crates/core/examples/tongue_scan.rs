//! A coarse two-parameter scan of the PWS2D family showing the mode-locking
//! tongues, written as CSV plus a JSON summary.
//!
//! cargo run --release --example tongue_scan [cells.csv]

use std::fs::File;

use pwl_tongues::pwlmap::ExampleFamily;
use pwl_tongues::tongues::{scan_grid, summarize, write_csv, Axis, GridSpec, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::example(
        ExampleFamily::Pws2d {
            alpha: 0.0,
            beta: -0.75,
        },
        Axis::parse("alpha", "-2:2:120")?,
        Axis::parse("beta", "-1:-0.5:40")?,
    )?;
    let config = ScanConfig::new(grid, 12);
    let cells = scan_grid(&config)?;
    let summary = summarize(&config, &cells);

    for t in summary.tongues.iter().filter(|t| t.cells >= 10) {
        println!(
            "{}/{}: {} cells, l counts {:?}, root {:?} (theory {:?})",
            t.m, t.p, t.cells, t.cells_by_ell, t.root_alpha_observed, t.root_alpha_theory
        );
    }
    println!(
        "{} cells without a stable orbit up to period {}, {} transition violations",
        summary.no_stable_cells, config.p_max, summary.violations
    );
    if let Some(path) = std::env::args().nth(1) {
        write_csv(&config, &cells, File::create(&path)?)?;
        println!("cells written to {path}");
    }
    Ok(())
}
