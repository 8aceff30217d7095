//! The circle maps induced on invariant circles: a mode-locked attracting
//! circle and an orientation-reversing unstable one.
//!
//! cargo run --example circle_map [out.csv]

use std::fs::File;

use pwl_tongues::circle::{
    reconstruct_circle, sample_ring, unstable_circle_samples, PencilOptions,
};
use pwl_tongues::matrix::Vector;
use pwl_tongues::pwlmap::{normal_form_2d, pws2d};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = pws2d(-0.444, -0.6);
    let center = Vector::from([0.0, -0.5]);
    let orbit = sample_ring(&map, &center, 1.0, 2000, 20, 2)?;
    let model = reconstruct_circle(&orbit, &center)?;
    let rot = model
        .rotation
        .as_ref()
        .expect("degree one maps get a rotation number");
    println!(
        "attracting circle: degree {}, rotation {:.6} ~ {:?}, c = {:.4}",
        model.degree, rot.estimate, rot.approximant, model.c
    );
    if let Some(path) = std::env::args().nth(1) {
        model.write_csv(File::create(&path)?)?;
        println!("samples written to {path}");
    }

    let map = normal_form_2d(0.3, -1.8, -0.1, -0.3);
    let circle = unstable_circle_samples(&map, &PencilOptions::default())?;
    let model = reconstruct_circle(&circle.orbit, &circle.center)?;
    println!(
        "unstable circle from x^{:?} (kappa {}): degree {}",
        circle.source, circle.kappa, model.degree
    );
    Ok(())
}
