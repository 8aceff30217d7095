//! Locating and classifying border-collision bifurcations.
//!
//! cargo run --example border_collision

use pwl_tongues::bcb::{
    classify_bcb, locate_bcb, rotational_bcb_audit, run_campaign, CampaignOptions, ParamFamily,
};
use pwl_tongues::pwlmap::{ExampleFamily, Param};
use pwl_tongues::words::{make_rotational, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // edge of the 2/7 tongue: a rotational word loses a point to the other side
    let family = ParamFamily::new(
        ExampleFamily::Pws2d {
            alpha: -0.4,
            beta: -0.6,
        },
        Param::Alpha,
    )?;
    let word = make_rotational(2, 2, 7)?;
    let event = classify_bcb(&locate_bcb(&family, &word, 4, (-0.5, -0.444))?, &family)?;
    let audit = rotational_bcb_audit(&event);
    println!(
        "{word} -> {} at alpha = {:.9}: {:?}, audit {:?}",
        event.flipped_word, event.eta_star, event.classification, audit.verdict
    );

    // a non-rotational period-9 orbit passes straight through
    let base = ExampleFamily::NormalForm2d {
        tau_l: 0.7,
        delta_l: 0.1,
        tau_r: -1.6,
        delta_r: 1.2,
    };
    let family = ParamFamily::new(base, Param::TauR)?;
    let word: Word = "LLRRRRLRR".parse()?;
    let event = classify_bcb(&locate_bcb(&family, &word, 7, (-1.63, -1.59))?, &family)?;
    println!(
        "{word} -> {} at tau_r = {:.9}: {:?}, l {} -> {}",
        event.flipped_word,
        event.eta_star,
        event.classification,
        word.ell(),
        event.flipped_word.ell()
    );

    let report = run_campaign(&CampaignOptions {
        target_families: 20,
        ..CampaignOptions::default()
    });
    println!(
        "random families: {} nonsmooth folds, {} persistence, {} violations",
        report.nonsmooth_folds,
        report.persistence,
        report.violations.len()
    );
    Ok(())
}
