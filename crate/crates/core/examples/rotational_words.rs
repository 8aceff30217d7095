//! Rotational words, their flip sets and what single flips turn them into.
//!
//! cargo run --example rotational_words

use pwl_tongues::words::{classify_rotational, make_rotational, rotational_flip_set, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = make_rotational(2, 2, 7)?;
    let params = classify_rotational(&x).expect("built as a rotational word");
    println!("F[2,2,7] = {x}, d = {}", params.d);

    // only flips in the j-set reach F[l-1,m,p] or F[l+1,m,p] with the same m
    let flip_set = rotational_flip_set(&params)?;
    for j in 0..params.p {
        let k = params.word_index_of(j);
        let y = x.flipped(k as i64);
        let verdict = match classify_rotational(&y) {
            Some(r) => format!("shift of F[{},{},{}]", r.ell, r.m, r.p),
            None => "not rotational".to_string(),
        };
        let marker = if flip_set.contains(&j) { "*" } else { " " };
        println!("{marker} j = {j}  flip at {k}: {y}  {verdict}");
    }

    // the period-9 word of the normal-form example is not rotational
    let w: Word = "LLRRRRLRR".parse()?;
    println!("{w}: {:?}", classify_rotational(&w));
    Ok(())
}
