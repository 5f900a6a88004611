//! Classical Redei matrices and the generalized matrices of F_1 = Q(sqrt 2)(sqrt delta).
//!
//! `cargo run --example redei_matrices`

use lambda2::forms::narrow_class_group;
use lambda2::redei::{generalized_redei_f1, r4_narrow_via_redei, redei_matrix};

fn main() -> lambda2::error::Result<()> {
    for d in [697, 323, 15, 1513, 2 * 17 * 41] {
        let disc = if d % 4 == 1 { d } else { 4 * d };
        let m = redei_matrix(d)?;
        let brute = narrow_class_group(disc)?.two_part.four_rank();
        println!("D = {d}:\n{m}\nr4 via Redei = {}, by forms = {brute}\n", r4_narrow_via_redei(d)?);
    }

    let g = generalized_redei_f1(17, 41)?;
    let places: Vec<String> = g.places.iter().map(|p| p.to_string()).collect();
    println!("F_1 for (17, 41), places {}", places.join(", "));
    println!("M:\n{}", g.m);
    println!("R (generators {:?}):\n{}", g.generators, g.r);
    println!("r2 = {}, r4 = {}", g.r2, g.r4);
    Ok(())
}
