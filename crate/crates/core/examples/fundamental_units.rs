//! Fundamental units via continued fractions, their norms, the 2-adic
//! image of eps_D, and the decomposition of eps_2D.
//!
//! `cargo run --example fundamental_units`

use lambda2::arith::cf_quadratic;
use lambda2::field::{eps2d_decompose, eps_image_mod8_auto, fundamental_unit, splits_at_2};

fn main() -> lambda2::error::Result<()> {
    for d in [2, 3, 5, 30, 94, 697, 1513, 3977] {
        let u = fundamental_unit(d)?;
        let cf = cf_quadratic(d, d % 4 == 1)?;
        print!("D = {d:>5}: eps = {u}, N = {:+}, period {}", u.norm, cf.period_len());
        if splits_at_2(d) {
            print!(", image mod 8 in Q_2 = {}", eps_image_mod8_auto(d)?);
        }
        println!();
    }

    // eps_2D = r + s sqrt(2D) with r + sign = s1^2 and r - sign = 2 D s2^2
    let x = eps2d_decompose(697)?;
    println!("\neps_1394 = {} + {} sqrt(1394)", x.r, x.s);
    println!("r {} 1 = {} * {}^2, r {} 1 = 2 * {} * {}^2", if x.sign > 0 { '+' } else { '-' }, x.d1, x.s1,
        if x.sign > 0 { '-' } else { '+' }, x.d2, x.s2);
    println!("(s1 + s2 sqrt(1394))^2 = 2 eps_1394: {}", x.sqrt_two_eps_holds());
    Ok(())
}
