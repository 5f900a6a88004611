//! Narrow and wide class groups from cycles of reduced indefinite forms.
//!
//! `cargo run --example class_groups`

use lambda2::forms::{narrow_class_group, wide_class_group};

fn main() -> lambda2::error::Result<()> {
    for disc in [5, 40, 60, 120, 697, 1513, 5576, 8 * 3977] {
        let g = narrow_class_group(disc)?;
        let w = wide_class_group(disc)?;
        println!(
            "disc {disc:>6}: h+ = {:>3} {:?}, 2-part {:?} (r4 = {}), wide h = {:>3}, wide 2-part {:?}",
            g.class_number(),
            g.elementary_divisors,
            g.two_part.divisors,
            g.two_part.four_rank(),
            g.wide_class_number(),
            w.divisors
        );
    }

    // For 697 = 17 * 41 the forms representing 17 and 41 lie in the class of order 2.
    let g = narrow_class_group(697)?;
    let (c17, c41) = (g.class_of_prime(17).unwrap(), g.class_of_prime(41).unwrap());
    println!("\nclass of 17: {}, class of 41: {}", g.representatives[c17], g.representatives[c41]);
    println!("orders: {} and {}", g.order(c17), g.order(c41));
    Ok(())
}
