//! Local Hilbert symbols over Q and over Q(sqrt 2), with the product formula.
//!
//! `cargo run --example hilbert_symbols`

use num_bigint::BigInt;
use num_rational::BigRational;

use lambda2::hilbert::{dyadic_symbol_by_search, hilbert_q1, hilbert_q_local_symbols, q1_places_above, Q1Element, Q1Place};

fn main() -> lambda2::error::Result<()> {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    for (r, s) in [(-1, -1), (2, -1), (5, 2), (17, 41), (3, 3)] {
        let local = hilbert_q_local_symbols(&q(r), &q(s))?;
        let shown: Vec<String> =
            local.iter().map(|&(p, v)| format!("{}:{v:+}", if p == 0 { "inf".into() } else { p.to_string() })).collect();
        println!("({r}, {s}): {}", shown.join(" "));
    }

    // delta = (2 + sqrt 2) * 17 * 41 against the units -1 and 1 + sqrt 2
    let delta = Q1Element::new(2, 1).scale(17 * 41);
    let eps2 = Q1Element::new(1, 1);
    println!();
    for p in [17, 41] {
        for place in q1_places_above(p)? {
            println!(
                "at {place}: (-1, delta) = {:+}, (eps_2, delta) = {:+}",
                hilbert_q1(&Q1Element::new(-1, 0), &delta, place)?,
                hilbert_q1(&eps2, &delta, place)?
            );
        }
    }
    let by_product = hilbert_q1(&eps2, &delta, Q1Place::Ramified)?;
    let by_search = dyadic_symbol_by_search(&eps2, &delta)?;
    println!("dyadic: product formula {by_product:+}, direct search {by_search:+}");
    Ok(())
}
