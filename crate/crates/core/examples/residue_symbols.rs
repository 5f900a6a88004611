//! Quadratic, quartic and Scholz symbols for small primes.
//!
//! `cargo run --example residue_symbols`

use lambda2::arith::{is_prime, sqrt_mod_p};
use lambda2::symbols::{kronecker, l_symbol, quartic_mod_p, quartic_over_2, scholz_symbol};

fn main() -> lambda2::error::Result<()> {
    println!("(5/21) = {}, (3/2) = {}, (41/17) = {}", kronecker(5, 21), kronecker(3, 2), kronecker(41, 17));

    println!("\n  p   sqrt2  (2/p)_4  (p/2)_4  ((1+sqrt2)/p)");
    for p in (17..200u64).filter(|&p| p % 8 == 1 && is_prime(p)) {
        let s = sqrt_mod_p(2, p)?;
        let (a, b) = (quartic_mod_p(2, p)?, quartic_over_2(p as i64)?);
        let c = scholz_symbol(p)?;
        assert_eq!(c, a * b);
        println!("{p:>4} {s:>6} {a:>8} {b:>8} {c:>14}");
    }

    // The symbol product behind the (1, 9 mod 16) family.
    println!("\nl(697) = (2/17)_4 (2/41)_4 (697/2)_4 = {}", l_symbol(697)?);
    Ok(())
}
