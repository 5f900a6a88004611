//! Prime pairs (p, q) with p = 1 mod 8, q = 9 mod 16 meeting every hypothesis
//! of the vanishing theorem, with the F_1 unit-square criterion for each.
//!
//! `cargo run --release --example search_family [BOUND]`

use lambda2::classifier::{f1_square_criterion, search_thm11};
use lambda2::field::eps_image_mod8_auto;

fn main() -> lambda2::error::Result<()> {
    let bound = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(400);
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let pairs = search_thm11(bound, workers);
    println!("{:>5} {:>5} {:>8}  eps mod 8  sqrt2 norm  alpha norm", "p", "q", "pq");
    for h in &pairs {
        let c = f1_square_criterion(h.p, h.q)?;
        let u = eps_image_mod8_auto((h.p * h.q) as i64)?;
        println!("{:>5} {:>5} {:>8} {:>10} {:>11} {:>11}", h.p, h.q, h.p * h.q, u, c.sqrt2_is_norm, c.alpha_is_norm);
    }
    println!("{} pairs with p, q < {bound}", pairs.len());
    Ok(())
}
