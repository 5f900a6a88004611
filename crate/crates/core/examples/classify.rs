//! Verdicts for a handful of radicands, with the evidence behind each.
//!
//! `cargo run --example classify [D ...]`

use lambda2::classifier::classify;

fn main() -> lambda2::error::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ds = if args.is_empty() { vec![5, 15, 34, 51, 85, 113, 219, 697, 1394, 1513] } else { args };
    for d in ds {
        let v = classify(d)?;
        println!("{v}");
        if let Some(t) = v.status.theorem() {
            println!("  citation: {}", t.citation());
        }
        println!();
    }
    println!("{}", serde_json::to_string_pretty(&classify(3977)?).unwrap());
    Ok(())
}
