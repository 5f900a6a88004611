//! Runs every verification suite at a reduced bound and prints the reports.
//!
//! `cargo run --release --example verify_suites [--full]`

use lambda2::report::{emit, Format};
use lambda2::suites::{default_bound, run_suite, SUITES};

fn main() -> lambda2::error::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut failed = 0;
    for name in SUITES {
        // thm76-det needs its default bound to reach enough qualifying pairs
        let bound = if full || name == "thm76-det" { None } else { default_bound(name)?.map(|b| b / 10) };
        let report = run_suite(name, bound, workers)?;
        failed += usize::from(!report.passed());
        print!("{}", String::from_utf8_lossy(&emit(&report, Format::Text)?));
        println!("  ({:.2?})", report.wall_time);
    }
    std::process::exit(i32::from(failed > 0));
}
