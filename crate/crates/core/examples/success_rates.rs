//! Classifies A(p) against the primes up to N and prints the
//! detection/miss matrix.
//!
//! cargo run --release --example success_rates -- [p] [N]

use fixprime::analysis::{analyze, classification_matrix, filter_false_negatives};
use fixprime::Variant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10_000);

    let report = analyze(Variant::Standard(p), n)?;
    println!("A({p}), N = {n}");
    println!("  prime fixed points   {}/{} ({})", report.detected, report.total_eligible_primes, report.success_rate);
    println!("  near matches         {}", report.near_matches);
    println!("  false negatives      {}/{} ({})", report.false_negatives, report.total_nonprimes, report.false_negative_rate);
    let shown: Vec<_> = report.missed_primes.iter().take(10).collect();
    println!("  first missed primes  {shown:?}");

    let filtered = filter_false_negatives(&report, &[3, 5]);
    println!(
        "  nonprimes left after dropping multiples of 3 and 5: {} ({})",
        filtered.remaining.len(),
        filtered.remaining_rate
    );
    println!("\n{}", classification_matrix(&report));
    Ok(())
}
