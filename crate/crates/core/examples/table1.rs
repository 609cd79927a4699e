//! Prints the first 25 terms of A(7) with q(n) and fixed-point markers.
//!
//! cargo run --example table1 -- [p] [terms]

use fixprime::{generate, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let terms: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(25);

    let run = generate(SequenceSpec::standard(p, terms))?;
    println!("{:>6} {:>12} {:>8}", "n", "q(n)", "a(n)");
    for t in run.terms() {
        let mark = if t.is_fixed_point { "  <- fixed point" } else { "" };
        println!("{:>6} {:>12} {:>8}{mark}", t.n, t.q, t.a);
    }
    Ok(())
}
