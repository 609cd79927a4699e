//! Compares a generated run against an OEIS b-file.
//!
//! cargo run --example oeis_compare -- <b-file> <variant> [shift]
//!
//! `variant` is `no-zero`, `shifted` or `standard:<p>`. Without arguments the
//! bundled A111273 prefix is checked against both triangular variants.

use fixprime::engine::Variant;
use fixprime::oeis::{compare, parse_bfile};
use fixprime::{generate, SequenceSpec};

fn check(text: &str, variant: Variant, shift: i64) -> Result<(), Box<dyn std::error::Error>> {
    let bfile = parse_bfile(text)?;
    let terms = bfile.len() + shift.max(0) as usize;
    let run = generate(SequenceSpec::new(variant, terms))?;
    let result = compare(&run, &bfile, shift)?;
    let id = bfile.sequence_id.as_deref().unwrap_or("b-file");
    match &result.first_mismatch {
        None => println!("{variant} matches {id} over {} terms (shift {shift})", result.compared_length),
        Some(m) => println!(
            "{variant} differs from {id} at n={}: expected {}, got {}",
            m.index, m.expected, m.actual
        ),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [path, variant, rest @ ..] = &args[..] {
        let shift = rest.first().map(|s| s.parse()).transpose()?.unwrap_or(0);
        return check(&std::fs::read_to_string(path)?, variant.parse()?, shift);
    }
    let a111273 = include_str!("../tests/fixtures/A111273.b");
    check(a111273, Variant::TriangularNoZero, 0)?;
    check(a111273, Variant::TriangularShifted, 1)?;
    check(a111273, Variant::TriangularShifted, 0)
}
