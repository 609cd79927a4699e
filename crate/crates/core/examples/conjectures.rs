//! Checks the four conjectures over the small-prime family.

use fixprime::analysis::{
    check_conjecture_3_1, check_conjecture_3_2, check_conjecture_5_1, check_conjecture_6_1, sweep,
    ConjectureResult,
};
use fixprime::{generate, SequenceSpec};

fn show(r: &ConjectureResult) {
    let verdict = if r.holds { "holds" } else { "FALSIFIED" };
    println!("{}: {verdict} ({}/{} checked, N={})", r.conjecture_id.label(), r.satisfied(), r.checked, r.n);
    for c in r.counterexamples.iter().take(3) {
        println!("    {} at n={}: {}", c.spec.variant, c.n, c.detail);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10_000;
    for p in [3, 5, 7, 11, 41, 97, 199] {
        let run = generate(SequenceSpec::standard(p, n + 1))?;
        show(&check_conjecture_3_1(&run));
        show(&check_conjecture_3_2(&run)?);
    }
    show(&check_conjecture_5_1(n)?);
    // every missed prime in the sweep counts against 6.1
    show(&check_conjecture_6_1(&sweep(&[3, 5, 7, 11, 41, 97, 199], n)?));
    Ok(())
}
