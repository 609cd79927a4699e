//! Looks at A(p) for composite p: how close A(9) stays to A(3), and how the
//! even multipliers collapse to the identity.

use fixprime::{classify, generate, SequenceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10_000;
    let a3 = generate(SequenceSpec::standard(3, n + 1))?;
    let a9 = generate(SequenceSpec::standard(9, n + 1))?;

    let first = a3.values().zip(a9.values()).position(|(x, y)| x != y);
    let differing = a3.values().zip(a9.values()).filter(|(x, y)| x != y).count();
    match first {
        Some(i) => println!(
            "A(9) agrees with A(3) for {i} terms; a({}) = {} vs {}; {differing} positions differ",
            i + 1,
            a9.a(i as u64 + 1).unwrap(),
            a3.a(i as u64 + 1).unwrap()
        ),
        None => println!("A(9) equals A(3) over {n} terms"),
    }
    let (r3, r9) = (classify(&a3, n)?, classify(&a9, n)?);
    println!("success rate A(3) {}  A(9) {}", r3.success_rate, r9.success_rate);

    for p in [2, 4, 6, 8] {
        let run = generate(SequenceSpec::standard(p, 1000))?;
        let identity = run.terms().iter().all(|t| t.a == t.n);
        println!("A({p}) is the identity over 1000 terms: {identity}");
    }
    Ok(())
}
