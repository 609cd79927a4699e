//! Sequences of smallest unused divisors of `p`-multiples of triangular
//! numbers, and the prime-detection statistics of their fixed points.
//!
//! `A(p)` is defined by `a(1) = 1` and, for `n >= 2`, `a(n)` = the smallest
//! positive integer not already in the sequence that divides
//! `q(n) = p·(0 + 1 + ... + (n−1))`. Odd primes tend to show up as fixed
//! points `a(n) = n`.
//!
//! Modules, bottom-up:
//!
//! * [`numtheory`]: sieve, factorization, divisors, primality, `q(n)`.
//! * [`engine`]: term-by-term generation of the sequence variants.
//! * [`analysis`]: classification reports, conjecture checks, sweeps.
//! * [`oeis`]: b-file parsing/writing and comparison.
//! * [`store`]: resumable run cache and CSV/JSON exports.
//! * [`cli`]: the `fixprime` command-line front end.
//!
//! ```
//! use fixprime::engine::{fixed_points, generate, SequenceSpec};
//!
//! let run = generate(SequenceSpec::standard(7, 25)).unwrap();
//! assert_eq!(fixed_points(&run), vec![1, 3, 5, 11, 13, 17, 19, 23]);
//! ```

pub mod analysis;
pub mod cli;
pub mod engine;
pub mod numtheory;
pub mod oeis;
pub mod store;

pub use analysis::{classify, ClassificationReport, ConjectureResult, SweepReport};
pub use engine::{generate, SequenceRun, SequenceSpec, TermRecord, Variant};
