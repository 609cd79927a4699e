//! Independent reference pipeline: literal definition, naive divisor scan,
//! linear search of the used list, trial-division primality.

#![allow(dead_code)]

use fixprime::Variant;

pub fn trial_is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// `a(1..=term_count)` straight from the definition.
pub fn brute_force(variant: Variant, term_count: usize) -> Vec<u64> {
    let mut seq: Vec<u64> = Vec::new();
    for n in 1..=term_count as u64 {
        let q: u128 = match variant {
            Variant::Standard(p) => (0..n as u128).map(|k| k * p as u128).sum(),
            Variant::TriangularShifted => (0..n as u128).sum(),
            Variant::TriangularNoZero => (1..=n as u128).sum(),
        };
        let a = if q == 0 {
            1
        } else {
            (1..=q as u64)
                .find(|&d| q % d as u128 == 0 && !seq.contains(&d))
                .unwrap_or(1)
        };
        seq.push(a);
    }
    seq
}

#[derive(Debug, PartialEq, Eq)]
pub struct NaiveCounts {
    pub detected: u64,
    pub near_matches: u64,
    pub eligible: u64,
    pub false_negatives: u64,
    pub nonprimes: u64,
    pub missed: Vec<u64>,
}

/// Counts over `1..=n` given `a(1..=n+1)` (0-based slice).
pub fn naive_counts(a: &[u64], p: Option<u64>, n: usize) -> NaiveCounts {
    let mut c = NaiveCounts {
        detected: 0,
        near_matches: 0,
        eligible: 0,
        false_negatives: 0,
        nonprimes: 0,
        missed: Vec::new(),
    };
    for m in 1..=n as u64 {
        let am = a[m as usize - 1];
        if trial_is_prime(m) {
            if m == 2 || (Some(m) == p && m > 2) {
                continue;
            }
            c.eligible += 1;
            if am == m {
                c.detected += 1;
            } else {
                c.missed.push(m);
                if a[m as usize] == m {
                    c.near_matches += 1;
                }
            }
        } else {
            c.nonprimes += 1;
            if m > 1 && am == m {
                c.false_negatives += 1;
            }
        }
    }
    c
}
