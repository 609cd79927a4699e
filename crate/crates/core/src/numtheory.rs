//! Integer utilities shared by the sequence engine and the analysis layer.
//!
//! Everything here works in `u64` with checked arithmetic. The values of
//! `q(n) = p·(n−1)·n/2` grow quadratically in `n`, so they are never
//! factorized directly: [`factorize_q`] composes the factorization from `p`,
//! `n − 1` and `n`, which keeps the sieve limit at the number of terms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest sieve accepted by [`SpfTable::build`] (entries are `u32`).
pub const DEFAULT_SPF_CEILING: usize = 1 << 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("sieve limit must be at least 2, got {0}")]
    LimitTooSmall(usize),
    #[error("sieve limit {limit} exceeds the configured ceiling of {ceiling} entries")]
    Capacity { limit: usize, ceiling: usize },
    #[error("{value} is outside the factorization domain 1..={limit}")]
    Domain { value: u64, limit: usize },
    #[error("q(n) is undefined for factorization at n = {0} (q(1) = 0)")]
    ZeroQ(u64),
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
}

/// Smallest-prime-factor table for `2..=limit`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct SpfTable {
    limit: usize,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfTable {
    pub fn build(limit: usize) -> Result<Self, NumError> {
        Self::with_ceiling(limit, DEFAULT_SPF_CEILING)
    }

    pub fn with_ceiling(limit: usize, ceiling: usize) -> Result<Self, NumError> {
        if limit < 2 {
            return Err(NumError::LimitTooSmall(limit));
        }
        if limit > ceiling || limit > u32::MAX as usize {
            return Err(NumError::Capacity { limit, ceiling });
        }

        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let smallest = spf[i];
            for &p in &primes {
                if p > smallest {
                    break;
                }
                let Some(m) = i.checked_mul(p as usize).filter(|&m| m <= limit) else {
                    break;
                };
                spf[m] = p;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Smallest prime factor of `m`, for `2 <= m <= limit`.
    pub fn spf(&self, m: usize) -> Option<u64> {
        if (2..=self.limit).contains(&m) {
            Some(self.spf[m] as u64)
        } else {
            None
        }
    }

    /// Primality for `m <= limit`; `None` outside the table.
    pub fn is_prime(&self, m: u64) -> Option<bool> {
        match m {
            0 | 1 => Some(false),
            _ if m as usize > self.limit => None,
            _ => Some(self.spf[m as usize] as u64 == m),
        }
    }

    /// All primes up to `limit`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }
}

/// Prime-power decomposition with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self {
            value: 1,
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, which must be
    /// sorted by prime and have positive exponents.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self, NumError> {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e >= 1));
        let mut value: u64 = 1;
        for &(p, e) in &factors {
            let pe = p
                .checked_pow(e)
                .ok_or_else(|| NumError::Overflow(format!("{p}^{e}")))?;
            value = value
                .checked_mul(pe)
                .ok_or_else(|| NumError::Overflow("factorization product".into()))?;
        }
        Ok(Self { value, factors })
    }

    /// Factorization by trial division. Used only for the sequence
    /// parameter `p` when it does not fit in the sieve.
    pub fn by_trial_division(mut m: u64) -> Result<Self, NumError> {
        if m == 0 {
            return Err(NumError::Domain { value: 0, limit: 0 });
        }
        let value = m;
        let mut factors = Vec::new();
        let mut d = 2u64;
        while d <= m / d {
            if m % d == 0 {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                factors.push((d, e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    /// Product of two factorizations, merging exponents of shared primes.
    pub fn mul(&self, other: &Factorization) -> Result<Self, NumError> {
        let value = self
            .value
            .checked_mul(other.value)
            .ok_or_else(|| NumError::Overflow(format!("{} * {}", self.value, other.value)))?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    factors.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&a[i..]);
        factors.extend_from_slice(&b[j..]);
        Ok(Self { value, factors })
    }

    /// Divides out a single factor of 2. Returns `None` if the value is odd.
    fn halve(mut self) -> Option<Self> {
        let first = self.factors.first_mut()?;
        if first.0 != 2 {
            return None;
        }
        first.1 -= 1;
        if first.1 == 0 {
            self.factors.remove(0);
        }
        self.value /= 2;
        Some(self)
    }
}

pub fn build_spf(limit: usize) -> Result<SpfTable, NumError> {
    SpfTable::build(limit)
}

pub fn factorize(m: u64, table: &SpfTable) -> Result<Factorization, NumError> {
    if m == 0 || m > table.limit as u64 {
        return Err(NumError::Domain {
            value: m,
            limit: table.limit,
        });
    }
    let mut rest = m as usize;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    while rest > 1 {
        let p = table.spf[rest] as usize;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        factors.push((p as u64, e));
    }
    Ok(Factorization { value: m, factors })
}

/// Factorization of `p·(m−1)·m/2` built from the factorizations of `p`,
/// `m − 1` and `m`. `m` must satisfy `2 <= m <= table.limit()`.
pub fn factorize_triangular_multiple(
    p_fact: &Factorization,
    m: u64,
    table: &SpfTable,
) -> Result<Factorization, NumError> {
    if m < 2 {
        return Err(NumError::ZeroQ(m));
    }
    let prev = factorize(m - 1, table)?;
    let cur = factorize(m, table)?;
    // exactly one of m-1, m is even
    let (even, odd) = if m % 2 == 0 { (cur, prev) } else { (prev, cur) };
    let halved = even.halve().expect("even factor has a 2");
    p_fact.mul(&odd)?.mul(&halved)
}

/// Factorization of `q(n) = p·(n−1)·n/2` for `n >= 2`.
pub fn factorize_q(
    p_fact: &Factorization,
    n: u64,
    table: &SpfTable,
) -> Result<Factorization, NumError> {
    if n < 2 {
        return Err(NumError::ZeroQ(n));
    }
    factorize_triangular_multiple(p_fact, n, table)
}

/// Every divisor, ascending.
pub fn sorted_divisors(f: &Factorization) -> Vec<u64> {
    let mut divisors = Vec::with_capacity(f.divisor_count());
    divisors.push(1u64);
    for &(p, e) in &f.factors {
        let len = divisors.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    divisors.sort_unstable();
    divisors
}

/// `q(n) = Σ_{k=0}^{n−1} k·p` for a 1-based index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QValue {
    pub p: u64,
    pub n: u64,
    pub value: u64,
}

/// Closed form of the partial sum, evaluated as `p · ((n−1)·n/2)` with
/// overflow checks on both products.
pub fn q_value(p: u64, n: u64) -> Result<QValue, NumError> {
    let value = triangular_multiple(p, n)?;
    Ok(QValue { p, n, value })
}

/// `p·(m−1)·m/2` with checked arithmetic.
pub(crate) fn triangular_multiple(p: u64, m: u64) -> Result<u64, NumError> {
    if m == 0 {
        return Err(NumError::Domain { value: 0, limit: 0 });
    }
    let (a, b) = if m % 2 == 0 { (m / 2, m - 1) } else { (m, (m - 1) / 2) };
    a.checked_mul(b)
        .and_then(|t| t.checked_mul(p))
        .ok_or_else(|| NumError::Overflow(format!("{p}·({m}−1)·{m}/2")))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the whole `u64` range.
///
/// The first twelve primes as witnesses are sufficient for all
/// `n < 3.3·10^24`.
pub fn is_prime(m: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if m < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if m % w == 0 {
            return m == w;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_spf(m: u64) -> u64 {
        (2..=m).find(|d| m % d == 0).unwrap()
    }

    fn trial_is_prime(m: u64) -> bool {
        m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
    }

    fn brute_divisors(m: u64) -> Vec<u64> {
        (1..=m).filter(|d| m % d == 0).collect()
    }

    fn product(f: &Factorization) -> u64 {
        f.factors().iter().map(|&(p, e)| p.pow(e)).product()
    }

    #[test]
    fn spf_small_table() {
        let t = build_spf(10).unwrap();
        let got: Vec<_> = (2..=10).map(|m| t.spf(m).unwrap()).collect();
        assert_eq!(got, vec![2, 3, 2, 5, 2, 7, 2, 3, 2]);
        let t = build_spf(2).unwrap();
        assert_eq!(t.spf(2), Some(2));
        assert_eq!(t.spf(3), None);
    }

    #[test]
    fn spf_matches_trial_division() {
        let t = build_spf(10_000).unwrap();
        assert_eq!(t.spf(9999), Some(3));
        assert_eq!(t.spf(9973), Some(9973));
        for m in 2..=10_000u64 {
            assert_eq!(t.spf(m as usize), Some(trial_spf(m)), "m = {m}");
        }
    }

    #[test]
    fn spf_rejects_bad_limits() {
        assert_eq!(build_spf(1).unwrap_err(), NumError::LimitTooSmall(1));
        assert_eq!(build_spf(0).unwrap_err(), NumError::LimitTooSmall(0));
        assert!(matches!(
            SpfTable::with_ceiling(1000, 999),
            Err(NumError::Capacity { .. })
        ));
    }

    #[test]
    fn factorize_examples() {
        let t = build_spf(10_000).unwrap();
        assert!(factorize(1, &t).unwrap().factors().is_empty());
        assert_eq!(factorize(84, &t).unwrap().factors(), &[(2, 2), (3, 1), (7, 1)]);
        assert_eq!(factorize(9973, &t).unwrap().factors(), &[(9973, 1)]);
        assert!(matches!(factorize(0, &t), Err(NumError::Domain { .. })));
        assert!(matches!(factorize(10_001, &t), Err(NumError::Domain { .. })));
    }

    #[test]
    fn factorizations_multiply_back() {
        let t = build_spf(10_000).unwrap();
        for m in 2..=10_000u64 {
            let f = factorize(m, &t).unwrap();
            assert_eq!(product(&f), m);
            assert!(f.factors().iter().all(|&(p, _)| trial_is_prime(p)));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn factorize_q_examples() {
        let t = build_spf(100).unwrap();
        let seven = factorize(7, &t).unwrap();
        let f = factorize_q(&seven, 5, &t).unwrap();
        assert_eq!(f.value(), 70);
        assert_eq!(f.factors(), &[(2, 1), (5, 1), (7, 1)]);
        assert_eq!(factorize_q(&seven, 2, &t).unwrap().factors(), &[(7, 1)]);

        // 0 + 3 + 6 + ... + 27
        let direct: u64 = (0..10).map(|k| 3 * k).sum();
        assert_eq!(direct, 135);
        let three = factorize(3, &t).unwrap();
        let f = factorize_q(&three, 10, &t).unwrap();
        assert_eq!(f.value(), direct);
        assert_eq!(f.factors(), &[(3, 3), (5, 1)]);

        assert_eq!(factorize_q(&seven, 1, &t).unwrap_err(), NumError::ZeroQ(1));
    }

    #[test]
    fn factorize_q_agrees_with_direct_factorization() {
        let t = build_spf(1000).unwrap();
        let big = build_spf(7 * 999 * 1000 / 2).unwrap();
        for p in [1u64, 2, 3, 7] {
            let pf = factorize(p, &t).unwrap();
            for n in 2..=1000u64 {
                let composed = factorize_q(&pf, n, &t).unwrap();
                let q = q_value(p, n).unwrap().value;
                assert_eq!(composed, factorize(q, &big).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn divisor_examples() {
        let t = build_spf(200).unwrap();
        assert_eq!(sorted_divisors(&factorize(21, &t).unwrap()), vec![1, 3, 7, 21]);
        assert_eq!(sorted_divisors(&Factorization::one()), vec![1]);
        assert_eq!(
            sorted_divisors(&factorize(105, &t).unwrap()),
            brute_divisors(105)
        );
        assert_eq!(brute_divisors(105), vec![1, 3, 5, 7, 15, 21, 35, 105]);
    }

    #[test]
    fn divisors_match_brute_force() {
        let t = build_spf(10_000).unwrap();
        for m in 1..=10_000u64 {
            let f = factorize(m, &t).unwrap();
            let d = sorted_divisors(&f);
            assert_eq!(d.len(), f.divisor_count());
            assert_eq!(d, brute_divisors(m), "m = {m}");
        }
    }

    #[test]
    fn q_value_examples() {
        assert_eq!(q_value(7, 11).unwrap().value, 385);
        for p in [1, 2, 7, 541, u64::MAX] {
            assert_eq!(q_value(p, 1).unwrap().value, 0);
        }
        // 541 · 9999 · 10000 / 2, evaluated in u128
        let oracle = 541u128 * 9999 * 10000 / 2;
        assert_eq!(oracle, 27_047_295_000);
        assert_eq!(q_value(541, 10_000).unwrap().value as u128, oracle);
    }

    #[test]
    fn q_value_overflow_is_reported() {
        assert!(matches!(q_value(u64::MAX, 3), Err(NumError::Overflow(_))));
        assert!(matches!(q_value(2, 1 << 32), Ok(_)));
        assert!(matches!(q_value(3, 1 << 33), Err(NumError::Overflow(_))));
        // product p·(n−1)·n overflows but the halved value does not
        let n = 1u64 << 32;
        let exact = (n as u128 * (n as u128 - 1) / 2) as u64;
        assert_eq!(q_value(1, n).unwrap().value, exact);
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(6529));
        assert_eq!((0..=10_000u64).filter(|&m| is_prime(m)).count(), 1229);
    }

    #[test]
    fn prime_6529_is_the_844th() {
        let t = build_spf(10_000).unwrap();
        let ordinal = t.primes().position(|p| p == 6529).unwrap() + 1;
        assert_eq!(ordinal, 844);
    }

    #[test]
    fn primality_large_values() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(u64::MAX));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(4_294_967_297)); // 641 · 6700417
    }

    #[test]
    fn table_primality_matches_miller_rabin() {
        let t = build_spf(20_000).unwrap();
        for m in 0..=20_000u64 {
            assert_eq!(t.is_prime(m), Some(is_prime(m)));
            assert_eq!(is_prime(m), trial_is_prime(m));
        }
        assert_eq!(t.is_prime(20_001), None);
    }

    #[test]
    fn trial_division_factorization() {
        let f = Factorization::by_trial_division(541).unwrap();
        assert_eq!(f.factors(), &[(541, 1)]);
        let f = Factorization::by_trial_division(2_000_000_014).unwrap();
        assert_eq!(f.factors(), &[(2, 1), (1_000_000_007, 1)]);
        assert!(Factorization::by_trial_division(1).unwrap().factors().is_empty());
    }

    proptest! {
        #[test]
        fn q_telescopes(p in 1u64..100_000, n in 2u64..1_000_000) {
            let cur = q_value(p, n).unwrap().value;
            let prev = q_value(p, n - 1).unwrap().value;
            prop_assert_eq!(cur - prev, p * (n - 1));
        }

        #[test]
        fn q_is_zero_only_at_one(p in 1u64..1000, n in 1u64..100_000) {
            prop_assert_eq!(q_value(p, n).unwrap().value == 0, n == 1);
        }

        #[test]
        fn miller_rabin_agrees_with_trial_division(m in 0u64..2_000_000) {
            prop_assert_eq!(is_prime(m), trial_is_prime(m));
        }

        #[test]
        fn divisors_ascend_and_divide(m in 1u64..50_000) {
            let t = build_spf(50_000).unwrap();
            let d = sorted_divisors(&factorize(m, &t).unwrap());
            prop_assert_eq!(d[0], 1);
            prop_assert_eq!(*d.last().unwrap(), m);
            prop_assert!(d.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(d.iter().all(|x| m % x == 0));
        }
    }
}
