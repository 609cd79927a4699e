//! Greedy generation of `A(p)`: `a(1) = 1`, and `a(n)` is the smallest
//! positive integer not yet in the sequence that divides `q(n)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{
    factorize, factorize_triangular_multiple, sorted_divisors, triangular_multiple,
    Factorization, NumError, SpfTable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("all {term_count} terms have already been generated")]
    Exhausted { term_count: usize },
    #[error("every divisor of q({n}) = {q} is already used; the greedy rule cannot continue")]
    DivisorsExhausted { n: u64, q: u64 },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Which sequence to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum Variant {
    /// `q(n) = p·(n−1)·n/2`.
    Standard(u64),
    /// `q(n) = n·(n+1)/2`, the triangular numbers with the leading 0 dropped.
    TriangularNoZero,
    /// `q(n) = (n−1)·n/2` with the duplicate `a(2) = 1`; the same sequence
    /// as `Standard(1)`.
    TriangularShifted,
}

impl Variant {
    /// Multiplier applied to the triangular numbers.
    pub fn multiplier(&self) -> u64 {
        match *self {
            Variant::Standard(p) => p,
            Variant::TriangularNoZero | Variant::TriangularShifted => 1,
        }
    }

    /// Short tag used in cache paths and CLI flags.
    pub fn tag(&self) -> &'static str {
        match self {
            Variant::Standard(_) => "standard",
            Variant::TriangularNoZero => "no-zero",
            Variant::TriangularShifted => "shifted",
        }
    }

    /// Whether `a(2) = 1` is emitted as a sanctioned duplicate.
    pub fn has_bootstrap(&self) -> bool {
        matches!(self, Variant::Standard(1) | Variant::TriangularShifted)
    }

    /// The `m` such that `q(n) = multiplier·(m−1)·m/2`.
    fn triangular_index(&self, n: u64) -> u64 {
        match self {
            Variant::TriangularNoZero => n + 1,
            _ => n,
        }
    }

    /// Last summand of `q(n)` (the "multiple" column of a printed table).
    pub fn last_summand(&self, n: u64) -> u64 {
        let m = self.triangular_index(n);
        self.multiplier().saturating_mul(m - 1)
    }

    /// The number `q(n)` whose divisors are searched at index `n`.
    pub fn q(&self, n: u64) -> Result<u64, NumError> {
        triangular_multiple(self.multiplier(), self.triangular_index(n))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Standard(p) => write!(f, "A({p})"),
            Variant::TriangularNoZero => f.write_str("A(1) without 0"),
            Variant::TriangularShifted => f.write_str("A(1) shifted"),
        }
    }
}

impl FromStr for Variant {
    type Err = EngineError;

    /// Parses `no-zero`, `shifted`, or `standard:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "no-zero" => Ok(Variant::TriangularNoZero),
            "shifted" => Ok(Variant::TriangularShifted),
            _ => s
                .strip_prefix("standard:")
                .and_then(|p| p.parse().ok())
                .map(Variant::Standard)
                .ok_or_else(|| EngineError::InvalidSpec(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub variant: Variant,
    pub term_count: usize,
}

impl SequenceSpec {
    pub fn standard(p: u64, term_count: usize) -> Self {
        Self {
            variant: Variant::Standard(p),
            term_count,
        }
    }

    pub fn new(variant: Variant, term_count: usize) -> Self {
        Self {
            variant,
            term_count,
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.term_count == 0 {
            return Err(EngineError::InvalidSpec("term_count must be at least 1".into()));
        }
        if self.variant == Variant::Standard(0) {
            return Err(EngineError::InvalidSpec("p must be at least 1".into()));
        }
        Ok(())
    }

    /// Sieve limit needed to factor every `q(n)` of this spec.
    pub fn sieve_limit(&self) -> usize {
        (self.term_count + 1).max(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub n: u64,
    pub q: u64,
    pub a: u64,
    pub is_fixed_point: bool,
    /// `a(n) = n − 1`: the value `n − 1` landed one position late.
    pub is_near_match: bool,
    pub is_bootstrap_duplicate: bool,
}

impl TermRecord {
    pub(crate) fn new(n: u64, q: u64, a: u64, is_bootstrap_duplicate: bool) -> Self {
        Self {
            n,
            q,
            a,
            is_fixed_point: a == n,
            is_near_match: a + 1 == n,
            is_bootstrap_duplicate,
        }
    }
}

/// Membership set for values already placed in the sequence: a bitmap
/// below `dense_limit`, a hash set above it.
#[derive(Debug, Clone, Default)]
pub struct UsedSet {
    dense: Vec<bool>,
    sparse: HashSet<u64>,
}

impl UsedSet {
    pub fn with_dense_limit(limit: usize) -> Self {
        Self {
            dense: vec![false; limit + 1],
            sparse: HashSet::new(),
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        match self.dense.get(value as usize) {
            Some(&hit) => hit,
            None => self.sparse.contains(&value),
        }
    }

    /// Returns `false` if the value was already present.
    pub fn insert(&mut self, value: u64) -> bool {
        if value < self.dense.len() as u64 {
            !std::mem::replace(&mut self.dense[value as usize], true)
        } else {
            self.sparse.insert(value)
        }
    }

    pub fn len(&self) -> usize {
        self.dense.iter().filter(|&&b| b).count() + self.sparse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Term-by-term generator.
#[derive(Debug, Clone)]
pub struct Engine {
    spec: SequenceSpec,
    table: Arc<SpfTable>,
    multiplier: Factorization,
    used: UsedSet,
    next_n: u64,
}

impl Engine {
    pub fn new(spec: SequenceSpec) -> Result<Self, EngineError> {
        spec.validate()?;
        let table = Arc::new(SpfTable::build(spec.sieve_limit())?);
        Self::with_table(spec, table)
    }

    /// Shares an existing sieve between engines; it must cover
    /// `spec.sieve_limit()`.
    pub fn with_table(spec: SequenceSpec, table: Arc<SpfTable>) -> Result<Self, EngineError> {
        spec.validate()?;
        if table.limit() < spec.sieve_limit() {
            return Err(EngineError::InvalidSpec(format!(
                "sieve limit {} is below the {} required for {} terms",
                table.limit(),
                spec.sieve_limit(),
                spec.term_count
            )));
        }
        let m = spec.variant.multiplier();
        let multiplier = if m as usize <= table.limit() {
            factorize(m, &table)?
        } else {
            Factorization::by_trial_division(m)?
        };
        Ok(Self {
            spec,
            used: UsedSet::with_dense_limit(spec.term_count + 1),
            table,
            multiplier,
            next_n: 1,
        })
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn emitted(&self) -> usize {
        (self.next_n - 1) as usize
    }

    pub fn next_term(&mut self) -> Result<TermRecord, EngineError> {
        if self.emitted() >= self.spec.term_count {
            return Err(EngineError::Exhausted {
                term_count: self.spec.term_count,
            });
        }
        let n = self.next_n;
        let variant = self.spec.variant;
        let q = variant.q(n)?;

        let record = if q == 0 {
            // every integer divides 0; a(1) = 1 by definition
            TermRecord::new(n, 0, 1, false)
        } else {
            let m = variant.triangular_index(n);
            let f = factorize_triangular_multiple(&self.multiplier, m, &self.table)?;
            match sorted_divisors(&f).into_iter().find(|&d| !self.used.contains(d)) {
                Some(a) => TermRecord::new(n, q, a, false),
                None if n == 2 && variant.has_bootstrap() => TermRecord::new(n, q, 1, true),
                None => return Err(EngineError::DivisorsExhausted { n, q }),
            }
        };
        self.used.insert(record.a);
        self.next_n += 1;
        Ok(record)
    }

    pub fn run(mut self) -> Result<SequenceRun, EngineError> {
        let mut terms = Vec::with_capacity(self.spec.term_count);
        while self.emitted() < self.spec.term_count {
            terms.push(self.next_term()?);
        }
        Ok(SequenceRun {
            spec: self.spec,
            terms,
            used: self.used,
        })
    }
}

impl Iterator for Engine {
    type Item = Result<TermRecord, EngineError>;

    fn next(&mut self) -> Option<Self::Item> {
        (self.emitted() < self.spec.term_count).then(|| self.next_term())
    }
}

pub fn init(spec: SequenceSpec) -> Result<Engine, EngineError> {
    Engine::new(spec)
}

pub fn generate(spec: SequenceSpec) -> Result<SequenceRun, EngineError> {
    Engine::new(spec)?.run()
}

/// A fully materialized sequence.
#[derive(Debug, Clone)]
pub struct SequenceRun {
    spec: SequenceSpec,
    terms: Vec<TermRecord>,
    used: UsedSet,
}

impl SequenceRun {
    /// Rebuilds a run from stored terms. The caller is responsible for the
    /// terms being a genuine prefix of `spec`'s sequence.
    pub(crate) fn from_terms(spec: SequenceSpec, terms: Vec<TermRecord>) -> Self {
        let mut used = UsedSet::with_dense_limit(terms.len() + 1);
        for t in &terms {
            used.insert(t.a);
        }
        Self { spec, terms, used }
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[TermRecord] {
        &self.terms
    }

    /// Term at 1-based index `n`.
    pub fn term(&self, n: u64) -> Option<&TermRecord> {
        n.checked_sub(1).and_then(|i| self.terms.get(i as usize))
    }

    /// `a(n)` for 1-based `n`.
    pub fn a(&self, n: u64) -> Option<u64> {
        self.term(n).map(|t| t.a)
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().map(|t| t.a)
    }

    pub fn contains_value(&self, value: u64) -> bool {
        self.used.contains(value)
    }

    /// First `len` terms as a run of their own.
    pub fn truncated(&self, len: usize) -> SequenceRun {
        let len = len.min(self.terms.len());
        Self::from_terms(
            SequenceSpec::new(self.spec.variant, len),
            self.terms[..len].to_vec(),
        )
    }
}

impl PartialEq for SequenceRun {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.terms == other.terms
    }
}

impl Eq for SequenceRun {}

pub fn fixed_points(run: &SequenceRun) -> Vec<u64> {
    run.terms
        .iter()
        .filter(|t| t.is_fixed_point)
        .map(|t| t.n)
        .collect()
}
