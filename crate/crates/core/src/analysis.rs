//! Prime-detection statistics for fixed points of a sequence run.
//!
//! Terminology follows the hypothesis-testing convention with the null
//! hypothesis "n is prime":
//!
//! * a **false negative** is a *nonprime* `n` that is a fixed point
//!   (`a(n) = n`), i.e. wrongly detected;
//! * a **false positive** is a *prime* `n` that is not a fixed point, i.e.
//!   missed.
//!
//! This is the reverse of the usual machine-learning reading of those terms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Engine, EngineError, SequenceRun, SequenceSpec, Variant};
use crate::numtheory::{is_prime, NumError, SpfTable};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("classification up to N = {n} needs {needed} terms, the run has {available}")]
    RunTooShort {
        n: usize,
        needed: usize,
        available: usize,
    },
    #[error("sweep needs N >= 2, got {0}")]
    SweepTooShort(usize),
    #[error("sweep failed for p = {p}: {source}")]
    Sweep { p: u64, source: Box<AnalysisError> },
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// An exact count ratio. Percentages are derived from the integers, never
/// from a float.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl Ratio {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Self {
            numerator,
            denominator,
        }
    }

    /// `None` when the denominator is zero.
    pub fn fraction(&self) -> Option<f64> {
        (self.denominator > 0).then(|| self.numerator as f64 / self.denominator as f64)
    }

    /// Percentage in hundredths of a percent, rounded half up.
    pub fn basis_points(&self) -> Option<u64> {
        if self.denominator == 0 {
            return None;
        }
        let scaled = self.numerator as u128 * 20_000 + self.denominator as u128;
        Some((scaled / (2 * self.denominator as u128)) as u64)
    }

    /// Two-decimal percentage without the `%` sign, e.g. `94.54`, or `n/a`.
    pub fn percent_value(&self) -> String {
        match self.basis_points() {
            Some(bp) => format!("{}.{:02}", bp / 100, bp % 100),
            None => "n/a".to_string(),
        }
    }

    pub fn complement(&self) -> Ratio {
        Ratio::new(self.denominator - self.numerator, self.denominator)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis_points() {
            Some(_) => write!(f, "{}%", self.percent_value()),
            None => f.write_str("n/a"),
        }
    }
}

/// Classification statistics for one run over `1..=n`.
///
/// `detected` counts eligible primes that are fixed points; `false_negatives`
/// counts nonprimes `1 < m <= n` that are fixed points. `n = 1` and the
/// `a(2) = 1` bootstrap duplicate are never counted as false negatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub spec: SequenceSpec,
    pub n: usize,
    pub excluded_primes: Vec<u64>,
    pub detected: u64,
    /// Eligible primes `m` with `a(m) != m` but `a(m + 1) = m`.
    pub near_matches: u64,
    pub total_eligible_primes: u64,
    pub success_rate: Ratio,
    pub false_negatives: u64,
    pub total_nonprimes: u64,
    pub false_negative_rate: Ratio,
    /// Eligible primes that are not fixed points (false positives).
    pub missed_primes: Vec<u64>,
    pub near_match_primes: Vec<u64>,
    pub false_negative_values: Vec<u64>,
}

impl ClassificationReport {
    pub fn p(&self) -> Option<u64> {
        match self.spec.variant {
            Variant::Standard(p) => Some(p),
            _ => None,
        }
    }
}

/// Primes left out of the success-rate denominator: 2 always, and `p`
/// itself when it is an odd prime `<= n` (it sits at `a(2)`).
pub fn excluded_primes(variant: Variant, n: usize) -> Vec<u64> {
    let mut excluded = Vec::new();
    if n >= 2 {
        excluded.push(2);
    }
    if let Variant::Standard(p) = variant {
        if p > 2 && p as usize <= n && is_prime(p) {
            excluded.push(p);
        }
    }
    excluded
}

fn prime_flags(n: usize) -> Vec<bool> {
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    if n >= 1 {
        flags[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if flags[i] {
            for j in (i * i..=n).step_by(i) {
                flags[j] = false;
            }
        }
        i += 1;
    }
    flags
}

/// Classifies indices `1..=n` of `run`, which must hold at least `n + 1`
/// terms so that a prime at `n` can be checked against `a(n + 1)`.
pub fn classify(run: &SequenceRun, n: usize) -> Result<ClassificationReport, AnalysisError> {
    if run.len() < n + 1 {
        return Err(AnalysisError::RunTooShort {
            n,
            needed: n + 1,
            available: run.len(),
        });
    }
    let terms = run.terms();
    let variant = run.spec().variant;
    let excluded = excluded_primes(variant, n);
    let primes = prime_flags(n);

    let mut detected = 0;
    let mut total_eligible = 0;
    let mut total_nonprimes = 0;
    let mut missed = Vec::new();
    let mut near = Vec::new();
    let mut false_negatives = Vec::new();

    for m in 1..=n {
        let t = &terms[m - 1];
        if primes[m] {
            if excluded.contains(&(m as u64)) {
                continue;
            }
            total_eligible += 1;
            if t.is_fixed_point {
                detected += 1;
            } else {
                missed.push(m as u64);
                if terms[m].is_near_match {
                    near.push(m as u64);
                }
            }
        } else {
            total_nonprimes += 1;
            if m > 1 && t.is_fixed_point && !t.is_bootstrap_duplicate {
                false_negatives.push(m as u64);
            }
        }
    }

    let fn_count = false_negatives.len() as u64;
    Ok(ClassificationReport {
        spec: SequenceSpec::new(variant, n),
        n,
        excluded_primes: excluded,
        detected,
        near_matches: near.len() as u64,
        total_eligible_primes: total_eligible,
        success_rate: Ratio::new(detected, total_eligible),
        false_negatives: fn_count,
        total_nonprimes,
        false_negative_rate: Ratio::new(fn_count, total_nonprimes),
        missed_primes: missed,
        near_match_primes: near,
        false_negative_values: false_negatives,
    })
}

/// Generates `n + 1` terms of `spec.variant` and classifies `1..=n`.
pub fn analyze(variant: Variant, n: usize) -> Result<ClassificationReport, AnalysisError> {
    let run = crate::engine::generate(SequenceSpec::new(variant, n + 1))?;
    classify(&run, n)
}

/// 2×2 matrix of conditional rates; rows are detect / don't detect,
/// columns are prime / nonprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationMatrix {
    pub detect_prime: Ratio,
    pub detect_nonprime: Ratio,
    pub miss_prime: Ratio,
    pub miss_nonprime: Ratio,
}

impl ClassificationMatrix {
    pub fn rows(&self) -> [[Ratio; 2]; 2] {
        [
            [self.detect_prime, self.detect_nonprime],
            [self.miss_prime, self.miss_nonprime],
        ]
    }
}

impl fmt::Display for ClassificationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<14}{:>10}{:>10}", "", "PRIME", "NONPRIME")?;
        writeln!(f, "{:<14}{:>10}{:>10}", "DETECT", self.detect_prime.to_string(), self.detect_nonprime.to_string())?;
        write!(f, "{:<14}{:>10}{:>10}", "DON'T DETECT", self.miss_prime.to_string(), self.miss_nonprime.to_string())
    }
}

pub fn classification_matrix(report: &ClassificationReport) -> ClassificationMatrix {
    ClassificationMatrix {
        detect_prime: report.success_rate,
        detect_nonprime: report.false_negative_rate,
        miss_prime: report.success_rate.complement(),
        miss_nonprime: report.false_negative_rate.complement(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    /// Fixed points are odd.
    #[serde(rename = "3.1")]
    C3_1,
    /// Every eligible prime `m` is `a(m)` or `a(m + 1)`.
    #[serde(rename = "3.2")]
    C3_2,
    /// Odd primes are fixed points of the shifted triangular sequence.
    #[serde(rename = "5.1")]
    C5_1,
    /// For large `p`, every eligible prime is a fixed point of `A(p)`.
    #[serde(rename = "6.1")]
    C6_1,
}

impl ConjectureId {
    pub fn label(&self) -> &'static str {
        match self {
            ConjectureId::C3_1 => "3.1",
            ConjectureId::C3_2 => "3.2",
            ConjectureId::C5_1 => "5.1",
            ConjectureId::C6_1 => "6.1",
        }
    }
}

impl std::str::FromStr for ConjectureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3.1" => Ok(ConjectureId::C3_1),
            "3.2" => Ok(ConjectureId::C3_2),
            "5.1" => Ok(ConjectureId::C5_1),
            "6.1" => Ok(ConjectureId::C6_1),
            _ => Err(format!("unknown conjecture id {s:?} (expected 3.1, 3.2, 5.1 or 6.1)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub spec: SequenceSpec,
    pub n: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureResult {
    pub conjecture_id: ConjectureId,
    pub specs: Vec<SequenceSpec>,
    pub n: usize,
    pub holds: bool,
    /// Number of individual instances checked (fixed points, primes, ...).
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl ConjectureResult {
    fn new(
        conjecture_id: ConjectureId,
        specs: Vec<SequenceSpec>,
        n: usize,
        checked: u64,
        counterexamples: Vec<Counterexample>,
    ) -> Self {
        Self {
            conjecture_id,
            specs,
            n,
            holds: counterexamples.is_empty(),
            checked,
            counterexamples,
        }
    }

    pub fn satisfied(&self) -> u64 {
        self.checked - self.counterexamples.len() as u64
    }
}

/// Every fixed point of the run must be odd.
pub fn check_conjecture_3_1(run: &SequenceRun) -> ConjectureResult {
    let spec = *run.spec();
    let fixed: Vec<_> = run.terms().iter().filter(|t| t.is_fixed_point).collect();
    let counterexamples = fixed
        .iter()
        .filter(|t| t.n % 2 == 0)
        .map(|t| Counterexample {
            spec,
            n: t.n,
            detail: format!("even fixed point a({0}) = {0}", t.n),
        })
        .collect();
    ConjectureResult::new(
        ConjectureId::C3_1,
        vec![spec],
        run.len(),
        fixed.len() as u64,
        counterexamples,
    )
}

/// Every eligible prime `m <= run.len() - 1` appears as `a(m)` or `a(m + 1)`.
pub fn check_conjecture_3_2(run: &SequenceRun) -> Result<ConjectureResult, AnalysisError> {
    let n = run.len().saturating_sub(1);
    let report = classify(run, n)?;
    let near: BTreeSet<_> = report.near_match_primes.iter().copied().collect();
    let counterexamples = report
        .missed_primes
        .iter()
        .filter(|m| !near.contains(m))
        .map(|&m| Counterexample {
            spec: report.spec,
            n: m,
            detail: format!(
                "prime {m}: a({m}) = {}, a({}) = {}",
                run.a(m).unwrap_or_default(),
                m + 1,
                run.a(m + 1).unwrap_or_default()
            ),
        })
        .collect();
    Ok(ConjectureResult::new(
        ConjectureId::C3_2,
        vec![report.spec],
        n,
        report.total_eligible_primes,
        counterexamples,
    ))
}

/// Odd primes `<= n` are fixed points of the shifted triangular sequence.
pub fn check_conjecture_5_1(n: usize) -> Result<ConjectureResult, AnalysisError> {
    let spec = SequenceSpec::new(Variant::TriangularShifted, n + 1);
    let run = crate::engine::generate(spec)?;
    let primes = prime_flags(n);
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for m in (3..=n).filter(|&m| primes[m]) {
        checked += 1;
        let a = run.a(m as u64).unwrap_or_default();
        if a != m as u64 {
            counterexamples.push(Counterexample {
                spec: SequenceSpec::new(Variant::TriangularShifted, n),
                n: m as u64,
                detail: format!("odd prime {m} has a({m}) = {a}"),
            });
        }
    }
    Ok(ConjectureResult::new(
        ConjectureId::C5_1,
        vec![SequenceSpec::new(Variant::TriangularShifted, n)],
        n,
        checked,
        counterexamples,
    ))
}

/// Every eligible prime `<= n` is a fixed point of each tested `A(p)`.
pub fn check_conjecture_6_1(sweep: &SweepReport) -> ConjectureResult {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for r in &sweep.reports {
        checked += r.total_eligible_primes;
        counterexamples.extend(r.missed_primes.iter().map(|&m| Counterexample {
            spec: r.spec,
            n: m,
            detail: format!("{} misses prime {m}", r.spec.variant),
        }));
    }
    ConjectureResult::new(
        ConjectureId::C6_1,
        sweep.reports.iter().map(|r| r.spec).collect(),
        sweep.n,
        checked,
        counterexamples,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub p_list: Vec<u64>,
    pub n: usize,
    pub reports: Vec<ClassificationReport>,
    /// Primes missed by every tested `A(p)`.
    pub union_missed: Vec<u64>,
    /// `(p, success rate)` in `p_list` order.
    pub figure2_series: Vec<(u64, Ratio)>,
}

impl SweepReport {
    pub fn from_reports(p_list: Vec<u64>, n: usize, reports: Vec<ClassificationReport>) -> Self {
        let union_missed = match reports.split_first() {
            None => Vec::new(),
            Some((first, rest)) => first
                .missed_primes
                .iter()
                .copied()
                .filter(|m| rest.iter().all(|r| r.missed_primes.binary_search(m).is_ok()))
                .collect(),
        };
        let figure2_series = p_list
            .iter()
            .copied()
            .zip(reports.iter().map(|r| r.success_rate))
            .collect();
        Self {
            p_list,
            n,
            reports,
            union_missed,
            figure2_series,
        }
    }
}

/// Source for the `n + 1`-term run of each swept `p`. The default generates
/// afresh; the store module provides a caching implementation.
pub trait RunSource: Sync {
    fn run_for(&self, spec: SequenceSpec, table: &Arc<SpfTable>) -> Result<SequenceRun, AnalysisError>;
}

/// Generates every run from scratch.
pub struct Generate;

impl RunSource for Generate {
    fn run_for(&self, spec: SequenceSpec, table: &Arc<SpfTable>) -> Result<SequenceRun, AnalysisError> {
        Ok(Engine::with_table(spec, Arc::clone(table))?.run()?)
    }
}

pub fn sweep(p_list: &[u64], n: usize) -> Result<SweepReport, AnalysisError> {
    sweep_with(p_list, n, 1, &Generate)
}

/// Classifies `A(p)` for every `p` in `p_list`, with up to `jobs` runs in
/// flight. Results are assembled in `p_list` order regardless of `jobs`.
pub fn sweep_with(
    p_list: &[u64],
    n: usize,
    jobs: usize,
    source: &dyn RunSource,
) -> Result<SweepReport, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::SweepTooShort(n));
    }
    for &p in p_list {
        SequenceSpec::standard(p, n + 1).validate()?;
    }
    let table = Arc::new(SpfTable::build(SequenceSpec::standard(1, n + 1).sieve_limit())?);
    let one = |p: u64| -> Result<ClassificationReport, AnalysisError> {
        let run = source
            .run_for(SequenceSpec::standard(p, n + 1), &table)
            .and_then(|run| classify(&run, n));
        run.map_err(|e| AnalysisError::Sweep {
            p,
            source: Box::new(e),
        })
    };

    let reports = if jobs <= 1 {
        p_list.iter().map(|&p| one(p)).collect::<Result<Vec<_>, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| AnalysisError::Pool(e.to_string()))?;
        pool.install(|| p_list.par_iter().map(|&p| one(p)).collect::<Result<Vec<_>, _>>())?
    };
    Ok(SweepReport::from_reports(p_list.to_vec(), n, reports))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredFalseNegatives {
    pub small_primes: Vec<u64>,
    pub remaining: Vec<u64>,
    pub removed: u64,
    pub remaining_rate: Ratio,
}

/// Drops false negatives divisible by any of `small_primes`.
pub fn filter_false_negatives(
    report: &ClassificationReport,
    small_primes: &[u64],
) -> FilteredFalseNegatives {
    let (removed, remaining): (Vec<u64>, Vec<u64>) = report
        .false_negative_values
        .iter()
        .partition(|&&v| small_primes.iter().any(|&s| s != 0 && v % s == 0));
    FilteredFalseNegatives {
        small_primes: small_primes.to_vec(),
        remaining_rate: Ratio::new(remaining.len() as u64, report.total_nonprimes),
        remaining,
        removed: removed.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::generate;

    #[test]
    fn ratio_rounding() {
        assert_eq!(Ratio::new(1160, 1227).to_string(), "94.54%");
        assert_eq!(Ratio::new(1, 8).percent_value(), "12.50");
        // 1/16 = 6.25 exactly, 1/32 = 3.125 rounds up
        assert_eq!(Ratio::new(1, 32).percent_value(), "3.13");
        assert_eq!(Ratio::new(0, 0).to_string(), "n/a");
        assert_eq!(Ratio::new(1227, 1227).to_string(), "100.00%");
        assert_eq!(Ratio::new(0, 5).complement(), Ratio::new(5, 5));
    }

    #[test]
    fn classify_table1_prefix() {
        let run = generate(SequenceSpec::standard(7, 26)).unwrap();
        let r = classify(&run, 25).unwrap();
        assert_eq!(r.excluded_primes, vec![2, 7]);
        // 3,5,11,13,17,19,23
        assert_eq!(r.total_eligible_primes, 7);
        assert_eq!(r.detected, 7);
        assert_eq!(r.near_matches, 0);
        assert!(r.missed_primes.is_empty());
        assert_eq!(r.total_nonprimes, 25 - 9);
        assert_eq!(r.false_negatives, 0);
    }

    #[test]
    fn classify_requires_lookahead_term() {
        let run = generate(SequenceSpec::standard(7, 25)).unwrap();
        assert!(matches!(
            classify(&run, 25),
            Err(AnalysisError::RunTooShort { needed: 26, .. })
        ));
    }

    #[test]
    fn a3_prime_17_lands_late() {
        let run = generate(SequenceSpec::standard(3, 30)).unwrap();
        assert_ne!(run.a(17), Some(17));
        assert_eq!(run.a(18), Some(17));
        let r = classify(&run, 29).unwrap();
        assert_eq!(r.missed_primes.first(), Some(&17));
        assert_eq!(r.near_match_primes.first(), Some(&17));
    }

    #[test]
    fn report_invariants_small_runs() {
        for v in [
            Variant::Standard(3),
            Variant::Standard(2),
            Variant::Standard(9),
            Variant::TriangularShifted,
            Variant::TriangularNoZero,
        ] {
            for n in [1, 2, 3, 10, 150] {
                let r = analyze(v, n).unwrap();
                assert_eq!(
                    r.detected + r.missed_primes.len() as u64,
                    r.total_eligible_primes
                );
                assert!(r.detected + r.near_matches <= r.total_eligible_primes);
                assert!(!r.false_negative_values.contains(&1));
                for rate in [r.success_rate, r.false_negative_rate] {
                    assert!(rate.fraction().map_or(true, |f| (0.0..=1.0).contains(&f)));
                }
                assert_eq!(r, analyze(v, n).unwrap());
            }
        }
    }

    #[test]
    fn matrix_columns_complement() {
        let r = analyze(Variant::Standard(5), 500).unwrap();
        let m = classification_matrix(&r);
        for col in 0..2 {
            let rows = m.rows();
            let (a, b) = (rows[0][col], rows[1][col]);
            assert_eq!(a.denominator, b.denominator);
            assert_eq!(a.numerator + b.numerator, a.denominator);
        }
        let perfect = analyze(Variant::Standard(7), 25).unwrap();
        let m = classification_matrix(&perfect);
        assert_eq!(m.detect_prime.to_string(), "100.00%");
        assert_eq!(m.miss_prime.to_string(), "0.00%");
    }

    #[test]
    fn conjecture_3_1_cases() {
        let run = generate(SequenceSpec::standard(7, 25)).unwrap();
        let c = check_conjecture_3_1(&run);
        assert!(c.holds);
        assert_eq!(c.checked, 8);

        let run = generate(SequenceSpec::standard(2, 100)).unwrap();
        let c = check_conjecture_3_1(&run);
        assert!(!c.holds);
        let evens: Vec<_> = c.counterexamples.iter().map(|c| c.n).collect();
        assert_eq!(evens, (1..=50).map(|k| 2 * k).collect::<Vec<_>>());
    }

    #[test]
    fn conjecture_3_2_small() {
        let run = generate(SequenceSpec::standard(7, 26)).unwrap();
        let c = check_conjecture_3_2(&run).unwrap();
        assert!(c.holds);
        assert_eq!(c.n, 25);
    }

    #[test]
    fn conjecture_5_1_small() {
        let c = check_conjecture_5_1(7).unwrap();
        assert!(c.holds);
        assert_eq!(c.checked, 3);
        let c = check_conjecture_5_1(1).unwrap();
        assert!(c.holds);
        assert_eq!(c.checked, 0);
    }

    #[test]
    fn sweep_orders_and_intersects() {
        let s1 = sweep(&[7, 3, 5], 400).unwrap();
        let s4 = sweep_with(&[7, 3, 5], 400, 4, &Generate).unwrap();
        assert_eq!(s1, s4);
        assert_eq!(s1.p_list, vec![7, 3, 5]);
        assert_eq!(s1.reports[0].p(), Some(7));
        for m in &s1.union_missed {
            assert!(s1.reports.iter().all(|r| r.missed_primes.contains(m)));
        }
        let single = sweep(&[3], 400).unwrap();
        assert_eq!(single.union_missed, single.reports[0].missed_primes);
        let empty = sweep(&[], 400).unwrap();
        assert!(empty.union_missed.is_empty() && empty.figure2_series.is_empty());
    }

    #[test]
    fn sweep_errors_name_the_p() {
        assert!(matches!(sweep(&[3], 1), Err(AnalysisError::SweepTooShort(1))));
        assert!(matches!(sweep(&[3, 0], 10), Err(AnalysisError::Engine(_))));

        struct Failing;
        impl RunSource for Failing {
            fn run_for(&self, spec: SequenceSpec, _: &Arc<SpfTable>) -> Result<SequenceRun, AnalysisError> {
                match spec.variant {
                    Variant::Standard(5) => Err(AnalysisError::SweepTooShort(0)),
                    _ => Ok(generate(spec)?),
                }
            }
        }
        let err = sweep_with(&[3, 5], 20, 1, &Failing).unwrap_err();
        assert!(matches!(err, AnalysisError::Sweep { p: 5, .. }));
    }

    #[test]
    fn false_negative_filter() {
        let r = analyze(Variant::Standard(3), 2000).unwrap();
        let none = filter_false_negatives(&r, &[]);
        assert_eq!(none.remaining, r.false_negative_values);
        assert_eq!(none.removed, 0);

        let f = filter_false_negatives(&r, &[3, 5]);
        assert_eq!(f.removed + f.remaining.len() as u64, r.false_negatives);
        assert!(f.remaining.iter().all(|v| v % 3 != 0 && v % 5 != 0));

        let mut fake = r.clone();
        fake.false_negative_values = vec![9];
        let f = filter_false_negatives(&fake, &[3]);
        assert_eq!(f.removed, 1);
        assert!(f.remaining.is_empty());
    }

    #[test]
    fn excluded_prime_rules() {
        assert_eq!(excluded_primes(Variant::Standard(3), 10), vec![2, 3]);
        assert_eq!(excluded_primes(Variant::Standard(9), 10), vec![2]);
        assert_eq!(excluded_primes(Variant::Standard(199), 100), vec![2]);
        assert_eq!(excluded_primes(Variant::TriangularShifted, 10), vec![2]);
        assert!(excluded_primes(Variant::Standard(3), 1).is_empty());
    }

    #[test]
    fn conjecture_ids_parse() {
        for id in ["3.1", "3.2", "5.1", "6.1"] {
            assert_eq!(id.parse::<ConjectureId>().unwrap().label(), id);
        }
        assert!("4.0".parse::<ConjectureId>().is_err());
    }
}
