//! Sweeps of inequality families over index ranges.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{CheckRecord, InequalityId, Params, Verifier};
use crate::error::{Error, Result};
use crate::exactcmp::Outcome;

/// Indices per parallel work unit.
const BLOCK_LEN: usize = 32;

/// Failures and the empirical stable start of one family over `[scan_from, scan_to]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub id: InequalityId,
    pub fixed_params: Params,
    pub scan_from: u64,
    pub scan_to: u64,
    pub failures: Vec<u64>,
    pub undecided: Vec<u64>,
    /// Smallest `n0` such that every index in `[n0, scan_to]` holds.
    pub stable_start: Option<u64>,
}

impl ThresholdReport {
    /// Summarize records that are ordered by index and cover `[from, to]`.
    pub fn from_records(
        id: InequalityId,
        fixed_params: Params,
        from: u64,
        to: u64,
        records: &[CheckRecord],
    ) -> Self {
        debug_assert_eq!(records.len() as u64, to - from + 1);
        let mut failures = Vec::new();
        let mut undecided = Vec::new();
        for (n, rec) in (from..=to).zip(records) {
            match rec.verdict {
                Outcome::Holds => {}
                Outcome::Fails => failures.push(n),
                Outcome::Undecided => undecided.push(n),
            }
        }
        let tail = records
            .iter()
            .rev()
            .take_while(|r| r.verdict == Outcome::Holds)
            .count() as u64;
        let stable_start = (tail > 0).then(|| to + 1 - tail);
        ThresholdReport {
            id,
            fixed_params,
            scan_from: from,
            scan_to: to,
            failures,
            undecided,
            stable_start,
        }
    }

    /// Aggregate verdict: fails if anything failed, undecided if anything
    /// was left open, holds otherwise.
    pub fn outcome(&self) -> Outcome {
        if !self.failures.is_empty() {
            Outcome::Fails
        } else if !self.undecided.is_empty() {
            Outcome::Undecided
        } else {
            Outcome::Holds
        }
    }
}

fn validate_range(id: InequalityId, fixed: &Params, from: u64, to: u64) -> Result<()> {
    if from < 1 || from > to {
        return Err(Error::Domain(format!("scan range must satisfy 1 <= from <= to, got {from}..={to}")));
    }
    if from < id.min_index() {
        return Err(Error::Domain(format!(
            "{id} is defined from {} = {}, scan starts at {from}",
            id.index_name(),
            id.min_index()
        )));
    }
    for name in id.fixed_param_names() {
        match fixed.get(*name) {
            Some(&v) if v >= 1 => {}
            _ => return Err(Error::Domain(format!("{id} needs parameter {name} >= 1"))),
        }
    }
    Ok(())
}

/// Every check record of `id` over `[from, to]`, in index order.
pub fn scan_records(
    verifier: &mut Verifier,
    id: InequalityId,
    fixed: &Params,
    from: u64,
    to: u64,
) -> Result<Vec<CheckRecord>> {
    validate_range(id, fixed, from, to)?;
    verifier.ensure(id, to, fixed)?;
    let catalog = verifier.catalog();
    let indices: Vec<u64> = (from..=to).collect();
    let blocks = indices
        .par_chunks(BLOCK_LEN)
        .map(|block| {
            block
                .iter()
                .map(|&n| catalog.check(id, n, fixed))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// Run the catalog check at every index in `[from, to]`.
pub fn scan_family(
    verifier: &mut Verifier,
    id: InequalityId,
    fixed: &Params,
    from: u64,
    to: u64,
) -> Result<ThresholdReport> {
    let records = scan_records(verifier, id, fixed, from, to)?;
    Ok(ThresholdReport::from_records(id, fixed.clone(), from, to, &records))
}

fn threshold(verifier: &mut Verifier, id: InequalityId, k: u64, limit: u64) -> Result<u64> {
    if k < 1 || limit < 2 {
        return Err(Error::Domain(format!("threshold needs k >= 1 and limit >= 2, got k={k} limit={limit}")));
    }
    let fixed: Params = [("k".to_owned(), k)].into_iter().collect();
    let report = scan_family(verifier, id, &fixed, 1, limit)?;
    report.stable_start.ok_or(Error::NoStableStart { scan_to: limit })
}

/// Empirical n_k: smallest n0 with `p_1 ⋯ p_n > p_{n+1}^k` for all n in `[n0, limit]`.
pub fn posa_threshold(verifier: &mut Verifier, k: u64, limit: u64) -> Result<u64> {
    threshold(verifier, InequalityId::BonsePosa, k, limit)
}

/// Empirical N(k): smallest n0 with `p_1 ⋯ p_n > p_{n+k}^2` for all n in `[n0, limit]`.
pub fn reich_threshold(verifier: &mut Verifier, k: u64, limit: u64) -> Result<u64> {
    threshold(verifier, InequalityId::Reich, k, limit)
}

// Their product exceeds u64::MAX, so every u64 misses one of them.
const SMALL_PRIMES: [u64; 17] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

/// Does every `a` with `1 < a < n` and `gcd(a, n) = 1` have to be prime?
///
/// A composite coprime to `n` is at least `q^2`, where `q` is the least prime
/// not dividing `n`, and `q^2` itself is such a composite.
pub fn has_thirty_property(n: u64) -> bool {
    let q = SMALL_PRIMES
        .iter()
        .copied()
        .find(|&p| !n.is_multiple_of(p))
        .expect("some small prime does not divide n");
    q * q >= n
}

/// All `N <= limit` with the 30-property, ascending. 1 and 2 qualify vacuously.
pub fn thirty_property(limit: u64) -> Vec<u64> {
    (1..=limit).filter(|&n| has_thirty_property(n)).collect()
}
