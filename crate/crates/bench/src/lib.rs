//! Shared fixtures for the criterion benchmarks.

use primeineq::{Comparator, PrimeTable, Verifier};

/// Table covering the default scan limit (p_2001).
pub fn scan_table() -> PrimeTable {
    PrimeTable::build(0, 2001).expect("default table fits the sieve cap")
}

pub fn verifier() -> Verifier {
    Verifier::with_table(scan_table(), Comparator::default())
}
