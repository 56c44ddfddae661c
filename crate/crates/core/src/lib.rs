//! Certified verification of inequalities about primorials and prime powers.
//!
//! - [`primes`]: sieve-backed table of p_n, π(x), primorials and Chebyshev sums.
//! - [`exactcmp`]: interval-then-exact comparison of powers and logarithms.
//! - [`catalog`]: one check per inequality, yielding a [`CheckRecord`].
//! - [`scan`]: sweeps over index ranges, thresholds and the 30-property.

pub mod catalog;
pub mod error;
pub mod exactcmp;
pub mod primes;
pub mod scan;

pub use catalog::{
    Catalog, CheckRecord, InequalityId, Params, ProofHelper, Relation, RosserSide, TableRow,
    Verifier, TABLE_FIRST_ROW, TABLE_LAST_ROW,
};
pub use error::{Error, Result};
pub use exactcmp::{Comparator, Method, Natural, Outcome, RealInterval, Tier, Verdict};
pub use primes::{PrimeTable, TableConfig};
pub use scan::{
    posa_threshold, reich_threshold, scan_family, scan_records, thirty_property, ThresholdReport,
};
