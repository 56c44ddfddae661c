//! Prime table: p_n, π(x) and primorials from a segmented sieve.
//!
//! Indexing of p_n is 1-based (`nth_prime(1) == 2`); storage is 0-based.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactcmp::{ln_interval, Natural, RealInterval};

const SEGMENT_LEN: u64 = 1 << 18;
/// Working scale of the memoized Chebyshev prefix sums.
const THETA_MEMO_BITS: u32 = 192;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableConfig {
    /// Largest sieve limit a table may reach.
    pub max_limit: u64,
    /// Primorials up to this index are cached as exact values.
    pub primorial_cache: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            max_limit: 100_000_000,
            primorial_cache: 5000,
        }
    }
}

/// Immutable table of all primes up to `limit_value`.
#[derive(Debug)]
pub struct PrimeTable {
    limit_value: u64,
    primes: Vec<u64>,
    config: TableConfig,
    primorials: OnceLock<Vec<Natural>>,
    theta: OnceLock<Vec<RealInterval>>,
}

impl Clone for PrimeTable {
    fn clone(&self) -> Self {
        PrimeTable::from_parts(self.limit_value, self.primes.clone(), self.config)
    }
}

/// Upper bound for p_n: exact below 6, Rosser's n(ln n + ln ln n) above.
fn nth_prime_upper_bound(n: u64) -> u64 {
    const SMALL: [u64; 6] = [0, 2, 3, 5, 7, 11];
    if n < 6 {
        return SMALL[n as usize];
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 1
}

/// Extend `primes` (all primes up to `limit`) to cover `target`.
fn extend_sieve(primes: &mut Vec<u64>, limit: &mut u64, target: u64) {
    if target <= *limit {
        return;
    }
    let root = target.isqrt();
    if root > *limit {
        extend_sieve(primes, limit, root);
    }
    let base_end = primes.partition_point(|&p| p <= root);
    let mut lo = *limit + 1;
    let mut mark = Vec::new();
    while lo <= target {
        let hi = target.min(lo.saturating_add(SEGMENT_LEN - 1));
        mark.clear();
        mark.resize((hi - lo + 1) as usize, true);
        for &p in &primes[..base_end] {
            if p * p > hi {
                break;
            }
            let first = (p * p).max(lo.div_ceil(p) * p);
            let mut m = first;
            while m <= hi {
                mark[(m - lo) as usize] = false;
                m += p;
            }
        }
        for (i, &is_prime) in mark.iter().enumerate() {
            let v = lo + i as u64;
            if is_prime && v >= 2 {
                primes.push(v);
            }
        }
        lo = hi + 1;
    }
    *limit = target;
}

impl PrimeTable {
    /// Table with `limit_value >= min_value` and at least `min_index` primes.
    pub fn build(min_value: u64, min_index: u64) -> Result<Self> {
        PrimeTable::build_with(TableConfig::default(), min_value, min_index)
    }

    pub fn build_with(config: TableConfig, min_value: u64, min_index: u64) -> Result<Self> {
        PrimeTable::from_parts(1, Vec::new(), config).grow(min_value.max(2), min_index)
    }

    fn from_parts(limit_value: u64, primes: Vec<u64>, config: TableConfig) -> Self {
        PrimeTable {
            limit_value,
            primes,
            config,
            primorials: OnceLock::new(),
            theta: OnceLock::new(),
        }
    }

    /// A table covering the request, reusing the primes already sieved.
    /// Each growth step at least doubles the value limit.
    pub fn grow(&self, min_value: u64, min_index: u64) -> Result<Self> {
        if self.limit_value >= min_value && self.count() >= min_index {
            return Ok(self.clone());
        }
        let mut primes = self.primes.clone();
        let mut limit = self.limit_value;
        let mut target = min_value.max(nth_prime_upper_bound(min_index));
        loop {
            if limit > 1 {
                target = target.max(limit.saturating_mul(2));
            }
            if target > self.config.max_limit {
                return Err(Error::ResourceLimit {
                    requested: target,
                    cap: self.config.max_limit,
                });
            }
            extend_sieve(&mut primes, &mut limit, target);
            if primes.len() as u64 >= min_index {
                break;
            }
        }
        Ok(PrimeTable::from_parts(limit, primes, self.config))
    }

    pub fn limit_value(&self) -> u64 {
        self.limit_value
    }

    pub fn count(&self) -> u64 {
        self.primes.len() as u64
    }

    pub fn config(&self) -> TableConfig {
        self.config
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n > self.count() {
            Err(Error::IndexOutOfRange {
                index: n,
                count: self.count(),
            })
        } else {
            Ok(())
        }
    }

    /// p_n, 1-based.
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                count: self.count(),
            });
        }
        self.check_index(n)?;
        Ok(self.primes[(n - 1) as usize])
    }

    /// π(x), the number of primes `<= x`.
    pub fn prime_count(&self, x: u64) -> Result<u64> {
        if x > self.limit_value {
            return Err(Error::ValueOutOfRange {
                value: x,
                limit: self.limit_value,
            });
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    fn primorial_cache(&self) -> &[Natural] {
        self.primorials.get_or_init(|| {
            let upto = self.primes.len().min(self.config.primorial_cache);
            let mut out = Vec::with_capacity(upto + 1);
            let mut acc = Natural::one();
            out.push(acc.clone());
            for &p in &self.primes[..upto] {
                acc *= p;
                out.push(acc.clone());
            }
            out
        })
    }

    /// p_1 p_2 ⋯ p_n, with `primorial(0) == 1`.
    pub fn primorial(&self, n: u64) -> Result<Natural> {
        self.check_index(n)?;
        let cache = self.primorial_cache();
        let n = n as usize;
        if n < cache.len() {
            return Ok(cache[n].clone());
        }
        let start = cache.len() - 1;
        let mut acc = cache[start].clone();
        for &p in &self.primes[start..n] {
            acc *= p;
        }
        Ok(acc)
    }

    fn theta_prefix(&self) -> &[RealInterval] {
        self.theta.get_or_init(|| {
            let mut out = Vec::with_capacity(self.primes.len() + 1);
            let mut acc = RealInterval::zero(THETA_MEMO_BITS);
            out.push(acc.clone());
            for &p in &self.primes {
                acc = acc.add(&ln_interval(p, THETA_MEMO_BITS).expect("prime is positive"));
                out.push(acc.clone());
            }
            out
        })
    }

    /// Enclosure of ln(p_1 ⋯ p_n) = Σ ln p_i without forming the product.
    pub fn log_primorial_interval(&self, n: u64, precision_bits: u32) -> Result<RealInterval> {
        self.check_index(n)?;
        if precision_bits < crate::exactcmp::MIN_PRECISION_BITS {
            return Err(Error::Domain(format!(
                "precision_bits must be at least {}, got {precision_bits}",
                crate::exactcmp::MIN_PRECISION_BITS
            )));
        }
        let guard = 8 + (64 - n.leading_zeros());
        if precision_bits + guard <= THETA_MEMO_BITS {
            return Ok(self.theta_prefix()[n as usize].rescale(precision_bits));
        }
        let scale = precision_bits + guard;
        let mut acc = RealInterval::zero(scale);
        for &p in &self.primes[..n as usize] {
            acc = acc.add(&ln_interval(p, scale)?);
        }
        Ok(acc.rescale(precision_bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn smallest_table() {
        let t = PrimeTable::build(2, 1).unwrap();
        assert_eq!(t.primes(), &[2]);
        assert_eq!(t.count(), 1);
        assert_eq!(t.limit_value(), 2);
    }

    #[test]
    fn table_to_100_has_25_primes() {
        let t = PrimeTable::build(100, 0).unwrap();
        assert_eq!(t.prime_count(100).unwrap(), 25);
    }

    #[test]
    fn table_by_index() {
        let t = PrimeTable::build(0, 55).unwrap();
        assert!(t.count() >= 55);
        assert_eq!(t.primes()[54], 257);
        assert_eq!(t.nth_prime(1).unwrap(), 2);
        assert_eq!(t.nth_prime(21).unwrap(), 73);
        assert_eq!(t.nth_prime(55).unwrap(), 257);
    }

    #[test]
    fn prime_count_examples() {
        let t = PrimeTable::build(100, 0).unwrap();
        assert_eq!(t.prime_count(0).unwrap(), 0);
        assert_eq!(t.prime_count(1).unwrap(), 0);
        assert_eq!(t.prime_count(20).unwrap(), 8);
        assert_eq!(t.prime_count(54).unwrap(), 16);
        assert_eq!(t.prime_count(62).unwrap(), 18);
        assert_eq!(t.prime_count(63).unwrap(), 18);
    }

    #[test]
    fn range_errors() {
        let t = PrimeTable::build(30, 0).unwrap();
        assert!(matches!(t.nth_prime(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(t.nth_prime(11), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(t.prime_count(31), Err(Error::ValueOutOfRange { .. })));
        assert!(matches!(t.primorial(11), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn resource_cap_enforced() {
        let cfg = TableConfig {
            max_limit: 1000,
            ..TableConfig::default()
        };
        assert!(matches!(
            PrimeTable::build_with(cfg, 5000, 0),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            PrimeTable::build_with(cfg, 0, 500),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(PrimeTable::build_with(cfg, 1000, 0).is_ok());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = PrimeTable::build(20_000, 0).unwrap();
        let expect: Vec<u64> = (0..=20_000).filter(|&n| trial_division_is_prime(n)).collect();
        assert_eq!(t.primes(), expect.as_slice());
    }

    #[test]
    fn sieve_across_segment_boundaries() {
        let t = PrimeTable::build(1_000_000, 0).unwrap();
        assert!(t.limit_value() > 3 * SEGMENT_LEN);
        for &p in t.primes().iter().step_by(997) {
            assert!(trial_division_is_prime(p));
        }
        // pi(10^6) = 78498
        assert_eq!(t.prime_count(1_000_000).unwrap(), 78_498);
    }

    #[test]
    fn growth_doubles_and_preserves_prefix() {
        let small = PrimeTable::build(100, 0).unwrap();
        let grown = small.grow(101, 0).unwrap();
        assert_eq!(grown.limit_value(), 200);
        assert_eq!(&grown.primes()[..25], small.primes());
        let big = small.grow(0, 1000).unwrap();
        assert_eq!(big.nth_prime(1000).unwrap(), 7919);
        assert_eq!(big.nth_prime(25).unwrap(), small.nth_prime(25).unwrap());
    }

    #[test]
    fn build_is_deterministic() {
        let a = PrimeTable::build(500, 120).unwrap();
        let b = PrimeTable::build(500, 120).unwrap();
        assert_eq!(a.primes(), b.primes());
        assert_eq!(a.limit_value(), b.limit_value());
    }

    #[test]
    fn primorial_examples() {
        let t = PrimeTable::build(100, 0).unwrap();
        assert_eq!(t.primorial(0).unwrap(), Natural::one());
        assert_eq!(t.primorial(4).unwrap(), Natural::from(210));
        assert_eq!(t.primorial(10).unwrap(), Natural::from(6_469_693_230));
    }

    #[test]
    fn primorial_beyond_cache() {
        let cfg = TableConfig {
            primorial_cache: 3,
            ..TableConfig::default()
        };
        let t = PrimeTable::build_with(cfg, 100, 0).unwrap();
        assert_eq!(t.primorial(3).unwrap(), Natural::from(30));
        assert_eq!(t.primorial(10).unwrap(), Natural::from(6_469_693_230));
    }

    #[test]
    fn log_primorial_examples() {
        let t = PrimeTable::build(100, 0).unwrap();
        assert_eq!(t.log_primorial_interval(0, 64).unwrap(), RealInterval::zero(64));
        let l4 = t.log_primorial_interval(4, 64).unwrap();
        // ln 210 = 5.34710753071746868051...
        assert!(l4.lo_f64() <= 5.347_107_530_717_469 && 5.347_107_530_717_468 <= l4.hi_f64());
        let direct = ln_interval(210, 64).unwrap();
        assert!(l4.overlaps(&direct));
        for n in [1, 10, 25] {
            let w64 = t.log_primorial_interval(n, 64).unwrap().width_f64();
            let w128 = t.log_primorial_interval(n, 128).unwrap().width_f64();
            let w512 = t.log_primorial_interval(n, 512).unwrap().width_f64();
            assert!(w128 <= w64 && w512 <= w128, "n={n}");
        }
    }

    #[test]
    fn log_primorial_rejects_tiny_precision() {
        let t = PrimeTable::build(100, 0).unwrap();
        assert!(t.log_primorial_interval(3, 8).is_err());
    }
}
