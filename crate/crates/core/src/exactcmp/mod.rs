//! Certified order decisions between prime-power expressions.
//!
//! Two tiers: logarithms are compared through [`RealInterval`] enclosures,
//! doubling the working precision while the enclosures overlap, and the
//! exact big-integer tier settles anything the interval tier cannot. No
//! verdict ever rests on a rounded floating-point value.

mod interval;
mod natural;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use interval::{
    format_fixed, ln2_interval, ln_interval, ln_natural_interval, RealInterval, MIN_PRECISION_BITS,
};
pub use natural::{compare_naturals, Natural, ParseNaturalError};

/// First precision tried by the interval tier.
pub const DEFAULT_START_BITS: u32 = 64;
/// Precision cap after which the interval tier gives up.
pub const DEFAULT_MAX_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Undecided,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Undecided => "undecided",
        }
    }

    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "holds" => Ok(Outcome::Holds),
            "fails" => Ok(Outcome::Fails),
            "undecided" => Ok(Outcome::Undecided),
            _ => Err(Error::Domain(format!("unknown verdict {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactInteger,
    CertifiedInterval,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactInteger => "exact-integer",
            Method::CertifiedInterval => "certified-interval",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-integer" => Ok(Method::ExactInteger),
            "certified-interval" => Ok(Method::CertifiedInterval),
            _ => Err(Error::Domain(format!("unknown method {s:?}"))),
        }
    }
}

/// A certified verdict on a single strict or non-strict inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub method: Method,
    pub precision_used: u32,
}

impl Verdict {
    pub fn exact(holds: bool) -> Self {
        Verdict {
            outcome: Outcome::from_bool(holds),
            method: Method::ExactInteger,
            precision_used: 0,
        }
    }
}

/// Result of ordering two exact quantities.
///
/// `ordering` is `None` only when the exact tier was disabled and the
/// interval tier ran out of precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Option<Ordering>,
    pub method: Method,
    pub precision_used: u32,
    /// Bit lengths of both sides when the exact tier ran, zero otherwise.
    pub lhs_bits: u64,
    pub rhs_bits: u64,
}

impl Comparison {
    fn interval(ordering: Option<Ordering>, precision_used: u32) -> Self {
        Comparison {
            ordering,
            method: Method::CertifiedInterval,
            precision_used,
            lhs_bits: 0,
            rhs_bits: 0,
        }
    }

    fn exact(lhs: &Natural, rhs: &Natural, precision_used: u32) -> Self {
        Comparison {
            ordering: Some(compare_naturals(lhs, rhs)),
            method: Method::ExactInteger,
            precision_used,
            lhs_bits: lhs.bits(),
            rhs_bits: rhs.bits(),
        }
    }

    /// Verdict for the claim `lhs > rhs` (or `lhs >= rhs` when `allow_equal`).
    pub fn verdict_greater(&self, allow_equal: bool) -> Verdict {
        let outcome = match self.ordering {
            None => Outcome::Undecided,
            Some(Ordering::Greater) => Outcome::Holds,
            Some(Ordering::Equal) => Outcome::from_bool(allow_equal),
            Some(Ordering::Less) => Outcome::Fails,
        };
        Verdict {
            outcome,
            method: self.method,
            precision_used: self.precision_used,
        }
    }
}

/// Which tiers the comparator may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tier {
    /// Intervals first, exact arithmetic when they cannot separate.
    #[default]
    Auto,
    IntervalOnly,
    ExactOnly,
}

/// Precision-escalation policy plus tier selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparator {
    pub start_bits: u32,
    pub max_bits: u32,
    pub tier: Tier,
}

impl Default for Comparator {
    fn default() -> Self {
        Comparator {
            start_bits: DEFAULT_START_BITS,
            max_bits: DEFAULT_MAX_BITS,
            tier: Tier::Auto,
        }
    }
}

/// Run `probe` at doubling precisions from `start` up to `max` (inclusive)
/// until it yields a decision. Returns the decision and the last precision
/// tried.
pub fn refine<T>(start: u32, max: u32, mut probe: impl FnMut(u32) -> Option<T>) -> (Option<T>, u32) {
    let mut bits = start.max(MIN_PRECISION_BITS);
    let max = max.max(MIN_PRECISION_BITS);
    loop {
        let bits_now = bits.min(max);
        if let Some(v) = probe(bits_now) {
            return (Some(v), bits_now);
        }
        if bits_now >= max {
            return (None, bits_now);
        }
        bits = bits_now.saturating_mul(2);
    }
}

fn ln_times(base: u64, exp: u64, bits: u32) -> RealInterval {
    if base == 1 || exp == 0 {
        return RealInterval::zero(bits);
    }
    // base >= 2 here, so ln is defined
    ln_interval(base, bits)
        .expect("ln of a positive integer")
        .mul_int(&BigInt::from(exp))
}

/// State of the interval tier after one probe.
enum Probe {
    Decided(Ordering),
    /// Enclosures overlap; more precision may separate them.
    Open,
    /// Enclosures overlap although they are narrower than the smallest gap
    /// between distinct values of this size, so only equality remains.
    Exhausted,
}

/// Compare two log enclosures of integers below `2^magnitude_bits`.
///
/// Distinct integers `X < Y < 2^B` satisfy `ln Y - ln X >= 1/(X+1) >= 2^-B`,
/// so an overlapping difference narrower than that cannot separate.
fn separate(lhs: &RealInterval, rhs: &RealInterval, magnitude_bits: u64) -> Probe {
    let diff = lhs.sub(rhs);
    match diff.sign() {
        Some(o @ (Ordering::Less | Ordering::Greater)) => Probe::Decided(o),
        _ => {
            let (w, s) = diff.width_scaled();
            if (w << (magnitude_bits + 1)) < (BigInt::from(1) << s) {
                Probe::Exhausted
            } else {
                Probe::Open
            }
        }
    }
}

/// Upper bound on the bit length of `base^exp`.
fn power_bits(base: u64, exp: u64) -> u64 {
    if base <= 1 || exp == 0 {
        1
    } else {
        exp.saturating_mul(u64::from(u64::BITS - base.leading_zeros()))
    }
}

impl Comparator {
    pub fn with_max_bits(max_bits: u32) -> Self {
        Comparator {
            max_bits,
            ..Comparator::default()
        }
    }

    pub fn with_tier(self, tier: Tier) -> Self {
        Comparator { tier, ..self }
    }

    /// Order `a^b` against `c^d`.
    pub fn compare_power_power(&self, a: u64, b: u64, c: u64, d: u64) -> Result<Comparison> {
        if a == 0 || c == 0 {
            return Err(Error::Domain("power bases must be at least 1".into()));
        }
        let magnitude = power_bits(a, b).max(power_bits(c, d));
        self.two_tier(
            |bits| separate(&ln_times(a, b, bits), &ln_times(c, d, bits), magnitude),
            || (Natural::pow(a, b), Natural::pow(c, d)),
        )
    }

    /// Order `x` against `c^d`. `log_hint`, when given, must return an
    /// enclosure of `ln x` at the requested precision (for example a
    /// primorial's Chebyshev sum); otherwise `ln x` is evaluated directly.
    pub fn compare_natural_power(
        &self,
        x: &Natural,
        c: u64,
        d: u64,
        log_hint: Option<&dyn Fn(u32) -> RealInterval>,
    ) -> Result<Comparison> {
        if c == 0 {
            return Err(Error::Domain("power base must be at least 1".into()));
        }
        if x.is_zero() {
            // 0 < c^d for every admissible c, d
            return Ok(Comparison::exact(x, &Natural::pow(c, d), 0));
        }
        let magnitude = x.bits().max(power_bits(c, d));
        self.two_tier(
            |bits| {
                let lx = match log_hint {
                    Some(hint) => hint(bits),
                    None => ln_natural_interval(x, bits).expect("x is positive"),
                };
                separate(&lx, &ln_times(c, d, bits), magnitude)
            },
            || (x.clone(), Natural::pow(c, d)),
        )
    }

    fn two_tier(
        &self,
        mut probe: impl FnMut(u32) -> Probe,
        exact: impl FnOnce() -> (Natural, Natural),
    ) -> Result<Comparison> {
        if self.tier == Tier::ExactOnly {
            let (l, r) = exact();
            return Ok(Comparison::exact(&l, &r, 0));
        }
        let max = self.max_bits.max(MIN_PRECISION_BITS);
        let mut bits = self.start_bits.clamp(MIN_PRECISION_BITS, max);
        loop {
            match probe(bits) {
                Probe::Decided(o) => return Ok(Comparison::interval(Some(o), bits)),
                Probe::Open if bits < max => bits = bits.saturating_mul(2).min(max),
                Probe::Open | Probe::Exhausted => break,
            }
        }
        if self.tier == Tier::IntervalOnly {
            return Ok(Comparison::interval(None, bits));
        }
        let (l, r) = exact();
        Ok(Comparison::exact(&l, &r, bits))
    }
}

fn interval_verdict(ordering: Option<Ordering>, bits: u32) -> Verdict {
    let outcome = match ordering {
        Some(Ordering::Greater) => Outcome::Holds,
        Some(_) => Outcome::Fails,
        None => Outcome::Undecided,
    };
    Verdict {
        outcome,
        method: Method::CertifiedInterval,
        precision_used: bits,
    }
}

/// Decide `(p_num / p_den) * ln x > q_num / q_den`, doubling precision from
/// 64 bits up to `max_precision`.
pub fn decide_rational_vs_rational_ln(
    p_num: i64,
    p_den: u64,
    x: u64,
    q_num: i64,
    q_den: u64,
    max_precision: u32,
) -> Result<Verdict> {
    if p_den == 0 || q_den == 0 {
        return Err(Error::Domain("denominators must be positive".into()));
    }
    let (p_num, p_den) = (BigInt::from(p_num), BigInt::from(p_den));
    let (q_num, q_den) = (BigInt::from(q_num), BigInt::from(q_den));
    if p_num == BigInt::from(0) {
        // 0 > q is a rational comparison
        return Ok(Verdict::exact(q_num < BigInt::from(0)));
    }
    if x < 2 {
        return Err(Error::Domain(format!("ln argument must be at least 2, got {x}")));
    }
    let (ordering, bits) = refine(DEFAULT_START_BITS, max_precision, |bits| {
        let lhs = ln_interval(x, bits)
            .expect("x >= 2")
            .mul_rational(&p_num, &p_den);
        lhs.cmp_rational(&q_num, &q_den)
    });
    Ok(interval_verdict(ordering, bits))
}

/// Decide `m > k * ln 2`.
pub fn decide_int_vs_int_times_ln2(m: i64, k: u64, max_precision: u32) -> Verdict {
    if k == 0 {
        return Verdict::exact(m > 0);
    }
    let m = BigInt::from(m);
    let k = BigInt::from(k);
    let (ordering, bits) = refine(DEFAULT_START_BITS, max_precision, |bits| {
        let rhs = ln2_interval(bits).expect("precision is valid").mul_int(&k);
        // m > rhs  <=>  rhs < m
        rhs.cmp_rational(&m, &BigInt::from(1)).map(Ordering::reverse)
    });
    interval_verdict(ordering, bits)
}
