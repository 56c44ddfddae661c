//! Dyadic enclosures of real numbers.
//!
//! A [`RealInterval`] stores two integers `lo`, `hi` and a scale `s`, and
//! stands for the closed interval `[lo / 2^s, hi / 2^s]`. Every operation
//! rounds the lower endpoint toward negative infinity and the upper endpoint
//! toward positive infinity, so an enclosure of the true value stays an
//! enclosure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::natural::Natural;
use crate::error::{Error, Result};

/// Smallest working precision accepted by the ln evaluators.
pub const MIN_PRECISION_BITS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

impl RealInterval {
    /// Interval `[lo, hi] / 2^scale`. Panics if `lo > hi`.
    pub fn from_scaled(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi, scale }
    }

    pub fn zero(scale: u32) -> Self {
        RealInterval::point_int(&BigInt::zero(), scale)
    }

    /// Degenerate interval holding an integer exactly.
    pub fn point_int(v: &BigInt, scale: u32) -> Self {
        let x = v << scale;
        RealInterval {
            lo: x.clone(),
            hi: x,
            scale,
        }
    }

    /// Tightest enclosure of `num / den` at the given scale.
    pub fn from_rational(num: &BigInt, den: &BigInt, scale: u32) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let scaled = num << scale;
        RealInterval {
            lo: floor_div(&scaled, den),
            hi: ceil_div(&scaled, den),
            scale,
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.scale
    }

    /// Scaled endpoints `(lo, hi, scale)`.
    pub fn scaled_endpoints(&self) -> (&BigInt, &BigInt, u32) {
        (&self.lo, &self.hi, self.scale)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Width as `(numerator, scale)`, i.e. `(hi - lo) / 2^scale`.
    pub fn width_scaled(&self) -> (BigInt, u32) {
        (&self.hi - &self.lo, self.scale)
    }

    /// Width as a float, for diagnostics only.
    pub fn width_f64(&self) -> f64 {
        scaled_to_f64(&(&self.hi - &self.lo), self.scale)
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.scale)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.scale)
    }

    /// Re-express at another scale, rounding outward when coarsening.
    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let d = scale - self.scale;
                RealInterval {
                    lo: &self.lo << d,
                    hi: &self.hi << d,
                    scale,
                }
            }
            Ordering::Less => {
                let p = pow2(self.scale - scale);
                RealInterval {
                    lo: floor_div(&self.lo, &p),
                    hi: ceil_div(&self.hi, &p),
                    scale,
                }
            }
        }
    }

    pub fn add(&self, other: &RealInterval) -> Self {
        let scale = self.scale.max(other.scale);
        let a = self.rescale(scale);
        let b = other.rescale(scale);
        RealInterval {
            lo: a.lo + b.lo,
            hi: a.hi + b.hi,
            scale,
        }
    }

    pub fn neg(&self) -> Self {
        RealInterval {
            lo: -&self.hi,
            hi: -&self.lo,
            scale: self.scale,
        }
    }

    pub fn sub(&self, other: &RealInterval) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (lo, hi) = if k.is_negative() {
            (&self.hi * k, &self.lo * k)
        } else {
            (&self.lo * k, &self.hi * k)
        };
        RealInterval {
            lo,
            hi,
            scale: self.scale,
        }
    }

    /// Multiply by `num / den`, `den > 0`, keeping the current scale.
    pub fn mul_rational(&self, num: &BigInt, den: &BigInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let (a, b) = if num.is_negative() {
            (&self.hi * num, &self.lo * num)
        } else {
            (&self.lo * num, &self.hi * num)
        };
        RealInterval {
            lo: floor_div(&a, den),
            hi: ceil_div(&b, den),
            scale: self.scale,
        }
    }

    pub fn add_rational(&self, num: &BigInt, den: &BigInt) -> Self {
        self.add(&RealInterval::from_rational(num, den, self.scale))
    }

    /// Enclosure of `1 / x` for an interval lying strictly above zero.
    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::Domain(
                "reciprocal of an interval that is not strictly positive".into(),
            ));
        }
        let num = pow2(2 * self.scale);
        Ok(RealInterval {
            lo: floor_div(&num, &self.hi),
            hi: ceil_div(&num, &self.lo),
            scale: self.scale,
        })
    }

    /// Certified sign: `Some(Greater)` if the whole interval is above zero,
    /// `Some(Less)` if below, `Some(Equal)` only for the exact point zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison of the enclosed value against `num / den`.
    pub fn cmp_rational(&self, num: &BigInt, den: &BigInt) -> Option<Ordering> {
        assert!(den.is_positive(), "denominator must be positive");
        let target = num << self.scale;
        let lo = &self.lo * den;
        let hi = &self.hi * den;
        if lo > target {
            Some(Ordering::Greater)
        } else if hi < target {
            Some(Ordering::Less)
        } else if lo == target && hi == target {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True when `num / den` lies in the closed interval.
    pub fn contains_rational(&self, num: &BigInt, den: &BigInt) -> bool {
        assert!(den.is_positive(), "denominator must be positive");
        let target = num << self.scale;
        &self.lo * den <= target && target <= &self.hi * den
    }

    /// True when the two closed intervals share a point.
    pub fn overlaps(&self, other: &RealInterval) -> bool {
        let scale = self.scale.max(other.scale);
        let a = self.rescale(scale);
        let b = other.rescale(scale);
        a.lo <= b.hi && b.lo <= a.hi
    }

    /// Lower endpoint truncated to `digits` decimals, as a string.
    /// The result never exceeds the enclosed value.
    pub fn floor_decimal(&self, digits: u32) -> String {
        let ten = BigInt::from(10u32).pow(digits);
        let v = floor_div(&(&self.lo * &ten), &pow2(self.scale));
        format_fixed(&v, digits)
    }
}

/// Render `v / 10^digits` with exactly `digits` decimals and a '.' separator.
pub fn format_fixed(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let mag = v.abs().to_string();
    let d = digits as usize;
    let padded = if mag.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn scaled_to_f64(v: &BigInt, scale: u32) -> f64 {
    // shift down to ~60 significant bits first to stay in f64 range
    let extra = v.bits().saturating_sub(60) as u32;
    let head = (v >> extra).to_f64().unwrap_or(f64::NAN);
    head * 2f64.powi(extra as i32 - scale as i32)
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo_f64(), self.hi_f64())
    }
}

fn ceil_div_u(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Enclosure of `atanh(a / b)` for `0 <= a / b <= 1/3`, as scaled integers
/// at `scale` bits.
fn atanh_scaled(a: &BigUint, b: &BigUint, scale: u32) -> (BigUint, BigUint) {
    debug_assert!(BigUint::from(3u32) * a <= *b);
    if a.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let shifted = a << scale;
    let mut pow_lo = &shifted / b;
    let mut pow_hi = ceil_div_u(&shifted, b);
    // Odd powers advance by z^2. For small a, b multiply by a^2 / b^2
    // directly; otherwise by a fixed-point enclosure of z^2.
    let small = b.bits() <= 64;
    let (step_num, step_den) = (a * a, b * b);
    let one = BigUint::one() << scale;
    let (z2_lo, z2_hi) = if small {
        (BigUint::zero(), BigUint::zero())
    } else {
        (&pow_lo * &pow_lo / &one, ceil_div_u(&(&pow_hi * &pow_hi), &one))
    };

    let mut sum_lo = BigUint::zero();
    let mut sum_hi = BigUint::zero();
    let mut odd: u64 = 1;
    loop {
        let d = BigUint::from(odd);
        sum_lo += &pow_lo / &d;
        sum_hi += ceil_div_u(&pow_hi, &d);
        if small {
            pow_lo = &pow_lo * &step_num / &step_den;
            pow_hi = ceil_div_u(&(&pow_hi * &step_num), &step_den);
        } else {
            pow_lo = &pow_lo * &z2_lo / &one;
            pow_hi = ceil_div_u(&(&pow_hi * &z2_hi), &one);
        }
        odd += 2;
        if pow_hi <= BigUint::one() {
            break;
        }
    }
    // remaining terms sum to at most z^(2k+1) / (1 - z^2) <= 9/8 ulp < 2 ulp
    sum_hi += 2u32;
    (sum_lo, sum_hi)
}

fn ln2_cache() -> &'static Mutex<HashMap<u32, (BigUint, BigUint)>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, (BigUint, BigUint)>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Scaled enclosure of ln 2 = 2 atanh(1/3).
fn ln2_scaled(scale: u32) -> (BigUint, BigUint) {
    if let Some(hit) = ln2_cache().lock().expect("ln2 cache poisoned").get(&scale) {
        return hit.clone();
    }
    let (lo, hi) = atanh_scaled(&BigUint::one(), &BigUint::from(3u32), scale);
    let v = (lo << 1u32, hi << 1u32);
    ln2_cache()
        .lock()
        .expect("ln2 cache poisoned")
        .insert(scale, v.clone());
    v
}

fn guard_bits(binary_exponent: u64) -> u32 {
    24 + (64 - binary_exponent.leading_zeros())
}

/// Enclosure of `ln x` for an arbitrary-size positive integer.
pub fn ln_natural_interval(x: &Natural, precision_bits: u32) -> Result<RealInterval> {
    if x.is_zero() {
        return Err(Error::Domain("ln of zero".into()));
    }
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::Domain(format!(
            "precision_bits must be at least {MIN_PRECISION_BITS}, got {precision_bits}"
        )));
    }
    let x = x.as_biguint();
    let e = x.bits() - 1;
    if e == 0 {
        return Ok(RealInterval::zero(precision_bits));
    }
    // x = 2^e * y with 1 <= y < 2, ln y = 2 atanh((x - 2^e) / (x + 2^e))
    let scale = precision_bits + guard_bits(e);
    let base = BigUint::one() << e;
    let (l2_lo, l2_hi) = ln2_scaled(scale);
    let (t_lo, t_hi) = atanh_scaled(&(x - &base), &(x + &base), scale);
    let lo = l2_lo * e + (t_lo << 1u32);
    let hi = l2_hi * e + (t_hi << 1u32);
    let wide = RealInterval {
        lo: BigInt::from(lo),
        hi: BigInt::from(hi),
        scale,
    };
    Ok(wide.rescale(precision_bits))
}

/// Enclosure of `ln x`.
pub fn ln_interval(x: u64, precision_bits: u32) -> Result<RealInterval> {
    if x == 0 {
        return Err(Error::Domain("ln of zero".into()));
    }
    ln_natural_interval(&Natural::from(x), precision_bits)
}

/// Enclosure of ln 2.
pub fn ln2_interval(precision_bits: u32) -> Result<RealInterval> {
    ln_interval(2, precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Parse a decimal literal into `(num, den)`.
    fn decimal(s: &str) -> (BigInt, BigInt) {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        (num, BigInt::from(10u32).pow(frac.len() as u32))
    }

    /// True when the interval meets the oracle window `[v - 1e-40, v + 1e-40]`.
    fn meets_oracle(iv: &RealInterval, oracle: &str) -> bool {
        let (num, den) = decimal(oracle);
        let eps_den = BigInt::from(10u32).pow(40);
        let lo = RealInterval::from_rational(&(&num * &eps_den - &den), &(&den * &eps_den), 300);
        let hi = RealInterval::from_rational(&(&num * &eps_den + &den), &(&den * &eps_den), 300);
        iv.overlaps(&RealInterval::from_scaled(
            lo.scaled_endpoints().0.clone(),
            hi.scaled_endpoints().1.clone(),
            300,
        ))
    }

    // 45-digit reference values from an independent multiprecision library.
    const LN2: &str = "0.693147180559945309417232121458176568075500134";
    const LN73: &str = "4.290459441148391129092108857438542570904752844";
    const LN210: &str = "5.347107530717468680518589435050069641885676776";
    const LN1000003: &str = "13.815513557959774113107928478154785124106921359";

    #[test]
    fn ln_one_is_exact_zero() {
        assert_eq!(ln_interval(1, 64).unwrap(), RealInterval::zero(64));
    }

    #[test]
    fn ln_zero_is_domain_error() {
        assert!(matches!(ln_interval(0, 64), Err(Error::Domain(_))));
        assert!(matches!(ln_interval(5, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn ln_contains_oracle_values() {
        for bits in [16, 64, 128, 256, 1024] {
            assert!(meets_oracle(&ln_interval(2, bits).unwrap(), LN2), "ln 2 @ {bits}");
            assert!(meets_oracle(&ln_interval(73, bits).unwrap(), LN73), "ln 73 @ {bits}");
            assert!(meets_oracle(&ln_interval(210, bits).unwrap(), LN210), "ln 210 @ {bits}");
            assert!(
                meets_oracle(&ln_interval(1_000_003, bits).unwrap(), LN1000003),
                "ln 1000003 @ {bits}"
            );
        }
    }

    #[test]
    fn ln_width_shrinks_with_precision() {
        for x in [2u64, 3, 73, 257, 17_389, u64::MAX] {
            let mut prev: Option<f64> = None;
            for bits in [64u32, 128, 256] {
                let iv = ln_interval(x, bits).unwrap();
                let (w, s) = iv.width_scaled();
                // width <= 2^-(bits/2)
                assert!(w << (bits / 2) <= BigInt::one() << s, "x={x} bits={bits}");
                if let Some(p) = prev {
                    assert!(iv.width_f64() <= p);
                }
                prev = Some(iv.width_f64());
            }
        }
    }

    #[test]
    fn ln_of_power_of_two_is_multiple_of_ln2() {
        let l2 = ln_interval(2, 128).unwrap();
        let l1024 = ln_interval(1024, 128).unwrap();
        assert!(l1024.overlaps(&l2.mul_int(&big(10))));
    }

    #[test]
    fn ln_natural_handles_huge_inputs() {
        // ln(2^5000 * 3) = 5000 ln 2 + ln 3
        let x = &Natural::pow(2, 5000) * 3;
        let iv = ln_natural_interval(&x, 64).unwrap();
        let expect = 5000.0 * std::f64::consts::LN_2 + 3f64.ln();
        assert!(iv.lo_f64() <= expect + 1e-9 && expect - 1e-9 <= iv.hi_f64());
        assert!(iv.width_f64() < 1e-15);
    }

    #[test]
    fn rational_comparisons() {
        let third = RealInterval::from_rational(&big(1), &big(3), 64);
        assert_eq!(third.cmp_rational(&big(1), &big(4)), Some(Ordering::Greater));
        assert_eq!(third.cmp_rational(&big(1), &big(2)), Some(Ordering::Less));
        assert_eq!(third.cmp_rational(&big(1), &big(3)), None);
        let half = RealInterval::from_rational(&big(1), &big(2), 64);
        assert_eq!(half.cmp_rational(&big(2), &big(4)), Some(Ordering::Equal));
        assert!(third.contains_rational(&big(1), &big(3)));
    }

    #[test]
    fn negative_scalars_swap_endpoints() {
        let iv = RealInterval::from_rational(&big(1), &big(3), 32);
        let n = iv.mul_rational(&big(-3), &big(1));
        assert!(n.contains_rational(&big(-1), &big(1)));
        let m = iv.mul_int(&big(-6));
        assert!(m.contains_rational(&big(-2), &big(1)));
        assert_eq!(iv.neg().sign(), Some(Ordering::Less));
    }

    #[test]
    fn reciprocal_encloses() {
        let iv = ln_interval(149, 64).unwrap();
        let r = iv.recip().unwrap();
        let v = 1.0 / 149f64.ln();
        assert!(r.lo_f64() <= v + 1e-15 && v - 1e-15 <= r.hi_f64());
        assert!(RealInterval::zero(64).recip().is_err());
    }

    #[test]
    fn floor_decimal_never_rounds_up() {
        let v = ln_interval(73, 64).unwrap().mul_int(&big(12));
        assert_eq!(v.floor_decimal(1), "51.4");
        assert_eq!(v.floor_decimal(3), "51.485");
        let neg = RealInterval::from_rational(&big(-1), &big(20), 64);
        assert_eq!(neg.floor_decimal(1), "-0.1");
        assert_eq!(RealInterval::zero(64).floor_decimal(1), "0.0");
    }

    #[test]
    fn format_fixed_pads() {
        assert_eq!(format_fixed(&big(511), 1), "51.1");
        assert_eq!(format_fixed(&big(7), 2), "0.07");
        assert_eq!(format_fixed(&big(-7), 1), "-0.7");
        assert_eq!(format_fixed(&big(42), 0), "42");
    }
}
