use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision non-negative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    /// `base^exp` by square-and-multiply.
    pub fn pow(base: u64, exp: u64) -> Self {
        let mut result = BigUint::one();
        let mut square = BigUint::from(base);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result *= &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Natural(result)
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }
}

/// Total order that looks at bit lengths before comparing limbs.
pub fn compare_naturals(lhs: &Natural, rhs: &Natural) -> std::cmp::Ordering {
    lhs.bits().cmp(&rhs.bits()).then_with(|| lhs.0.cmp(&rhs.0))
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl Mul<u64> for &Natural {
    type Output = Natural;
    fn mul(self, rhs: u64) -> Natural {
        Natural(&self.0 * rhs)
    }
}

impl Mul for &Natural {
    type Output = Natural;
    fn mul(self, rhs: &Natural) -> Natural {
        Natural(&self.0 * &rhs.0)
    }
}

impl MulAssign<u64> for Natural {
    fn mul_assign(&mut self, rhs: u64) {
        self.0 *= rhs;
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid natural number literal: {0:?}")]
pub struct ParseNaturalError(String);

impl FromStr for Natural {
    type Err = ParseNaturalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseNaturalError(s.to_owned()));
        }
        BigUint::from_str(s)
            .map(Natural)
            .map_err(|_| ParseNaturalError(s.to_owned()))
    }
}

impl From<Natural> for String {
    fn from(n: Natural) -> String {
        n.to_string()
    }
}

impl TryFrom<String> for Natural {
    type Error = ParseNaturalError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
