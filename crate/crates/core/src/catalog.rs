//! Checkable predicates for the prime-product inequality catalog.
//!
//! Every check evaluates one instance at a given index and returns a
//! [`CheckRecord`]. Inequalities between integers go through the two-tier
//! [`Comparator`] (always decisive); forms containing a logarithm use
//! interval refinement and may come back `Undecided` at the precision cap.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcmp::{
    decide_int_vs_int_times_ln2, decide_rational_vs_rational_ln, format_fixed, ln_interval,
    refine, Comparator, Comparison, Method, Natural, Outcome, Verdict,
};
use crate::primes::PrimeTable;

/// Named integer parameters of a check (`n`, `r`, `k`, `x`, ...).
pub type Params = BTreeMap<String, u64>;

/// Lemma-style upper constant for π(x) ln x / x, as 125506 / 100000.
pub const ROSSER_UPPER_NUM: i64 = 125_506;
pub const ROSSER_UPPER_DEN: u64 = 100_000;

macro_rules! inequality_ids {
    ($($variant:ident => $name:literal, $index:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum InequalityId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl InequalityId {
            pub const ALL: &'static [InequalityId] = &[$(InequalityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(InequalityId::$variant => $name,)*
                }
            }

            /// Name of the scanned index variable for this family.
            pub fn index_name(self) -> &'static str {
                match self {
                    $(InequalityId::$variant => $index,)*
                }
            }
        }

        impl FromStr for InequalityId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(InequalityId::$variant),)*
                    _ => Err(Error::Domain(format!("unknown inequality id {s:?}"))),
                }
            }
        }
    };
}

inequality_ids! {
    BonsePosa => "bonse_posa", "n";
    Theorem1 => "theorem1", "r";
    Corollary1 => "corollary1", "r";
    Corollary2 => "corollary2", "r";
    Panaitopol => "panaitopol", "n";
    MamangakisV1 => "mamangakis_v1", "n";
    MamangakisV2 => "mamangakis_v2", "n";
    Reich => "reich", "n";
    SandorV1 => "sandor_v1", "n";
    SandorV2 => "sandor_v2", "n";
    SandorV3 => "sandor_v3", "n";
    Betts => "betts", "k";
    RosserUpper => "rosser_upper", "x";
    RosserLower => "rosser_lower", "x";
    PosaChain => "posa_chain", "n";
    ProofHelperA => "proof_helper_a", "r";
    ProofHelperB => "proof_helper_b", "r";
}

impl InequalityId {
    /// Extra parameters that stay fixed while the index is scanned.
    pub fn fixed_param_names(self) -> &'static [&'static str] {
        match self {
            InequalityId::BonsePosa | InequalityId::Reich => &["k"],
            _ => &[],
        }
    }

    /// Smallest admissible index.
    pub fn min_index(self) -> u64 {
        match self {
            InequalityId::MamangakisV2 | InequalityId::SandorV3 => 3,
            InequalityId::SandorV1
            | InequalityId::SandorV2
            | InequalityId::Betts
            | InequalityId::RosserUpper
            | InequalityId::RosserLower
            | InequalityId::ProofHelperA
            | InequalityId::ProofHelperB => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Order of the left-hand side against the right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Relation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Greater,
        }
    }
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Less => "less",
            Relation::Equal => "equal",
            Relation::Greater => "greater",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "less" => Ok(Relation::Less),
            "equal" => Ok(Relation::Equal),
            "greater" => Ok(Relation::Greater),
            _ => Err(Error::Domain(format!("unknown relation {s:?}"))),
        }
    }
}

/// Verdict on one inequality instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: InequalityId,
    pub params: Params,
    pub verdict: Outcome,
    pub method: Method,
    pub precision_used: u32,
    pub lhs_bits: u64,
    pub rhs_bits: u64,
    /// Exact order of the two sides, when it was determined. Lets a single
    /// record show that the reverse strict inequality holds.
    pub relation: Option<Relation>,
}

impl CheckRecord {
    fn new(id: InequalityId, params: Params, verdict: Verdict) -> Self {
        CheckRecord {
            id,
            params,
            verdict: verdict.outcome,
            method: verdict.method,
            precision_used: verdict.precision_used,
            lhs_bits: 0,
            rhs_bits: 0,
            relation: None,
        }
    }

    fn from_comparison(id: InequalityId, params: Params, cmp: &Comparison, allow_equal: bool) -> Self {
        CheckRecord {
            lhs_bits: cmp.lhs_bits,
            rhs_bits: cmp.rhs_bits,
            relation: cmp.ordering.map(Relation::from),
            ..CheckRecord::new(id, params, cmp.verdict_greater(allow_equal))
        }
    }

    fn exact_sides(id: InequalityId, params: Params, ordering: Ordering, holds: bool, bits: (u64, u64)) -> Self {
        CheckRecord {
            lhs_bits: bits.0,
            rhs_bits: bits.1,
            relation: Some(ordering.into()),
            ..CheckRecord::new(id, params, Verdict::exact(holds))
        }
    }

    /// True when the reverse strict inequality `lhs < rhs` is known to hold.
    pub fn reverse_strict_holds(&self) -> bool {
        self.relation == Some(Relation::Less)
    }
}

/// One row of the r = 20..=54 verification table:
/// `(r − π(r)) ln p_{r+1} > 0.7 p_{r+1} > p_{r+1} ln 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: u64,
    pub multiplier: u64,
    pub prime: u64,
    /// One-decimal floor of `multiplier * ln(prime)`, never above the true value.
    pub certified_lower: String,
    /// `0.7 * prime`, exact.
    pub rhs_07: String,
    pub chain_ok: bool,
    /// Printed multiplier and lower bound this row is checked against.
    pub reference_multiplier: u64,
    pub reference_lower: String,
    /// Set when the computed row disagrees with the reference row.
    pub discrepancy: Option<String>,
}

/// Reference rows `(r, multiplier, lower bound in tenths)`.
///
/// The row for r = 43 carries multiplier 30 although 43 − π(43) = 29; its
/// bound 152.6 matches 29 ln 193.
pub const REFERENCE_ROWS: [(u64, u64, u64); 35] = [
    (20, 12, 514),
    (21, 13, 568),
    (22, 14, 618),
    (23, 14, 628),
    (24, 15, 686),
    (25, 16, 738),
    (26, 17, 787),
    (27, 18, 841),
    (28, 19, 891),
    (29, 19, 898),
    (30, 20, 968),
    (31, 20, 975),
    (32, 21, 1033),
    (33, 22, 1085),
    (34, 23, 1150),
    (35, 24, 1204),
    (36, 25, 1264),
    (37, 25, 1273),
    (38, 26, 1330),
    (39, 27, 1391),
    (40, 28, 1452),
    (41, 28, 1455),
    (42, 29, 1523),
    (43, 30, 1526),
    (44, 30, 1584),
    (45, 31, 1640),
    (46, 32, 1712),
    (47, 32, 1730),
    (48, 33, 1790),
    (49, 34, 1847),
    (50, 35, 1907),
    (51, 36, 1971),
    (52, 37, 2029),
    (53, 37, 2044),
    (54, 38, 2108),
];

pub const TABLE_FIRST_ROW: u64 = 20;
pub const TABLE_LAST_ROW: u64 = 54;

const TABLE_ROW_BITS: u32 = 128;

fn params(pairs: &[(&str, u64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_owned(), v)).collect()
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(what()))
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

/// Catalog checks over a borrowed prime table.
#[derive(Clone, Copy, Debug)]
pub struct Catalog<'t> {
    table: &'t PrimeTable,
    cmp: Comparator,
}

impl<'t> Catalog<'t> {
    pub fn new(table: &'t PrimeTable, cmp: Comparator) -> Self {
        Catalog { table, cmp }
    }

    pub fn table(&self) -> &'t PrimeTable {
        self.table
    }

    pub fn comparator(&self) -> Comparator {
        self.cmp
    }

    fn pi(&self, x: u64) -> Result<u64> {
        self.table.prime_count(x)
    }

    fn p(&self, n: u64) -> Result<u64> {
        self.table.nth_prime(n)
    }

    /// `primorial(n)` against `base^exp`, with the Chebyshev sum as the log hint.
    fn primorial_vs_power(&self, n: u64, base: u64, exp: u64) -> Result<Comparison> {
        let x = self.table.primorial(n)?;
        let table = self.table;
        let hint = move |bits: u32| {
            table
                .log_primorial_interval(n, bits)
                .expect("index checked by primorial()")
        };
        self.cmp.compare_natural_power(&x, base, exp, Some(&hint))
    }

    /// Dispatch by id. `fixed` must carry the family's fixed parameters.
    pub fn check(&self, id: InequalityId, index: u64, fixed: &Params) -> Result<CheckRecord> {
        let k = || -> Result<u64> {
            fixed
                .get("k")
                .copied()
                .ok_or_else(|| Error::Domain(format!("{id} needs parameter k")))
        };
        match id {
            InequalityId::BonsePosa => self.check_bonse_posa(index, k()?),
            InequalityId::Theorem1 => self.check_theorem1(index),
            InequalityId::Corollary1 => self.check_corollary1(index),
            InequalityId::Corollary2 => self.check_corollary2(index),
            InequalityId::Panaitopol => self.check_panaitopol(index),
            InequalityId::MamangakisV1 => self.check_mamangakis(index, 1),
            InequalityId::MamangakisV2 => self.check_mamangakis(index, 2),
            InequalityId::Reich => self.check_reich(index, k()?),
            InequalityId::SandorV1 => self.check_sandor(index, 1),
            InequalityId::SandorV2 => self.check_sandor(index, 2),
            InequalityId::SandorV3 => self.check_sandor(index, 3),
            InequalityId::Betts => self.check_betts(index),
            InequalityId::RosserUpper => self.check_rosser(index, RosserSide::Upper),
            InequalityId::RosserLower => self.check_rosser(index, RosserSide::Lower),
            InequalityId::PosaChain => self.check_posa_chain(index),
            InequalityId::ProofHelperA => self.check_proof_helper(index, ProofHelper::A),
            InequalityId::ProofHelperB => self.check_proof_helper(index, ProofHelper::B),
        }
    }

    /// `p_1 ⋯ p_n > p_{n+1}^k`.
    pub fn check_bonse_posa(&self, n: u64, k: u64) -> Result<CheckRecord> {
        require(n >= 1 && k >= 1, || format!("bonse_posa needs n >= 1 and k >= 1, got n={n} k={k}"))?;
        let c = self.primorial_vs_power(n, self.p(n + 1)?, k)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::BonsePosa,
            params(&[("n", n), ("k", k)]),
            &c,
            false,
        ))
    }

    /// `p_{r+1}^{r − π(r)} > 2^{p_{r+1}}`; below r = 20 the record's
    /// relation shows the reverse strict inequality.
    pub fn check_theorem1(&self, r: u64) -> Result<CheckRecord> {
        require(r >= 1, || "theorem1 needs r >= 1".into())?;
        let q = self.p(r + 1)?;
        let exponent = r - self.pi(r)?;
        let c = self.cmp.compare_power_power(q, exponent, 2, q)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::Theorem1,
            params(&[("r", r)]),
            &c,
            false,
        ))
    }

    /// `p_1 ⋯ p_r > 2^{p_{r+1}}`.
    pub fn check_corollary1(&self, r: u64) -> Result<CheckRecord> {
        require(r >= 1, || "corollary1 needs r >= 1".into())?;
        let c = self.primorial_vs_power(r, 2, self.p(r + 1)?)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::Corollary1,
            params(&[("r", r)]),
            &c,
            false,
        ))
    }

    /// `r − π(r) > (r + 1) ln 2`.
    pub fn check_corollary2(&self, r: u64) -> Result<CheckRecord> {
        require(r >= 1, || "corollary2 needs r >= 1".into())?;
        let m = (r - self.pi(r)?) as i64;
        let v = decide_int_vs_int_times_ln2(m, r + 1, self.cmp.max_bits);
        Ok(CheckRecord::new(InequalityId::Corollary2, params(&[("r", r)]), v))
    }

    /// `p_1 ⋯ p_n > p_{n+1}^{n − π(n)}`.
    pub fn check_panaitopol(&self, n: u64) -> Result<CheckRecord> {
        require(n >= 1, || "panaitopol needs n >= 1".into())?;
        let pi = self.pi(n)?;
        debug_assert!(pi <= n);
        let c = self.primorial_vs_power(n, self.p(n + 1)?, n - pi)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::Panaitopol,
            params(&[("n", n)]),
            &c,
            false,
        ))
    }

    /// Variant 1: `p_1 ⋯ p_n > p_{4n}`. Variant 2: `p_1 ⋯ p_{4n−9} > p_{4n}^4`.
    pub fn check_mamangakis(&self, n: u64, variant: u8) -> Result<CheckRecord> {
        let (id, c) = match variant {
            1 => {
                require(n >= 1, || "mamangakis_v1 needs n >= 1".into())?;
                (InequalityId::MamangakisV1, self.primorial_vs_power(n, self.p(4 * n)?, 1)?)
            }
            2 => {
                require(n >= 3, || "mamangakis_v2 needs n >= 3".into())?;
                (
                    InequalityId::MamangakisV2,
                    self.primorial_vs_power(4 * n - 9, self.p(4 * n)?, 4)?,
                )
            }
            v => return Err(Error::Domain(format!("mamangakis variant must be 1 or 2, got {v}"))),
        };
        Ok(CheckRecord::from_comparison(id, params(&[("n", n)]), &c, false))
    }

    /// `p_1 ⋯ p_n > p_{n+k}^2`.
    pub fn check_reich(&self, n: u64, k: u64) -> Result<CheckRecord> {
        require(n >= 1 && k >= 1, || format!("reich needs n >= 1 and k >= 1, got n={n} k={k}"))?;
        let c = self.primorial_vs_power(n, self.p(n + k)?, 2)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::Reich,
            params(&[("n", n), ("k", k)]),
            &c,
            false,
        ))
    }

    /// Non-strict inequalities, `[·]` is floor division:
    /// 1. `p_1 ⋯ p_n >= p_1 ⋯ p_{n−1} + p_n + p_{p_n − 2}`
    /// 2. `p_1 ⋯ p_n >= p_{n+5}^2 + p_{[n/2]}^2`
    /// 3. `p_1 ⋯ p_n >= p_{n+3}^3 + p_{[n/3]}^6`
    pub fn check_sandor(&self, n: u64, variant: u8) -> Result<CheckRecord> {
        let (id, rhs) = match variant {
            1 => {
                require(n >= 2, || "sandor_v1 needs n >= 2".into())?;
                let pn = self.p(n)?;
                let rhs = self.table.primorial(n - 1)?.into_biguint() + pn + self.p(pn - 2)?;
                (InequalityId::SandorV1, Natural::from(rhs))
            }
            2 => {
                require(n >= 2, || "sandor_v2 needs n >= 2".into())?;
                let rhs = Natural::pow(self.p(n + 5)?, 2).into_biguint()
                    + Natural::pow(self.p(n / 2)?, 2).into_biguint();
                (InequalityId::SandorV2, Natural::from(rhs))
            }
            3 => {
                require(n >= 3, || "sandor_v3 needs n >= 3".into())?;
                let rhs = Natural::pow(self.p(n + 3)?, 3).into_biguint()
                    + Natural::pow(self.p(n / 3)?, 6).into_biguint();
                (InequalityId::SandorV3, Natural::from(rhs))
            }
            v => return Err(Error::Domain(format!("sandor variant must be 1, 2 or 3, got {v}"))),
        };
        let lhs = self.table.primorial(n)?;
        let ord = crate::exactcmp::compare_naturals(&lhs, &rhs);
        Ok(CheckRecord::exact_sides(
            id,
            params(&[("n", n)]),
            ord,
            ord != Ordering::Less,
            (lhs.bits(), rhs.bits()),
        ))
    }

    /// `p_{k+1} − p_k < p_k (p_1 ⋯ p_{k−1} − p_k) / (p_{k+1} − p_k)`, checked
    /// as `(p_{k+1} − p_k)^2 < p_k (p_1 ⋯ p_{k−1} − p_k)` since the gap is
    /// positive.
    pub fn check_betts(&self, k: u64) -> Result<CheckRecord> {
        require(k >= 2, || "betts needs k >= 2".into())?;
        let pk = self.p(k)?;
        let gap = self.p(k + 1)? - pk;
        let lhs = big(gap) * big(gap);
        let prefix = BigInt::from(self.table.primorial(k - 1)?.into_biguint());
        let rhs = big(pk) * (prefix - big(pk));
        let ord = lhs.cmp(&rhs);
        Ok(CheckRecord::exact_sides(
            InequalityId::Betts,
            params(&[("k", k)]),
            ord,
            ord == Ordering::Less,
            (lhs.bits(), rhs.bits()),
        ))
    }

    /// Upper: `π(x) < 1.25506 x / ln x`. Lower: `π(x) > x / ln x`.
    /// Both are decided as `π(x) ln x` against a rational.
    pub fn check_rosser(&self, x: u64, side: RosserSide) -> Result<CheckRecord> {
        require(x >= 2, || "rosser bounds need x >= 2".into())?;
        let pi = self.pi(x)? as i64;
        let max = self.cmp.max_bits;
        let (id, verdict) = match side {
            RosserSide::Upper => {
                let over = decide_rational_vs_rational_ln(
                    pi,
                    1,
                    x,
                    ROSSER_UPPER_NUM * x as i64,
                    ROSSER_UPPER_DEN,
                    max,
                )?;
                // the claim is the negation of "π(x) ln x > bound"; equality is impossible
                let outcome = match over.outcome {
                    Outcome::Holds => Outcome::Fails,
                    Outcome::Fails => Outcome::Holds,
                    Outcome::Undecided => Outcome::Undecided,
                };
                (InequalityId::RosserUpper, Verdict { outcome, ..over })
            }
            RosserSide::Lower => (
                InequalityId::RosserLower,
                decide_rational_vs_rational_ln(pi, 1, x, x as i64, 1, max)?,
            ),
        };
        Ok(CheckRecord::new(id, params(&[("x", x)]), verdict))
    }

    /// `2^{p_{n+1}} > p_{n+1}^{n/2}`, squared to `2^{2 p_{n+1}} > p_{n+1}^n`.
    pub fn check_posa_chain(&self, n: u64) -> Result<CheckRecord> {
        require(n >= 1, || "posa_chain needs n >= 1".into())?;
        let q = self.p(n + 1)?;
        let c = self.cmp.compare_power_power(2, 2 * q, q, n)?;
        Ok(CheckRecord::from_comparison(
            InequalityId::PosaChain,
            params(&[("n", n)]),
            &c,
            false,
        ))
    }

    /// A: `0.3 r >= π(r) + 0.7`, exactly as `3r >= 10 π(r) + 7`.
    /// B: `12.5506 / ln r + 7 / r < 3`, by interval refinement.
    pub fn check_proof_helper(&self, r: u64, which: ProofHelper) -> Result<CheckRecord> {
        require(r >= 2, || "proof helpers need r >= 2".into())?;
        match which {
            ProofHelper::A => {
                let lhs = 3 * r;
                let rhs = 10 * self.pi(r)? + 7;
                Ok(CheckRecord::exact_sides(
                    InequalityId::ProofHelperA,
                    params(&[("r", r)]),
                    lhs.cmp(&rhs),
                    lhs >= rhs,
                    (u64::BITS as u64 - lhs.leading_zeros() as u64, u64::BITS as u64 - rhs.leading_zeros() as u64),
                ))
            }
            ProofHelper::B => {
                let (ordering, bits) = refine(self.cmp.start_bits, self.cmp.max_bits, |bits| {
                    let lhs = ln_interval(r, bits)
                        .expect("r >= 2")
                        .recip()
                        .expect("ln r > 0")
                        .mul_rational(&big(125_506), &big(10_000))
                        .add_rational(&big(7), &big(r));
                    lhs.cmp_rational(&big(3), &big(1))
                });
                let outcome = match ordering {
                    Some(Ordering::Less) => Outcome::Holds,
                    Some(_) => Outcome::Fails,
                    None => Outcome::Undecided,
                };
                let verdict = Verdict {
                    outcome,
                    method: Method::CertifiedInterval,
                    precision_used: bits,
                };
                Ok(CheckRecord::new(InequalityId::ProofHelperB, params(&[("r", r)]), verdict))
            }
        }
    }

    /// Reproduce one row of the r = 20..=54 table.
    pub fn table_row(&self, r: u64) -> Result<TableRow> {
        if !(TABLE_FIRST_ROW..=TABLE_LAST_ROW).contains(&r) {
            return Err(Error::Domain(format!(
                "table rows cover r = {TABLE_FIRST_ROW}..={TABLE_LAST_ROW}, got {r}"
            )));
        }
        let multiplier = r - self.pi(r)?;
        let prime = self.p(r + 1)?;
        let product = ln_interval(prime, TABLE_ROW_BITS)?.mul_int(&big(multiplier));
        let certified_lower = product.floor_decimal(1);
        let rhs_07 = format_fixed(&big(7 * prime), 1);

        let max = self.cmp.max_bits;
        let above_07 = decide_rational_vs_rational_ln(
            multiplier as i64,
            1,
            prime,
            7 * prime as i64,
            10,
            max,
        )?;
        // 0.7 > ln 2, i.e. ln 2 > 7/10 fails
        let link = decide_rational_vs_rational_ln(1, 1, 2, 7, 10, max)?;
        let chain_ok = above_07.outcome == Outcome::Holds && link.outcome == Outcome::Fails;

        let &(_, reference_multiplier, reference_tenths) = REFERENCE_ROWS
            .iter()
            .find(|row| row.0 == r)
            .expect("reference rows cover the table range");
        let reference_lower = format_fixed(&big(reference_tenths), 1);
        let discrepancy = (reference_multiplier != multiplier).then(|| {
            format!("reference multiplier {reference_multiplier} differs from computed {r} - pi({r}) = {multiplier}")
        });
        Ok(TableRow {
            r,
            multiplier,
            prime,
            certified_lower,
            rhs_07,
            chain_ok,
            reference_multiplier,
            reference_lower,
            discrepancy,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RosserSide {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofHelper {
    A,
    B,
}

/// Owns a prime table and grows it to cover each requested check.
#[derive(Clone, Debug)]
pub struct Verifier {
    table: PrimeTable,
    cmp: Comparator,
}

impl Verifier {
    pub fn new(cmp: Comparator) -> Result<Self> {
        Ok(Verifier {
            table: PrimeTable::build(100, 0)?,
            cmp,
        })
    }

    pub fn with_table(table: PrimeTable, cmp: Comparator) -> Self {
        Verifier { table, cmp }
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    pub fn catalog(&self) -> Catalog<'_> {
        Catalog::new(&self.table, self.cmp)
    }

    fn grow_to(&mut self, value: u64, index: u64) -> Result<()> {
        if value > self.table.limit_value() || index > self.table.count() {
            self.table = self.table.grow(value, index)?;
        }
        Ok(())
    }

    /// Grow the table so that `id` can be checked at every index up to `index`.
    pub fn ensure(&mut self, id: InequalityId, index: u64, fixed: &Params) -> Result<()> {
        let k = fixed.get("k").copied().unwrap_or(0);
        let n = index;
        // (largest prime index, largest π argument)
        let (need_index, need_value) = match id {
            InequalityId::BonsePosa | InequalityId::PosaChain | InequalityId::Corollary1 => (n + 1, 0),
            InequalityId::Theorem1 | InequalityId::Panaitopol => (n + 1, n),
            InequalityId::Corollary2
            | InequalityId::RosserUpper
            | InequalityId::RosserLower
            | InequalityId::ProofHelperA
            | InequalityId::ProofHelperB => (0, n),
            InequalityId::MamangakisV1 | InequalityId::MamangakisV2 => (4 * n, 0),
            InequalityId::Reich => (n + k, 0),
            InequalityId::SandorV1 => (n, 0),
            InequalityId::SandorV2 => (n + 5, 0),
            InequalityId::SandorV3 => (n + 3, 0),
            InequalityId::Betts => (n + 1, 0),
        };
        self.grow_to(need_value, need_index)?;
        if id == InequalityId::SandorV1 && n >= 1 {
            let pn = self.table.nth_prime(n)?;
            self.grow_to(0, pn.saturating_sub(2))?;
        }
        Ok(())
    }

    pub fn check(&mut self, id: InequalityId, index: u64, fixed: &Params) -> Result<CheckRecord> {
        self.ensure(id, index, fixed)?;
        self.catalog().check(id, index, fixed)
    }

    pub fn table_row(&mut self, r: u64) -> Result<TableRow> {
        self.grow_to(r, r + 1)?;
        self.catalog().table_row(r)
    }
}
