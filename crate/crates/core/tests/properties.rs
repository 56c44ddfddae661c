use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use primeineq::exactcmp::{
    decide_int_vs_int_times_ln2, decide_rational_vs_rational_ln, ln_interval, ln_natural_interval,
};
use primeineq::{
    scan_records, Comparator, InequalityId, Natural, Outcome, Params, PrimeTable, Relation, Tier,
    Verifier,
};

fn table() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| PrimeTable::build(20_000, 0).unwrap())
}

/// f64 ln with a generous error window; independent of the series code.
fn float_window(x: u64) -> (BigInt, BigInt, u32) {
    let v = (x as f64).ln();
    let scale = 40;
    let f = 2f64.powi(scale as i32);
    (
        BigInt::from(((v - 1e-9) * f).floor() as i64),
        BigInt::from(((v + 1e-9) * f).ceil() as i64),
        scale,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ln_interval_contains_float_oracle(x in 1u64..10_000_000, bits in 16u32..600) {
        let iv = ln_interval(x, bits).unwrap();
        let (lo, hi, s) = float_window(x);
        let oracle = primeineq::RealInterval::from_scaled(lo, hi, s);
        prop_assert!(iv.overlaps(&oracle), "x={x} bits={bits} iv={iv}");
        prop_assert!(iv.width_f64() <= 2f64.powi(-(bits as i32) / 2));
    }

    #[test]
    fn ln_of_product_is_sum_of_lns(a in 2u64..100_000, b in 2u64..100_000) {
        let sum = ln_interval(a, 128).unwrap().add(&ln_interval(b, 128).unwrap());
        let direct = ln_natural_interval(&Natural::from(a * b), 128).unwrap();
        prop_assert!(sum.overlaps(&direct));
    }

    #[test]
    fn power_comparison_antisymmetric(a in 1u64..200, b in 0u64..200, c in 1u64..200, d in 0u64..200) {
        let cmp = Comparator::default();
        let fwd = cmp.compare_power_power(a, b, c, d).unwrap().ordering.unwrap();
        let rev = cmp.compare_power_power(c, d, a, b).unwrap().ordering.unwrap();
        prop_assert_eq!(fwd, rev.reverse());
    }

    #[test]
    fn tiers_agree(a in 1u64..500, b in 0u64..400, c in 1u64..500, d in 0u64..400) {
        let interval = Comparator::default().with_tier(Tier::IntervalOnly);
        let exact = Comparator::default().with_tier(Tier::ExactOnly);
        let e = exact.compare_power_power(a, b, c, d).unwrap().ordering;
        if let Some(o) = interval.compare_power_power(a, b, c, d).unwrap().ordering {
            prop_assert_eq!(Some(o), e);
        }
    }

    #[test]
    fn natural_power_tiers_agree(n in 1u64..300, c in 2u64..2000, d in 0u64..2000) {
        let x = table().primorial(n).unwrap();
        let hint = |bits: u32| table().log_primorial_interval(n, bits).unwrap();
        let auto = Comparator::default().compare_natural_power(&x, c, d, Some(&hint)).unwrap();
        let exact = Comparator::default()
            .with_tier(Tier::ExactOnly)
            .compare_natural_power(&x, c, d, None)
            .unwrap();
        prop_assert_eq!(auto.ordering, exact.ordering);
    }

    #[test]
    fn refinement_never_flips(p_num in -50i64..50, x in 2u64..5000, q_num in -100_000i64..100_000) {
        prop_assume!(p_num != 0);
        let mut decided: Option<Outcome> = None;
        for cap in [16u32, 32, 64, 128, 512] {
            let v = decide_rational_vs_rational_ln(p_num, 7, x, q_num, 1000, cap).unwrap();
            if v.outcome != Outcome::Undecided {
                if let Some(prev) = decided {
                    prop_assert_eq!(prev, v.outcome);
                }
                decided = Some(v.outcome);
            }
        }
    }

    #[test]
    fn int_vs_ln2_matches_float_far_from_ties(m in -1000i64..1000, k in 0u64..1500) {
        let f = k as f64 * std::f64::consts::LN_2;
        prop_assume!((m as f64 - f).abs() > 1e-6);
        let v = decide_int_vs_int_times_ln2(m, k, 4096);
        prop_assert_eq!(v.outcome, Outcome::from_bool(m as f64 > f));
    }

    #[test]
    fn prime_count_inverts_nth_prime(n in 1u64..2262) {
        let t = table();
        prop_assert_eq!(t.prime_count(t.nth_prime(n).unwrap()).unwrap(), n);
    }

    #[test]
    fn primorial_recurrence(n in 1u64..600) {
        let t = table();
        let prev = t.primorial(n - 1).unwrap();
        prop_assert_eq!(t.primorial(n).unwrap(), &prev * t.nth_prime(n).unwrap());
    }

    #[test]
    fn log_primorial_matches_direct_log(n in 0u64..400, bits in 32u32..300) {
        let t = table();
        let theta = t.log_primorial_interval(n, bits).unwrap();
        let direct = ln_natural_interval(&t.primorial(n).unwrap(), bits).unwrap();
        prop_assert!(theta.overlaps(&direct), "n={n} bits={bits}");
    }

    #[test]
    fn growth_is_consistent(v1 in 2u64..5000, extra in 0u64..50_000, i in 1u64..600) {
        let small = PrimeTable::build(v1, 0).unwrap();
        let big = small.grow(v1 + extra, 0).unwrap();
        prop_assert_eq!(&big.primes()[..small.primes().len()], small.primes());
        if i <= small.count() {
            prop_assert_eq!(small.nth_prime(i).unwrap(), big.nth_prime(i).unwrap());
            prop_assert_eq!(small.primorial(i).unwrap(), big.primorial(i).unwrap());
        }
        prop_assert_eq!(small.prime_count(v1).unwrap(), big.prime_count(v1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scan_restriction_is_local(from in 1u64..150, len in 0u64..150, cut_a in 0u64..150, cut_b in 0u64..150) {
        let to = from + len;
        let (a, b) = (from + cut_a.min(len), from + cut_b.min(len));
        let (a, b) = (a.min(b), a.max(b));
        let mut v = Verifier::new(Comparator::default()).unwrap();
        let fixed: Params = [("k".to_owned(), 4)].into_iter().collect();
        let wide = scan_records(&mut v, InequalityId::BonsePosa, &fixed, from, to).unwrap();
        let narrow = scan_records(&mut v, InequalityId::BonsePosa, &fixed, a, b).unwrap();
        prop_assert_eq!(&wide[(a - from) as usize..=(b - from) as usize], narrow.as_slice());
    }
}

#[test]
fn theorem1_never_equal() {
    let mut v = Verifier::new(Comparator::default()).unwrap();
    let recs = scan_records(&mut v, InequalityId::Theorem1, &Params::new(), 1, 2000).unwrap();
    assert!(recs.iter().all(|r| matches!(r.relation, Some(Relation::Less | Relation::Greater))));
}

#[test]
fn interval_and_exact_tiers_agree_on_catalog() {
    let table = PrimeTable::build(0, 600).unwrap();
    let ids = [
        InequalityId::Theorem1,
        InequalityId::Corollary1,
        InequalityId::Panaitopol,
        InequalityId::PosaChain,
        InequalityId::MamangakisV1,
    ];
    let auto = primeineq::Catalog::new(&table, Comparator::default());
    let exact = primeineq::Catalog::new(&table, Comparator::default().with_tier(Tier::ExactOnly));
    for id in ids {
        for n in 1..=140 {
            let a = auto.check(id, n, &Params::new()).unwrap();
            let e = exact.check(id, n, &Params::new()).unwrap();
            assert_eq!(a.verdict, e.verdict, "{id} at {n}");
            assert_eq!(a.relation, e.relation, "{id} at {n}");
        }
    }
    for k in 1..=8 {
        let fixed: Params = [("k".to_owned(), k)].into_iter().collect();
        for n in 1..=200 {
            for id in [InequalityId::BonsePosa, InequalityId::Reich] {
                let a = auto.check(id, n, &fixed).unwrap();
                let e = exact.check(id, n, &fixed).unwrap();
                assert_eq!(a.verdict, e.verdict, "{id} k={k} n={n}");
            }
        }
    }
}
