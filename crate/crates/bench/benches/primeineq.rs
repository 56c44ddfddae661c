use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use primeineq::exactcmp::ln_interval;
use primeineq::{scan_family, Comparator, InequalityId, Params, PrimeTable};
use primeineq_bench::verifier;

fn sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    for limit in [20_000u64, 1_000_000] {
        group.bench_with_input(BenchmarkId::from_parameter(limit), &limit, |b, &limit| {
            b.iter(|| PrimeTable::build(black_box(limit), 0).unwrap())
        });
    }
    group.finish();
}

fn ln(c: &mut Criterion) {
    let mut group = c.benchmark_group("ln_interval");
    for bits in [64u32, 256, 4096] {
        group.bench_with_input(BenchmarkId::from_parameter(bits), &bits, |b, &bits| {
            b.iter(|| ln_interval(black_box(17_389), bits).unwrap())
        });
    }
    group.finish();
}

fn compare(c: &mut Criterion) {
    let cmp = Comparator::default();
    c.bench_function("compare_power_power/separated", |b| {
        b.iter(|| cmp.compare_power_power(black_box(17_389), 15_000, 2, 17_389).unwrap())
    });
    c.bench_function("compare_power_power/equal", |b| {
        b.iter(|| cmp.compare_power_power(black_box(4), 15, 8, 10).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for id in [InequalityId::Theorem1, InequalityId::Corollary1, InequalityId::Corollary2] {
        let mut v = verifier();
        group.bench_function(id.as_str(), |b| {
            b.iter(|| scan_family(&mut v, id, &Params::new(), 1, 2000).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sieve, ln, compare, scans);
criterion_main!(benches);
