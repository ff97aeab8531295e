use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hofq_bench::SEQUENCE_SIZES;
use hofq_core::sequence::{NaiveQ, SequenceEngine};

fn table(c: &mut Criterion) {
    let engine = SequenceEngine::default();
    let mut group = c.benchmark_group("table");
    for n in SEQUENCE_SIZES {
        group.throughput(Throughput::Elements(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| engine.table(n).unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let engine = SequenceEngine::default();
    c.bench_function("scan/1000000", |b| {
        b.iter(|| engine.scan(1_000_000, 100_000).unwrap())
    });
}

fn naive(c: &mut Criterion) {
    c.bench_function("naive/10000", |b| {
        b.iter(|| NaiveQ::new(&[1, 1]).eval(10_000))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = table, scan, naive
}
criterion_main!(benches);
