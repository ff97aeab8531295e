use criterion::{criterion_group, criterion_main, Criterion};
use hofq_bench::{model, model_without_self_loop};
use hofq_core::model::Mode;
use hofq_core::solver::{audit_insensitive, paths_to_core, propagate_supports};
use hofq_core::verify::{checkall, EdgeScope};

fn verifier(c: &mut Criterion) {
    let m = model();
    let mutated = model_without_self_loop();
    c.bench_function("checkall/published", |b| {
        b.iter(|| checkall(&m, EdgeScope::Published).unwrap())
    });
    c.bench_function("checkall/full", |b| b.iter(|| checkall(&m, EdgeScope::Full).unwrap()));
    c.bench_function("checkall/no_self_loop", |b| {
        b.iter(|| checkall(&mutated, EdgeScope::Published).unwrap())
    });
}

fn solver(c: &mut Criterion) {
    let m = model();
    c.bench_function("propagate/A", |b| b.iter(|| propagate_supports(&m, Mode::A).unwrap()));
    c.bench_function("paths/A", |b| b.iter(|| paths_to_core(&m, Mode::A).unwrap()));
    c.bench_function("audit/A", |b| b.iter(|| audit_insensitive(&m, Mode::A)));
}

criterion_group!(benches, verifier, solver);
criterion_main!(benches);
