use criterion::{black_box, criterion_group, criterion_main, Criterion};
use icolor_core::generators::{complete, complete_bipartite, complete_multipartite};
use icolor_core::{bounds, find_continuous_use, find_interval_t, SearchBudget};

fn search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);

    let k34 = complete_bipartite(3, 4).unwrap();
    group.bench_function("find_interval_t/K34/6", |b| {
        b.iter(|| find_interval_t(black_box(&k34), 6, &budget).unwrap())
    });
    let k114 = complete_multipartite(&[1, 1, 4]).unwrap();
    group.bench_function("bounds/K114", |b| b.iter(|| bounds(black_box(&k114), &budget).unwrap()));
    group.bench_function("find_continuous_use/K114", |b| {
        b.iter(|| find_continuous_use(black_box(&k114), &budget).unwrap())
    });
    let k5 = complete(5).unwrap();
    group.bench_function("bounds/K5", |b| b.iter(|| bounds(black_box(&k5), &budget).unwrap()));
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
