use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quadgauss::classifier::{
    classify, classify_odd_f, enumerate, EnumerateOptions, Filter, OddFOptions,
};
use quadgauss::stickelberger::profile;

fn single_pairs(c: &mut Criterion) {
    c.bench_function("classify 840 173", |b| {
        b.iter(|| classify(black_box(840), black_box(173)).unwrap())
    });
    c.bench_function("profile 1000 17", |b| {
        b.iter(|| profile(black_box(1000), black_box(17)).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("quadratic h>2, m <= 300", |b| {
        b.iter(|| {
            enumerate(
                3,
                300,
                EnumerateOptions {
                    filter: Filter::Quadratic,
                    min_h: 3,
                },
            )
            .unwrap()
        })
    });
    g.bench_function("odd f = 5", |b| {
        b.iter(|| classify_odd_f(5, OddFOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, single_pairs, sweeps);
criterion_main!(benches);
