use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nccover::{lift_connection, twisted_descent, ConnectionForm, LocalSystem, TorusCover};

fn torus(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus_cover");
    group.sample_size(20);
    for (q, m, n) in [(4, 2, 1), (4, 2, 2), (6, 2, 3)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_m{m}_n{n}")), &(q, m, n), |b, &(q, m, n)| {
            b.iter(|| TorusCover::new(q, 1, m, n))
        });
    }
    group.finish();

    let conn = ConnectionForm::standard(0.8, -1.7);
    c.bench_function("curvature/standard", |b| b.iter(|| black_box(&conn).curvature_norm()));

    let mut group = c.benchmark_group("twisted_descent");
    group.sample_size(10);
    for (q, m, n) in [(4, 2, 2), (6, 2, 3)] {
        let cover = TorusCover::new(q, 1, m, n).expect("supported parameters");
        let lifted = lift_connection(&conn, &cover);
        let triv = LocalSystem::trivial(cover.group(), 4).expect("rank 4");
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_m{m}_n{n}")), &(), |b, _| {
            b.iter(|| twisted_descent(&cover, &triv, &lifted, 1e-9))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().without_plots();
    targets = torus
}
criterion_main!(benches);
