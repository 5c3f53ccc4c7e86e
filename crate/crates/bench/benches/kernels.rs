use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nogo_cool::feasibility::haar_bound_search;
use nogo_cool::linalg::{eig_hermitian, evolve, BipartiteDims};
use nogo_cool_bench::{demo_state, seeded_haar};

fn bench_eig(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    for nb in [2usize, 8, 32] {
        let rho = demo_state(nb);
        group.bench_with_input(BenchmarkId::from_parameter(2 * nb), &rho, |bch, rho| {
            bch.iter(|| eig_hermitian(rho.elements()).unwrap())
        });
    }
    group.finish();
}

fn bench_evolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve");
    for nb in [2usize, 8, 32] {
        let rho = demo_state(nb);
        let u = seeded_haar(2 * nb, 42);
        group.bench_with_input(BenchmarkId::from_parameter(2 * nb), &(rho, u), |bch, (rho, u)| {
            bch.iter(|| evolve(rho, u).unwrap())
        });
    }
    group.finish();
}

fn bench_bound_search(c: &mut Criterion) {
    let rho = demo_state(2);
    let dims = BipartiteDims::new(2, 2).unwrap();
    c.bench_function("haar_bound_search_100", |bch| {
        bch.iter(|| haar_bound_search(&rho, dims, 100, 7).unwrap())
    });
}

criterion_group!(benches, bench_eig, bench_evolve, bench_bound_search);
criterion_main!(benches);
