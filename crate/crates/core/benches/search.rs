use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ualg::gen::{random_idempotent_algebra, samples};
use ualg::subalg::all_subuniverses_with;
use ualg::{product_algebra, search_homs, Exec, FiniteAlgebra, SearchOptions, Signature};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn hom_search(c: &mut Criterion) {
    let z2 = Arc::new(samples::z(2));
    let z4 = Arc::new(samples::z(4));
    let p = product_algebra(&[z2, z4]).unwrap().algebra;
    let z12 = Arc::new(samples::z(12));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sig = Arc::new(Signature::new([("f", 2), ("g", 1)]).unwrap());
    let r7 = Arc::new(random_idempotent_algebra(&mut rng, sig, 7));
    let cases: [(&str, &Arc<FiniteAlgebra>, &Arc<FiniteAlgebra>); 3] = [
        ("Z2xZ4", &p, &p),
        ("Z12", &z12, &z12),
        ("random7", &r7, &r7),
    ];

    let mut group = c.benchmark_group("search_homs");
    for (name, a, b) in cases {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |bench, &exec| {
                let opts = SearchOptions::default().with_exec(exec);
                bench.iter(|| {
                    search_homs(black_box(a), black_box(b), &opts)
                        .unwrap()
                        .len()
                })
            });
        }
    }
    group.finish();
}

fn subuniverse_scan(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sig = Arc::new(Signature::new([("f", 2)]).unwrap());
    let a = Arc::new(random_idempotent_algebra(&mut rng, sig, 12));
    let z12 = Arc::new(samples::z(12));

    let mut group = c.benchmark_group("all_subuniverses");
    group.sample_size(20);
    for (name, alg) in [("Z12", &z12), ("random12", &a)] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |bench, &exec| {
                bench.iter(|| all_subuniverses_with(black_box(alg), exec).len())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, hom_search, subuniverse_scan);
criterion_main!(benches);
