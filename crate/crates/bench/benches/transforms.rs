use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use helmsym::{dst_forward, dst_forward_direct};
use helmsym_bench::noisy_function;

fn bench_dst(c: &mut Criterion) {
    let mut group = c.benchmark_group("dst_forward");
    for n in [256usize, 1024, 4096] {
        let g = noisy_function(n, 42);
        group.bench_with_input(BenchmarkId::new("dispatch", n), &g, |b, g| {
            b.iter(|| dst_forward(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("direct", n), &g, |b, g| {
            b.iter(|| dst_forward_direct(black_box(g)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dst);
criterion_main!(benches);
