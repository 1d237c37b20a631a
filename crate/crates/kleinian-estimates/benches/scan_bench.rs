use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kleinian_estimates::{short_slope_scan, short_slope_scan_seq, TraceSeed};

fn bench_scans(c: &mut Criterion) {
    let seed = TraceSeed::modular_torus();
    let mut group = c.benchmark_group("short_slope_scan");
    for depth in [10u32, 13, 16] {
        group.bench_with_input(BenchmarkId::new("parallel", depth), &depth, |b, &d| {
            b.iter(|| short_slope_scan(&seed, 6.0, d).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", depth), &depth, |b, &d| {
            b.iter(|| short_slope_scan_seq(&seed, 6.0, d).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_scans);
criterion_main!(benches);
