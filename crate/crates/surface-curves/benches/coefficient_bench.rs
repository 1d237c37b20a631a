use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use farey_core::Slope;
use surface_curves::{builtin, intersection_number, torus_slope_coords, NormalCurve, PUNCTURED_TORUS};

fn torus_curve(p: i64, q: i64) -> NormalCurve {
    let t = builtin(PUNCTURED_TORUS).unwrap();
    NormalCurve::from_coords(&t, &torus_slope_coords(&Slope::new(p, q).unwrap())).unwrap()
}

fn bench_intersections(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus_intersection");
    for denom in [5u32, 20, 50] {
        let a = torus_curve(1, i64::from(denom));
        let b = torus_curve(i64::from(denom), 1);
        group.bench_with_input(BenchmarkId::from_parameter(denom), &denom, |bench, _| {
            bench.iter(|| intersection_number(&a, &b).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_intersections);
criterion_main!(benches);
