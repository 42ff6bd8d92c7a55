use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gaussforge_bench::{earring_witnesses, torus_knots};
use gaussforge_core::conway::nabla_m;
use gaussforge_core::theta::{evaluate_formula, ThetaSpec};
use gaussforge_core::{lambda_m, Bound};

fn conway(c: &mut Criterion) {
    let mut group = c.benchmark_group("nabla");
    for (n, knot) in torus_knots(11) {
        group.bench_with_input(BenchmarkId::new("torus", n), &knot, |b, k| {
            b.iter(|| nabla_m(k, Bound::Finite(2), 4).unwrap())
        });
    }
    for (m, witness) in earring_witnesses() {
        group.bench_with_input(BenchmarkId::new("earring", m), &witness, |b, d| {
            b.iter(|| nabla_m(d, Bound::Finite(m as u32), 4).unwrap())
        });
    }
    group.finish();
}

fn theta(c: &mut Criterion) {
    let spec = ThetaSpec::new(2, &[(2, 1), (1, 2)]).unwrap();
    let mut group = c.benchmark_group("theta_formula");
    for (m, witness) in earring_witnesses() {
        let labelled = lambda_m(&witness, Bound::Finite(2));
        group.bench_with_input(BenchmarkId::from_parameter(m), &labelled, |b, l| {
            b.iter(|| evaluate_formula(&spec, l).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, conway, theta);
criterion_main!(benches);
