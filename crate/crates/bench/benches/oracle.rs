use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polqpdf::fock::{displacement, kernel};
use polqpdf::qpdf::{qpdf_coherent_closed, qpdf_trace, sweep_phase};
use polqpdf::{Complex64, Method, OrderParameter};
use polqpdf_bench::{beta, coherent_state, gamma, section};

fn bench_displacement(c: &mut Criterion) {
    let mut group = c.benchmark_group("displacement");
    let xi = Complex64::new(1.7, -2.1);
    for dim in [30, 60, 120] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, &dim| {
            b.iter(|| displacement(black_box(xi), dim).unwrap())
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    let alpha = Complex64::new(0.9, 1.4);
    for dim in [30, 60, 120] {
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |b, &dim| {
            b.iter(|| kernel(black_box(alpha), OrderParameter::WIGNER, dim).unwrap())
        });
    }
    group.finish();
}

fn bench_trace(c: &mut Criterion) {
    let mut group = c.benchmark_group("qpdf_trace");
    let (ax, ay) = (Complex64::new(0.5, -0.2), Complex64::new(-1.0, 0.7));
    for dim in [40, 60, 80] {
        let state = coherent_state(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &state, |b, st| {
            b.iter(|| qpdf_trace(st, black_box(ax), black_box(ay), OrderParameter::WIGNER).unwrap())
        });
    }
    group.finish();
}

fn bench_closed(c: &mut Criterion) {
    let (ax, ay) = (Complex64::new(0.5, -0.2), Complex64::new(-1.0, 0.7));
    c.bench_function("qpdf_coherent_closed", |b| {
        b.iter(|| {
            qpdf_coherent_closed(
                beta(),
                gamma(),
                black_box(ax),
                black_box(ay),
                OrderParameter::WIGNER,
            )
        })
    });
    let params = section();
    c.bench_function("sweep_phase/closed_form/512", |b| {
        b.iter(|| sweep_phase(&params, black_box(5.0), 512, Method::ClosedForm, None).unwrap())
    });
}

criterion_group!(
    benches,
    bench_displacement,
    bench_kernel,
    bench_trace,
    bench_closed
);
criterion_main!(benches);
