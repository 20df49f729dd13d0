//! Hot-path timings: quadrature construction, the two transform
//! directions, scalar-product routes, and trajectory shooting.

use bargmann_core::bargmann::BargmannFunction;
use bargmann_core::conjugate::{
    forward_line_integral, inverse_mellin, inverse_phase_space, to_conjugate, MellinContour,
};
use bargmann_core::numerics::{gauss_laguerre_rule, phase_space_integrate, PhaseSpaceGrid};
use bargmann_core::overlap::{inner_conjugate_double, inner_conjugate_line};
use bargmann_core::semiclassical::{shoot_bargmann, WeylHamiltonian};
use bargmann_core::states::{coherent_state, FockCoefficients};
use bargmann_core::Complex64;
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn test_state(n: usize) -> FockCoefficients {
    coherent_state(cx(0.6, -0.3), n)
}

fn bench_quadrature(c: &mut Criterion) {
    c.bench_function("gauss_laguerre_rule/64", |b| {
        b.iter(|| gauss_laguerre_rule(black_box(64)).unwrap())
    });
    let grid = PhaseSpaceGrid::standard();
    c.bench_function("phase_space_integrate/standard", |b| {
        b.iter(|| phase_space_integrate(black_box(&grid), |z| (z.conj() * z).exp() * z.norm()))
    });
}

fn bench_transforms(c: &mut Criterion) {
    let state = test_state(32);
    let psi = BargmannFunction::new(state.clone());
    let rule = gauss_laguerre_rule(64).unwrap();
    let w = cx(2.5, 0.7);
    c.bench_function("forward_line_integral/n32", |b| {
        b.iter(|| forward_line_integral(black_box(&psi), black_box(w), &rule).unwrap())
    });

    let f = to_conjugate(&state);
    let zs = cx(0.4, -0.2);
    c.bench_function("inverse_phase_space/n32", |b| {
        b.iter(|| inverse_phase_space(black_box(&f), black_box(zs)))
    });
    let contour = MellinContour::automatic(&f, zs).unwrap();
    c.bench_function("inverse_mellin/n32", |b| {
        b.iter(|| inverse_mellin(black_box(&f), black_box(zs), &contour).unwrap())
    });
}

fn bench_overlaps(c: &mut Criterion) {
    let fa = to_conjugate(&test_state(24));
    let fb = to_conjugate(&coherent_state(cx(-0.2, 0.5), 24));
    c.bench_function("inner_conjugate_double/n24", |b| {
        b.iter(|| inner_conjugate_double(black_box(&fa), black_box(&fb)))
    });
    c.bench_function("inner_conjugate_line/n24", |b| {
        b.iter(|| inner_conjugate_line(black_box(&fa), black_box(&fb), 24, 64).unwrap())
    });
}

fn bench_shooting(c: &mut Criterion) {
    let h = WeylHamiltonian::quadratic(1.0, 0.3, 0.3, 1.0);
    c.bench_function("shoot_bargmann/quadratic", |b| {
        b.iter_batched(
            || (cx(0.4, 0.0), cx(0.6, 0.1)),
            |(zi, zfs)| shoot_bargmann(black_box(&h), zi, zfs, 1.0, zfs).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_quadrature,
    bench_transforms,
    bench_overlaps,
    bench_shooting
);
criterion_main!(benches);
