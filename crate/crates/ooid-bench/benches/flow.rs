use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use ooid_core::flow::{residual, step, FlowConfig, FlowState};
use ooid_core::inverse::recover;
use ooid_core::nonlocal::{solve_steady, NonlocalParams};

fn bench_flow(c: &mut Criterion) {
    let np = NonlocalParams::new(0.2, 0.1).unwrap();
    let shape = solve_steady(&np, 512).unwrap();
    let state = FlowState::from_shape(&shape, 256).unwrap();
    let cfg = FlowConfig::default();
    c.bench_function("residual_256_markers", |b| {
        b.iter(|| residual(black_box(&state), &np).unwrap())
    });
    c.bench_function("step_256_markers", |b| {
        b.iter(|| step(black_box(&state), &np, &cfg).unwrap())
    });
}

fn bench_recover(c: &mut Criterion) {
    let np = NonlocalParams::new(0.2, 0.1).unwrap();
    let shape = solve_steady(&np, 512).unwrap();
    let pts = shape.points_xy();
    c.bench_function("recover_2044_points", |b| {
        b.iter(|| recover(black_box(&pts)).unwrap())
    });
}

criterion_group!(benches, bench_flow, bench_recover);
criterion_main!(benches);
