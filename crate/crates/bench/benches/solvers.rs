// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use blockade_bench::{baseline_point, detuning_grid, mode_coupled_point};
use blockade_core::{
    g2_closed_form, liouvillian, solve_params, solve_weak_drive, spectrum, FockSpace, SystemParams,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn assembly(c: &mut Criterion) {
    let space = FockSpace::new(4, 4).unwrap();
    let p = mode_coupled_point();
    c.bench_function("liouvillian/cutoff4", |b| {
        b.iter(|| liouvillian(black_box(&p), space).unwrap())
    });
}

fn steady_state(c: &mut Criterion) {
    let mut group = c.benchmark_group("steady_state");
    group.sample_size(10);
    let p = mode_coupled_point();
    for cutoff in [2, 3, 4] {
        let space = FockSpace::new(cutoff, cutoff).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(cutoff), &space, |b, &space| {
            b.iter(|| solve_params(black_box(&p), space).unwrap())
        });
    }
    group.finish();
}

fn weak_drive(c: &mut Criterion) {
    let p = mode_coupled_point().with_gamma_p(0.0);
    c.bench_function("weak_drive/linear_system", |b| {
        b.iter(|| solve_weak_drive(black_box(&p)).unwrap())
    });
    c.bench_function("weak_drive/closed_form", |b| {
        b.iter(|| g2_closed_form(black_box(&p)).unwrap())
    });
}

fn mean_field(c: &mut Criterion) {
    let p = SystemParams {
        j_coupling: 240.0,
        ..baseline_point().with_g(0.0)
    };
    let grid = detuning_grid(401);
    c.bench_function("spectrum/401", |b| {
        b.iter(|| spectrum(black_box(&p), &grid).unwrap())
    });
}

criterion_group!(benches, assembly, steady_state, weak_drive, mean_field);
criterion_main!(benches);
