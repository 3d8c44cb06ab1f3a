use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qtspin::{
    evolve_exact, evolve_rk4, herm_eigvals, propagator, run_audit, AuditTolerances, CouplingKind,
    ModelParams, Temperature, DEFAULT_RK4_SUBSTEPS,
};
use qtspin_bench::{default_grid, figure_setup};

fn linalg(c: &mut Criterion) {
    let (h, _) = figure_setup(CouplingKind::Heisenberg);
    c.bench_function("herm_eigvals 4x4", |b| {
        b.iter(|| herm_eigvals(black_box(&h)))
    });
    c.bench_function("propagator 4x4", |b| {
        b.iter(|| propagator(black_box(&h), 78.5))
    });
}

fn evolution(c: &mut Criterion) {
    let grid = default_grid();
    let mut group = c.benchmark_group("evolve");
    group.sample_size(10);
    for coupling in [CouplingKind::Ising, CouplingKind::Heisenberg] {
        let (h, rho0) = figure_setup(coupling);
        group.bench_function(format!("exact {coupling}"), |b| {
            b.iter(|| evolve_exact(&h, &rho0, &grid))
        });
        group.bench_function(format!("rk4 {coupling}"), |b| {
            b.iter(|| evolve_rk4(&h, &rho0, &grid, DEFAULT_RK4_SUBSTEPS))
        });
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let grid = default_grid();
    let p = ModelParams::figure_params(CouplingKind::Heisenberg);
    let mut group = c.benchmark_group("audit");
    group.sample_size(10);
    group.bench_function("heisenberg T=1", |b| {
        b.iter(|| {
            run_audit(
                &p,
                Temperature::Finite(1.0),
                &grid,
                AuditTolerances::default(),
            )
        })
    });
    group.finish();
}

criterion_group!(benches, linalg, evolution, audit);
criterion_main!(benches);
