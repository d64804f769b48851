use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use linksim_core::architecture::ArchitectureKind;
use linksim_core::channel::{snr_linear, two_ray_path_loss, RadioLinkGeometry};
use linksim_core::evaluator::{default_combos, evaluate_all, evaluate_run, ComboId, EvalConfig};
use linksim_core::linktech::{capacity_fso, capacity_massive_mimo, FsoParams, MassiveMimoParams};
use linksim_core::scenario::sample_scenario;
use linksim_core::linktech::TechnologyKind;

fn bench_channel(c: &mut Criterion) {
    let geom = RadioLinkGeometry::new(2.6e9, 1019.4, 200.0, 2.0).unwrap();
    c.bench_function("two_ray_path_loss", |b| {
        b.iter(|| two_ray_path_loss(black_box(&geom)).unwrap())
    });
    c.bench_function("snr_linear", |b| {
        b.iter(|| snr_linear(black_box(20.0), black_box(109.0), 20e6, 5.0).unwrap())
    });
}

fn bench_capacity(c: &mut Criterion) {
    let mm = MassiveMimoParams::default();
    c.bench_function("capacity_massive_mimo", |b| {
        b.iter(|| capacity_massive_mimo(black_box(&mm), black_box(2.667)).unwrap())
    });
    let fso = FsoParams::default();
    c.bench_function("capacity_fso_50km", |b| {
        b.iter(|| capacity_fso(black_box(&fso), black_box(50_000.0)).unwrap())
    });
}

fn bench_engine(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    c.bench_function("sample_scenario", |b| {
        b.iter(|| sample_scenario(black_box(&cfg.scenario), black_box(7)).unwrap())
    });
    let combo = ComboId::new(TechnologyKind::Sub6Siso, ArchitectureKind::FlyingBs);
    c.bench_function("evaluate_run", |b| {
        b.iter(|| evaluate_run(black_box(&cfg), black_box(combo), black_box(7)).unwrap())
    });
    let mut small = cfg.clone();
    small.scenario.n_runs = 20;
    let combos = default_combos(false);
    c.bench_function("evaluate_all_12_combos_20_runs", |b| {
        b.iter(|| evaluate_all(black_box(&small), black_box(&combos)).unwrap())
    });
}

criterion_group!(channel, bench_channel);
criterion_group!(capacity, bench_capacity);
criterion_group!(engine, bench_engine);
criterion_main!(channel, capacity, engine);
