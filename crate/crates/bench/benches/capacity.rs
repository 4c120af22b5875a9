use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use skyplan_core::capacity::{ergodic_capacity, AnalyticOptions};
use skyplan_core::montecarlo::{mc_capacity, McOptions};
use skyplan_core::{Config, Scheme};

fn hbf_config(h: f64) -> Config {
    let mut cfg = Config::default();
    cfg.scenario.uav_altitude = h;
    cfg.radio.n_rf = 2;
    cfg.radio.n_beams = 2;
    cfg
}

fn capacity(c: &mut Criterion) {
    let mut group = c.benchmark_group("capacity");
    group.sample_size(10);

    let opts = AnalyticOptions::default();
    for h in [10.0, 30.0, 100.0] {
        let cfg = hbf_config(h);
        group.bench_function(format!("analytic hbf h={h}"), |b| {
            b.iter(|| ergodic_capacity(black_box(&cfg), Scheme::Hbf, &opts).unwrap())
        });
    }

    let cfg = hbf_config(30.0);
    let mc = McOptions {
        realizations: 10_000,
        seed: 1,
    };
    group.bench_function("monte carlo hbf h=30 1e4", |b| {
        b.iter(|| mc_capacity(black_box(&cfg), Scheme::Hbf, &mc).unwrap())
    });
    group.finish();
}

criterion_group!(benches, capacity);
criterion_main!(benches);
