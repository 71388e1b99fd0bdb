use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use renyi_core::capacity::{minimax_redundancy, Channel};
use renyi_core::discretize::DensitySpec;
use renyi_core::par::{parallel, sequential};
use renyi_core::parametric::GaussianParams;
use renyi_core::projection::{alpha_project, ProjectionOptions};
use renyi_core::{renyi_divergence, DiscreteDist, Order};

type Map = fn(usize, &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>;

fn seq(n: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
    sequential::map_indexed(n, f)
}

fn par(n: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
    parallel::map_indexed(n, f)
}

const MODES: [(&str, Map); 2] = [("sequential", seq), ("parallel", par)];

fn pairs(count: usize, n: usize) -> Vec<(DiscreteDist, DiscreteDist)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count).map(|_| (DiscreteDist::random(&mut rng, n), DiscreteDist::random(&mut rng, n))).collect()
}

/// One divergence per (pair, order), the shape of the property suites.
fn property_sweep(c: &mut Criterion) {
    let orders: Vec<Order> = [0.0, 0.5, 1.0, 2.0, f64::INFINITY].iter().map(|&a| Order::new(a).unwrap()).collect();
    let mut group = c.benchmark_group("property_sweep");
    for count in [1_000, 10_000] {
        let data = pairs(count, 8);
        let job = |i: usize| {
            let (p, q) = &data[i / orders.len()];
            renyi_divergence(p, q, orders[i % orders.len()]).unwrap().value()
        };
        for (name, map) in MODES {
            group.bench_with_input(BenchmarkId::new(name, count), &count, |b, _| {
                b.iter(|| black_box(map(data.len() * orders.len(), &job)))
            });
        }
    }
    group.finish();
}

/// Density evaluation at quadrature nodes, as done before level partitioning.
fn node_evaluation(c: &mut Criterion) {
    let p = DensitySpec::gaussian(GaussianParams::standard());
    let q = DensitySpec::gaussian(GaussianParams::new(1.0, 2.0).unwrap());
    let mut group = c.benchmark_group("node_evaluation");
    for nodes in [20_000, 160_000] {
        let h = 12.0 / nodes as f64;
        let job = |i: usize| {
            let x = -6.0 + (i as f64 + 0.5) * h;
            let (a, b) = (p.density(x), q.density(x));
            a * (a / b).ln()
        };
        for (name, map) in MODES {
            group.bench_with_input(BenchmarkId::new(name, nodes), &nodes, |b, &n| b.iter(|| black_box(map(n, &job))));
        }
    }
    group.finish();
}

/// Independent projections, one per seed, like the multi-start driver.
fn projection_starts(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = DiscreteDist::random(&mut rng, 12);
    let gens: Vec<DiscreteDist> = (0..4).map(|_| DiscreteDist::random(&mut rng, 12)).collect();
    let job = |i: usize| {
        let opts = ProjectionOptions { starts: 1, seed: i as u64, ..ProjectionOptions::default() };
        alpha_project(&q, &gens, Order::TWO, opts).unwrap().value.value()
    };
    let mut group = c.benchmark_group("projection_starts");
    group.sample_size(20);
    for (name, map) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(map(32, &job))));
    }
    group.finish();
}

/// Minimax redundancy over a grid of orders for one channel.
fn redundancy_orders(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ch = Channel::new((0..4).map(|_| DiscreteDist::random(&mut rng, 6)).collect()).unwrap();
    let alphas: Vec<Order> = (1..=8).map(|i| Order::new(0.25 * i as f64).unwrap()).collect();
    let job = |i: usize| minimax_redundancy(&ch, alphas[i], 1e-8).unwrap().value;
    let mut group = c.benchmark_group("redundancy_orders");
    group.sample_size(10);
    for (name, map) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(map(alphas.len(), &job))));
    }
    group.finish();
}

criterion_group!(benches, property_sweep, node_evaluation, projection_starts, redundancy_orders);
criterion_main!(benches);
