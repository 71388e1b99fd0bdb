//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock budgets.

// `ensure!` negates its condition, so a NaN comparison counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::panic;
use std::time::{Duration, Instant};

use common::{close, dense, dist, order, rng, size, sparse};
use rand::Rng;
use renyi_core::capacity::{minimax_redundancy_with, ml_capacity_input, shtarkov, CapacityOptions, Channel};
use renyi_core::discretize::{refine_to_convergence, DensitySpec};
use renyi_core::divergence::{chi_squared, hellinger_sq};
use renyi_core::hypothesis::{chernoff, pinsker_check, tilted, tradeoff_objective, tradeoff_value};
use renyi_core::parametric::{
    fisher_taylor_ratio, gaussian_dichotomy, gaussian_renyi, FisherFamily, GaussianParams, SequenceSpec,
    SeriesCertificate, Verdict,
};
use renyi_core::projection::{alpha_mixture, alpha_project, pythagorean_gap, ProjectionOptions};
use renyi_core::{par, pushforward, renyi_divergence, DiscreteDist, ExtendedReal, Order, StochasticMatrix};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn d(p: &DiscreteDist, q: &DiscreteDist, a: f64) -> ExtendedReal {
    renyi_divergence(p, q, order(a)).unwrap()
}

fn conditional_constancy() -> Outcome {
    let q = DiscreteDist::uniform(4).unwrap();
    let p = q.conditioned_on(&[0, 1]).unwrap();
    for a in [0.0, 0.25, 0.5, 1.0, 2.0, 10.0, f64::INFINITY] {
        let v = d(&p, &q, a).value();
        ensure!((v - 2f64.ln()).abs() <= 1e-12, "alpha {a}: {v}");
    }
    Ok(())
}

fn gaussian_vs_discretization() -> Outcome {
    let p = GaussianParams::new(0.0, 1.0).unwrap();
    let q = GaussianParams::new(1.0, 1.0).unwrap();
    for a in [0.5, 1.0, 2.0] {
        let closed = gaussian_renyi(&p, &q, order(a)).unwrap().value();
        ensure!((closed - a / 2.0).abs() <= 1e-12, "closed form at {a}: {closed}");
        let r = refine_to_convergence(&DensitySpec::gaussian(p), &DensitySpec::gaussian(q), order(a), 1e-4)
            .map_err(|e| e.to_string())?;
        ensure!(r.converged, "refinement at {a} did not converge");
        let est = r.estimate.value();
        ensure!((est - a / 2.0).abs() <= 1e-3, "refinement at {a}: {est}");
    }
    Ok(())
}

fn capacity_example() -> Outcome {
    let ch = Channel::new(vec![dist(&[0.5, 0.0, 0.5]), dist(&[0.0, 0.5, 0.5])]).unwrap();
    for a in [0.5, 1.0, 2.0] {
        let r = minimax_redundancy_with(&ch, order(a), CapacityOptions::default()).map_err(|e| e.to_string())?;
        let q = 1.0 / (2.0 + 2f64.powf(1.0 / a));
        let got = r.q_opt.probs();
        ensure!(r.converged, "alpha {a}: duality gap {}", r.duality_gap);
        ensure!(
            (got[0] - q).abs() <= 1e-6 && (got[1] - q).abs() <= 1e-6 && (got[2] - (1.0 - 2.0 * q)).abs() <= 1e-6,
            "alpha {a}: Qopt {got:?}, expected q = {q}"
        );
    }
    let r = minimax_redundancy_with(&ch, Order::INFINITY, CapacityOptions::default()).map_err(|e| e.to_string())?;
    for x in r.q_opt.probs() {
        ensure!((x - 1.0 / 3.0).abs() <= 1e-9, "alpha inf: Qopt {:?}", r.q_opt.probs());
    }
    ensure!((r.value - 1.5f64.ln()).abs() <= 1e-9, "alpha inf: R = {}", r.value);
    Ok(())
}

fn shtarkov_binomial() -> Outcome {
    let rows = [0.0, 0.5, 1.0]
        .iter()
        .map(|&t: &f64| dist(&[(1.0 - t) * (1.0 - t), 2.0 * t * (1.0 - t), t * t]))
        .collect();
    let ch = Channel::new(rows).unwrap();
    let s = shtarkov(&ch);
    let expected = [0.4, 0.2, 0.4];
    for (x, e) in s.dist.probs().iter().zip(expected) {
        ensure!((x - e).abs() <= 1e-12, "S = {:?}", s.dist.probs());
    }
    ensure!((s.value - 2.5f64.ln()).abs() <= 1e-12, "R = {}", s.value);
    let pi = ml_capacity_input(&ch);
    for (x, e) in pi.iter().zip(expected) {
        ensure!((x - e).abs() <= 1e-12, "pi = {pi:?}");
    }
    Ok(())
}

fn chernoff_bernoulli() -> Outcome {
    let r = chernoff(&dist(&[0.8, 0.2]), &dist(&[0.2, 0.8]), 1e-10).map_err(|e| e.to_string())?;
    ensure!((r.alpha_star - 0.5).abs() <= 1e-6, "alpha* = {}", r.alpha_star);
    ensure!((r.value + 0.8f64.ln()).abs() <= 1e-8, "value = {}", r.value);
    ensure!(
        (r.alpha_star - r.golden_alpha).abs() <= 1e-6 && (r.value - r.golden_value).abs() <= 1e-6,
        "bisection ({}, {}) vs golden ({}, {})",
        r.alpha_star,
        r.value,
        r.golden_alpha,
        r.golden_value
    );
    Ok(())
}

const TRIALS: u64 = 1000;

fn property_suites() -> Outcome {
    let grid = [0.0, 0.1, 0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0, f64::INFINITY];
    for seed in 0..TRIALS {
        let mut g = rng(seed);
        let n = size(&mut g);
        let (p, q) = (sparse(&mut g, n), sparse(&mut g, n));
        let values: Vec<ExtendedReal> = grid.iter().map(|&a| d(&p, &q, a)).collect();
        for w in values.windows(2) {
            ensure!(
                w[0].value() <= w[1].value() + 1e-12 * w[1].value().abs().max(1.0),
                "monotonicity, seed {seed}: {values:?}"
            );
        }
    }
    for seed in 0..TRIALS {
        let mut g = rng(10_000 + seed);
        let n = size(&mut g);
        let k = size(&mut g);
        let (p, q) = (sparse(&mut g, n), sparse(&mut g, n));
        let w = StochasticMatrix::random(&mut g, n, k);
        let (pw, qw) = (pushforward(&w, &p).unwrap(), pushforward(&w, &q).unwrap());
        for a in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            let (before, after) = (d(&p, &q, a), d(&pw, &qw, a));
            ensure!(after.value() <= before.value() + 1e-12 * before.value().abs().max(1.0), "DPI, seed {seed}, alpha {a}: {after} > {before}");
        }
    }
    for seed in 0..TRIALS {
        let mut g = rng(20_000 + seed);
        let n = size(&mut g);
        let (p, q) = (dense(&mut g, n), dense(&mut g, n));
        for a in [0.1, 0.3, 0.5, 0.7, 0.9, -0.5, -1.5] {
            let lhs = d(&p, &q, a);
            let rhs = d(&q, &p, 1.0 - a).scale(a / (1.0 - a));
            ensure!(close(lhs, rhs, 1e-12), "skew symmetry, seed {seed}, alpha {a}: {lhs} vs {rhs}");
        }
    }
    for seed in 0..TRIALS {
        let mut g = rng(30_000 + seed);
        let n = size(&mut g);
        let (p, q) = (sparse(&mut g, n), sparse(&mut g, n));
        for i in 1..=10 {
            let c = pinsker_check(&p, &q, order(i as f64 / 10.0)).unwrap();
            ensure!(c.holds, "Pinsker, seed {seed}, alpha {}: {} > {}", i as f64 / 10.0, c.bound, c.divergence);
        }
    }
    for seed in 0..TRIALS {
        let mut g = rng(40_000 + seed);
        let (n1, n2) = (size(&mut g), size(&mut g));
        let (p1, q1, p2, q2) = (sparse(&mut g, n1), sparse(&mut g, n1), sparse(&mut g, n2), sparse(&mut g, n2));
        let (pp, qq) = (p1.product(&p2), q1.product(&q2));
        for a in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            let joint = d(&pp, &qq, a);
            let sum = d(&p1, &q1, a).checked_add(d(&p2, &q2, a)).unwrap();
            ensure!(close(joint, sum, 1e-12), "additivity, seed {seed}, alpha {a}: {joint} vs {sum}");
        }
    }
    for seed in 0..TRIALS {
        let mut g = rng(50_000 + seed);
        let n = size(&mut g);
        let (p, q) = (dense(&mut g, n), dense(&mut g, n));
        let a: f64 = g.random_range(0.01..0.99);
        let b: f64 = g.random_range(a..0.99);
        let (da, db) = (d(&p, &q, a).value(), d(&p, &q, b).value());
        let lower = a / b * (1.0 - b) / (1.0 - a) * db;
        ensure!(lower <= da + 1e-12 && da <= db + 1e-12, "order equivalence, seed {seed}: {lower} <= {da} <= {db}");
    }
    for seed in 0..TRIALS {
        let mut g = rng(60_000 + seed);
        let n = size(&mut g);
        let (p, q) = (sparse(&mut g, n), dense(&mut g, n));
        let half = d(&p, &q, 0.5).value();
        let via_hel = -2.0 * (1.0 - hellinger_sq(&p, &q).unwrap() / 2.0).ln();
        ensure!((half - via_hel).abs() <= 1e-12, "Hellinger relation, seed {seed}: {half} vs {via_hel}");
        let two = d(&p, &q, 2.0).value();
        let via_chi = chi_squared(&p, &q).unwrap().value().ln_1p();
        ensure!((two - via_chi).abs() <= 1e-12, "chi-squared relation, seed {seed}: {two} vs {via_chi}");
    }
    Ok(())
}

const PYTHAGORAS_INSTANCES: usize = 200;

/// Smallest `D_α(P_λ‖Q)` over a uniform grid on the weight simplex.
fn grid_minimum(gens: &[DiscreteDist], q: &DiscreteDist, a: f64) -> f64 {
    let eval = |w: &[f64]| d(alpha_mixture(gens, w, order(a)).unwrap().dist(), q, a).value();
    let mut best = f64::INFINITY;
    if gens.len() == 2 {
        for i in 0..=1000 {
            let t = i as f64 / 1000.0;
            best = best.min(eval(&[t, 1.0 - t]));
        }
    } else {
        let steps = 200;
        for i in 0..=steps {
            for j in 0..=steps - i {
                let (x, y) = (i as f64 / steps as f64, j as f64 / steps as f64);
                best = best.min(eval(&[x, y, (1.0 - x - y).max(0.0)]));
            }
        }
    }
    best
}

fn pythagorean() -> Outcome {
    let opts = ProjectionOptions { tol: 1e-10, ..ProjectionOptions::default() };
    let outcomes = par::map_indexed(PYTHAGORAS_INSTANCES, |i| -> Outcome {
        let mut g = rng(70_000 + i as u64);
        let n = g.random_range(2..=6);
        let m = g.random_range(2..=3);
        let gens: Vec<DiscreteDist> = (0..m).map(|_| dense(&mut g, n)).collect();
        let q = dense(&mut g, n);
        for a in [0.5, 1.0, 2.0] {
            let r = alpha_project(&q, &gens, order(a), opts).map_err(|e| e.to_string())?;
            let grid = grid_minimum(&gens, &q, a);
            ensure!(r.value.value() <= grid + 1e-9, "instance {i}, alpha {a}: solver {} above grid {grid}", r.value);
            let mut members: Vec<DiscreteDist> = gens.clone();
            for _ in 0..3 {
                let w = DiscreteDist::random(&mut g, m).probs();
                members.push(alpha_mixture(&gens, &w, order(a)).unwrap().dist().clone());
            }
            for p in &members {
                let gap = pythagorean_gap(p, &r, &q, order(a)).unwrap();
                ensure!(gap >= -1e-8, "instance {i}, alpha {a}: gap {gap}");
            }
        }
        Ok(())
    });
    outcomes.into_iter().collect()
}

fn tradeoff_identity() -> Outcome {
    for seed in 0..100 {
        let mut g = rng(80_000 + seed);
        let n = size(&mut g);
        let (p, q) = (dense(&mut g, n), dense(&mut g, n));
        let candidates: Vec<DiscreteDist> = (0..2000).map(|_| DiscreteDist::random(&mut g, n)).collect();
        for a in [0.3, 0.7, 2.0] {
            let value = tradeoff_value(&p, &q, order(a)).unwrap();
            let pa = tilted(&p, &q, order(a)).unwrap();
            let at_tilt = tradeoff_objective(&pa, &p, &q, order(a)).unwrap();
            ensure!((value - at_tilt).abs() <= 1e-10, "seed {seed}, alpha {a}: {value} vs {at_tilt}");
            for r in &candidates {
                let obj = tradeoff_objective(r, &p, &q, order(a)).unwrap();
                ensure!(value <= obj + 1e-6, "seed {seed}, alpha {a}: candidate objective {obj} below {value}");
            }
        }
    }
    Ok(())
}

fn concavity() -> Outcome {
    for seed in 0..100 {
        let mut g = rng(90_000 + seed);
        let n = size(&mut g);
        let (p, q) = (dense(&mut g, n), dense(&mut g, n));
        let curve: Vec<f64> = (1..=1000)
            .map(|i| tradeoff_value(&p, &q, order(i as f64 / 1001.0)).unwrap())
            .collect();
        for (i, w) in curve.windows(3).enumerate() {
            let second = w[2] - 2.0 * w[1] + w[0];
            ensure!(second <= 1e-10, "seed {seed}, grid point {}: second difference {second}", i + 1);
        }
    }
    Ok(())
}

fn counterexamples() -> Outcome {
    let q = dist(&[1e-4, 1.0 - 1e-4]);
    let (p0, p1) = (dist(&[0.1, 0.9]), dist(&[0.9, 0.1]));
    let mid = dist(&[0.5, 0.5]);
    let average = 0.5 * (d(&p0, &q, 2.0).value() + d(&p1, &q, 2.0).value());
    let at_mid = d(&mid, &q, 2.0).value();
    ensure!(at_mid > average, "convexity not violated: {at_mid} <= {average}");
    let (p, q, r) = (dist(&[0.0, 1.0]), dist(&[0.5, 0.5]), dist(&[1.0, 0.0]));
    let (pq, qr, pr) = (d(&p, &q, 0.5), d(&q, &r, 0.5), d(&p, &r, 0.5));
    ensure!((pq.value() - 2f64.ln()).abs() <= 1e-12 && (qr.value() - 2f64.ln()).abs() <= 1e-12, "sides {pq}, {qr}");
    ensure!(pr.is_pos_infinite(), "third side {pr}");
    ensure!(pr.value().sqrt() > pq.value().sqrt() + qr.value().sqrt(), "triangle inequality holds");
    Ok(())
}

fn fisher_limit() -> Outcome {
    for a in [0.5, 1.0, 2.0] {
        let r = fisher_taylor_ratio(FisherFamily::GaussianLocation { sigma: 1.0 }, 0.0, 1e-3, order(a)).unwrap();
        ensure!((r - a / 2.0).abs() <= 1e-4, "alpha {a}: {r}");
    }
    Ok(())
}

fn dichotomy() -> Outcome {
    let eq = SequenceSpec::power_gap(1.0, 1.0, 10_000, SeriesCertificate::PowerUpper { coef: 1.0, exponent: 2.0 })
        .unwrap();
    let r = gaussian_dichotomy(&eq, Order::ONE).unwrap();
    ensure!(r.verdict() == Verdict::Equivalent && r.series.tail_bound.is_some(), "1/n gaps: {r:?}");
    let sing = SequenceSpec::power_gap(1.0, 0.5, 10_000, SeriesCertificate::PowerLower { coef: 1.0, exponent: 1.0 })
        .unwrap();
    let r = gaussian_dichotomy(&sing, Order::ONE).unwrap();
    ensure!(r.verdict() == Verdict::Singular && r.series.certificate_holds, "1/sqrt(n) gaps: {r:?}");
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "conditional-distribution constancy", budget: secs(1), run: conditional_constancy },
        Criterion { id: 2, name: "Gaussian closed form vs discretization", budget: secs(30), run: gaussian_vs_discretization },
        Criterion { id: 3, name: "two-row capacity example", budget: secs(10), run: capacity_example },
        Criterion { id: 4, name: "Shtarkov binomial", budget: secs(1), run: shtarkov_binomial },
        Criterion { id: 5, name: "Chernoff symmetric Bernoulli", budget: secs(1), run: chernoff_bernoulli },
        Criterion { id: 6, name: "property suites", budget: secs(60), run: property_suites },
        Criterion { id: 7, name: "Pythagorean inequality", budget: secs(120), run: pythagorean },
        Criterion { id: 8, name: "trade-off identity", budget: secs(60), run: tradeoff_identity },
        Criterion { id: 9, name: "concavity of (1-a)D_a", budget: secs(30), run: concavity },
        Criterion { id: 10, name: "counterexample regressions", budget: secs(1), run: counterexamples },
        Criterion { id: 11, name: "Fisher limit", budget: secs(1), run: fisher_limit },
        Criterion { id: 12, name: "dichotomy classifier", budget: secs(1), run: dichotomy },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > c.budget {
                Err(format!("over budget of {:?}", c.budget))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {:>8.3}s  {}", c.id, elapsed.as_secs_f64(), c.name),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {:>8.3}s  {}: {why}", c.id, elapsed.as_secs_f64(), c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
