#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use renyi_core::{DiscreteDist, ExtendedReal, Order};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn order(a: f64) -> Order {
    Order::new(a).unwrap()
}

pub fn dist(v: &[f64]) -> DiscreteDist {
    DiscreteDist::from_probs(v).unwrap()
}

/// Flat-Dirichlet distribution with full support.
pub fn dense(rng: &mut ChaCha8Rng, n: usize) -> DiscreteDist {
    DiscreteDist::random(rng, n)
}

/// Dirichlet draw with each atom zeroed with probability 0.3, never all of them.
pub fn sparse(rng: &mut ChaCha8Rng, n: usize) -> DiscreteDist {
    let mut w = DiscreteDist::random(rng, n).probs();
    let keep = rng.random_range(0..n);
    for (i, v) in w.iter_mut().enumerate() {
        if i != keep && rng.random_bool(0.3) {
            *v = 0.0;
        }
    }
    DiscreteDist::from_weights(&w).unwrap()
}

pub fn size(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(2..=8)
}

/// `|a - b| ≤ tol`, or both the same infinity.
pub fn close(a: ExtendedReal, b: ExtendedReal, tol: f64) -> bool {
    if a.is_finite() && b.is_finite() {
        (a.value() - b.value()).abs() <= tol
    } else {
        a == b
    }
}
