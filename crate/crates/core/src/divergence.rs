//! Rényi divergence of every order for finite distributions, together with
//! the companion divergences it is related to.
//!
//! All combinations happen in the log domain. The Hellinger integral
//! `Σ p^α q^(1-α)` is a log-sum-exp over the atoms whose contribution is
//! neither forced to zero nor to infinity by the conventions `0/0 = 0` and
//! `x/0 = inf` (see [`atom_term`]).

use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp_slice, ExtendedReal};
use crate::order::{Order, OrderClass};

/// Contribution of one atom to the Hellinger integral of a simple or negative order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomTerm {
    /// The atom contributes nothing.
    Zero,
    /// The atom makes the integral infinite.
    Infinite,
    /// `ln(p^α q^(1-α))`.
    Log(f64),
}

/// Convention table for `p^α q^(1-α)` at a single atom.
///
/// | atom          | `0 < α < 1` | `α > 1`    | `α < 0`    |
/// |---------------|-------------|------------|------------|
/// | `p = 0, q = 0`| 0           | 0          | 0          |
/// | `p > 0, q = 0`| 0           | inf        | 0          |
/// | `p = 0, q > 0`| 0           | 0          | inf        |
///
/// `alpha` must be finite, nonzero and different from 1.
pub fn atom_term(logp: f64, logq: f64, alpha: f64) -> AtomTerm {
    debug_assert!(alpha.is_finite() && alpha != 0.0 && alpha != 1.0);
    let p_pos = logp > f64::NEG_INFINITY;
    let q_pos = logq > f64::NEG_INFINITY;
    match (p_pos, q_pos) {
        (false, false) => AtomTerm::Zero,
        (true, true) => AtomTerm::Log(alpha * logp + (1.0 - alpha) * logq),
        (true, false) => {
            if alpha > 1.0 {
                AtomTerm::Infinite
            } else {
                AtomTerm::Zero
            }
        }
        (false, true) => {
            if alpha < 0.0 {
                AtomTerm::Infinite
            } else {
                AtomTerm::Zero
            }
        }
    }
}

/// `ln Σ p^α q^(1-α)` under the atom conventions; `+inf` if any atom is infinite.
pub fn log_hellinger_integral(p: &DiscreteDist, q: &DiscreteDist, alpha: f64) -> Result<f64> {
    p.same_alphabet(q)?;
    let mut logs = Vec::with_capacity(p.len());
    for (&lp, &lq) in p.log_probs().iter().zip(q.log_probs()) {
        match atom_term(lp, lq, alpha) {
            AtomTerm::Zero => {}
            AtomTerm::Infinite => return Ok(f64::INFINITY),
            AtomTerm::Log(v) => logs.push(v),
        }
    }
    Ok(log_sum_exp_slice(&logs))
}

/// `D_α(P‖Q)` in nats for any `α ∈ [-inf, inf]`.
pub fn renyi_divergence(p: &DiscreteDist, q: &DiscreteDist, alpha: Order) -> Result<ExtendedReal> {
    p.same_alphabet(q)?;
    if p == q {
        return Ok(ExtendedReal::ZERO);
    }
    let value = match alpha.class() {
        OrderClass::One => return kl_divergence(p, q),
        OrderClass::Zero => order_zero(p, q),
        OrderClass::Infinity => order_infinity(p, q),
        OrderClass::NegInfinity => -order_infinity(q, p),
        OrderClass::Simple => {
            let a = alpha.value();
            let log_h = log_hellinger_integral(p, q, a)?;
            // log_h = -inf only happens for a < 1 (mutually singular pair).
            let d = if log_h == f64::NEG_INFINITY {
                f64::INFINITY
            } else {
                log_h / (a - 1.0)
            };
            d.max(0.0)
        }
        OrderClass::Negative => {
            let a = alpha.value();
            let log_h = log_hellinger_integral(p, q, a)?;
            (log_h / (a - 1.0)).min(0.0)
        }
    };
    Ok(ExtendedReal::from_f64(value))
}

/// `-ln Q(p > 0)`.
fn order_zero(p: &DiscreteDist, q: &DiscreteDist) -> f64 {
    if q.support().all(|i| p.in_support(i)) {
        return 0.0;
    }
    let log_mass = q.log_mass_of(p.support());
    if log_mass == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        (-log_mass).max(0.0)
    }
}

/// `ln max_{p > 0} p/q`.
fn order_infinity(p: &DiscreteDist, q: &DiscreteDist) -> f64 {
    p.support()
        .map(|i| p.log_prob(i) - q.log_prob(i))
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0)
}

/// Kullback-Leibler divergence `Σ p ln(p/q)` with `0 ln(0/q) = 0` and `p ln(p/0) = inf`.
pub fn kl_divergence(p: &DiscreteDist, q: &DiscreteDist) -> Result<ExtendedReal> {
    p.same_alphabet(q)?;
    let mut sum = 0.0;
    for i in p.support() {
        let lq = q.log_prob(i);
        if lq == f64::NEG_INFINITY {
            return Ok(ExtendedReal::INFINITY);
        }
        let lp = p.log_prob(i);
        sum += lp.exp() * (lp - lq);
    }
    Ok(ExtendedReal::from_f64(sum.max(0.0)))
}

/// Squared Hellinger distance `Σ (√p - √q)²`, in `[0, 2]`.
pub fn hellinger_sq(p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    p.same_alphabet(q)?;
    Ok(p.log_probs()
        .iter()
        .zip(q.log_probs())
        .map(|(&lp, &lq)| {
            let d = (0.5 * lp).exp() - (0.5 * lq).exp();
            d * d
        })
        .sum::<f64>()
        .min(2.0))
}

/// χ² distance `Σ (p - q)²/q`, infinite when `P` puts mass where `Q` does not.
pub fn chi_squared(p: &DiscreteDist, q: &DiscreteDist) -> Result<ExtendedReal> {
    p.same_alphabet(q)?;
    let mut sum = 0.0;
    for (&lp, &lq) in p.log_probs().iter().zip(q.log_probs()) {
        if lq == f64::NEG_INFINITY {
            if lp > f64::NEG_INFINITY {
                return Ok(ExtendedReal::INFINITY);
            }
            continue;
        }
        let (pv, qv) = (lp.exp(), lq.exp());
        sum += (pv - qv) * (pv - qv) / qv;
    }
    Ok(ExtendedReal::from_f64(sum))
}

/// Total variation `Σ |p - q|`, in `[0, 2]`.
pub fn total_variation(p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    p.same_alphabet(q)?;
    Ok(p.log_probs()
        .iter()
        .zip(q.log_probs())
        .map(|(&lp, &lq)| (lp.exp() - lq.exp()).abs())
        .sum::<f64>()
        .min(2.0))
}

/// Rényi entropy `H_α(P) = ln n - D_α(P‖U)` for `α ∈ [0, inf]`.
pub fn renyi_entropy(p: &DiscreteDist, alpha: Order) -> Result<f64> {
    if !alpha.is_nonnegative() {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "renyi_entropy" });
    }
    let n = p.len();
    let u = DiscreteDist::uniform(n)?;
    let d = renyi_divergence(p, &u, alpha)?;
    Ok(((n as f64).ln() - d.value()).max(0.0))
}

/// `D_α(P‖Q)` along an ascending grid of orders.
pub fn divergence_curve(
    p: &DiscreteDist,
    q: &DiscreteDist,
    alphas: &[Order],
) -> Result<Vec<ExtendedReal>> {
    p.same_alphabet(q)?;
    if alphas.windows(2).any(|w| !(w[0].value() <= w[1].value())) {
        return Err(Error::UnsortedGrid);
    }
    alphas.iter().map(|&a| renyi_divergence(p, q, a)).collect()
}
