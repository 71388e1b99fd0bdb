//! Tilted distributions, the KL trade-off identity, Chernoff information
//! and Pinsker's inequality.

use crate::divergence::{atom_term, kl_divergence, log_hellinger_integral, renyi_divergence, total_variation, AtomTerm};
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::ExtendedReal;
use crate::order::{Order, OrderClass};

/// Logs of the unnormalized tilt `q^(1-α) p^α`; at `α = 1` this is `p` on `{q > 0}`.
fn tilt_logs(p: &DiscreteDist, q: &DiscreteDist, alpha: f64) -> Result<Vec<f64>> {
    p.same_alphabet(q)?;
    p.log_probs()
        .iter()
        .zip(q.log_probs())
        .map(|(&lp, &lq)| {
            if alpha == 1.0 {
                Ok(if lq > f64::NEG_INFINITY { lp } else { f64::NEG_INFINITY })
            } else {
                match atom_term(lp, lq, alpha) {
                    AtomTerm::Zero => Ok(f64::NEG_INFINITY),
                    AtomTerm::Infinite => Err(Error::TiltDiverges(alpha)),
                    AtomTerm::Log(v) => Ok(v),
                }
            }
        })
        .collect()
}

/// The tilted distribution `P_α ∝ q^(1-α) p^α` for `α ∈ (0, inf)`.
///
/// Fails with [`Error::MutuallySingular`] when the integral vanishes and with
/// [`Error::TiltDiverges`] when `α > 1` and `P` charges an atom `Q` does not.
pub fn tilted(p: &DiscreteDist, q: &DiscreteDist, alpha: Order) -> Result<DiscreteDist> {
    if !alpha.is_positive_finite() {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "tilted" });
    }
    let logs = tilt_logs(p, q, alpha.value())?;
    if logs.iter().all(|l| *l == f64::NEG_INFINITY) {
        return Err(Error::MutuallySingular);
    }
    Ok(DiscreteDist::from_unnormalized_logs(logs))
}

/// The one-parameter family `α ↦ P_α` through a fixed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TiltedFamily {
    p: DiscreteDist,
    q: DiscreteDist,
}

impl TiltedFamily {
    pub fn new(p: DiscreteDist, q: DiscreteDist) -> Result<Self> {
        p.same_alphabet(&q)?;
        if !p.support().any(|x| q.in_support(x)) {
            return Err(Error::MutuallySingular);
        }
        Ok(TiltedFamily { p, q })
    }

    pub fn pair(&self) -> (&DiscreteDist, &DiscreteDist) {
        (&self.p, &self.q)
    }

    /// Supremum of the orders where the tilt exists; the range is `(0, upper]`
    /// or `(0, inf)` when `P ≪ Q`.
    pub fn upper_order(&self) -> f64 {
        if self.p.support().all(|x| self.q.in_support(x)) {
            f64::INFINITY
        } else {
            1.0
        }
    }

    pub fn at(&self, alpha: Order) -> Result<DiscreteDist> {
        tilted(&self.p, &self.q, alpha)
    }
}

fn simple_order(alpha: Order, operation: &'static str) -> Result<f64> {
    if alpha.class() == OrderClass::Simple && alpha.value() > 0.0 {
        Ok(alpha.value())
    } else {
        Err(Error::UnsupportedOrder { order: alpha.value(), operation })
    }
}

/// `(1-α) D_α(P‖Q)` for a simple order; equals `-ln Σ p^α q^(1-α)`.
pub fn tradeoff_value(p: &DiscreteDist, q: &DiscreteDist, alpha: Order) -> Result<f64> {
    let a = simple_order(alpha, "tradeoff_value")?;
    Ok((1.0 - a) * renyi_divergence(p, q, alpha)?.value())
}

/// `α D(R‖P) + (1-α) D(R‖Q)`, taken to be `+inf` where it would be `inf - inf`.
pub fn tradeoff_objective(r: &DiscreteDist, p: &DiscreteDist, q: &DiscreteDist, alpha: Order) -> Result<f64> {
    let a = simple_order(alpha, "tradeoff_objective")?;
    let dp = kl_divergence(r, p)?.value();
    let dq = kl_divergence(r, q)?.value();
    if a < 1.0 {
        return Ok(a * dp + (1.0 - a) * dq);
    }
    if dp == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(a * dp + (1.0 - a) * dq)
}

/// `D(P_α‖P) - D(P_α‖Q) = Σ p_α ln(q/p)`, the derivative of `α ↦ (1-α) D_α`.
pub fn chernoff_balance(p: &DiscreteDist, q: &DiscreteDist, alpha: f64) -> Result<f64> {
    let t = tilted(p, q, Order::new(alpha)?)?;
    Ok(t.support().map(|x| t.prob(x) * (q.log_prob(x) - p.log_prob(x))).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffResult {
    pub alpha_star: f64,
    /// `sup_α (1-α) D_α(P‖Q)` in nats.
    pub value: f64,
    /// `D(P_α*‖P) - D(P_α*‖Q)`.
    pub balance: f64,
    /// Bisection steps.
    pub iterations: usize,
    /// Maximizer and maximum found by golden-section search.
    pub golden_alpha: f64,
    pub golden_value: f64,
    /// True when the balance has no sign change on the bracket and the
    /// supremum sits at an end of `(0, 1)`.
    pub boundary: bool,
    /// `|value - golden_value| ≤ 10 tol`.
    pub cross_checked: bool,
}

const BRACKET: (f64, f64) = (1e-6, 1.0 - 1e-6);
const MAX_STEPS: usize = 200;

fn chernoff_curve(p: &DiscreteDist, q: &DiscreteDist, alpha: f64) -> Result<f64> {
    Ok(-log_hellinger_integral(p, q, alpha)?)
}

/// Golden-section maximization of a concave function on `[lo, hi]`.
fn golden_max<F: Fn(f64) -> Result<f64>>(f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..MAX_STEPS {
        if hi - lo < width {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Chernoff information of `(P, Q)`.
///
/// `α*` is located by bisection on the sign of the balance and the value is
/// checked against a golden-section maximization of `(1-α) D_α`. Equal
/// inputs give value 0 with `α* = 1/2`.
pub fn chernoff(p: &DiscreteDist, q: &DiscreteDist, tol: f64) -> Result<ChernoffResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    if total_variation(p, q)? <= 1e-15 {
        return Ok(ChernoffResult {
            alpha_star: 0.5,
            value: 0.0,
            balance: 0.0,
            iterations: 0,
            golden_alpha: 0.5,
            golden_value: 0.0,
            boundary: false,
            cross_checked: true,
        });
    }
    if log_hellinger_integral(p, q, 0.5)? == f64::NEG_INFINITY {
        return Err(Error::MutuallySingular);
    }
    let (mut lo, mut hi) = BRACKET;
    let b_lo = chernoff_balance(p, q, lo)?;
    let b_hi = chernoff_balance(p, q, hi)?;
    let (golden_alpha, golden_value) = golden_max(|a| chernoff_curve(p, q, a), lo, hi, 1e-10)?;

    let (alpha_star, value, balance, iterations, boundary) = if b_lo <= 0.0 {
        // Decreasing on the whole bracket: the supremum is the limit at 0.
        let v = renyi_divergence(p, q, Order::ZERO)?.value();
        (0.0, v, b_lo, 0, true)
    } else if b_hi >= 0.0 {
        // Increasing: the limit at 1 is -ln P(q > 0).
        let v = renyi_divergence(q, p, Order::ZERO)?.value();
        (1.0, v, b_hi, 0, true)
    } else {
        let mut iterations = 0;
        let mut mid = 0.5 * (lo + hi);
        let mut b = chernoff_balance(p, q, mid)?;
        while b.abs() > tol && iterations < MAX_STEPS && hi - lo > 1e-16 {
            if b > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            mid = 0.5 * (lo + hi);
            b = chernoff_balance(p, q, mid)?;
            iterations += 1;
        }
        (mid, chernoff_curve(p, q, mid)?, b, iterations, false)
    };
    Ok(ChernoffResult {
        alpha_star,
        value,
        balance,
        iterations,
        golden_alpha,
        golden_value,
        boundary,
        cross_checked: (value - golden_value).abs() <= 10.0 * tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinskerCheck {
    /// `(α/2) V²` with `V = Σ |p - q|`.
    pub bound: f64,
    pub divergence: ExtendedReal,
    pub holds: bool,
}

/// Compares `D_α(P‖Q)` with the Pinsker-type lower bound `(α/2) V²` for `α ∈ (0, 1]`.
pub fn pinsker_check(p: &DiscreteDist, q: &DiscreteDist, alpha: Order) -> Result<PinskerCheck> {
    let a = alpha.value();
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::UnsupportedOrder { order: a, operation: "pinsker_check" });
    }
    let v = total_variation(p, q)?;
    let bound = a / 2.0 * v * v;
    let divergence = renyi_divergence(p, q, alpha)?;
    Ok(PinskerCheck { bound, divergence, holds: bound <= divergence.value() + 1e-12 })
}
