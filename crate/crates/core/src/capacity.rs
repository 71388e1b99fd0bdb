//! Channel capacity and minimax redundancy for finite channels.
//!
//! For a finite-order `α` the redundancy `R_α = min_Q max_θ D_α(P_θ‖Q)` is
//! found in two stages. Projected subgradient descent with Polyak steps gets
//! close to the optimum and records which rows are active. The estimate is
//! then refined through the dual `C_α = max_π min_Q Σ π_θ D_α(P_θ‖Q)`, whose
//! objective is smooth in `π` with gradient `D_α(P_θ‖Q*(π))`. The gap between
//! the two sides certifies the result.

use nalgebra::{DMatrix, DVector};

use crate::divergence::renyi_divergence;
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp_slice, ExtendedReal};
use crate::order::{Order, OrderClass};
use crate::par;
use crate::projection::normalize_weights;
use crate::simplex::{self, PgOptions};

/// A finite family `{P_θ}` over a shared alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    labels: Vec<String>,
    rows: Vec<DiscreteDist>,
}

impl Channel {
    /// Rows labelled by their index.
    pub fn new(rows: Vec<DiscreteDist>) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        Channel::with_labels(labels, rows)
    }

    pub fn with_labels(labels: Vec<String>, rows: Vec<DiscreteDist>) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyInput("channel rows"))?;
        for r in &rows {
            first.same_alphabet(r)?;
        }
        if labels.len() != rows.len() {
            return Err(Error::SizeMismatch(rows.len(), labels.len()));
        }
        Ok(Channel { labels, rows })
    }

    pub fn rows(&self) -> &[DiscreteDist] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn alphabet_size(&self) -> usize {
        self.rows[0].len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyResult {
    pub alpha: Order,
    /// `R_α` in nats.
    pub value: f64,
    pub q_opt: DiscreteDist,
    /// `D_α(P_θ‖Qopt)` for every row.
    pub per_theta: Vec<ExtendedReal>,
    /// Input distribution from the dual stage; it certifies `value`.
    pub input: Vec<f64>,
    /// `max_θ D_α(P_θ‖Qopt) - min_Q Σ π_θ D_α(P_θ‖Q)` at the reported input.
    pub duality_gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityOptions {
    pub tol: f64,
    /// Cap on iterations of each stage.
    pub max_iter: usize,
}

impl Default for CapacityOptions {
    fn default() -> Self {
        CapacityOptions { tol: 1e-8, max_iter: 100_000 }
    }
}

/// Rows above this many entries evaluate their divergences concurrently.
const PAR_THRESHOLD: usize = 4096;
const FLOOR: f64 = 1e-300;

/// Rows restricted to the union of their supports, with the divergence
/// `Q ↦ D_α(P_θ‖Q)` and its gradient for finite `α ≥ 0`.
struct RowSet {
    alpha: f64,
    atoms: Vec<usize>,
    n: usize,
    lp: Vec<Vec<f64>>,
}

impl RowSet {
    fn new(ch: &Channel, alpha: f64) -> Self {
        let n = ch.alphabet_size();
        let atoms: Vec<usize> = (0..n).filter(|&x| ch.rows.iter().any(|r| r.in_support(x))).collect();
        let lp = ch
            .rows
            .iter()
            .map(|r| atoms.iter().map(|&x| r.log_prob(x)).collect())
            .collect();
        RowSet { alpha, atoms, n, lp }
    }

    fn m(&self) -> usize {
        self.lp.len()
    }

    fn k(&self) -> usize {
        self.atoms.len()
    }

    /// `ln H_θ` where `D_α = ln H_θ / (α - 1)`; at `α = 1` this returns `D` itself.
    fn log_h(&self, t: usize, lq: &[f64]) -> f64 {
        let a = self.alpha;
        let lp = &self.lp[t];
        if a == 1.0 {
            return lp
                .iter()
                .zip(lq)
                .filter(|(p, _)| **p > f64::NEG_INFINITY)
                .map(|(p, q)| p.exp() * (p - q))
                .sum();
        }
        let terms: Vec<f64> = lp
            .iter()
            .zip(lq)
            .filter(|(p, _)| **p > f64::NEG_INFINITY)
            .map(|(p, q)| if a == 0.0 { *q } else { a * p + (1.0 - a) * q })
            .collect();
        log_sum_exp_slice(&terms)
    }

    fn value(&self, t: usize, lq: &[f64]) -> f64 {
        let h = self.log_h(t, lq);
        if self.alpha == 1.0 {
            h
        } else {
            h / (self.alpha - 1.0)
        }
    }

    /// `∂D/∂q_x = -(p/q)^α / H`.
    fn value_grad(&self, t: usize, lq: &[f64]) -> (f64, Vec<f64>) {
        let a = self.alpha;
        let h = self.log_h(t, lq);
        let (value, log_norm) = if a == 1.0 { (h, 0.0) } else { (h / (a - 1.0), h) };
        let grad = self.lp[t]
            .iter()
            .zip(lq)
            .map(|(&p, &q)| {
                if p == f64::NEG_INFINITY {
                    0.0
                } else if a == 0.0 {
                    -(-log_norm).exp()
                } else {
                    -(a * (p - q) - log_norm).exp()
                }
            })
            .collect();
        (value, grad)
    }

    fn values(&self, lq: &[f64]) -> Vec<f64> {
        let eval = |t: usize| self.value(t, lq);
        if self.m() * self.k() >= PAR_THRESHOLD {
            par::map_indexed(self.m(), eval)
        } else {
            par::sequential::map_indexed(self.m(), eval)
        }
    }

    /// Lifts a distribution on the atoms back to the full alphabet.
    fn lift(&self, q: &[f64]) -> DiscreteDist {
        let mut logs = vec![f64::NEG_INFINITY; self.n];
        for (&x, &v) in self.atoms.iter().zip(q) {
            logs[x] = v.ln();
        }
        DiscreteDist::from_unnormalized_logs(logs)
    }

    fn mixture(&self, pi: &[f64]) -> Vec<f64> {
        (0..self.k())
            .map(|j| (0..self.m()).map(|t| pi[t] * self.lp[t][j].exp()).sum())
            .collect()
    }

    /// `min_Q Σ π_θ D_α(P_θ‖Q)` with its minimizer, warm-started at `warm`.
    fn inner_min(&self, pi: &[f64], warm: &[f64], opts: PgOptions) -> (f64, Vec<f64>, usize) {
        if self.alpha == 1.0 {
            let q = self.mixture(pi);
            let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
            let v = (0..self.m()).filter(|&t| pi[t] > 0.0).map(|t| pi[t] * self.value(t, &lq)).sum();
            return (v, q, 0);
        }
        let objective = |q: &[f64]| {
            let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
            let mut total = 0.0;
            let mut grad = vec![0.0; q.len()];
            for t in (0..self.m()).filter(|&t| pi[t] > 0.0) {
                let (v, g) = self.value_grad(t, &lq);
                total += pi[t] * v;
                for (acc, gi) in grad.iter_mut().zip(g) {
                    *acc += pi[t] * gi;
                }
            }
            (total, grad)
        };
        // A warm start that misses an atom of a weighted row has infinite
        // objective for α ≥ 1 and gives the solver nothing to descend from.
        let covered = (0..self.k()).all(|j| {
            warm[j] > 0.0 || (0..self.m()).all(|t| pi[t] == 0.0 || self.lp[t][j] == f64::NEG_INFINITY)
        });
        let start: Vec<f64> = if covered {
            warm.to_vec()
        } else {
            warm.iter().zip(self.mixture(pi)).map(|(w, m)| 0.99 * w + 0.01 * m).collect()
        };
        let out = simplex::minimize(objective, &start, opts);
        (out.value, out.x, out.iterations)
    }

    /// Lower bound on `min_Q Σ π_θ D_α(P_θ‖Q)` from convexity in `Q`: the
    /// linearization at `q` lies below the objective on the whole simplex.
    fn certified_lower(&self, pi: &[f64], q: &[f64]) -> f64 {
        if self.alpha == 1.0 {
            let q = self.mixture(pi);
            let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
            return (0..self.m()).filter(|&t| pi[t] > 0.0).map(|t| pi[t] * self.value(t, &lq)).sum();
        }
        let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
        let mut total = 0.0;
        let mut grad = vec![0.0; q.len()];
        for t in (0..self.m()).filter(|&t| pi[t] > 0.0) {
            let (v, g) = self.value_grad(t, &lq);
            total += pi[t] * v;
            for (acc, gi) in grad.iter_mut().zip(g) {
                *acc += pi[t] * gi;
            }
        }
        if !total.is_finite() || grad.iter().any(|g| !g.is_finite()) {
            return f64::NEG_INFINITY;
        }
        let along: f64 = grad.iter().zip(q).map(|(g, x)| g * x).sum();
        let lowest = grad.iter().copied().fold(f64::INFINITY, f64::min);
        total + lowest - along
    }
}

fn check_capacity_order(alpha: Order, operation: &'static str) -> Result<()> {
    if alpha.is_nonnegative() {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder { order: alpha.value(), operation })
    }
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn floored(q: &[f64]) -> Vec<f64> {
    let v: Vec<f64> = q.iter().map(|x| x.max(FLOOR)).collect();
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

struct PolyakOutcome {
    q: Vec<f64>,
    value: f64,
    activity: Vec<f64>,
    iterations: usize,
}

/// Projected subgradient descent on `Q ↦ max_θ D_α(P_θ‖Q)` with Polyak steps
/// toward an estimated optimum `f_best - δ`, halving `δ` whenever progress stalls.
fn polyak(rows: &RowSet, tol: f64, max_iter: usize) -> PolyakOutcome {
    const PATIENCE: usize = 50;
    let m = rows.m();
    let mut q = floored(&rows.mixture(&vec![1.0 / m as f64; m]));
    let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
    let mut best_value = max_of(&rows.values(&lq));
    let mut best_q = q.clone();
    let mut delta = 0.5 * best_value;
    let mut stall = 0;
    let mut activity = vec![0.0; m];
    let mut iterations = 0;
    while iterations < max_iter && delta > 0.01 * tol {
        iterations += 1;
        let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
        let vals = rows.values(&lq);
        let f = max_of(&vals);
        if f < best_value {
            best_value = f;
            best_q = q.clone();
            stall = 0;
        } else {
            stall += 1;
            if stall >= PATIENCE {
                delta *= 0.5;
                stall = 0;
                q = best_q.clone();
                continue;
            }
        }
        let slack = 1e-12 * f.abs().max(1.0);
        let active: Vec<usize> = (0..m).filter(|&t| vals[t] >= f - slack).collect();
        let mut g = vec![0.0; q.len()];
        for &t in &active {
            activity[t] += 1.0 / active.len() as f64;
            for (acc, gi) in g.iter_mut().zip(rows.value_grad(t, &lq).1) {
                *acc += gi / active.len() as f64;
            }
        }
        // Only the tangent component moves along the simplex.
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        g.iter_mut().for_each(|v| *v -= mean);
        let norm2: f64 = g.iter().map(|v| v * v).sum();
        if norm2 == 0.0 || !norm2.is_finite() {
            break;
        }
        let step = (f - (best_value - delta)) / norm2;
        let z: Vec<f64> = q.iter().zip(&g).map(|(a, b)| a - step * b).collect();
        q = floored(&simplex::project_to_simplex(&z));
    }
    let total: f64 = activity.iter().sum();
    let activity = if total > 0.0 {
        activity.iter().map(|a| a / total).collect()
    } else {
        vec![1.0 / m as f64; m]
    };
    PolyakOutcome { q: best_q, value: best_value, activity, iterations }
}

struct DualOutcome {
    pi: Vec<f64>,
    lower: f64,
    q: Vec<f64>,
    iterations: usize,
}

/// Maximizes `h(π) = min_Q Σ π_θ D_α(P_θ‖Q)` by projected gradient ascent.
fn dual_refine(rows: &RowSet, pi0: &[f64], q0: &[f64], opts: CapacityOptions) -> DualOutcome {
    let inner = PgOptions { tol: (opts.tol * 1e-3).min(1e-12), max_iter: 20_000 };
    let mut warm = q0.to_vec();
    let outer = simplex::minimize(
        |pi| {
            let (h, q, _) = rows.inner_min(pi, &warm, inner);
            let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
            let grad: Vec<f64> = rows.values(&lq).iter().map(|v| -v).collect();
            if h.is_finite() {
                warm = q;
            }
            (-h, grad)
        },
        pi0,
        PgOptions { tol: opts.tol, max_iter: opts.max_iter.min(10_000) },
    );
    let (_, q, _) = rows.inner_min(&outer.x, &warm, inner);
    let lower = rows.certified_lower(&outer.x, &q);
    DualOutcome { pi: outer.x, lower, q, iterations: outer.iterations }
}

/// `R_α` with the default options and tolerance `tol`.
pub fn minimax_redundancy(ch: &Channel, alpha: Order, tol: f64) -> Result<RedundancyResult> {
    minimax_redundancy_with(ch, alpha, CapacityOptions { tol, ..CapacityOptions::default() })
}

/// Minimax redundancy `R_α = min_Q max_θ D_α(P_θ‖Q)` for `α ∈ [0, inf]`.
///
/// `α = inf` is solved exactly by the Shtarkov distribution.
pub fn minimax_redundancy_with(ch: &Channel, alpha: Order, opts: CapacityOptions) -> Result<RedundancyResult> {
    check_capacity_order(alpha, "minimax_redundancy")?;
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {} must be positive", opts.tol)));
    }
    if alpha.class() == OrderClass::Infinity {
        let s = shtarkov(ch);
        let per_theta = ch
            .rows
            .iter()
            .map(|r| renyi_divergence(r, &s.dist, alpha))
            .collect::<Result<Vec<_>>>()?;
        return Ok(RedundancyResult {
            alpha,
            value: s.value,
            q_opt: s.dist,
            per_theta,
            input: ml_capacity_input(ch),
            duality_gap: 0.0,
            iterations: 0,
            converged: true,
        });
    }
    let rows = RowSet::new(ch, alpha.value());
    let m = rows.m();
    let start = polyak(&rows, opts.tol, opts.max_iter);
    let (q, pi, lower, dual_iters) = if m == 1 {
        (start.q.clone(), vec![1.0], start.value, 0)
    } else {
        let pi0: Vec<f64> = start.activity.iter().map(|a| 0.9 * a + 0.1 / m as f64).collect();
        let dual = dual_refine(&rows, &pi0, &start.q, opts);
        (dual.q, dual.pi, dual.lower, dual.iterations)
    };
    let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
    let dual_value = max_of(&rows.values(&lq));
    let (q, upper) = if m == 1 || start.value < dual_value {
        (start.q, start.value)
    } else {
        (q, dual_value)
    };
    let q_opt = rows.lift(&q);
    let per_theta = ch
        .rows
        .iter()
        .map(|r| renyi_divergence(r, &q_opt, alpha))
        .collect::<Result<Vec<_>>>()?;
    let value = per_theta.iter().map(|d| d.value()).fold(f64::NEG_INFINITY, f64::max);
    let duality_gap = if m == 1 { value } else { (value - lower).max(0.0) };
    debug_assert!((value - upper).abs() <= 1e-9 * upper.abs().max(1.0) || !upper.is_finite());
    Ok(RedundancyResult {
        alpha,
        value,
        q_opt,
        per_theta,
        input: pi,
        duality_gap,
        iterations: start.iterations + dual_iters,
        converged: duality_gap <= opts.tol,
    })
}

/// `min_Q Σ π_θ D_α(P_θ‖Q)`, a lower bound on `C_α = R_α` for any input `π`.
pub fn capacity_lower(ch: &Channel, pi: &[f64], alpha: Order, tol: f64) -> Result<f64> {
    check_capacity_order(alpha, "capacity_lower")?;
    let pi = normalize_weights(pi, ch.len())?;
    if alpha.class() == OrderClass::Infinity {
        return Ok(infinity_lower(ch, &pi));
    }
    let rows = RowSet::new(ch, alpha.value());
    let warm = floored(&rows.mixture(&pi));
    let (v, _, _) = rows.inner_min(&pi, &warm, PgOptions { tol, max_iter: 100_000 });
    Ok(v.max(0.0))
}

/// `min_Q Σ π_θ D_∞(P_θ‖Q)`.
///
/// With `u_θ = -D_∞(P_θ‖Q)` the problem becomes the unconstrained convex
/// minimization of `ln Σ_x max_θ p_θ(x) e^{u_θ} - π·u`. The inner maximum is
/// replaced by a `β`-softmax, which overestimates by at most `ln m / β`, and
/// `β` is doubled under damped Newton iterations. The exact objective is
/// evaluated at the final point.
fn infinity_lower(ch: &Channel, pi: &[f64]) -> f64 {
    let kept: Vec<usize> = (0..pi.len()).filter(|&t| pi[t] > 0.0).collect();
    if kept.len() == 1 {
        return 0.0;
    }
    let n = ch.alphabet_size();
    let atoms: Vec<usize> = (0..n).filter(|&x| kept.iter().any(|&t| ch.rows[t].in_support(x))).collect();
    let a: Vec<Vec<f64>> = kept
        .iter()
        .map(|&t| atoms.iter().map(|&x| ch.rows[t].log_prob(x)).collect())
        .collect();
    let w: Vec<f64> = kept.iter().map(|&t| pi[t]).collect();
    let m = kept.len();

    // The objective is invariant under u ↦ u + c·1, so u_{m-1} is pinned at 0.
    let full = |v: &DVector<f64>| {
        let mut u: Vec<f64> = v.iter().copied().collect();
        u.push(0.0);
        u
    };
    let exact = |u: &[f64]| {
        let s: Vec<f64> = (0..atoms.len())
            .map(|j| (0..m).map(|t| a[t][j] + u[t]).fold(f64::NEG_INFINITY, f64::max))
            .collect();
        log_sum_exp_slice(&s) - w.iter().zip(u).map(|(p, u)| p * u).sum::<f64>()
    };
    let smooth = |u: &[f64], beta: f64| -> (f64, DVector<f64>, DMatrix<f64>) {
        let k = atoms.len();
        let mut s = vec![0.0; k];
        let mut r = vec![vec![0.0; m]; k];
        for j in 0..k {
            let z: Vec<f64> = (0..m).map(|t| beta * (a[t][j] + u[t])).collect();
            let l = log_sum_exp_slice(&z);
            s[j] = l / beta;
            for t in 0..m {
                r[j][t] = (z[t] - l).exp();
            }
        }
        let ls = log_sum_exp_slice(&s);
        let wx: Vec<f64> = s.iter().map(|v| (v - ls).exp()).collect();
        let value = ls - w.iter().zip(u).map(|(p, u)| p * u).sum::<f64>();
        let mut grad = DVector::zeros(m);
        let mut hess = DMatrix::zeros(m, m);
        for j in 0..k {
            for t in 0..m {
                grad[t] += wx[j] * r[j][t];
                hess[(t, t)] += wx[j] * beta * r[j][t];
                for o in 0..m {
                    hess[(t, o)] += wx[j] * (r[j][t] * r[j][o] - beta * r[j][t] * r[j][o]);
                }
            }
        }
        let mean = grad.clone();
        hess -= &mean * mean.transpose();
        for t in 0..m {
            grad[t] -= w[t];
        }
        (value, grad, hess)
    };

    let mut v = DVector::<f64>::zeros(m - 1);
    let mut beta = 1.0;
    while beta <= 2f64.powi(40) {
        for _ in 0..200 {
            let u = full(&v);
            let (f, g, h) = smooth(&u, beta);
            let g = g.rows(0, m - 1).into_owned();
            let h = h.view((0, 0), (m - 1, m - 1)).into_owned();
            let reg = 1e-12 * h.diagonal().amax().max(1e-300);
            let regularized = &h + DMatrix::identity(m - 1, m - 1) * reg;
            let dir = match regularized.cholesky() {
                Some(c) => -c.solve(&g),
                None => -g.clone(),
            };
            let decrement = -g.dot(&dir);
            if decrement < 1e-24 {
                break;
            }
            let mut step = 1.0;
            let mut moved = false;
            while step > 1e-20 {
                let cand = &v + &dir * step;
                if smooth(&full(&cand), beta).0 <= f - 1e-4 * step * decrement {
                    v = cand;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        beta *= 2.0;
    }
    exact(&full(&v)).max(0.0)
}

/// Capacity at `α = 1` by Blahut-Arimoto alternating maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct BlahutArimoto {
    pub capacity: f64,
    pub input: Vec<f64>,
    pub output: DiscreteDist,
    /// `max_θ D(P_θ‖M) - I(π)` at termination.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn blahut_arimoto(ch: &Channel, tol: f64, max_iter: usize) -> Result<BlahutArimoto> {
    let rows = RowSet::new(ch, 1.0);
    let m = rows.m();
    let mut pi = vec![1.0 / m as f64; m];
    let mut iterations = 0;
    loop {
        let q = rows.mixture(&pi);
        let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
        let d = rows.values(&lq);
        let info: f64 = pi.iter().zip(&d).map(|(p, d)| p * d).sum();
        let upper = max_of(&d);
        let gap = upper - info;
        if gap <= tol || iterations >= max_iter {
            return Ok(BlahutArimoto {
                capacity: info,
                input: pi,
                output: rows.lift(&q),
                gap,
                iterations,
                converged: gap <= tol,
            });
        }
        let logs: Vec<f64> = pi.iter().zip(&d).map(|(p, d)| p.ln() + d).collect();
        let z = log_sum_exp_slice(&logs);
        pi = logs.iter().map(|l| (l - z).exp()).collect();
        iterations += 1;
    }
}

/// Normalized maximum likelihood distribution and its log normalizer.
#[derive(Debug, Clone, PartialEq)]
pub struct Shtarkov {
    pub dist: DiscreteDist,
    /// `R_∞ = ln Σ_x max_θ P_θ(x)`.
    pub value: f64,
}

pub fn shtarkov(ch: &Channel) -> Shtarkov {
    let logs: Vec<f64> = (0..ch.alphabet_size())
        .map(|x| ch.rows.iter().map(|r| r.log_prob(x)).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let value = log_sum_exp_slice(&logs).max(0.0);
    Shtarkov { dist: DiscreteDist::from_unnormalized_logs(logs), value }
}

/// Lowest-index row attaining `max_θ P_θ(x)`, or `None` off every support.
pub fn ml_parameter(ch: &Channel, x: usize) -> Option<usize> {
    let best = ch.rows.iter().map(|r| r.log_prob(x)).fold(f64::NEG_INFINITY, f64::max);
    if best == f64::NEG_INFINITY {
        return None;
    }
    ch.rows.iter().position(|r| r.log_prob(x) == best)
}

/// `π(θ) = S({x : ML(x) = θ})`, with ties resolved toward the lowest index.
pub fn ml_capacity_input(ch: &Channel) -> Vec<f64> {
    let s = shtarkov(ch);
    let mut pi = vec![0.0; ch.len()];
    for x in s.dist.support() {
        if let Some(t) = ml_parameter(ch, x) {
            pi[t] += s.dist.prob(x);
        }
    }
    pi
}

/// `sup_θ D_α(P_θ‖Q) - R_α - D_α(Qopt‖Q)` for the redundancy problem solved in `result`.
///
/// Both sides infinite counts as a zero gap only at equal orders of infinity,
/// so the probe reports `+inf` then.
pub fn conjecture_probe(ch: &Channel, q: &DiscreteDist, result: &RedundancyResult) -> Result<f64> {
    let alpha = result.alpha;
    if !(alpha.value() > 0.0) {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "conjecture_probe" });
    }
    let worst = ch
        .rows
        .iter()
        .map(|r| renyi_divergence(r, q, alpha))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("nonempty channel");
    let to_q = renyi_divergence(&result.q_opt, q, alpha)?;
    if worst.is_pos_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(worst.value() - result.value - to_q.value())
}
