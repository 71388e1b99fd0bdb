//! (α,λ)-mixtures of finitely many generators and the α-information
//! projection onto the set they span.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::divergence::{log_hellinger_integral, renyi_divergence};
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp_slice, ExtendedReal};
use crate::order::{Order, OrderClass};
use crate::par;
use crate::simplex::{self, PgOptions};

const WEIGHT_TOL: f64 = 1e-9;

/// The normalized `(Σ λ_θ p_θ^α)^(1/α)` of a list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMixture {
    generators: Arc<[DiscreteDist]>,
    weights: Vec<f64>,
    dist: DiscreteDist,
    normalizer: f64,
    alpha: Order,
}

impl AlphaMixture {
    pub fn dist(&self) -> &DiscreteDist {
        &self.dist
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Z = Σ_x (Σ_θ λ_θ p_θ(x)^α)^(1/α)`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn alpha(&self) -> Order {
        self.alpha
    }

    pub fn generators(&self) -> &[DiscreteDist] {
        &self.generators
    }
}

/// Interval that the normalizer of an `m`-generator mixture must lie in.
pub fn normalizer_bounds(m: usize, alpha: f64) -> (f64, f64) {
    let m = m as f64;
    if alpha <= 1.0 {
        (m.powf(-(1.0 - alpha) / alpha), 1.0)
    } else {
        (1.0, m.powf((alpha - 1.0) / alpha))
    }
}

fn check_mixture_order(alpha: Order, operation: &'static str) -> Result<f64> {
    if alpha.is_positive_finite() {
        Ok(alpha.value())
    } else {
        Err(Error::UnsupportedOrder { order: alpha.value(), operation })
    }
}

/// Validates a weight vector against `m` generators, renormalizing small slack.
pub(crate) fn normalize_weights(weights: &[f64], m: usize) -> Result<Vec<f64>> {
    if weights.len() != m {
        return Err(Error::SizeMismatch(m, weights.len()));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= -WEIGHT_TOL) || !w.is_finite()) {
        return Err(Error::InvalidWeights(format!("entry {w} is negative or not finite")));
    }
    let clipped: Vec<f64> = weights.iter().map(|w| w.max(0.0)).collect();
    let sum: f64 = clipped.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::InvalidWeights(format!("entries sum to {sum}")));
    }
    Ok(clipped.into_iter().map(|w| w / sum).collect())
}

fn check_generators(generators: &[DiscreteDist]) -> Result<usize> {
    let first = generators.first().ok_or(Error::EmptyInput("generators"))?;
    for g in generators {
        first.same_alphabet(g)?;
    }
    Ok(first.len())
}

/// The `(α,λ)`-mixture of `generators`; `α = 1` is the ordinary mixture.
pub fn alpha_mixture(generators: &[DiscreteDist], weights: &[f64], alpha: Order) -> Result<AlphaMixture> {
    mixture_from_shared(Arc::from(generators.to_vec()), weights, alpha)
}

fn mixture_from_shared(generators: Arc<[DiscreteDist]>, weights: &[f64], alpha: Order) -> Result<AlphaMixture> {
    let a = check_mixture_order(alpha, "alpha_mixture")?;
    let n = check_generators(&generators)?;
    let weights = normalize_weights(weights, generators.len())?;
    let log_w: Vec<f64> = weights.iter().map(|w| w.ln()).collect();
    let mut terms = Vec::with_capacity(generators.len());
    let log_x: Vec<f64> = (0..n)
        .map(|x| {
            terms.clear();
            for (g, &lw) in generators.iter().zip(&log_w) {
                let lp = g.log_prob(x);
                if lw > f64::NEG_INFINITY && lp > f64::NEG_INFINITY {
                    terms.push(lw + a * lp);
                }
            }
            log_sum_exp_slice(&terms) / a
        })
        .collect();
    let (dist, normalizer) = if alpha.class() == OrderClass::One {
        (DiscreteDist::from_unnormalized_logs(log_x), 1.0)
    } else {
        let log_z = log_sum_exp_slice(&log_x);
        let z = log_z.exp();
        let (lo, hi) = normalizer_bounds(generators.len(), a);
        if z < lo * (1.0 - 1e-12) || z > hi * (1.0 + 1e-12) {
            return Err(Error::Numerical(format!("normalizer {z} outside [{lo}, {hi}]")));
        }
        (DiscreteDist::from_unnormalized_logs(log_x), z)
    };
    Ok(AlphaMixture { generators, weights, dist, normalizer, alpha })
}

/// The `(α,γ)`-mixture of two mixtures over the same generators, expressed
/// again as a mixture of those generators with weights
/// `ν = (γ₁/Z₁^α · λ₁ + γ₂/Z₂^α · λ₂) / C`.
pub fn mixture_compose(a: &AlphaMixture, b: &AlphaMixture, gamma: [f64; 2]) -> Result<AlphaMixture> {
    if a.alpha != b.alpha || a.generators != b.generators {
        return Err(Error::GeneratorMismatch);
    }
    let gamma = normalize_weights(&gamma, 2)?;
    let alpha = a.alpha.value();
    let c1 = gamma[0] / a.normalizer.powf(alpha);
    let c2 = gamma[1] / b.normalizer.powf(alpha);
    let c = c1 + c2;
    let nu: Vec<f64> = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(l1, l2)| (c1 * l1 + c2 * l2) / c)
        .collect();
    mixture_from_shared(a.generators.clone(), &nu, a.alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Stationarity threshold on the projected gradient.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of starting points (generator vertices first, then Dirichlet draws).
    pub starts: usize,
    pub seed: u64,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions { tol: 1e-8, max_iter: 100_000, starts: 16, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub projection: AlphaMixture,
    /// `D_α(P*‖Q)`.
    pub value: ExtendedReal,
    pub iterations: usize,
    pub converged: bool,
}

impl ProjectionResult {
    pub fn dist(&self) -> &DiscreteDist {
        self.projection.dist()
    }

    pub fn weights(&self) -> &[f64] {
        self.projection.weights()
    }
}

/// `λ ↦ D_α(P_λ‖Q)` restricted to a subset of generators, with its gradient.
///
/// For a simple order, `D_α(P_λ‖Q) = (ln Σ_θ λ_θ h_θ - α ln Z_λ)/(α - 1)`
/// where `h_θ` is the Hellinger integral of generator `θ` against `Q`.
pub(crate) struct MixtureObjective {
    alpha: f64,
    /// `lp[θ][x]` over the union support of the active generators.
    lp: Vec<Vec<f64>>,
    lq: Vec<f64>,
    log_h: Vec<f64>,
}

impl MixtureObjective {
    pub(crate) fn new(generators: &[&DiscreteDist], q: &DiscreteDist, alpha: f64) -> Result<Self> {
        let n = q.len();
        let atoms: Vec<usize> = (0..n).filter(|&x| generators.iter().any(|g| g.in_support(x))).collect();
        let lp = generators
            .iter()
            .map(|g| atoms.iter().map(|&x| g.log_prob(x)).collect())
            .collect();
        let lq = atoms.iter().map(|&x| q.log_prob(x)).collect();
        let log_h = if alpha == 1.0 {
            Vec::new()
        } else {
            generators
                .iter()
                .map(|g| log_hellinger_integral(g, q, alpha))
                .collect::<Result<_>>()?
        };
        Ok(MixtureObjective { alpha, lp, lq, log_h })
    }

    pub(crate) fn value_and_grad(&self, lambda: &[f64]) -> (f64, Vec<f64>) {
        if self.alpha == 1.0 {
            self.kl_value_and_grad(lambda)
        } else {
            self.simple_value_and_grad(lambda)
        }
    }

    fn simple_value_and_grad(&self, lambda: &[f64]) -> (f64, Vec<f64>) {
        let a = self.alpha;
        let log_l: Vec<f64> = lambda.iter().map(|w| w.ln()).collect();
        let log_a = log_sum_exp_slice(&log_l.iter().zip(&self.log_h).map(|(l, h)| l + h).collect::<Vec<_>>());
        if log_a == f64::NEG_INFINITY {
            return (f64::INFINITY, vec![0.0; lambda.len()]);
        }
        let atoms = self.lq.len();
        let mut terms = Vec::with_capacity(lambda.len());
        let log_s: Vec<f64> = (0..atoms)
            .map(|x| {
                terms.clear();
                for (t, &l) in log_l.iter().enumerate() {
                    let lp = self.lp[t][x];
                    if l > f64::NEG_INFINITY && lp > f64::NEG_INFINITY {
                        terms.push(l + a * lp);
                    }
                }
                log_sum_exp_slice(&terms)
            })
            .collect();
        let log_z = log_sum_exp_slice(&log_s.iter().map(|s| s / a).collect::<Vec<_>>());
        let value = (log_a - a * log_z) / (a - 1.0);
        let grad = (0..lambda.len())
            .map(|t| {
                let dz_terms: Vec<f64> = (0..atoms)
                    .filter(|&x| self.lp[t][x] > f64::NEG_INFINITY)
                    .map(|x| (1.0 / a - 1.0) * log_s[x] + a * self.lp[t][x])
                    .collect();
                let dz = (log_sum_exp_slice(&dz_terms) - log_z).exp();
                let da = (self.log_h[t] - log_a).exp();
                (da - dz) / (a - 1.0)
            })
            .collect();
        (value, grad)
    }

    fn kl_value_and_grad(&self, lambda: &[f64]) -> (f64, Vec<f64>) {
        let atoms = self.lq.len();
        let log_l: Vec<f64> = lambda.iter().map(|w| w.ln()).collect();
        let log_m: Vec<f64> = (0..atoms)
            .map(|x| {
                let terms: Vec<f64> = log_l.iter().enumerate().map(|(t, l)| l + self.lp[t][x]).collect();
                log_sum_exp_slice(&terms)
            })
            .collect();
        let mut value = 0.0;
        for (&lm, &lq) in log_m.iter().zip(&self.lq) {
            if lm > f64::NEG_INFINITY {
                if lq == f64::NEG_INFINITY {
                    return (f64::INFINITY, vec![0.0; lambda.len()]);
                }
                value += lm.exp() * (lm - lq);
            }
        }
        let grad = (0..lambda.len())
            .map(|t| {
                (0..atoms)
                    .filter(|&x| self.lp[t][x] > f64::NEG_INFINITY)
                    .map(|x| self.lp[t][x].exp() * (log_m[x] - self.lq[x] + 1.0))
                    .sum()
            })
            .collect();
        (value, grad)
    }
}

/// The α-information projection of `Q` onto the α-convex hull of `generators`.
///
/// Runs projected gradient descent on the mixture weights from several
/// starts and keeps the best stationary point (lowest value, earliest start
/// on ties).
pub fn alpha_project(
    q: &DiscreteDist,
    generators: &[DiscreteDist],
    alpha: Order,
    options: ProjectionOptions,
) -> Result<ProjectionResult> {
    let a = check_mixture_order(alpha, "alpha_project")?;
    check_generators(generators)?;
    q.same_alphabet(&generators[0])?;
    if options.starts == 0 || !(options.tol > 0.0) {
        return Err(Error::InvalidArgument("need at least one start and a positive tolerance".into()));
    }
    let single: Vec<ExtendedReal> = generators
        .iter()
        .map(|g| renyi_divergence(g, q, alpha))
        .collect::<Result<_>>()?;
    if single.iter().all(|d| d.is_pos_infinite()) {
        return Err(Error::AllGeneratorsInfinite);
    }
    // For α ≥ 1 any weight on an infinite generator makes the mixture infinite.
    let active: Vec<usize> = (0..generators.len())
        .filter(|&t| a < 1.0 || single[t].is_finite())
        .collect();
    let refs: Vec<&DiscreteDist> = active.iter().map(|&t| &generators[t]).collect();
    let objective = MixtureObjective::new(&refs, q, a)?;
    let k = active.len();

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut starts: Vec<Vec<f64>> = (0..k)
        .filter(|&i| single[active[i]].is_finite())
        .take(options.starts)
        .map(|i| {
            let mut v = vec![0.0; k];
            v[i] = 1.0;
            v
        })
        .collect();
    while starts.len() < options.starts {
        starts.push(DiscreteDist::random(&mut rng, k).probs());
    }

    let pg = PgOptions { tol: options.tol, max_iter: options.max_iter };
    let runs = par::map_slice(&starts, |x0| simplex::minimize(|l| objective.value_and_grad(l), x0, pg));
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let best = runs
        .iter()
        .filter(|r| r.value.is_finite())
        .min_by(|x, y| x.value.partial_cmp(&y.value).expect("finite values"))
        .ok_or(Error::AllGeneratorsInfinite)?;

    let mut weights = vec![0.0; generators.len()];
    for (i, &t) in active.iter().enumerate() {
        weights[t] = best.x[i];
    }
    let projection = alpha_mixture(generators, &weights, alpha)?;
    let value = renyi_divergence(projection.dist(), q, alpha)?;
    Ok(ProjectionResult { projection, value, iterations, converged: best.converged })
}

/// `D_α(P‖Q) - D_α(P‖P*) - D_α(P*‖Q)`, nonnegative when `P*` is the projection.
///
/// Infinite left-hand sides make the inequality trivial and yield `+inf`.
pub fn pythagorean_gap(p: &DiscreteDist, result: &ProjectionResult, q: &DiscreteDist, alpha: Order) -> Result<f64> {
    let star = result.dist();
    let lhs = renyi_divergence(p, q, alpha)?.value();
    let to_star = renyi_divergence(p, star, alpha)?.value();
    let star_q = renyi_divergence(star, q, alpha)?.value();
    if lhs == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok(lhs - to_star - star_q)
}
