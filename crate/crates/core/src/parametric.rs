//! Closed forms for normal distributions, additivity over product
//! measures, and dichotomy verdicts for infinite products.

use crate::divergence::renyi_divergence;
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::ExtendedReal;
use crate::order::{Order, OrderClass};

/// Mean and variance of a univariate normal distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    mean: f64,
    variance: f64,
}

impl GaussianParams {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::ParameterOutOfRange(format!("mean {mean} is not finite")));
        }
        if !(variance > 0.0) || !variance.is_finite() {
            return Err(Error::NonPositiveVariance(variance));
        }
        Ok(GaussianParams { mean, variance })
    }

    pub fn standard() -> Self {
        GaussianParams { mean: 0.0, variance: 1.0 }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn log_density(&self, x: f64) -> f64 {
        let z = x - self.mean;
        -0.5 * z * z / self.variance - 0.5 * (2.0 * std::f64::consts::PI * self.variance).ln()
    }
}

/// `D_α(N(μ₀,σ₀²) ‖ N(μ₁,σ₁²))` for `α ∈ [0, inf]`.
///
/// For simple orders this is
/// `α(μ₁-μ₀)²/(2σ_α²) + ln(σ_α / (σ₀^(1-α) σ₁^α))/(1-α)` with
/// `σ_α² = (1-α)σ₀² + ασ₁²`, and `+inf` once `σ_α² ≤ 0`.
///
/// At `α = inf` the value is the log of the supremum of the density ratio:
/// finite only when `σ₀² < σ₁²`, or when the two distributions coincide.
pub fn gaussian_renyi(g0: &GaussianParams, g1: &GaussianParams, alpha: Order) -> Result<ExtendedReal> {
    let dm2 = (g1.mean - g0.mean).powi(2);
    let (v0, v1) = (g0.variance, g1.variance);
    let value = match alpha.class() {
        OrderClass::Negative | OrderClass::NegInfinity => {
            return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "gaussian_renyi" })
        }
        OrderClass::Zero => 0.0,
        OrderClass::One => 0.5 * (dm2 / v1 + (v1 / v0).ln() + v0 / v1 - 1.0),
        OrderClass::Infinity => {
            if v0 < v1 {
                dm2 / (2.0 * (v1 - v0)) + 0.5 * (v1 / v0).ln()
            } else if v0 == v1 && dm2 == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        }
        OrderClass::Simple => {
            let a = alpha.value();
            let va = (1.0 - a) * v0 + a * v1;
            if va <= 0.0 {
                f64::INFINITY
            } else {
                let log_ratio = 0.5 * va.ln() - 0.5 * (1.0 - a) * v0.ln() - 0.5 * a * v1.ln();
                a * dm2 / (2.0 * va) + log_ratio / (1.0 - a)
            }
        }
    };
    Ok(ExtendedReal::from_f64(value.max(0.0)))
}

/// One coordinate `(P_n, Q_n)` of a product measure.
#[derive(Debug, Clone, PartialEq)]
pub enum CoordinatePair {
    Gaussian(GaussianParams, GaussianParams),
    Discrete(DiscreteDist, DiscreteDist),
}

impl CoordinatePair {
    pub fn divergence(&self, alpha: Order) -> Result<ExtendedReal> {
        match self {
            CoordinatePair::Gaussian(p, q) => gaussian_renyi(p, q, alpha),
            CoordinatePair::Discrete(p, q) => renyi_divergence(p, q, alpha),
        }
    }
}

/// Finite product `P₁×…×P_N` against `Q₁×…×Q_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpec {
    pairs: Vec<CoordinatePair>,
}

impl ProductSpec {
    pub fn new(pairs: Vec<CoordinatePair>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput("product specification"));
        }
        Ok(ProductSpec { pairs })
    }

    pub fn pairs(&self) -> &[CoordinatePair] {
        &self.pairs
    }
}

/// `D_α` of a finite product: the sum of the coordinate divergences, with an
/// infinite coordinate absorbing the sum.
pub fn product_divergence(spec: &ProductSpec, alpha: Order) -> Result<ExtendedReal> {
    let mut total = ExtendedReal::ZERO;
    for pair in &spec.pairs {
        let d = pair.divergence(alpha)?;
        total = total
            .checked_add(d)
            .ok_or_else(|| Error::Numerical("coordinate divergences of opposite infinite sign".into()))?;
    }
    Ok(total)
}

/// Verdict on the equivalence of two infinite product measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Singular,
    Undecided,
}

/// A claim about every term `t_n` (`n = 1, 2, …`) of a nonnegative series.
///
/// The claim is checked on the computed prefix; only the tail is taken on trust.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesCertificate {
    None,
    /// `t_n ≤ coef · n^(-exponent)`; proves convergence when `exponent > 1`.
    PowerUpper { coef: f64, exponent: f64 },
    /// `t_n ≤ coef · ratio^n`; proves convergence when `ratio < 1`.
    GeometricUpper { coef: f64, ratio: f64 },
    /// `t_n ≥ coef · n^(-exponent)` with `coef > 0`; proves divergence when `exponent ≤ 1`.
    PowerLower { coef: f64, exponent: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub verdict: Verdict,
    /// Sum of the computed terms.
    pub partial_sum: f64,
    pub terms: usize,
    /// Upper bound on the remainder `Σ_{n>N} t_n`, when convergence is certified.
    pub tail_bound: Option<f64>,
    /// False if some computed term contradicts the certificate.
    pub certificate_holds: bool,
}

/// Classifies `Σ t_n` as convergent (equivalent measures), divergent
/// (singular) or undecided, from the prefix `terms` and a tail certificate.
pub fn classify_series(terms: &[f64], certificate: SeriesCertificate) -> Result<SeriesReport> {
    if terms.is_empty() {
        return Err(Error::EmptyInput("series"));
    }
    if let Some(i) = terms.iter().position(|t| !(*t >= 0.0)) {
        return Err(Error::InvalidArgument(format!("series term {} is {}", i + 1, terms[i])));
    }
    let partial_sum: f64 = terms.iter().sum();
    let n_terms = terms.len();
    if partial_sum == f64::INFINITY {
        return Ok(SeriesReport {
            verdict: Verdict::Singular,
            partial_sum,
            terms: n_terms,
            tail_bound: None,
            certificate_holds: true,
        });
    }
    let fits = |bound: &dyn Fn(f64) -> f64, upper: bool| {
        terms.iter().enumerate().all(|(i, &t)| {
            let b = bound((i + 1) as f64);
            let slack = 1e-12 * b.abs() + 1e-300;
            if upper {
                t <= b + slack
            } else {
                t >= b - slack
            }
        })
    };
    let big_n = n_terms as f64;
    let (verdict, tail_bound, holds) = match certificate {
        SeriesCertificate::None => (Verdict::Undecided, None, true),
        SeriesCertificate::PowerUpper { coef, exponent } => {
            let holds = coef >= 0.0 && fits(&|n| coef * n.powf(-exponent), true);
            if holds && exponent > 1.0 {
                let tail = coef * big_n.powf(1.0 - exponent) / (exponent - 1.0);
                (Verdict::Equivalent, Some(tail), true)
            } else {
                (Verdict::Undecided, None, holds)
            }
        }
        SeriesCertificate::GeometricUpper { coef, ratio } => {
            let holds = coef >= 0.0 && ratio >= 0.0 && fits(&|n| coef * ratio.powf(n), true);
            if holds && ratio < 1.0 {
                let tail = coef * ratio.powf(big_n + 1.0) / (1.0 - ratio);
                (Verdict::Equivalent, Some(tail), true)
            } else {
                (Verdict::Undecided, None, holds)
            }
        }
        SeriesCertificate::PowerLower { coef, exponent } => {
            let holds = fits(&|n| coef * n.powf(-exponent), false);
            if holds && coef > 0.0 && exponent <= 1.0 {
                (Verdict::Singular, None, true)
            } else {
                (Verdict::Undecided, None, holds)
            }
        }
    };
    Ok(SeriesReport { verdict, partial_sum, terms: n_terms, tail_bound, certificate_holds: holds })
}

/// Coordinates `N(μ_n, 1)` vs `N(ν_n, 1)` of an infinite Gaussian product.
pub struct SequenceSpec {
    means: Box<dyn Fn(usize) -> (f64, f64) + Send + Sync>,
    truncation: usize,
    certificate: SeriesCertificate,
}

impl SequenceSpec {
    /// `means(n)` returns `(μ_n, ν_n)` for `n = 1, 2, …`. The certificate
    /// speaks about the squared gaps `(μ_n - ν_n)²`.
    pub fn new<F>(truncation: usize, certificate: SeriesCertificate, means: F) -> Result<Self>
    where
        F: Fn(usize) -> (f64, f64) + Send + Sync + 'static,
    {
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be at least 1".into()));
        }
        Ok(SequenceSpec { means: Box::new(means), truncation, certificate })
    }

    /// Gaps `μ_n - ν_n = coef · n^(-exponent)`.
    pub fn power_gap(
        coef: f64,
        exponent: f64,
        truncation: usize,
        certificate: SeriesCertificate,
    ) -> Result<Self> {
        Self::new(truncation, certificate, move |n| (coef * (n as f64).powf(-exponent), 0.0))
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn squared_gaps(&self) -> Vec<f64> {
        (1..=self.truncation)
            .map(|n| {
                let (mu, nu) = (self.means)(n);
                (mu - nu) * (mu - nu)
            })
            .collect()
    }
}

impl std::fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("truncation", &self.truncation)
            .field("certificate", &self.certificate)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyReport {
    pub series: SeriesReport,
    /// `α/2 · Σ_{n≤N} (μ_n - ν_n)²`, a lower bound on `D_α(P‖Q)`.
    pub divergence_estimate: f64,
    /// Upper bound on `D_α(P‖Q)` when the sum is certified convergent.
    pub divergence_upper: Option<f64>,
}

impl DichotomyReport {
    pub fn verdict(&self) -> Verdict {
        self.series.verdict
    }
}

/// Decides between equivalence and mutual singularity of two infinite
/// products of unit-variance normals.
///
/// Countable additivity fails at `α = 0`, so only `α ∈ (0, inf)` is accepted.
pub fn gaussian_dichotomy(spec: &SequenceSpec, alpha: Order) -> Result<DichotomyReport> {
    if !alpha.is_positive_finite() {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "gaussian_dichotomy" });
    }
    let a = alpha.value();
    let series = classify_series(&spec.squared_gaps(), spec.certificate)?;
    let divergence_estimate = 0.5 * a * series.partial_sum;
    let divergence_upper = series.tail_bound.map(|t| 0.5 * a * (series.partial_sum + t));
    Ok(DichotomyReport { series, divergence_estimate, divergence_upper })
}

/// Kakutani's classifier applied to per-coordinate divergences `D_α(P_n‖Q_n)`.
///
/// An infinite coordinate decides singularity on its own.
pub fn kakutani_classify(values: &[ExtendedReal], certificate: SeriesCertificate) -> Result<SeriesReport> {
    let terms: Vec<f64> = values.iter().map(|v| v.value()).collect();
    classify_series(&terms, certificate)
}

/// Parametric families with a known Fisher information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FisherFamily {
    /// `N(θ, σ²)` with known `σ`.
    GaussianLocation { sigma: f64 },
    /// `(θ, 1-θ)` on two letters.
    Bernoulli,
}

impl FisherFamily {
    pub fn fisher_information(&self, theta: f64) -> Result<f64> {
        self.check(theta)?;
        Ok(match *self {
            FisherFamily::GaussianLocation { sigma } => 1.0 / (sigma * sigma),
            FisherFamily::Bernoulli => 1.0 / (theta * (1.0 - theta)),
        })
    }

    fn check(&self, theta: f64) -> Result<()> {
        match *self {
            FisherFamily::GaussianLocation { sigma } => {
                if !(sigma > 0.0) || !sigma.is_finite() || !theta.is_finite() {
                    return Err(Error::ParameterOutOfRange(format!(
                        "gaussian location family needs sigma > 0 and finite theta (sigma {sigma}, theta {theta})"
                    )));
                }
            }
            FisherFamily::Bernoulli => {
                if !(theta > 0.0 && theta < 1.0) {
                    return Err(Error::ParameterOutOfRange(format!(
                        "bernoulli parameter {theta} outside (0, 1)"
                    )));
                }
            }
        }
        Ok(())
    }

    fn divergence(&self, theta: f64, other: f64, alpha: Order) -> Result<ExtendedReal> {
        match *self {
            FisherFamily::GaussianLocation { sigma } => {
                let v = sigma * sigma;
                gaussian_renyi(&GaussianParams::new(theta, v)?, &GaussianParams::new(other, v)?, alpha)
            }
            FisherFamily::Bernoulli => {
                let p = DiscreteDist::from_probs(&[theta, 1.0 - theta])?;
                let q = DiscreteDist::from_probs(&[other, 1.0 - other])?;
                renyi_divergence(&p, &q, alpha)
            }
        }
    }
}

/// `D_α(P_θ‖P_{θ+h}) / h²`, which tends to `α J(θ) / 2` as `h → 0`.
pub fn fisher_taylor_ratio(family: FisherFamily, theta: f64, h: f64, alpha: Order) -> Result<f64> {
    if !alpha.is_positive_finite() {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "fisher_taylor_ratio" });
    }
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidArgument("step h must be finite and nonzero".into()));
    }
    family.check(theta)?;
    family.check(theta + h)?;
    let d = family.divergence(theta, theta + h, alpha)?;
    Ok(d.value() / (h * h))
}
