//! Finite probability vectors stored in the log domain.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp_slice;

/// Tolerance on the total mass of an accepted probability vector.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Inputs within this distance of mass 1 are renormalized; farther ones are rejected.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// A probability distribution on `{0, …, n-1}`, held as log-probabilities.
///
/// Zero-probability atoms are stored as `-inf`, so the support is explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    logp: Vec<f64>,
}

impl DiscreteDist {
    /// Builds a distribution from plain probabilities.
    ///
    /// Entries must be finite and nonnegative. A total within
    /// [`RENORMALIZE_TOL`] of 1 is rescaled to 1; anything farther is rejected.
    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        let sum = check_weights(probs)?;
        if (sum - 1.0).abs() > RENORMALIZE_TOL {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self::from_valid_weights(probs, sum))
    }

    /// Normalizes arbitrary nonnegative weights with a positive total.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let sum = check_weights(weights)?;
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self::from_valid_weights(weights, sum))
    }

    fn from_valid_weights(weights: &[f64], sum: f64) -> Self {
        let renormalize = (sum - 1.0).abs() > NORMALIZATION_TOL;
        let logp = weights
            .iter()
            .map(|&w| {
                let w = if renormalize { w / sum } else { w };
                w.ln()
            })
            .collect();
        DiscreteDist { logp }
    }

    /// Builds a distribution from log-probabilities (`-inf` marks zero mass).
    pub fn from_log_probs(logp: Vec<f64>) -> Result<Self> {
        if logp.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (index, &v) in logp.iter().enumerate() {
            if v.is_nan() || v == f64::INFINITY {
                return Err(Error::InvalidProbability { index, value: v.exp() });
            }
        }
        let total = log_sum_exp_slice(&logp);
        if total == f64::NEG_INFINITY || total.abs() > RENORMALIZE_TOL {
            return Err(Error::NotNormalized(total.exp()));
        }
        Ok(Self::from_unnormalized_logs(logp))
    }

    /// Normalizes log-weights whose log-sum-exp is finite. Callers guarantee that.
    pub(crate) fn from_unnormalized_logs(mut logp: Vec<f64>) -> Self {
        let total = log_sum_exp_slice(&logp);
        debug_assert!(total.is_finite());
        if total.abs() > NORMALIZATION_TOL * 1e-3 {
            for v in &mut logp {
                *v -= total;
            }
        }
        for v in &mut logp {
            if *v > 0.0 {
                *v = 0.0;
            }
        }
        DiscreteDist { logp }
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let l = -(n as f64).ln();
        Ok(DiscreteDist { logp: vec![l; n] })
    }

    pub fn point_mass(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidArgument(format!(
                "point mass index {index} outside alphabet of size {n}"
            )));
        }
        let mut logp = vec![f64::NEG_INFINITY; n];
        logp[index] = 0.0;
        Ok(DiscreteDist { logp })
    }

    /// Draws from the flat Dirichlet on the `(n-1)`-simplex.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        assert!(n > 0, "alphabet must be nonempty");
        let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
        let logs: Vec<f64> = w.iter().map(|x: &f64| x.ln()).collect();
        Self::from_unnormalized_logs(logs)
    }

    pub fn len(&self) -> usize {
        self.logp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logp.is_empty()
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.logp
    }

    pub fn log_prob(&self, i: usize) -> f64 {
        self.logp[i]
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.logp[i].exp()
    }

    pub fn probs(&self) -> Vec<f64> {
        self.logp.iter().map(|l| l.exp()).collect()
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.logp[i] > f64::NEG_INFINITY
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.in_support(i))
    }

    /// Probability of a set of atoms, in the log domain.
    pub fn log_mass_of<I: IntoIterator<Item = usize>>(&self, atoms: I) -> f64 {
        let terms: Vec<f64> = atoms.into_iter().map(|i| self.logp[i]).collect();
        log_sum_exp_slice(&terms)
    }

    /// Product distribution on `{0..n} × {0..m}`, flattened row-major.
    pub fn product(&self, other: &DiscreteDist) -> DiscreteDist {
        let mut logp = Vec::with_capacity(self.len() * other.len());
        for &a in &self.logp {
            for &b in &other.logp {
                logp.push(a + b);
            }
        }
        DiscreteDist { logp }
    }

    /// `P(· | A)` for a set of atoms `A` of positive probability.
    pub fn conditioned_on(&self, event: &[usize]) -> Result<DiscreteDist> {
        let mut logs = vec![f64::NEG_INFINITY; self.len()];
        for &i in event {
            if i >= self.len() {
                return Err(Error::InvalidArgument(format!("atom {i} outside alphabet")));
            }
            logs[i] = self.logp[i];
        }
        if log_sum_exp_slice(&logs) == f64::NEG_INFINITY {
            return Err(Error::InvalidArgument("conditioning event has probability zero".into()));
        }
        Ok(Self::from_unnormalized_logs(logs))
    }

    pub(crate) fn same_alphabet(&self, other: &DiscreteDist) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::SizeMismatch(self.len(), other.len()))
        }
    }
}

fn check_weights(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    for (index, &value) in weights.iter().enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::InvalidProbability { index, value });
        }
    }
    Ok(weights.iter().sum())
}

/// A row-stochastic matrix `W[i][j] = P(Y = j | X = i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    log_rows: Vec<Vec<f64>>,
    cols: usize,
}

impl StochasticMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("transition matrix"));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::EmptyInput("transition matrix row"));
        }
        let mut log_rows = Vec::with_capacity(rows.len());
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::SizeMismatch(cols, r.len()));
            }
            let sum: f64 = r.iter().sum();
            if r.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) || (sum - 1.0).abs() > RENORMALIZE_TOL {
                return Err(Error::NotStochastic { row, sum });
            }
            log_rows.push(r.iter().map(|&w| (w / sum).ln()).collect());
        }
        Ok(StochasticMatrix { log_rows, cols })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    /// Random matrix with independent flat-Dirichlet rows.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Self {
        let log_rows = (0..rows)
            .map(|_| DiscreteDist::random(rng, cols).logp)
            .collect();
        StochasticMatrix { log_rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.log_rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Distribution of the output of `W` when its input has distribution `P`.
pub fn pushforward(w: &StochasticMatrix, p: &DiscreteDist) -> Result<DiscreteDist> {
    if w.rows() != p.len() {
        return Err(Error::SizeMismatch(w.rows(), p.len()));
    }
    let logs: Vec<f64> = (0..w.cols)
        .map(|j| {
            let terms: Vec<f64> = p
                .logp
                .iter()
                .zip(&w.log_rows)
                .map(|(&lp, row)| lp + row[j])
                .collect();
            log_sum_exp_slice(&terms)
        })
        .collect();
    Ok(DiscreteDist::from_unnormalized_logs(logs))
}
