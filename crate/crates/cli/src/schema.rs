//! Input documents. Distributions are arrays of plain probabilities.

use renyi_core::capacity::Channel;
use renyi_core::discretize::DensitySpec;
use renyi_core::parametric::{CoordinatePair, GaussianParams, SeriesCertificate};
use renyi_core::{DiscreteDist, Order, Result};
use serde::Deserialize;

pub fn dist(probs: &[f64]) -> Result<DiscreteDist> {
    DiscreteDist::from_probs(probs)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Single {
    pub p: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pair {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl Pair {
    pub fn dists(&self) -> Result<(DiscreteDist, DiscreteDist)> {
        Ok((dist(&self.p)?, dist(&self.q)?))
    }
}

/// An order given as a JSON number or as one of the strings `inf`, `-inf`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OrderValue {
    Number(f64),
    Text(String),
}

impl OrderValue {
    pub fn order(&self) -> Result<Order> {
        match self {
            OrderValue::Number(a) => Order::new(*a),
            OrderValue::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Curve {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub alphas: Option<Vec<OrderValue>>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Normal {
    pub mean: f64,
    pub variance: f64,
}

impl Normal {
    pub fn params(self) -> Result<GaussianParams> {
        GaussianParams::new(self.mean, self.variance)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalPair {
    pub p: Normal,
    pub q: Normal,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Coordinate {
    Gaussian(NormalPair),
    Discrete(Pair),
}

impl Coordinate {
    pub fn pair(&self) -> Result<CoordinatePair> {
        Ok(match self {
            Coordinate::Gaussian(g) => CoordinatePair::Gaussian(g.p.params()?, g.q.params()?),
            Coordinate::Discrete(d) => {
                let (p, q) = d.dists()?;
                CoordinatePair::Discrete(p, q)
            }
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub pairs: Vec<Coordinate>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Certificate {
    None,
    PowerUpper { coef: f64, exponent: f64 },
    GeometricUpper { coef: f64, ratio: f64 },
    PowerLower { coef: f64, exponent: f64 },
}

impl From<Certificate> for SeriesCertificate {
    fn from(c: Certificate) -> Self {
        match c {
            Certificate::None => SeriesCertificate::None,
            Certificate::PowerUpper { coef, exponent } => SeriesCertificate::PowerUpper { coef, exponent },
            Certificate::GeometricUpper { coef, ratio } => SeriesCertificate::GeometricUpper { coef, ratio },
            Certificate::PowerLower { coef, exponent } => SeriesCertificate::PowerLower { coef, exponent },
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerGap {
    pub coef: f64,
    pub exponent: f64,
    pub truncation: usize,
}

/// Mean gaps `μ_n - ν_n`, listed or as `coef · n^(-exponent)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dichotomy {
    pub gaps: Option<Vec<f64>>,
    pub power: Option<PowerGap>,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mixture {
    pub generators: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Project {
    pub q: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
    pub starts: Option<usize>,
}

pub fn generators(rows: &[Vec<f64>]) -> Result<Vec<DiscreteDist>> {
    rows.iter().map(|r| dist(r)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    pub labels: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
}

impl ChannelDoc {
    pub fn channel(&self) -> Result<Channel> {
        let rows = generators(&self.rows)?;
        match &self.labels {
            Some(labels) => Channel::with_labels(labels.clone(), rows),
            None => Channel::new(rows),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Probe {
    pub channel: ChannelDoc,
    pub q: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Density {
    Gaussian(Normal),
    Uniform { lo: f64, hi: f64 },
}

impl Density {
    pub fn spec(self) -> Result<DensitySpec> {
        match self {
            Density::Gaussian(n) => Ok(DensitySpec::gaussian(n.params()?)),
            Density::Uniform { lo, hi } => DensitySpec::uniform(lo, hi),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discretize {
    pub p: Density,
    pub q: Density,
    pub nodes_per_cell: Option<usize>,
}
