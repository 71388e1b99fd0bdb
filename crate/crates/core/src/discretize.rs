//! Finite-partition estimates of `D_α` between densities on the real line.
//!
//! A common window is cut into a fine uniform grid. Each grid sub-cell is
//! assigned to the level bin `(⌊ln p / ε⌋, ⌊ln q / ε⌋)` of its midpoint
//! densities, and bin masses are accumulated by the midpoint rule. The mass
//! outside the window goes to one overflow cell. Halving `ε` refines the
//! partition, so estimates never decrease.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use statrs::function::erf::erfc;

use crate::divergence::renyi_divergence;
use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::numeric::ExtendedReal;
use crate::order::Order;
use crate::par;
use crate::parametric::GaussianParams;

type Density = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Quadrature sub-cells per grid cell.
pub const DEFAULT_NODES_PER_CELL: usize = 8;
/// Grid cells across the window.
pub const DEFAULT_CELLS: usize = 20_000;
/// Allowed gap between quadrature mass and declared mass.
pub const MASS_TOL: f64 = 1e-6;
const GAUSSIAN_HALF_WIDTH: f64 = 6.0;

/// A probability density on the real line, concentrated on `[lo, hi]`.
#[derive(Clone)]
pub struct DensitySpec {
    density: Density,
    lo: f64,
    hi: f64,
    /// Mass of `[a, b]`; when absent the density vanishes outside `[lo, hi]`
    /// and `declared_mass` is its integral there.
    cdf: Option<Density>,
    declared_mass: f64,
    nodes_per_cell: usize,
}

impl fmt::Debug for DensitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensitySpec")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("declared_mass", &self.declared_mass)
            .field("nodes_per_cell", &self.nodes_per_cell)
            .finish_non_exhaustive()
    }
}

impl DensitySpec {
    /// A density that is zero outside `[lo, hi]` and integrates to `declared_mass` on it.
    pub fn new<F>(density: F, lo: f64, hi: f64, declared_mass: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] is empty or unbounded")));
        }
        if !(declared_mass > 0.0 && declared_mass <= 1.0 + MASS_TOL) {
            return Err(Error::InvalidArgument(format!("declared mass {declared_mass} outside (0, 1]")));
        }
        Ok(DensitySpec {
            density: Arc::new(density),
            lo,
            hi,
            cdf: None,
            declared_mass: declared_mass.min(1.0),
            nodes_per_cell: DEFAULT_NODES_PER_CELL,
        })
    }

    /// `N(μ, σ²)` concentrated on `μ ± 6σ`, where each tail holds about `1e-9`.
    pub fn gaussian(params: GaussianParams) -> Self {
        let (mu, sd) = (params.mean(), params.std_dev());
        let cdf = move |x: f64| 0.5 * erfc(-(x - mu) / (sd * std::f64::consts::SQRT_2));
        let lo = mu - GAUSSIAN_HALF_WIDTH * sd;
        let hi = mu + GAUSSIAN_HALF_WIDTH * sd;
        DensitySpec {
            density: Arc::new(move |x| params.log_density(x).exp()),
            lo,
            hi,
            declared_mass: cdf(hi) - cdf(lo),
            cdf: Some(Arc::new(cdf)),
            nodes_per_cell: DEFAULT_NODES_PER_CELL,
        }
    }

    /// Uniform density on `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        let height = 1.0 / (hi - lo);
        DensitySpec::new(move |x| if (lo..=hi).contains(&x) { height } else { 0.0 }, lo, hi, 1.0)
    }

    pub fn with_nodes_per_cell(mut self, nodes: usize) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidArgument("need at least one node per cell".into()));
        }
        self.nodes_per_cell = nodes;
        Ok(self)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn nodes_per_cell(&self) -> usize {
        self.nodes_per_cell
    }

    pub fn density(&self, x: f64) -> f64 {
        (self.density)(x)
    }

    /// Mass of `[a, b] ⊇ [lo, hi]`.
    fn mass_in(&self, a: f64, b: f64) -> f64 {
        match &self.cdf {
            Some(cdf) => cdf(b) - cdf(a),
            None => self.declared_mass,
        }
    }
}

/// Level index of a density value; `Zero` sorts below every finite level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Zero,
    Finite(i64),
}

impl Level {
    fn of(log_density: f64, epsilon: f64) -> Level {
        if log_density == f64::NEG_INFINITY {
            Level::Zero
        } else {
            Level::Finite((log_density / epsilon).floor() as i64)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelPartition {
    pub epsilon: f64,
    /// `(m, n) ↦ (P(B), Q(B))`.
    pub cells: BTreeMap<(Level, Level), (f64, f64)>,
    /// Mass of both densities outside the window.
    pub overflow: (f64, f64),
}

impl LevelPartition {
    pub fn totals(&self) -> (f64, f64) {
        let (mut p, mut q) = self.overflow;
        for (a, b) in self.cells.values() {
            p += a;
            q += b;
        }
        (p, q)
    }

    /// The induced finite distributions, cells in key order, overflow last.
    pub fn dists(&self) -> Result<(DiscreteDist, DiscreteDist)> {
        let (mut p, mut q): (Vec<f64>, Vec<f64>) = self.cells.values().copied().unzip();
        p.push(self.overflow.0);
        q.push(self.overflow.1);
        Ok((DiscreteDist::from_weights(&p)?, DiscreteDist::from_weights(&q)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOptions {
    pub cells: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { cells: DEFAULT_CELLS }
    }
}

/// Log densities at every quadrature node of the common window.
struct NodeTable {
    lp: Vec<f64>,
    lq: Vec<f64>,
    width: f64,
    overflow: (f64, f64),
}

fn checked_log(value: f64, x: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value.ln())
    } else {
        Err(Error::NegativeDensity { x, value })
    }
}

impl NodeTable {
    fn new(p: &DensitySpec, q: &DensitySpec, grid: GridOptions) -> Result<Self> {
        if grid.cells == 0 {
            return Err(Error::InvalidArgument("need at least one grid cell".into()));
        }
        let a = p.lo.min(q.lo);
        let b = p.hi.max(q.hi);
        let nodes = p.nodes_per_cell.max(q.nodes_per_cell);
        let total = grid.cells * nodes;
        let width = (b - a) / total as f64;
        let per_cell = par::map_indexed(grid.cells, |c| {
            (0..nodes)
                .map(|j| {
                    let x = a + ((c * nodes + j) as f64 + 0.5) * width;
                    Ok((checked_log(p.density(x), x)?, checked_log(q.density(x), x)?))
                })
                .collect::<Result<Vec<_>>>()
        });
        let mut lp = Vec::with_capacity(total);
        let mut lq = Vec::with_capacity(total);
        for cell in per_cell {
            for (u, v) in cell? {
                lp.push(u);
                lq.push(v);
            }
        }
        let mut masses = [0.0; 2];
        for (mass, (logs, spec)) in masses.iter_mut().zip([(&lp, p), (&lq, q)]) {
            let computed: f64 = logs.iter().map(|l| l.exp() * width).sum();
            let declared = spec.mass_in(a, b);
            if (computed - declared).abs() > MASS_TOL {
                return Err(Error::MassMismatch { computed, declared });
            }
            *mass = (1.0 - declared).max(0.0);
        }
        Ok(NodeTable { lp, lq, width, overflow: (masses[0], masses[1]) })
    }

    fn partition(&self, epsilon: f64) -> Result<LevelPartition> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidArgument(format!("level width {epsilon} must be positive")));
        }
        let mut cells = BTreeMap::new();
        for (&u, &v) in self.lp.iter().zip(&self.lq) {
            let entry = cells.entry((Level::of(u, epsilon), Level::of(v, epsilon))).or_insert((0.0, 0.0));
            entry.0 += u.exp() * self.width;
            entry.1 += v.exp() * self.width;
        }
        Ok(LevelPartition { epsilon, cells, overflow: self.overflow })
    }
}

/// The level partition of the common window of `p` and `q` at width `epsilon`.
pub fn level_partition(p: &DensitySpec, q: &DensitySpec, epsilon: f64) -> Result<LevelPartition> {
    level_partition_with(p, q, epsilon, GridOptions::default())
}

pub fn level_partition_with(p: &DensitySpec, q: &DensitySpec, epsilon: f64, grid: GridOptions) -> Result<LevelPartition> {
    NodeTable::new(p, q, grid)?.partition(epsilon)
}

/// `D_α` between the finite distributions a partition induces.
pub fn partition_divergence(part: &LevelPartition, alpha: Order) -> Result<ExtendedReal> {
    let (p, q) = part.dists()?;
    renyi_divergence(&p, &q, alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub estimate: ExtendedReal,
    /// `(ε, estimate)` in the order visited.
    pub schedule: Vec<(f64, ExtendedReal)>,
    /// No estimate dropped by more than `1e-10` under refinement.
    pub monotone: bool,
    /// Successive estimates came within `tol` before the `ε` floor.
    pub converged: bool,
}

pub const EPSILON_START: f64 = 1.0;
pub const EPSILON_FLOOR: f64 = 1e-4;

/// Halves `ε` from 1 until successive estimates differ by less than `tol`.
///
/// Reaching the floor `ε = 1e-4` is not an error; the last estimate is
/// returned with `converged = false`.
pub fn refine_to_convergence(p: &DensitySpec, q: &DensitySpec, alpha: Order, tol: f64) -> Result<Refinement> {
    refine_with(p, q, alpha, tol, GridOptions::default())
}

pub fn refine_with(p: &DensitySpec, q: &DensitySpec, alpha: Order, tol: f64, grid: GridOptions) -> Result<Refinement> {
    if !(alpha.value() > 0.0) {
        return Err(Error::UnsupportedOrder { order: alpha.value(), operation: "refine_to_convergence" });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let table = NodeTable::new(p, q, grid)?;
    let mut schedule: Vec<(f64, ExtendedReal)> = Vec::new();
    let mut epsilon = EPSILON_START;
    let mut monotone = true;
    let mut converged = false;
    while epsilon >= EPSILON_FLOOR {
        let estimate = partition_divergence(&table.partition(epsilon)?, alpha)?;
        if let Some(&(_, prev)) = schedule.last() {
            if estimate.value() < prev.value() - 1e-10 {
                monotone = false;
            }
            let close = if estimate.is_finite() {
                (estimate.value() - prev.value()).abs() < tol
            } else {
                estimate == prev
            };
            schedule.push((epsilon, estimate));
            if close {
                converged = true;
                break;
            }
        } else {
            schedule.push((epsilon, estimate));
        }
        epsilon *= 0.5;
    }
    let estimate = schedule.last().expect("at least one level").1;
    Ok(Refinement { estimate, schedule, monotone, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(m: f64, v: f64) -> DensitySpec {
        DensitySpec::gaussian(GaussianParams::new(m, v).unwrap())
    }

    #[test]
    fn partition_masses_sum_to_one() {
        let part = level_partition(&gauss(0.0, 1.0), &gauss(1.0, 1.0), 0.01).unwrap();
        let (p, q) = part.totals();
        assert!((p - 1.0).abs() < 1e-6 && (q - 1.0).abs() < 1e-6, "{p} {q}");
        assert!(part.overflow.0 > 0.0 && part.overflow.0 < 1e-8);
    }

    #[test]
    fn coarse_levels_and_identical_densities_give_zero() {
        let p = gauss(0.0, 1.0);
        let part = level_partition(&p, &p, 0.1).unwrap();
        assert!(part.cells.keys().all(|(m, n)| m == n));
        assert_eq!(partition_divergence(&part, Order::TWO).unwrap().value(), 0.0);
        let u = DensitySpec::uniform(0.0, 1.0).unwrap();
        let v = DensitySpec::uniform(0.0, 1.0).unwrap();
        let part = level_partition(&u, &v, 1e6).unwrap();
        assert_eq!(part.cells.len(), 1);
        assert_eq!(partition_divergence(&part, Order::HALF).unwrap().value(), 0.0);
    }

    #[test]
    fn conditioned_uniform_gives_log_two_at_every_level() {
        let p = DensitySpec::uniform(0.0, 1.0).unwrap();
        let q = DensitySpec::uniform(0.0, 2.0).unwrap();
        for eps in [1.0, 0.1, 0.01] {
            let part = level_partition(&p, &q, eps).unwrap();
            for a in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
                let d = partition_divergence(&part, Order::new(a).unwrap()).unwrap();
                assert!((d.value() - 2f64.ln()).abs() < 1e-9, "eps {eps} alpha {a}: {d}");
            }
        }
    }

    #[test]
    fn negative_density_is_rejected() {
        let bad = DensitySpec::new(|x| x - 0.5, 0.0, 1.0, 1.0).unwrap();
        let ok = DensitySpec::uniform(0.0, 1.0).unwrap();
        assert!(matches!(level_partition(&bad, &ok, 0.1), Err(Error::NegativeDensity { .. })));
    }

    #[test]
    fn declared_mass_is_checked() {
        let wrong = DensitySpec::new(|_| 2.0, 0.0, 1.0, 1.0).unwrap();
        let ok = DensitySpec::uniform(0.0, 1.0).unwrap();
        assert!(matches!(level_partition(&wrong, &ok, 0.1), Err(Error::MassMismatch { .. })));
    }

    #[test]
    fn refinement_of_identical_densities_stops_at_once() {
        let p = gauss(0.0, 1.0);
        let r = refine_to_convergence(&p, &p, Order::TWO, 1e-4).unwrap();
        assert!(r.converged && r.monotone);
        assert_eq!(r.schedule.len(), 2);
        assert_eq!(r.estimate.value(), 0.0);
        assert!(refine_to_convergence(&p, &p, Order::ZERO, 1e-4).is_err());
    }
}
