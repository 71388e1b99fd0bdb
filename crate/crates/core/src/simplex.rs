//! Projected-gradient minimization over the probability simplex.

/// Euclidean projection of `v` onto `{x ≥ 0, Σx = 1}`.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite input"));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let t = (cumsum - 1.0) / (j as f64 + 1.0);
        if uj - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PgOptions {
    /// Threshold on `‖Π(x - ∇f) - x‖₂`.
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct PgOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const GRAD_CAP: f64 = 1e12;

fn sanitize(mut g: Vec<f64>) -> Vec<f64> {
    for v in &mut g {
        if v.is_nan() {
            *v = 0.0;
        } else {
            *v = v.clamp(-GRAD_CAP, GRAD_CAP);
        }
    }
    g
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn stationarity(x: &[f64], g: &[f64]) -> f64 {
    let z: Vec<f64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
    let p = project_to_simplex(&z);
    p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Minimizes `f` over the simplex starting from a point where `f` is finite.
///
/// Steps follow the Barzilai-Borwein rule with Armijo backtracking along the
/// projection arc. Once `f` stops resolving the decrease, a step is still
/// accepted if it does not raise `f` beyond rounding and it shrinks the
/// stationarity measure, so the analytic gradient can drive convergence below
/// the precision of the objective values.
pub(crate) fn minimize<F>(mut f: F, x0: &[f64], opts: PgOptions) -> PgOutcome
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let mut x = project_to_simplex(x0);
    let (mut fx, g0) = f(&x);
    let mut g = sanitize(g0);
    let mut step = 1.0;
    let mut stat = stationarity(&x, &g);
    let mut iterations = 0;
    if !fx.is_finite() {
        return PgOutcome { x, value: fx, iterations, converged: false };
    }
    while iterations < opts.max_iter {
        if stat < opts.tol {
            return PgOutcome { x, value: fx, iterations, converged: true };
        }
        iterations += 1;
        let mut trial = step;
        let accepted = loop {
            let z: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - trial * b).collect();
            let xn = project_to_simplex(&z);
            let (fnew, gn) = f(&xn);
            if fnew.is_finite() {
                let gn = sanitize(gn);
                let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
                let decrease = dot(&g, &s);
                let slack = 1e-13 * fx.abs().max(1.0);
                let armijo = fnew <= fx + 1e-4 * decrease;
                let stat_new = stationarity(&xn, &gn);
                if armijo || (fnew <= fx + slack && stat_new < stat) {
                    break Some((xn, fnew, gn, s, stat_new));
                }
            }
            trial *= 0.5;
            if trial < 1e-30 {
                break None;
            }
        };
        let Some((xn, fnew, gn, s, stat_new)) = accepted else {
            break;
        };
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        step = if sy > 0.0 { dot(&s, &s) / sy } else { trial * 2.0 };
        step = step.clamp(1e-12, 1e12);
        x = xn;
        fx = fnew;
        g = gn;
        stat = stat_new;
    }
    PgOutcome { x, value: fx, iterations, converged: stat < opts.tol }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_lands_on_simplex() {
        let cases: [&[f64]; 4] = [&[0.2, 0.3, 0.5], &[2.0, 0.0, 0.0], &[-1.0, -1.0], &[0.5, 10.0, -3.0, 0.7]];
        for v in cases {
            let p = project_to_simplex(v);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(p.iter().all(|&x| x >= 0.0));
        }
        assert_eq!(project_to_simplex(&[0.2, 0.3, 0.5]), vec![0.2, 0.3, 0.5]);
        assert_eq!(project_to_simplex(&[2.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(project_to_simplex(&[-1.0, -1.0]), vec![0.5, 0.5]);
    }

    #[test]
    fn minimizes_quadratic_with_interior_and_boundary_optimum() {
        let target = [0.1, 0.6, 0.3];
        let out = minimize(
            |x| {
                let v = x.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum();
                let g = x.iter().zip(&target).map(|(a, b)| 2.0 * (a - b)).collect();
                (v, g)
            },
            &[1.0 / 3.0; 3],
            PgOptions { tol: 1e-12, max_iter: 1000 },
        );
        assert!(out.converged);
        for (a, b) in out.x.iter().zip(target) {
            assert!((a - b).abs() < 1e-10);
        }
        // Linear objective: optimum at the vertex with the smallest cost.
        let c = [0.3, -0.2, 0.5];
        let out = minimize(
            |x| (dot(x, &c), c.to_vec()),
            &[1.0 / 3.0; 3],
            PgOptions { tol: 1e-12, max_iter: 1000 },
        );
        assert!(out.converged);
        assert!((out.x[1] - 1.0).abs() < 1e-12);
    }
}
