use renyi_core::capacity::{
    conjecture_probe, minimax_redundancy, ml_capacity_input, ml_parameter, shtarkov, Channel,
};
use renyi_core::discretize::refine_to_convergence;
use renyi_core::hypothesis::{chernoff, pinsker_check, tilted};
use renyi_core::parametric::{gaussian_dichotomy, gaussian_renyi, product_divergence, ProductSpec, SequenceSpec, Verdict};
use renyi_core::projection::{alpha_mixture, alpha_project, normalizer_bounds, ProjectionOptions};
use renyi_core::{divergence_curve, renyi_divergence, renyi_entropy, DiscreteDist, Order};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{Base, Command};
use crate::output::{num, nums, Failure, Report, Units};
use crate::schema;

/// Flags shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub alpha: Option<Order>,
    pub base: Base,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Context {
    /// Orders default to 1, the Kullback-Leibler case.
    fn alpha(&self) -> Order {
        self.alpha.unwrap_or(Order::ONE)
    }

    fn tol(&self, default: f64) -> Result<f64, Failure> {
        let t = self.tol.unwrap_or(default);
        if t > 0.0 && t.is_finite() {
            Ok(t)
        } else {
            Err(Failure::validation(format!("tolerance {t} must be positive and finite")))
        }
    }

    fn units(&self) -> Units {
        Units(self.base)
    }
}

const CAPACITY_TOL: f64 = 1e-8;
const PROJECTION_TOL: f64 = 1e-8;
const CHERNOFF_TOL: f64 = 1e-12;
const DISCRETIZE_TOL: f64 = 1e-4;

/// Orders used by `curve` when the input lists none: 0 to 5 in steps of 0.05, then inf.
fn default_grid() -> Vec<Order> {
    (0..=100)
        .map(|i| Order::new(i as f64 * 0.05).expect("finite order"))
        .chain([Order::INFINITY])
        .collect()
}

fn parse<T: DeserializeOwned>(input: &str) -> Result<T, Failure> {
    Ok(serde_json::from_str(input)?)
}

fn probs(d: &DiscreteDist) -> Value {
    nums(&d.probs())
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Equivalent => "equivalent",
        Verdict::Singular => "singular",
        Verdict::Undecided => "undecided",
    }
}

pub fn run(command: Command, ctx: &Context, input: &str) -> Result<Report, Failure> {
    let u = ctx.units();
    match command {
        Command::Div => {
            let (p, q) = parse::<schema::Pair>(input)?.dists()?;
            Ok(Report::exact(u.ext(renyi_divergence(&p, &q, ctx.alpha())?)))
        }
        Command::Curve => {
            let doc: schema::Curve = parse(input)?;
            let (p, q) = (schema::dist(&doc.p)?, schema::dist(&doc.q)?);
            let alphas = match &doc.alphas {
                Some(list) => list.iter().map(|a| a.order()).collect::<renyi_core::Result<Vec<_>>>()?,
                None => default_grid(),
            };
            let values = divergence_curve(&p, &q, &alphas)?;
            let points: Vec<Value> = alphas
                .iter()
                .zip(&values)
                .map(|(a, d)| json!({ "alpha": num(a.value()), "divergence": u.ext(*d) }))
                .collect();
            let table = alphas.iter().zip(&values).map(|(a, d)| (*a, d.value())).collect();
            Ok(Report { table: Some(table), ..Report::exact(Value::Array(points)) })
        }
        Command::Entropy => {
            let p = schema::dist(&parse::<schema::Single>(input)?.p)?;
            Ok(Report::exact(u.info(renyi_entropy(&p, ctx.alpha())?)))
        }
        Command::Gaussian => {
            let doc: schema::NormalPair = parse(input)?;
            let d = gaussian_renyi(&doc.p.params()?, &doc.q.params()?, ctx.alpha())?;
            Ok(Report::exact(u.ext(d)))
        }
        Command::Product => {
            let doc: schema::Product = parse(input)?;
            let pairs = doc.pairs.iter().map(|c| c.pair()).collect::<renyi_core::Result<Vec<_>>>()?;
            let d = product_divergence(&ProductSpec::new(pairs)?, ctx.alpha())?;
            Ok(Report::exact(u.ext(d)))
        }
        Command::Dichotomy => dichotomy(ctx, parse(input)?),
        Command::Mixture => {
            let doc: schema::Mixture = parse(input)?;
            let gens = schema::generators(&doc.generators)?;
            let a = ctx.alpha();
            let m = alpha_mixture(&gens, &doc.weights, a)?;
            let (lo, hi) = normalizer_bounds(gens.len(), a.value());
            Ok(Report::exact(json!({
                "dist": probs(m.dist()),
                "weights": nums(m.weights()),
                "normalizer": num(m.normalizer()),
                "normalizer_bounds": [num(lo), num(hi)],
            })))
        }
        Command::Project => {
            let doc: schema::Project = parse(input)?;
            let q = schema::dist(&doc.q)?;
            let gens = schema::generators(&doc.generators)?;
            let tol = ctx.tol(PROJECTION_TOL)?;
            let defaults = ProjectionOptions::default();
            let opts = ProjectionOptions { tol, seed: ctx.seed, starts: doc.starts.unwrap_or(defaults.starts), ..defaults };
            let r = alpha_project(&q, &gens, ctx.alpha(), opts)?;
            if !r.converged {
                return Err(Failure::non_convergence(format!(
                    "projected gradient stopped after {} iterations at value {}",
                    r.iterations,
                    r.value.value()
                )));
            }
            Ok(Report {
                iterations: Some(r.iterations),
                tol: Some(tol),
                ..Report::exact(json!({
                    "dist": probs(r.dist()),
                    "weights": nums(r.weights()),
                    "divergence": u.ext(r.value),
                }))
            })
        }
        Command::Tilt => {
            let (p, q) = parse::<schema::Pair>(input)?.dists()?;
            Ok(Report::exact(probs(&tilted(&p, &q, ctx.alpha())?)))
        }
        Command::Chernoff => {
            let (p, q) = parse::<schema::Pair>(input)?.dists()?;
            let tol = ctx.tol(CHERNOFF_TOL)?;
            let r = chernoff(&p, &q, tol)?;
            if !(r.cross_checked || r.boundary) {
                return Err(Failure::non_convergence(format!(
                    "bisection value {} and golden-section value {} disagree",
                    r.value, r.golden_value
                )));
            }
            Ok(Report {
                iterations: Some(r.iterations),
                tol: Some(tol),
                ..Report::exact(json!({
                    "alpha_star": num(r.alpha_star),
                    "value": u.info(r.value),
                    "balance": u.info(r.balance),
                    "golden_alpha": num(r.golden_alpha),
                    "golden_value": u.info(r.golden_value),
                    "boundary": r.boundary,
                }))
            })
        }
        Command::Pinsker => {
            let (p, q) = parse::<schema::Pair>(input)?.dists()?;
            let r = pinsker_check(&p, &q, ctx.alpha())?;
            Ok(Report::exact(json!({
                "bound": u.info(r.bound),
                "divergence": u.ext(r.divergence),
                "holds": r.holds,
            })))
        }
        Command::Capacity => {
            let ch = parse::<schema::ChannelDoc>(input)?.channel()?;
            let tol = ctx.tol(CAPACITY_TOL)?;
            let r = minimax_redundancy(&ch, ctx.alpha(), tol)?;
            if !r.converged {
                return Err(Failure::non_convergence(format!(
                    "duality gap {} exceeds tolerance {tol} (upper bound {})",
                    r.duality_gap, r.value
                )));
            }
            Ok(Report {
                iterations: Some(r.iterations),
                tol: Some(tol),
                ..Report::exact(json!({
                    "labels": ch.labels(),
                    "redundancy": u.info(r.value),
                    "q_opt": probs(&r.q_opt),
                    "per_theta": u.exts(&r.per_theta),
                    "input": nums(&r.input),
                    "duality_gap": u.info(r.duality_gap),
                }))
            })
        }
        Command::Shtarkov => {
            let ch = parse::<schema::ChannelDoc>(input)?.channel()?;
            let s = shtarkov(&ch);
            Ok(Report::exact(json!({ "dist": probs(&s.dist), "redundancy": u.info(s.value) })))
        }
        Command::Mlinput => {
            let ch = parse::<schema::ChannelDoc>(input)?.channel()?;
            Ok(Report::exact(json!({
                "labels": ch.labels(),
                "input": nums(&ml_capacity_input(&ch)),
                "ml_parameter": ml_parameters(&ch),
            })))
        }
        Command::Probe => {
            let doc: schema::Probe = parse(input)?;
            let ch = doc.channel.channel()?;
            let q = schema::dist(&doc.q)?;
            let tol = ctx.tol(CAPACITY_TOL)?;
            let r = minimax_redundancy(&ch, ctx.alpha(), tol)?;
            if !r.converged {
                return Err(Failure::non_convergence(format!("duality gap {} exceeds tolerance {tol}", r.duality_gap)));
            }
            let gap = conjecture_probe(&ch, &q, &r)?;
            Ok(Report {
                iterations: Some(r.iterations),
                tol: Some(tol),
                ..Report::exact(json!({ "gap": u.info(gap), "redundancy": u.info(r.value) }))
            })
        }
        Command::Discretize => {
            let doc: schema::Discretize = parse(input)?;
            let (mut p, mut q) = (doc.p.spec()?, doc.q.spec()?);
            if let Some(n) = doc.nodes_per_cell {
                p = p.with_nodes_per_cell(n)?;
                q = q.with_nodes_per_cell(n)?;
            }
            let tol = ctx.tol(DISCRETIZE_TOL)?;
            let r = refine_to_convergence(&p, &q, ctx.alpha(), tol)?;
            if !r.converged {
                return Err(Failure::non_convergence(format!(
                    "estimates still moved by more than {tol} at the finest level; last estimate {}",
                    r.estimate.value()
                )));
            }
            let schedule: Vec<Value> = r
                .schedule
                .iter()
                .map(|(e, d)| json!({ "epsilon": num(*e), "estimate": u.ext(*d) }))
                .collect();
            Ok(Report {
                iterations: Some(r.schedule.len()),
                tol: Some(tol),
                ..Report::exact(json!({
                    "estimate": u.ext(r.estimate),
                    "schedule": schedule,
                    "monotone": r.monotone,
                }))
            })
        }
    }
}

fn ml_parameters(ch: &Channel) -> Value {
    (0..ch.alphabet_size()).map(|x| ml_parameter(ch, x)).collect::<Vec<_>>().into()
}

fn dichotomy(ctx: &Context, doc: schema::Dichotomy) -> Result<Report, Failure> {
    let certificate = doc.certificate.unwrap_or(schema::Certificate::None).into();
    let spec = match (doc.gaps, doc.power) {
        (Some(gaps), None) => SequenceSpec::new(gaps.len(), certificate, move |n| (gaps[n - 1], 0.0))?,
        (None, Some(g)) => SequenceSpec::power_gap(g.coef, g.exponent, g.truncation, certificate)?,
        _ => return Err(Failure::validation("give exactly one of `gaps` and `power`")),
    };
    let r = gaussian_dichotomy(&spec, ctx.alpha())?;
    let u = ctx.units();
    Ok(Report::exact(json!({
        "verdict": verdict(r.verdict()),
        "partial_sum": num(r.series.partial_sum),
        "terms": r.series.terms,
        "tail_bound": r.series.tail_bound.map(num),
        "certificate_holds": r.series.certificate_holds,
        "divergence_estimate": u.info(r.divergence_estimate),
        "divergence_upper": r.divergence_upper.map(|d| u.info(d)),
    })))
}
