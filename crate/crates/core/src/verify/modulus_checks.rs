//! Zero-slack checks of the modulus formulas and of subgradient
//! monotonicity; no solver involved.

use serde_json::json;

use super::sample::Sampler;
use super::{attempts, cell, CheckSpec, ModulusTarget, Recorder};
use crate::error::{Error, Result};
use crate::moduli::{compose_modulus, power_norm_modulus, psi_compose_modulus, renorm, Modulus, PsiFunction, WitnessPair};
use crate::spaces::NormedSpace;
use crate::vector::{dot, midpoint, sub};
use crate::young::YoungFunction;

pub(super) fn modulus_inequalities(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let space = spec.space.build()?;
    match spec.target.expect("validated") {
        ModulusTarget::Space => space_modulus(spec, &space, rec),
        ModulusTarget::Scalar => scalar_modulus(spec, &space, rec),
        ModulusTarget::Compose => composed(spec, &space, rec),
        ModulusTarget::PowerNorm => power_norm(spec, &space, rec),
        ModulusTarget::PsiCompose => psi_compose(spec, &space, rec),
        ModulusTarget::Renorm => renormed(spec, &space, rec),
    }
}

/// `½g(u) + ½g(v) − g((u+v)/2)` for `g = G∘‖·‖`.
fn norm_gap<G: Fn(f64) -> f64>(space: &NormedSpace<f64>, g: G, u: &[f64], v: &[f64]) -> f64 {
    let m = midpoint(u, v);
    0.5 * g(space.norm_unchecked(u)) + 0.5 * g(space.norm_unchecked(v)) - g(space.norm_unchecked(&m))
}

/// Samples pairs of `B(center, r)` at least `eps` apart, cycling through
/// the ε-grid, and records `margin(eps, u, v)`.
fn sample_pairs<M>(spec: &CheckSpec, space: &NormedSpace<f64>, r: f64, rec: &mut Recorder, margin: M) -> Result<()>
where
    M: Fn(f64, &[f64], &[f64]) -> Result<f64>,
{
    let center = vec![0.0; space.dimension()];
    let live: Vec<f64> = spec.eps.iter().copied().filter(|&e| e <= 2.0 * r).collect();
    if live.len() < spec.eps.len() {
        rec.note(format!("eps values above the diameter {} are vacuous", 2.0 * r));
    }
    if live.is_empty() {
        return Ok(());
    }
    let mut sampler = Sampler::new(space, spec.seed);
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let eps = live[i % live.len()];
        let Some((u, v)) = sampler.pair_apart(&center, r, eps) else {
            continue;
        };
        let m = margin(eps, &u, &v)?;
        rec.record(&cell(Some(eps), None, None), m, || json!({"u": u, "v": v, "eps": eps}));
    }
    Ok(())
}

fn space_modulus(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    rec.note("pairs in the unit ball; the modulus is evaluated at the sampled distance");
    sample_pairs(spec, space, 1.0, rec, |_, u, v| {
        let d = space.distance(u, v).min(2.0);
        Ok(1.0 - space.norm_unchecked(&midpoint(u, v)) - space.delta_x(d)?)
    })
}

fn scalar_modulus(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    let young = spec.young;
    let r = spec.radius;
    let live: Vec<f64> = spec.eps.iter().copied().filter(|&e| e <= r).collect();
    if live.is_empty() {
        return Ok(());
    }
    let deltas: Vec<f64> = live.iter().map(|&e| young.delta_scalar(r, e)).collect::<Result<_>>()?;
    let mut sampler = Sampler::new(space, spec.seed);
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let k = i % live.len();
        let Some((a, b)) = sampler.scalar_pair(r, live[k]) else {
            continue;
        };
        let margin = young.midpoint_gap(a, b) - deltas[k];
        rec.record(&cell(Some(live[k]), None, None), margin, || json!({"a": a, "b": b, "delta": deltas[k]}));
    }
    Ok(())
}

fn composed(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    let young = spec.young;
    let r = spec.radius;
    let sm = space.modulus();
    let deltas: Vec<(f64, f64)> = spec
        .eps
        .iter()
        .map(|&e| Ok((e, compose_modulus(&sm, &young, r, e)?)))
        .collect::<Result<_>>()?;
    for (e, d) in &deltas {
        rec.note(format!("delta_r({e}) = {d:e}"));
    }
    let lookup = move |eps: f64| deltas.iter().find(|(e, _)| *e == eps).map(|(_, d)| *d).unwrap_or(0.0);
    sample_pairs(spec, space, r, rec, |eps, u, v| Ok(norm_gap(space, |t| young.value(t), u, v) - lookup(eps)))
}

fn power_norm(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    let p = space.exponent();
    let modulus = power_norm_modulus(space.power_type_constant(), p)?;
    rec.note(format!("{}", modulus.provenance().formula));
    sample_pairs(spec, space, spec.radius, rec, |eps, u, v| {
        Ok(norm_gap(space, |t| t.powf(p) / p, u, v) - modulus.eval(eps))
    })
}

fn psi_compose(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    let q = match spec.young {
        YoungFunction::Power { p } => p,
        _ => return Err(Error::input(format!("{}: psi_compose needs young = power", spec.name))),
    };
    let psi = PsiFunction::power(q)?;
    let sm = space.modulus();
    let deltas: Vec<(f64, f64)> = spec
        .eps
        .iter()
        .map(|&e| {
            let w = WitnessPair::power(space, q, e / 8.0)?;
            Ok((e, psi_compose_modulus(&psi, &sm, Some(&w), e)?))
        })
        .collect::<Result<_>>()
        .map_err(|e: Error| e.context(&spec.name))?;
    for (e, d) in &deltas {
        rec.note(format!("delta({e}) = {d:e}"));
    }
    let lookup = move |eps: f64| deltas.iter().find(|(e, _)| *e == eps).map(|(_, d)| *d).unwrap_or(0.0);
    sample_pairs(spec, space, spec.radius, rec, |eps, u, v| {
        Ok(norm_gap(space, |t| psi.value(t), u, v) - lookup(eps))
    })
}

/// The renorming of `f = ‖·‖^p/p` (Hilbert: `½‖·‖²` with `δ_f = ε²/8`),
/// with `ω_{f,0}` shrunk by `1 − 1e-9` so the constructed body is not
/// tangent to the inner sandwich ball.
fn renormed(spec: &CheckSpec, space: &NormedSpace<f64>, rec: &mut Recorder) -> Result<()> {
    let p = space.exponent();
    let shrink = 1.0 - 1e-9;
    let (f_modulus, omega, m) = if space.is_hilbert() {
        let fm = Modulus::new("eps^2/8", &[], (0.0, 2.0), |e: f64| e * e / 8.0);
        let om = Modulus::new("min(sqrt(2 eps), 1)", &[], (0.0, f64::INFINITY), move |e: f64| {
            ((2.0 * e).sqrt() * shrink).min(shrink)
        });
        (fm, om, 0.125)
    } else {
        let fm = power_norm_modulus(space.power_type_constant(), p)?;
        let om = Modulus::new("min((p eps)^(1/p), 1)", &[("p", p)], (0.0, f64::INFINITY), move |e: f64| {
            ((p * e).powf(1.0 / p) * shrink).min(shrink)
        });
        (fm, om, 0.5_f64.powf(p) / p)
    };
    let sp = *space;
    let f = move |x: &[f64]| sp.norm_unchecked(x).powf(p) / p;
    let body = renorm(space, f, &f_modulus, &omega, m)?;
    for n in body.notes() {
        rec.note(n.clone());
    }
    let (alpha, beta, level) = (body.alpha(), body.beta(), body.level());
    rec.note(format!("alpha = {alpha}, beta = {beta}, level = {level:e}"));
    let live: Vec<f64> = spec.eps.iter().copied().filter(|&e| e <= 2.0).collect();
    let mut sampler = Sampler::new(space, spec.seed);
    let unit = |s: &mut Sampler| {
        let d = s.direction();
        let hi = body.gauge_bracket(&d).1;
        d.iter().map(|v| v / hi).collect::<Vec<f64>>()
    };
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        if i % 4 == 0 || live.is_empty() {
            // sandwich ‖x‖/α ≤ |||x||| ≤ ‖x‖/β by membership at the two radii
            let d = sampler.direction();
            let outer: Vec<f64> = d.iter().map(|v| v * alpha * (1.0 + 1e-12)).collect();
            let lower = if space.norm_unchecked(&outer) > 1.0 { f64::INFINITY } else { body.objective(&outer) - level };
            rec.record("sandwich_lower", lower, || json!({"direction": d, "point": outer}));
            let inner: Vec<f64> = d.iter().map(|v| v * beta).collect();
            let upper = if space.norm_unchecked(&inner) > 1.0 { -1.0 } else { level - body.objective(&inner) };
            rec.record("sandwich_upper", upper, || json!({"direction": d, "point": inner}));
            continue;
        }
        let eps = live[i % live.len()];
        let x = unit(&mut sampler);
        let y = match sampler.index(3) {
            0 => {
                let s = 1.0 - 1e-6 * sampler.uniform();
                x.iter().map(|v| -s * v).collect()
            }
            _ => {
                let s = sampler.uniform().sqrt();
                unit(&mut sampler).iter().map(|v| s * v).collect::<Vec<f64>>()
            }
        };
        let apart = body.gauge_bracket(&sub(&x, &y)).0;
        if apart < eps {
            continue;
        }
        let mid = body.gauge_bracket(&midpoint(&x, &y)).1;
        let margin = 1.0 - mid - body.modulus().eval(eps);
        rec.record(&cell(Some(eps), None, None), margin, || {
            json!({"x": x, "y": y, "gauge_lower_x_minus_y": apart, "gauge_upper_mid": mid})
        });
    }
    Ok(())
}

pub(super) fn subgradient_monotonicity(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let space = spec.space.build()?;
    let young = spec.young;
    let r = spec.radius;
    let sm = space.modulus();
    let deltas: Vec<(f64, f64)> = spec
        .eps
        .iter()
        .filter(|&&e| e <= 2.0 * r)
        .map(|&e| Ok((e, compose_modulus(&sm, &young, r, e)?)))
        .collect::<Result<_>>()?;
    let lookup = move |eps: f64| deltas.iter().find(|(e, _)| *e == eps).map(|(_, d)| *d).unwrap_or(0.0);
    let dual = |x: &[f64]| -> Result<Vec<f64>> {
        let n = space.norm_unchecked(x);
        if n == 0.0 {
            Ok(vec![0.0; x.len()])
        } else {
            space.duality_element(young.density_value(n), x)
        }
    };
    rec.note("gamma = 2 delta_r(eps); asserted <x*-y*, x-y> >= 2 gamma");
    sample_pairs(spec, &space, r, rec, |eps, x, y| {
        let (xs, ys) = (dual(x)?, dual(y)?);
        Ok(dot(&sub(&xs, &ys), &sub(x, y)) - 4.0 * lookup(eps))
    })
}
