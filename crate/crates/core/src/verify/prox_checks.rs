//! Checks that run the prox solver.

use serde_json::{json, Value};

use super::sample::Sampler;
use super::{attempts, cell, CheckSpec, Recorder};
use crate::error::{Error, Result};
use crate::moduli::{compose_modulus, hoelder_constant, lambda_threshold, prox_radius_bound, prox_uc_modulus, Modulus};
use crate::prox::{lambda_sweep, project, prox_with, ConvexFunction, ProxKind, ProxResult, SolveMethod, SolverOptions};
use crate::spaces::{ConvexSet, NormedSpace};
use crate::vector::dot;
use crate::young::YoungFunction;

/// Allowance for the brute-force grid.
const GRID_RESOLUTION: f64 = 1e-3;
/// Test points per solved prox in the inequality checks.
const POINTS_PER_SOLVE: usize = 100;
/// Floor for adaptive gap targets.
const SHARPEST_TOL: f64 = 1e-16;

struct Setup {
    space: NormedSpace<f64>,
    young: YoungFunction<f64>,
    f: ConvexFunction<f64>,
    opts: SolverOptions<f64>,
    z: Vec<f64>,
    r: f64,
    modulus: Modulus<f64>,
}

impl Setup {
    fn new(spec: &CheckSpec) -> Result<Self> {
        let space = spec.space.build()?;
        Ok(Self {
            f: spec.objective.build(space.dimension())?,
            modulus: space.modulus(),
            space,
            young: spec.young,
            opts: spec.options(),
            z: spec.center_point(),
            r: spec.radius,
        })
    }

    fn solve(&self, kind: ProxKind, lam: f64, x: &[f64]) -> Result<ProxResult<f64>> {
        prox_with(kind, &self.space, &self.f, &self.young, lam, x, &self.opts)
    }

    /// Re-solves with a tighter gap target until the distance certificate is
    /// at most `budget`, the target reaches rounding level or the iteration
    /// budget runs out; the last certified result is returned.
    fn solve_within(&self, kind: ProxKind, lam: f64, x: &[f64], budget: f64) -> Result<ProxResult<f64>> {
        let mut opts = self.opts;
        let mut res = self.solve(kind, lam, x)?;
        while res.distance_bound > budget && opts.tol > SHARPEST_TOL {
            opts.tol = (opts.tol * 0.1).max(SHARPEST_TOL);
            match prox_with(kind, &self.space, &self.f, &self.young, lam, x, &opts) {
                Ok(sharper) => res = sharper,
                Err(Error::Budget { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(res)
    }

    fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        self.space.distance(a, b)
    }

    /// `ψ(t)` of the regularizer `ψ(‖x − y‖)`.
    fn penalty(&self, kind: ProxKind, lam: f64, t: f64) -> f64 {
        match kind {
            ProxKind::Young => self.young.value(t) / self.young.density_value(lam),
            ProxKind::Pr => lam * self.young.value(t / lam),
        }
    }

    /// `ψ'(t)`.
    fn penalty_slope(&self, kind: ProxKind, lam: f64, t: f64) -> f64 {
        match kind {
            ProxKind::Young => self.young.density_value(t) / self.young.density_value(lam),
            ProxKind::Pr => self.young.density_value(t / lam),
        }
    }

    fn objective(&self, kind: ProxKind, lam: f64, x: &[f64], y: &[f64]) -> f64 {
        self.f.value(&self.space, y) + self.penalty(kind, lam, self.dist(x, y))
    }
}

fn form(kind: ProxKind) -> &'static str {
    match kind {
        ProxKind::Young => "young",
        ProxKind::Pr => "pr",
    }
}

fn result_json(p: &ProxResult<f64>) -> Value {
    json!({
        "minimizer": p.minimizer,
        "objective": p.objective,
        "gap": p.gap,
        "distance_bound": p.distance_bound,
    })
}

fn config_error(spec: &CheckSpec, msg: &str) -> Error {
    Error::input(format!("{}: {msg}", spec.name))
}

/// The `i`-th `(form, λ)` combination, forms varying fastest.
fn form_lambda(spec: &CheckSpec, i: usize) -> (ProxKind, f64) {
    let k = spec.prox.len();
    (spec.prox[i % k], spec.lambdas[(i / k) % spec.lambdas.len()])
}

/// `x, y ∈ B(z, r)` at a log-uniform separation in `[1e-9 r, 2r]`.
fn scaled_pair(s: &mut Sampler, z: &[f64], r: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    let d = s.log_uniform(1e-9 * r, 2.0 * r);
    let x = s.in_ball(z, r);
    let dir = s.direction();
    for sign in [1.0, -1.0] {
        let y: Vec<f64> = x.iter().zip(&dir).map(|(a, v)| a + sign * d * v).collect();
        if s.space().distance(&y, z) <= r {
            return Some((x, y));
        }
    }
    None
}

pub(super) fn uniform_continuity(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    if spec.prox.contains(&ProxKind::Pr) {
        rec.note("sampled for the Young form only; the rescaled form needs a radius growing like R/lambda");
    }
    let base = match s.solve(ProxKind::Young, 1.0, &s.z) {
        Ok(b) => b,
        Err(e) => {
            rec.solver_failure("base", &e);
            return Ok(());
        }
    };
    let r0 = s.dist(&s.z, &base.minimizer) + base.distance_bound;
    let big_r = prox_radius_bound(&s.young, s.r, r0)?;
    rec.note(format!("R0 = {r0:e}, R = {big_r:e}; the same delta(eps) is used for every lambda"));
    let mut cells = Vec::new();
    for &eps in &spec.eps {
        if eps > 2.0 * s.r {
            rec.note(format!("eps = {eps} exceeds the ball diameter; cell is vacuous"));
            continue;
        }
        let delta = prox_uc_modulus(&s.young, &s.modulus, big_r, eps)?;
        rec.note(format!("delta({eps}) = {delta:e}"));
        cells.push((eps, delta));
    }
    if cells.is_empty() {
        return Ok(());
    }
    let mut sampler = Sampler::new(&s.space, spec.seed);
    let n = spec.lambdas.len();
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (eps, delta) = cells[i % cells.len()];
        let lam = spec.lambdas[(i / cells.len()) % n];
        let group = cell(Some(eps), Some(lam), None);
        let (x, y) = sampler.pair_within(&s.z, s.r, delta);
        let budget = eps / 8.0;
        let (px, py) = match (
            s.solve_within(ProxKind::Young, lam, &x, budget),
            s.solve_within(ProxKind::Young, lam, &y, budget),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let moved = s.dist(&px.minimizer, &py.minimizer);
        let margin = eps - moved - px.distance_bound - py.distance_bound;
        rec.record(&group, margin, || {
            json!({"x": x, "y": y, "lambda": lam, "eps": eps, "delta": delta,
                   "prox_x": result_json(&px), "prox_y": result_json(&py)})
        });
    }
    Ok(())
}

/// `2/φ(λ)·δ_{r₀}(d)` (Young form) or `2λ·δ_{r₀/λ}(d/λ)` (rescaled form).
fn growth_term(s: &Setup, kind: ProxKind, lam: f64, r0: f64, d: f64) -> f64 {
    if !(d > 0.0) {
        return 0.0;
    }
    match kind {
        ProxKind::Young => {
            2.0 / s.young.density_value(lam) * compose_modulus(&s.modulus, &s.young, r0, d).unwrap_or(0.0)
        }
        ProxKind::Pr => 2.0 * lam * compose_modulus(&s.modulus, &s.young, r0 / lam, d / lam).unwrap_or(0.0),
    }
}

/// A point of `B(center, radius)` where `f` is finite, moved onto the
/// domain if needed.
fn domain_sample(
    s: &Setup,
    sampler: &mut Sampler,
    center: &[f64],
    radius: f64,
    near: &[f64],
    near_radius: f64,
) -> Option<(Vec<f64>, f64)> {
    let y = if sampler.index(4) == 0 {
        sampler.in_ball(near, near_radius)
    } else {
        sampler.in_ball(center, radius)
    };
    let fy = s.f.value(&s.space, &y);
    let (y, fy) = if fy.is_finite() { (y, fy) } else { s.f.domain_point(&s.space, &y, f64::INFINITY)? };
    (s.dist(&y, center) <= radius).then_some((y, fy))
}

pub(super) fn variational_inequalities(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    let mut sampler = Sampler::new(&s.space, spec.seed);
    rec.note("r0 = 1.01 * (certified distance to the lambda = 1 minimizer) + 0.01");
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let group = cell(None, Some(lam), Some(form(kind)));
        let x = sampler.in_ball(&s.z, s.r);
        let reference = match kind {
            ProxKind::Young => s.solve(kind, 1.0, &x),
            ProxKind::Pr => s.solve(kind, lam, &x),
        };
        let (reference, pl) = match (reference, s.solve(kind, lam, &x)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let r0 = 1.01 * (s.dist(&x, &reference.minimizer) + reference.distance_bound) + 0.01;
        let near = (10.0 * pl.distance_bound).max(1e-3).min(r0);
        for _ in 0..POINTS_PER_SOLVE.min(spec.samples) {
            let Some((y, fy)) = domain_sample(&s, &mut sampler, &x, r0, &pl.minimizer, near) else {
                continue;
            };
            let d = (s.dist(&y, &pl.minimizer) - pl.distance_bound).max(0.0);
            let lhs = fy + s.penalty(kind, lam, s.dist(&x, &y));
            let margin = lhs - pl.objective + pl.gap - growth_term(&s, kind, lam, r0, d);
            rec.record(&group, margin, || {
                json!({"x": x, "y": y, "lambda": lam, "form": form(kind), "r0": r0, "prox": result_json(&pl)})
            });
        }
    }
    Ok(())
}

pub(super) fn convergence_to_projection(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    let set: ConvexSet<f64> = s
        .f
        .set()
        .cloned()
        .ok_or_else(|| config_error(spec, "convergence_to_projection needs an indicator objective"))?;
    let mut sampler = Sampler::new(&s.space, spec.seed);
    let (mut lam_lo, mut lam_hi) = (f64::INFINITY, 0.0_f64);
    rec.note("zeta = 1 with z = P(x), so f(z) - f(x_1) = 0 < zeta");
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let eps = spec.eps[i % spec.eps.len()];
        let x = sampler.in_ball(&s.z, s.r);
        let group = cell(Some(eps), None, None);
        let (p1, proj) = match (s.solve(ProxKind::Young, 1.0, &x), project(&s.space, &set, &x, &s.opts)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let beta = s.dist(&x, &p1.minimizer) + p1.distance_bound;
        let big = lambda_threshold(&s.young, &s.modulus, eps, beta, 1.0)?;
        lam_lo = lam_lo.min(big);
        lam_hi = lam_hi.max(big);
        for (label, lam) in [("Lambda/2", big / 2.0), ("Lambda/10", big / 10.0)] {
            let group = format!("eps={eps},lambda={label}");
            match s.solve(ProxKind::Young, lam, &x) {
                Ok(pl) => {
                    let off = s.dist(&pl.minimizer, &proj.minimizer);
                    let margin = eps - off - pl.distance_bound - proj.distance_bound;
                    rec.record(&group, margin, || {
                        json!({"x": x, "eps": eps, "beta": beta, "Lambda": big, "lambda": lam,
                               "prox": result_json(&pl), "projection": result_json(&proj)})
                    });
                }
                Err(e) => rec.solver_failure(&group, &e),
            }
        }
        if set.contains(&s.space, &x, 0.0) {
            for &lam in &spec.lambdas {
                let group = format!("in_domain,lambda={lam}");
                match s.solve(ProxKind::Young, lam, &x) {
                    Ok(pl) => {
                        let drift = (s.f.value(&s.space, &pl.minimizer) - s.f.value(&s.space, &x)).abs();
                        let margin = pl.value_slack - drift;
                        rec.record(&group, margin, || json!({"x": x, "lambda": lam, "prox": result_json(&pl)}));
                    }
                    Err(e) => rec.solver_failure(&group, &e),
                }
            }
        }
    }
    if lam_hi > 0.0 {
        rec.note(format!("Lambda ranged over [{lam_lo:e}, {lam_hi:e}]"));
    }
    Ok(())
}

pub(super) fn hoelder(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    let p = s.space.exponent();
    match s.young {
        YoungFunction::Power { p: q } if (q - p).abs() <= 1e-12 * p => {}
        _ => return Err(config_error(spec, "hoelder needs young = power with the space exponent")),
    }
    let base = s.solve(ProxKind::Young, 1.0, &s.z)?;
    let need = (s.dist(&s.z, &base.minimizer) + base.distance_bound).max(1.0);
    if s.r < need {
        return Err(config_error(spec, &format!("hoelder needs radius >= {need}; increase radius")));
    }
    let a = s.space.power_type_constant();
    let l = hoelder_constant(a, p, s.r)?;
    rec.note(format!("A = {a}, L = {l}"));
    let mut sampler = Sampler::new(&s.space, spec.seed);
    let mut linear_branch = 0usize;
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let group = cell(None, Some(lam), Some(form(kind)));
        let Some((x, y)) = scaled_pair(&mut sampler, &s.z, s.r) else {
            continue;
        };
        let (px, py) = match (s.solve(kind, lam, &x), s.solve(kind, lam, &y)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let d = s.dist(&x, &y);
        let bound = (2.0 * d).max(l * d.powf(1.0 / p));
        if 2.0 * d >= l * d.powf(1.0 / p) {
            linear_branch += 1;
        }
        let margin = bound - s.dist(&px.minimizer, &py.minimizer) - px.distance_bound - py.distance_bound;
        rec.record(&group, margin, || {
            json!({"x": x, "y": y, "lambda": lam, "form": form(kind), "bound": bound,
                   "prox_x": result_json(&px), "prox_y": result_json(&py)})
        });
    }
    rec.note(format!("2|x-y| branch active on {linear_branch} samples"));
    Ok(())
}

fn require_hilbert_square(spec: &CheckSpec, s: &Setup, what: &str) -> Result<()> {
    let square = matches!(s.young, YoungFunction::Power { p } if p == 2.0);
    if s.space.is_hilbert() && square {
        Ok(())
    } else {
        Err(config_error(spec, &format!("{what} needs space p = 2 and young = power(2)")))
    }
}

pub(super) fn nonexpansive(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    require_hilbert_square(spec, &s, "nonexpansive")?;
    let mut sampler = Sampler::new(&s.space, spec.seed);
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let group = cell(None, Some(lam), Some(form(kind)));
        let Some((x, y)) = scaled_pair(&mut sampler, &s.z, s.r) else {
            continue;
        };
        let (px, py) = match (s.solve(kind, lam, &x), s.solve(kind, lam, &y)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let margin = s.dist(&x, &y) + px.distance_bound + py.distance_bound - s.dist(&px.minimizer, &py.minimizer);
        rec.record(&group, margin, || {
            json!({"x": x, "y": y, "lambda": lam, "prox_x": result_json(&px), "prox_y": result_json(&py)})
        });
    }
    Ok(())
}

pub(super) fn sweep_monotonicity(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    let mut sampler = Sampler::new(&s.space, spec.seed);
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let kind = spec.prox[i % spec.prox.len()];
        let x = sampler.in_ball(&s.z, s.r);
        let sweep = match lambda_sweep(kind, &s.space, &s.f, &s.young, &x, &spec.lambdas, &s.opts) {
            Ok(sw) => sw,
            Err(e) => {
                rec.solver_failure(form(kind), &e);
                continue;
            }
        };
        for w in sweep.entries.windows(2) {
            let (big, small) = (&w[0], &w[1]);
            let lam = big.lam;
            let distance = big.distance - small.distance + big.result.distance_bound + small.result.distance_bound;
            let value = small.value - big.value + big.result.value_slack + small.result.value_slack;
            let data = || {
                json!({"x": x, "form": form(kind), "lambda": [big.lam, small.lam],
                       "distance": [big.distance, small.distance], "value": [big.value, small.value],
                       "distance_bound": [big.result.distance_bound, small.result.distance_bound],
                       "value_slack": [big.result.value_slack, small.result.value_slack]})
            };
            rec.record(&format!("{},distance,lambda={lam}", form(kind)), distance, data);
            rec.record(&format!("{},value,lambda={lam}", form(kind)), value, data);
        }
    }
    Ok(())
}

pub(super) fn duality_characterization(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    let mut sampler = Sampler::new(&s.space, spec.seed);
    rec.note("slack = min over t = 4^-k of (gap + remainder of the regularizer along the segment)/t");
    let mut skipped = 0usize;
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let group = cell(None, Some(lam), Some(form(kind)));
        let x = sampler.in_ball(&s.z, s.r);
        let pl = match s.solve(kind, lam, &x) {
            Ok(p) => p,
            Err(e) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let xl = &pl.minimizer;
        if s.f.subgradient(&s.space, xl).is_none() {
            skipped += 1;
            continue;
        }
        let fl = s.f.value(&s.space, xl);
        let w: Vec<f64> = x.iter().zip(xl).map(|(a, b)| a - b).collect();
        let t0 = s.space.norm_unchecked(&w);
        let u = if t0 > 0.0 {
            s.space.duality_element(s.penalty_slope(kind, lam, t0), &w)?
        } else {
            vec![0.0; w.len()]
        };
        let psi0 = s.penalty(kind, lam, t0);
        for _ in 0..POINTS_PER_SOLVE.min(spec.samples) {
            let Some((v, fv)) = domain_sample(&s, &mut sampler, xl, s.r, xl, 1e-3) else {
                continue;
            };
            let step: Vec<f64> = v.iter().zip(xl).map(|(a, b)| a - b).collect();
            let lin = dot(&u, &step);
            let slack = (0..=12)
                .map(|k| {
                    let t = 0.25_f64.powi(k);
                    let moved: Vec<f64> = xl.iter().zip(&step).map(|(a, b)| a + t * b).collect();
                    let rem = s.penalty(kind, lam, s.dist(&x, &moved)) - psi0 + t * lin;
                    (pl.gap + rem) / t
                })
                .fold(f64::INFINITY, f64::min);
            let margin = fv - fl - lin + slack;
            rec.record(&group, margin, || {
                json!({"x": x, "v": v, "lambda": lam, "form": form(kind), "u_star": u, "slack": slack,
                       "prox": result_json(&pl)})
            });
        }
    }
    if skipped > 0 {
        rec.note(format!("{skipped} solves skipped: no subgradient of f at the minimizer"));
    }
    Ok(())
}

pub(super) fn resolvent_identity(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    require_hilbert_square(spec, &s, "resolvent_identity")?;
    let iterative = SolverOptions { closed_form: false, ..s.opts };
    let mut sampler = Sampler::new(&s.space, spec.seed);
    for i in 0..attempts(spec) {
        if rec.samples() >= spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let group = cell(None, Some(lam), Some(form(kind)));
        let x = sampler.in_ball(&s.z, s.r);
        let exact = s.solve(kind, lam, &x)?;
        if exact.method == SolveMethod::Ellipsoid {
            return Err(config_error(spec, "objective has no closed-form resolvent"));
        }
        let solved = match prox_with(kind, &s.space, &s.f, &s.young, lam, &x, &iterative) {
            Ok(p) => p,
            Err(e) => {
                rec.solver_failure(&group, &e);
                continue;
            }
        };
        let margin = exact.distance_bound + solved.distance_bound - s.dist(&exact.minimizer, &solved.minimizer);
        rec.record(&group, margin, || {
            json!({"x": x, "lambda": lam, "closed_form": result_json(&exact), "solver": result_json(&solved)})
        });
    }
    Ok(())
}

pub(super) fn solver_oracle(spec: &CheckSpec, rec: &mut Recorder) -> Result<()> {
    let s = Setup::new(spec)?;
    if s.space.dimension() > 3 {
        return Err(config_error(spec, "solver_oracle supports dimension <= 3"));
    }
    if matches!(s.f.set(), Some(ConvexSet::Affine { .. })) {
        return Err(config_error(spec, "solver_oracle cannot grid-sample a lower-dimensional domain"));
    }
    let iterative = SolverOptions { closed_form: false, ..s.opts };
    let mut sampler = Sampler::new(&s.space, spec.seed);
    rec.note(format!("grid resolution {GRID_RESOLUTION}; the solver runs without closed forms"));
    for i in 0..attempts(spec) {
        if rec.samples() >= 2 * spec.samples {
            break;
        }
        let (kind, lam) = form_lambda(spec, i);
        let x = sampler.in_ball(&s.z, s.r);
        let res = match prox_with(kind, &s.space, &s.f, &s.young, lam, &x, &iterative) {
            Ok(p) => p,
            Err(e) => {
                rec.solver_failure(&cell(None, Some(lam), Some(form(kind))), &e);
                continue;
            }
        };
        let reach = x
            .iter()
            .zip(&res.minimizer)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let half_width = reach + res.distance_bound.min(4.0 * s.r + 4.0) + 0.05;
        let (g, hg) = grid_argmin_for(&s, kind, lam, &x, half_width);
        let margin = res.distance_bound + GRID_RESOLUTION - s.dist(&g, &res.minimizer);
        let data = || {
            json!({"x": x, "lambda": lam, "form": form(kind), "grid_argmin": g, "grid_value": hg,
                   "prox": result_json(&res)})
        };
        rec.record(&format!("{},argmin", form(kind)), margin, data);
        rec.record(&format!("{},lower_bound", form(kind)), hg - res.objective + res.gap, data);
    }
    Ok(())
}

/// Grid search with every grid point retracted onto the constraint set, so
/// candidates cover the boundary at the grid spacing.
fn grid_argmin_for(s: &Setup, kind: ProxKind, lam: f64, x: &[f64], half_width: f64) -> (Vec<f64>, f64) {
    let retract = |y: &[f64]| match s.f.set() {
        Some(set) => set
            .project_closed_form(&s.space, y)
            .unwrap_or_else(|| set.project_euclidean(y)),
        None => y.to_vec(),
    };
    let (g, v) = super::grid_argmin(|y| s.objective(kind, lam, x, &retract(y)), x, half_width, GRID_RESOLUTION);
    (retract(&g), v)
}
