//! Certified proximal mappings.
//!
//! Two regularizations of a convex `f` around `x` are supported:
//! the Young form `f(y) + Φ(‖x−y‖)/φ(λ)` and the rescaled form
//! `f(y) + λΦ(‖x−y‖/λ)`. Every result carries a certified objective gap and
//! a distance bound to the true minimizer obtained from uniform convexity of
//! the regularizer.

mod objective;
mod solver;

pub use objective::{ConvexFunction, MEMBERSHIP_TOL};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{compose_modulus, Modulus};
use crate::scalar::{bisect_threshold, lit, Scalar};
use crate::spaces::{ConvexSet, NormedSpace};
use crate::vector::{check_dim, dot, norm2, orthonormalize, solve_linear, sub};
use crate::young::YoungFunction;
use solver::Probe;

/// Which regularization is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProxKind {
    /// `f(y) + Φ(‖x−y‖)/φ(λ)`.
    Young,
    /// `f(y) + λΦ(‖x−y‖/λ)`.
    Pr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Exact,
    ClosedForm,
    Ellipsoid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T> {
    /// Target objective gap.
    pub tol: T,
    pub max_iter: usize,
    /// Use resolvent formulas where known instead of the solver.
    pub closed_form: bool,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            tol: lit(1e-8),
            max_iter: 100_000,
            closed_form: true,
        }
    }
}

impl<T: Scalar> SolverOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        Self { tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProxResult<T> {
    pub minimizer: Vec<T>,
    pub objective: T,
    /// Upper bound on `objective − min`.
    pub gap: T,
    /// Upper bound on the distance from `minimizer` to the true minimizer.
    pub distance_bound: T,
    /// Upper bound on `|f(minimizer) − f(true minimizer)|`.
    pub value_slack: T,
    /// Radius `r₀` of a ball around `x` known to hold both points.
    pub radius: T,
    pub iterations: usize,
    pub method: SolveMethod,
}

#[derive(Debug, Clone, Copy)]
struct Regularizer<T> {
    kind: ProxKind,
    young: YoungFunction<T>,
    lam: T,
    phi_lam: T,
}

impl<T: Scalar> Regularizer<T> {
    fn new(kind: ProxKind, young: YoungFunction<T>, lam: T) -> Result<Self> {
        if !(lam > T::zero() && lam <= T::one()) {
            return Err(Error::input(format!("lambda must lie in (0, 1], got {lam}")));
        }
        Ok(Self { kind, young, lam, phi_lam: young.density_value(lam) })
    }

    /// `ψ(t)` with regularizer `ψ(‖x − y‖)`.
    fn psi(&self, t: T) -> T {
        match self.kind {
            ProxKind::Young => self.young.value(t) / self.phi_lam,
            ProxKind::Pr => self.lam * self.young.value(t / self.lam),
        }
    }

    /// `ψ'(t)`.
    fn slope(&self, t: T) -> T {
        match self.kind {
            ProxKind::Young => self.young.density_value(t) / self.phi_lam,
            ProxKind::Pr => self.young.density_value(t / self.lam),
        }
    }

    /// Largest `t` with `ψ(t) ≤ c + g·t` (an interval `[0, t*]`), padded.
    fn level_radius(&self, c: T, g: T) -> T {
        let over = |t: T| self.psi(t) > c + g * t;
        let mut hi = T::one();
        while !over(hi) {
            hi = hi * T::two();
            if !hi.is_finite() {
                return T::infinity();
            }
        }
        let (_, hi) = bisect_threshold(T::zero(), hi, lit(1e-12), over);
        hi * lit(1.001) + lit(1e-9)
    }
}

struct Problem<'a, T> {
    space: &'a NormedSpace<T>,
    f: &'a ConvexFunction<T>,
    reg: Regularizer<T>,
    x: &'a [T],
}

impl<'a, T: Scalar> Problem<'a, T> {
    fn h(&self, y: &[T]) -> T {
        let fy = self.f.value(self.space, y);
        if !fy.is_finite() {
            return fy;
        }
        fy + self.reg.psi(self.space.distance(y, self.x))
    }

    fn reg_gradient(&self, y: &[T]) -> Vec<T> {
        let d = sub(y, self.x);
        let t = self.space.norm_unchecked(&d);
        if t == T::zero() {
            return vec![T::zero(); y.len()];
        }
        self.space.duality_unchecked(self.reg.slope(t), &d, t)
    }

    /// Radius of a ball around `x` holding every `y` with `h(y) ≤ h(anchor)`.
    fn sublevel_radius(&self, anchor: &[T]) -> T {
        let g = self
            .f
            .subgradient(self.space, anchor)
            .map(|g| self.space.dual_norm(&g))
            .unwrap_or(T::infinity());
        let da = self.space.distance(anchor, self.x);
        self.reg
            .level_radius(self.reg.psi(da) + g * da, g)
            .max(da)
    }

    fn seed(&self) -> Result<(Vec<T>, T)> {
        if self.f.value(self.space, self.x).is_finite() {
            return Ok((self.x.to_vec(), self.h(self.x)));
        }
        let (z, _) = self
            .f
            .domain_point(self.space, self.x, T::infinity())
            .ok_or(Error::Infeasible)?;
        let hz = self.h(&z);
        Ok((z, hz))
    }

    fn closed_form(&self) -> Option<(Vec<T>, SolveMethod)> {
        if matches!(self.f, ConvexFunction::Zero) {
            return Some((self.x.to_vec(), SolveMethod::Exact));
        }
        if let Some(set) = self.f.set() {
            return set
                .project_closed_form(self.space, self.x)
                .map(|z| (z, SolveMethod::ClosedForm));
        }
        let quadratic_reg = self.space.is_hilbert()
            && matches!(self.reg.young, YoungFunction::Power { p } if p == T::two());
        if !quadratic_reg {
            return None;
        }
        let lam = self.reg.lam;
        match self.f {
            ConvexFunction::Quadratic { q, b } => {
                let n = self.x.len();
                let a: Vec<Vec<T>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| q[i][j] + if i == j { lam.recip() } else { T::zero() })
                            .collect()
                    })
                    .collect();
                let rhs: Vec<T> = self.x.iter().zip(b).map(|(&xi, &bi)| xi / lam - bi).collect();
                solve_linear(&a, &rhs).ok().map(|y| (y, SolveMethod::ClosedForm))
            }
            ConvexFunction::L1 { weight } => {
                let t = lam * *weight;
                let y = self
                    .x
                    .iter()
                    .map(|&v| v.signum() * (v.abs() - t).max(T::zero()))
                    .collect();
                Some((y, SolveMethod::ClosedForm))
            }
            _ => None,
        }
    }

    fn solve(&self, opts: &SolverOptions<T>) -> Result<ProxResult<T>> {
        check_dim(self.x, self.space.dimension())?;
        self.f.validate(self.space.dimension())?;
        if !(opts.tol > T::zero()) {
            return Err(Error::input("tol must be positive"));
        }
        if opts.closed_form {
            if let Some((y, method)) = self.closed_form() {
                let objective = self.h(&y);
                let gap = if method == SolveMethod::Exact {
                    T::zero()
                } else {
                    lit::<T>(16.0) * T::epsilon() * (T::one() + objective.abs())
                };
                return Ok(self.finish(y, objective, gap, 0, method));
            }
        }
        if let Some(ConvexSet::Affine { point, basis }) = self.f.set() {
            return self.solve_on_chart(point, basis, opts);
        }
        let (seed, h_seed) = self.seed()?;
        let n = self.space.dimension();
        let r = self.sublevel_radius(&seed);
        let radius = r * euclid_factor(self.space);
        let out = solver::ellipsoid(self.x.to_vec(), radius, Some((seed, h_seed)), opts.tol, opts.max_iter, |u| {
            if let Some((g, depth)) = self.f.feasibility_cut(self.space, u) {
                return Probe::Cut { g, depth };
            }
            let value = self.h(u);
            let mut g = self.f.subgradient(self.space, u).unwrap_or_else(|| vec![T::zero(); n]);
            for (gi, ri) in g.iter_mut().zip(self.reg_gradient(u)) {
                *gi = *gi + ri;
            }
            Probe::Value { value, g }
        })?;
        let gap = (out.upper - out.lower).max(T::zero());
        Ok(self.finish(out.best, out.upper, gap, out.iterations, SolveMethod::Ellipsoid))
    }

    fn solve_on_chart(&self, point: &[T], basis: &[Vec<T>], opts: &SolverOptions<T>) -> Result<ProxResult<T>> {
        let set = ConvexSet::Affine { point: point.to_vec(), basis: basis.to_vec() };
        let origin = set.project_euclidean(self.x);
        let frame = orthonormalize(basis);
        if frame.is_empty() {
            let objective = self.h(&origin);
            return Ok(self.finish(origin, objective, T::zero(), 0, SolveMethod::Exact));
        }
        let embed = |u: &[T]| -> Vec<T> {
            let mut y = origin.clone();
            for (e, &c) in frame.iter().zip(u) {
                for (yi, &ei) in y.iter_mut().zip(e) {
                    *yi = *yi + c * ei;
                }
            }
            y
        };
        let h0 = self.h(&origin);
        let r = self.sublevel_radius(&origin);
        let radius = r * euclid_factor(self.space) + norm2(&sub(self.x, &origin));
        let k = frame.len();
        let out = solver::ellipsoid(vec![T::zero(); k], radius, Some((vec![T::zero(); k], h0)), opts.tol, opts.max_iter, |u| {
            let y = embed(u);
            let g = self.reg_gradient(&y);
            Probe::Value {
                value: self.h(&y),
                g: frame.iter().map(|e| dot(e, &g)).collect(),
            }
        })?;
        let gap = (out.upper - out.lower).max(T::zero());
        Ok(self.finish(embed(&out.best), out.upper, gap, out.iterations, SolveMethod::Ellipsoid))
    }

    fn finish(&self, y: Vec<T>, objective: T, gap: T, iterations: usize, method: SolveMethod) -> ProxResult<T> {
        let radius = self.sublevel_radius(&y);
        let distance_bound = if gap == T::zero() {
            T::zero()
        } else {
            distance_certificate(self.space, &self.reg, radius, gap)
        };
        ProxResult {
            minimizer: y,
            objective,
            gap,
            distance_bound,
            value_slack: gap + self.reg.slope(radius) * distance_bound,
            radius,
            iterations,
            method,
        }
    }
}

/// `‖v‖₂ ≤ n^{1/2 − 1/p}·‖v‖_p` for `p ≥ 2`.
fn euclid_factor<T: Scalar>(space: &NormedSpace<T>) -> T {
    let n = lit::<T>(space.dimension() as f64);
    n.powf(T::half() - space.exponent().recip())
}

/// Smallest certified `D` (up to bisection) with `δ(D) > target`, searched
/// on `(0, cap]`; `None` if `δ(cap) ≤ target`.
fn invert_modulus<T: Scalar, F: Fn(T) -> T>(delta: F, target: T, cap: T) -> Option<T> {
    let above = |d: T| delta(d) > target;
    if !above(cap) {
        return None;
    }
    let (_, hi) = bisect_threshold(T::zero(), cap, lit(1e-10), above);
    Some(hi)
}

/// Distance certificate from the composed modulus `δ_{r₀}` of `Φ∘‖·‖`:
/// the true minimizer `x*` and an iterate `x̂` with gap `g` satisfy
/// `δ_{r₀}(‖x̂ − x*‖) ≤ φ(λ)·g/2`, so any `D` with `δ_{r₀}(D) > φ(λ)·g/2`
/// bounds the distance. Returns `2r₀` when no such `D ≤ 2r₀` exists.
pub fn certified_gap_to_distance<T: Scalar>(
    young: &YoungFunction<T>,
    space_modulus: &Modulus<T>,
    r0: T,
    lam: T,
    gap: T,
) -> Result<T> {
    if !(r0 > T::zero()) {
        return Err(Error::input("r0 must be positive"));
    }
    if !(lam > T::zero() && lam <= T::one()) {
        return Err(Error::input(format!("lambda must lie in (0, 1], got {lam}")));
    }
    if !(gap >= T::zero()) {
        return Err(Error::input("gap must be nonnegative"));
    }
    if gap == T::zero() {
        return Ok(T::zero());
    }
    let target = young.density_value(lam) * gap * T::half();
    let cap = T::two() * r0;
    Ok(invert_modulus(
        |d| compose_modulus(space_modulus, young, r0, d).unwrap_or(T::zero()),
        target,
        cap,
    )
    .unwrap_or(cap))
}

/// Rescaled-form certificate: `λ·D` with `D` certified for the target
/// `g/(2λ)` on the ball of radius `r₀/λ`.
pub fn certified_gap_to_distance_pr<T: Scalar>(
    young: &YoungFunction<T>,
    space_modulus: &Modulus<T>,
    r0: T,
    lam: T,
    gap: T,
) -> Result<T> {
    certified_gap_to_distance(young, space_modulus, r0, lam, gap)?;
    if gap == T::zero() {
        return Ok(T::zero());
    }
    let radius = r0 / lam;
    let target = gap / (T::two() * lam);
    let cap = T::two() * radius;
    let d = invert_modulus(
        |d| compose_modulus(space_modulus, young, radius, d).unwrap_or(T::zero()),
        target,
        cap,
    )
    .unwrap_or(cap);
    Ok(lam * d)
}

/// The smaller of the composed-modulus certificate and the power-minorant
/// certificate `Φ ≥ c·t^q/q + convex`, whose global modulus is
/// `c·(A'/8^q)·ε^q` with `A' = A·2^{p−q}`.
fn distance_certificate<T: Scalar>(space: &NormedSpace<T>, reg: &Regularizer<T>, r0: T, gap: T) -> T {
    let (radius, target, scale) = match reg.kind {
        ProxKind::Young => (r0, reg.phi_lam * gap * T::half(), T::one()),
        ProxKind::Pr => (r0 / reg.lam, gap / (T::two() * reg.lam), reg.lam),
    };
    let composed = |d: T| compose_modulus(&space.modulus(), &reg.young, radius, d).unwrap_or(T::zero());
    let cap = T::two() * radius;
    let power = reg.young.power_minorant(space.exponent()).map(|(c, q)| {
        let a = space.power_type_constant() * T::two().powf(space.exponent() - q);
        let k = c * a / lit::<T>(8.0).powf(q);
        (target / k).powf(q.recip()) * (T::one() + lit::<T>(1e-9))
    });
    let d = match power {
        Some(dp) if dp < cap => {
            let probe = dp * T::half();
            if composed(probe) > target {
                invert_modulus(composed, target, probe).unwrap_or(probe)
            } else {
                dp
            }
        }
        _ => invert_modulus(composed, target, cap).unwrap_or(cap),
    };
    scale * d
}

fn prox<T: Scalar>(
    kind: ProxKind,
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    lam: T,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<ProxResult<T>> {
    let reg = Regularizer::new(kind, *young, lam)?;
    Problem { space, f, reg, x }.solve(opts)
}

/// `argmin_y f(y) + Φ(‖x−y‖)/φ(λ)`.
pub fn prox_young<T: Scalar>(
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    lam: T,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<ProxResult<T>> {
    prox(ProxKind::Young, space, f, young, lam, x, opts)
}

/// `argmin_y f(y) + λΦ(‖x−y‖/λ)`.
pub fn prox_pr<T: Scalar>(
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    lam: T,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<ProxResult<T>> {
    prox(ProxKind::Pr, space, f, young, lam, x, opts)
}

/// Either prox, selected by `kind`.
pub fn prox_with<T: Scalar>(
    kind: ProxKind,
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    lam: T,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<ProxResult<T>> {
    prox(kind, space, f, young, lam, x, opts)
}

/// `inf_y f(y) + λΦ(‖x−y‖/λ)`, as the objective of the rescaled prox
/// (an upper bound within its certified gap).
pub fn moreau_envelope<T: Scalar>(
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    lam: T,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<T> {
    Ok(prox_pr(space, f, young, lam, x, opts)?.objective)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry<T> {
    pub lam: T,
    pub result: ProxResult<T>,
    /// `f(x_λ)`.
    pub value: T,
    /// `‖x − x_λ‖`.
    pub distance: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep<T> {
    pub entries: Vec<SweepEntry<T>>,
    /// `λ ↦ ‖x − x_λ‖` nondecreasing within twice the summed distance bounds.
    pub distance_monotone: bool,
    /// `λ ↦ f(x_λ)` nonincreasing within the summed value slacks.
    pub value_monotone: bool,
}

/// Prox solves along a decreasing `λ` grid with monotonicity flags.
pub fn lambda_sweep<T: Scalar>(
    kind: ProxKind,
    space: &NormedSpace<T>,
    f: &ConvexFunction<T>,
    young: &YoungFunction<T>,
    x: &[T],
    lambdas: &[T],
    opts: &SolverOptions<T>,
) -> Result<Sweep<T>> {
    if lambdas.is_empty() {
        return Err(Error::input("lambda grid is empty"));
    }
    if lambdas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::input("lambda grid must be strictly decreasing"));
    }
    let mut entries = Vec::with_capacity(lambdas.len());
    for &lam in lambdas {
        let result = prox(kind, space, f, young, lam, x, opts).map_err(|e| Error::AtLambda {
            lam: lam.to_f64_lossy(),
            source: Box::new(e),
        })?;
        let value = f.value(space, &result.minimizer);
        let distance = space.distance(x, &result.minimizer);
        entries.push(SweepEntry { lam, result, value, distance });
    }
    let pairs = || entries.windows(2).map(|w| (&w[0], &w[1]));
    let distance_monotone = pairs().all(|(big, small)| {
        big.distance >= small.distance - T::two() * (big.result.distance_bound + small.result.distance_bound)
    });
    let value_monotone = pairs().all(|(big, small)| {
        big.value <= small.value + big.result.value_slack + small.result.value_slack
    });
    Ok(Sweep { entries, distance_monotone, value_monotone })
}

/// Metric projection onto `set`: closed forms where available, otherwise
/// the certified solver on the indicator with `Φ(t) = t^p/p`, `λ = 1`.
pub fn project<T: Scalar>(
    space: &NormedSpace<T>,
    set: &ConvexSet<T>,
    x: &[T],
    opts: &SolverOptions<T>,
) -> Result<ProxResult<T>> {
    let young = YoungFunction::power(space.exponent())?;
    prox_young(space, &ConvexFunction::indicator(set.clone()), &young, T::one(), x, opts)
}
