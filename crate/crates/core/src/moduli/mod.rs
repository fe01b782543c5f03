//! Explicit moduli: uniform convexity of `Φ∘‖·‖` on balls, the power-type
//! corollaries, the Ψ-composition modulus, the prox radius bound and the
//! λ-free uniform-continuity modulus of the prox together with its
//! λ-dependent counterpart for the rescaled prox.

mod renorm;

pub use renorm::{renorm, Renorm};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::spaces::NormedSpace;
use crate::young::YoungFunction;

/// Which formula produced a modulus, and with which parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub formula: String,
    pub params: BTreeMap<String, f64>,
}

/// A positive function `ε ↦ δ(ε)` with provenance.
#[derive(Clone)]
pub struct Modulus<T> {
    eval: Arc<dyn Fn(T) -> T + Send + Sync>,
    provenance: Provenance,
    valid_range: (T, T),
}

impl<T: Scalar> fmt::Debug for Modulus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Modulus")
            .field("provenance", &self.provenance)
            .field("valid_range", &self.valid_range)
            .finish()
    }
}

/// Tabulated modulus, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusTable {
    pub provenance: Provenance,
    pub samples: Vec<(f64, f64)>,
}

impl<T: Scalar> Modulus<T> {
    pub fn new<F>(formula: &str, params: &[(&str, f64)], valid_range: (T, T), f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            provenance: Provenance {
                formula: formula.to_string(),
                params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            },
            valid_range,
        }
    }

    #[inline]
    pub fn eval(&self, eps: T) -> T {
        (self.eval)(eps)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn valid_range(&self) -> (T, T) {
        self.valid_range
    }

    pub fn tabulate(&self, eps: &[T]) -> ModulusTable {
        ModulusTable {
            provenance: self.provenance.clone(),
            samples: eps
                .iter()
                .map(|&e| (e.to_f64_lossy(), self.eval(e).to_f64_lossy()))
                .collect(),
        }
    }
}

fn positive<T: Scalar>(v: T, what: &str) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} must be finite and > 0, got {v}")))
    }
}

fn in_open_half<T: Scalar>(a: T) -> Result<()> {
    if a > T::zero() && a < T::half() {
        Ok(())
    } else {
        Err(Error::input(format!("A must lie in (0, 1/2), got {a}")))
    }
}

fn at_least_two<T: Scalar>(p: T) -> Result<()> {
    if p >= T::two() && p.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("p must be >= 2, got {p}")))
    }
}

/// `γ := 2δ`.
pub fn gamma_from_delta<T: Scalar>(delta: T) -> Result<T> {
    positive(delta, "delta")?;
    Ok(T::two() * delta)
}

/// `δ := γ/4`.
pub fn delta_from_gamma<T: Scalar>(gamma: T) -> Result<T> {
    positive(gamma, "gamma")?;
    Ok(gamma / lit(4.0))
}

/// Modulus of uniform convexity of `Φ∘‖·‖` on `B(0, r)`:
///
/// `δ_r(ε) = min{δ_{Φ,r}(ε̃), ε̆}`, `ε̆ = ⅓ ξ_{Φ,r}((ε/4)·δ_X(ε/2r))`,
/// `ε̃ = min{ε/2, ω_{Φ,3r/2}(2ε̆)}`. For `ε > 2r` the value at `2r` is used.
pub fn compose_modulus<T: Scalar>(
    space_modulus: &Modulus<T>,
    young: &YoungFunction<T>,
    r: T,
    eps: T,
) -> Result<T> {
    positive(r, "r")?;
    positive(eps, "eps")?;
    let e = eps.min(T::two() * r);
    let dx = space_modulus.eval(e / (T::two() * r));
    positive(dx, "space modulus value")?;
    let breve = young.xi(r, e / lit(4.0) * dx)? / lit(3.0);
    positive(breve, "xi witness")?;
    let tilde = (e * T::half()).min(young.omega(lit::<T>(1.5) * r, T::two() * breve)?);
    Ok(young.delta_scalar(r, tilde)?.min(breve))
}

/// [`compose_modulus`] at a fixed radius, packaged as a [`Modulus`].
pub fn compose_modulus_on_ball<T: Scalar>(
    space_modulus: &Modulus<T>,
    young: &YoungFunction<T>,
    r: T,
) -> Result<Modulus<T>> {
    positive(r, "r")?;
    let sm = space_modulus.clone();
    let y = *young;
    let mut params = vec![("r", r.to_f64_lossy())];
    params.extend(space_modulus.provenance().params.iter().map(|(k, v)| (k.as_str(), *v)));
    Ok(Modulus::new(
        &format!("composition[{}]", young.name()),
        &params,
        (T::zero(), T::two() * r),
        move |e| compose_modulus(&sm, &y, r, e).unwrap_or(T::zero()),
    ))
}

/// `min{B/2^p, AK/8^p}·ε^p`.
pub fn power_compose_modulus<T: Scalar>(a: T, b: T, k: T, p: T) -> Result<Modulus<T>> {
    in_open_half(a)?;
    positive(b, "B")?;
    positive(k, "K")?;
    at_least_two(p)?;
    let coef = (b / T::two().powf(p)).min(a * k / lit::<T>(8.0).powf(p));
    Ok(Modulus::new(
        "power composition: min(B/2^p, AK/8^p) eps^p",
        &[("A", a.to_f64_lossy()), ("B", b.to_f64_lossy()), ("K", k.to_f64_lossy()), ("p", p.to_f64_lossy())],
        (T::zero(), T::infinity()),
        move |e| coef * e.powf(p),
    ))
}

/// Global modulus `(A/8^p)·ε^p` of `(1/p)‖·‖^p` when `δ_X(ε) = Aε^p`.
pub fn power_norm_modulus<T: Scalar>(a: T, p: T) -> Result<Modulus<T>> {
    in_open_half(a)?;
    at_least_two(p)?;
    let coef = a / lit::<T>(8.0).powf(p);
    Ok(Modulus::new(
        "power norm: (A/8^p) eps^p",
        &[("A", a.to_f64_lossy()), ("p", p.to_f64_lossy())],
        (T::zero(), T::infinity()),
        move |e| coef * e.powf(p),
    ))
}

/// A convex nondecreasing `Ψ: [0,∞) → [0,∞)` with right derivative and a
/// scalar modulus of uniform convexity.
#[derive(Clone)]
pub struct PsiFunction<T> {
    value: Arc<dyn Fn(T) -> T + Send + Sync>,
    right_derivative: Arc<dyn Fn(T) -> T + Send + Sync>,
    delta_psi: Modulus<T>,
}

impl<T: Scalar> PsiFunction<T> {
    pub fn new<V, D>(value: V, right_derivative: D, delta_psi: Modulus<T>) -> Self
    where
        V: Fn(T) -> T + Send + Sync + 'static,
        D: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            right_derivative: Arc::new(right_derivative),
            delta_psi,
        }
    }

    /// `Ψ(t) = t^p/p` with the scalar power modulus of [`YoungFunction::delta_scalar`].
    pub fn power(p: T) -> Result<Self> {
        let y = YoungFunction::power(p)?;
        let delta = Modulus::new(
            "scalar power modulus: zalinescu gauge / 4",
            &[("p", p.to_f64_lossy())],
            (T::zero(), T::infinity()),
            move |e| y.delta_scalar(T::one(), e).unwrap_or(T::zero()),
        );
        Ok(Self::new(move |t| t.powf(p) / p, move |t| t.powf(p - T::one()), delta))
    }

    pub fn value(&self, t: T) -> T {
        (self.value)(t)
    }

    pub fn right_derivative(&self, t: T) -> T {
        (self.right_derivative)(t)
    }

    pub fn delta_psi(&self) -> &Modulus<T> {
        &self.delta_psi
    }
}

/// `(K_ε, ξ_ε)` with `Ψ'₊(t)·δ_X(ε/t)·t ≥ ξ_ε` for every `t > max{K_ε, ε/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessPair<T> {
    pub eps: T,
    pub k_eps: T,
    pub xi_eps: T,
}

impl<T: Scalar> WitnessPair<T> {
    /// Builds a pair and checks the defining inequality on a log grid of
    /// `t` up to `10⁶·max{K_ε, 1}`.
    pub fn new(
        eps: T,
        k_eps: T,
        xi_eps: T,
        psi: &PsiFunction<T>,
        space_modulus: &Modulus<T>,
    ) -> Result<Self> {
        positive(eps, "eps")?;
        positive(xi_eps, "xi_eps")?;
        if !(k_eps >= T::zero()) {
            return Err(Error::input("K_eps must be >= 0"));
        }
        let pair = Self { eps, k_eps, xi_eps };
        if let Some(t) = pair.first_violation(psi, space_modulus) {
            return Err(Error::input(format!(
                "witness (K={k_eps}, xi={xi_eps}) fails at t = {t} for eps = {eps}"
            )));
        }
        Ok(pair)
    }

    fn first_violation(&self, psi: &PsiFunction<T>, space_modulus: &Modulus<T>) -> Option<T> {
        let start = self.k_eps.max(self.eps * T::half());
        let end = lit::<T>(1e6) * self.k_eps.max(T::one());
        let n = 2000;
        let (ls, le) = (start.ln(), end.max(start * lit(2.0)).ln());
        (0..=n).find_map(|i| {
            let frac = lit::<T>(i as f64) / lit(n as f64);
            // strictly above the threshold
            let t = (ls + (le - ls) * frac).exp() * (T::one() + lit::<T>(1e-12));
            let v = psi.right_derivative(t) * space_modulus.eval(self.eps / t) * t;
            (v < self.xi_eps * (T::one() - lit::<T>(1e-12))).then_some(t)
        })
    }

    /// Stock witness for `Ψ(t) = t^p/p` on `ℓ_q` with `q ≤ p`:
    /// `K_ε = 0`, `ξ_ε = A·2^{q−p}·ε^p` where `A` is the space's power-type constant.
    pub fn power(space: &NormedSpace<T>, p: T, eps: T) -> Result<Self> {
        let q = space.exponent();
        if q > p {
            return Err(Error::input(format!(
                "no global witness for t^{p}/{p} on l_{q}: the liminf condition fails"
            )));
        }
        let xi = space.power_type_constant() * T::two().powf(q - p) * eps.powf(p);
        Self::new(eps, T::zero(), xi, &PsiFunction::power(p)?, &space.modulus())
    }
}

/// Modulus of `Ψ∘‖·‖`:
/// `min{δ_Ψ(ε/2), (ε/4)·δ_X(ε/max{ε/2, 8K_{ε/8}})·Ψ'₊(ε/4), ξ_{ε/8}}`.
///
/// `witness` must be the pair for `ε/8`; `space_modulus` must be capped at
/// `1/2` on `(0, 1]` (as [`NormedSpace::modulus`] is).
pub fn psi_compose_modulus<T: Scalar>(
    psi: &PsiFunction<T>,
    space_modulus: &Modulus<T>,
    witness: Option<&WitnessPair<T>>,
    eps: T,
) -> Result<T> {
    positive(eps, "eps")?;
    let w = witness.ok_or_else(|| {
        Error::input("missing witness pair: construct WitnessPair for eps/8 (e.g. WitnessPair::power)")
    })?;
    let eighth = eps / lit(8.0);
    if (w.eps - eighth).abs() > lit::<T>(1e-12) * eighth {
        return Err(Error::input(format!(
            "witness was built for eps = {}, expected eps/8 = {eighth}",
            w.eps
        )));
    }
    let quarter = eps / lit(4.0);
    let denom = (eps * T::half()).max(lit::<T>(8.0) * w.k_eps);
    let middle = quarter * space_modulus.eval(eps / denom) * psi.right_derivative(quarter);
    Ok(psi.delta_psi().eval(eps * T::half()).min(middle).min(w.xi_eps))
}

/// Bound on `‖y − prox_λ(y)‖` over `y ∈ B(x, r)`, `λ ∈ (0, 1]`, where
/// `R₀ = ‖x − prox_1(x)‖`:
/// `max{1, ρ_Φ(φ(R₀) + (r + R₀)φ(R₀) + Φ(r + R₀))}`.
pub fn prox_radius_bound<T: Scalar>(young: &YoungFunction<T>, r: T, r0: T) -> Result<T> {
    positive(r, "r")?;
    if !(r0 >= T::zero()) {
        return Err(Error::input("R0 must be >= 0"));
    }
    let phi0 = young.density_value(r0);
    let arg = phi0 + (r + r0) * phi0 + young.value(r + r0);
    Ok(young.rho(arg)?.max(T::one()))
}

/// λ-free modulus of uniform continuity of the Young prox on bounded sets:
/// `min{ε/2, (2/φ(R))·δ_R(ε/2)}`.
pub fn prox_uc_modulus<T: Scalar>(
    young: &YoungFunction<T>,
    space_modulus: &Modulus<T>,
    big_r: T,
    eps: T,
) -> Result<T> {
    positive(big_r, "R")?;
    positive(eps, "eps")?;
    let inner = compose_modulus(space_modulus, young, big_r, eps * T::half())?;
    Ok((eps * T::half()).min(T::two() / young.density_value(big_r) * inner))
}

/// Modulus for the rescaled prox `argmin f + λΦ(‖x−·‖/λ)`:
/// `min{ε/2, 2λ·δ_{R/λ}(ε/2λ)/φ(R/λ)}`.
pub fn prox_uc_modulus_alt<T: Scalar>(
    young: &YoungFunction<T>,
    space_modulus: &Modulus<T>,
    big_r: T,
    lam: T,
    eps: T,
) -> Result<T> {
    positive(big_r, "R")?;
    positive(eps, "eps")?;
    if !(lam > T::zero() && lam <= T::one()) {
        return Err(Error::input(format!("lambda must lie in (0, 1], got {lam}")));
    }
    let radius = big_r / lam;
    let inner = compose_modulus(space_modulus, young, radius, eps / (T::two() * lam))?;
    Ok((eps * T::half()).min(T::two() * lam * inner / young.density_value(radius)))
}

/// Threshold `Λ = min{1, ½η_Φ(½ε̃·φ(ε/5)/ζ)}` with `ε̃ = (ε/10)·δ_X(ε/β)`:
/// for `λ < Λ` the Young prox lies within `ε` of `P_{cl dom f}(x)`.
///
/// `beta = ‖x − prox_1(x)‖`; `beta = 0` evaluates `δ_X` at its clamp value.
/// `zeta` must exceed `f(z) − f(prox_1(x))` for a domain point `z` within
/// `min{ε/20, ε̃}` of the projection.
pub fn lambda_threshold<T: Scalar>(
    young: &YoungFunction<T>,
    space_modulus: &Modulus<T>,
    eps: T,
    beta: T,
    zeta: T,
) -> Result<T> {
    positive(eps, "eps")?;
    positive(zeta, "zeta")?;
    if !(beta >= T::zero()) {
        return Err(Error::input("beta must be >= 0"));
    }
    let tilde = lambda_threshold_radius(space_modulus, eps, beta);
    let arg = T::half() * tilde * young.density_value(eps / lit(5.0)) / zeta;
    Ok(T::one().min(T::half() * young.eta(arg)?))
}

/// `ε̃ = (ε/10)·δ_X(ε/β)`; the domain point must lie within `min{ε/20, ε̃}`.
pub fn lambda_threshold_radius<T: Scalar>(space_modulus: &Modulus<T>, eps: T, beta: T) -> T {
    let arg = if beta > T::zero() { eps / beta } else { T::infinity() };
    eps / lit(10.0) * space_modulus.eval(arg)
}

/// Hölder constant `16r·((3p + 2^p)/(2A))^{1/p}`, valid when
/// `r ≥ max{1, ‖z − prox_1(z)‖}`.
pub fn hoelder_constant<T: Scalar>(a: T, p: T, r: T) -> Result<T> {
    in_open_half(a)?;
    at_least_two(p)?;
    positive(r, "r")?;
    let base = (lit::<T>(3.0) * p + T::two().powf(p)) / (T::two() * a);
    Ok(lit::<T>(16.0) * r * base.powf(p.recip()))
}

/// Power-type specialization of the λ-free prox modulus:
/// `min{ε/2, 2A/(16^p R^{p−1})·ε^p}`.
pub fn hoelder_modulus<T: Scalar>(a: T, p: T, big_r: T) -> Result<Modulus<T>> {
    in_open_half(a)?;
    at_least_two(p)?;
    positive(big_r, "R")?;
    let coef = T::two() * a / (lit::<T>(16.0).powf(p) * big_r.powf(p - T::one()));
    Ok(Modulus::new(
        "power prox modulus: min(eps/2, 2A eps^p/(16^p R^(p-1)))",
        &[("A", a.to_f64_lossy()), ("p", p.to_f64_lossy()), ("R", big_r.to_f64_lossy())],
        (T::zero(), T::infinity()),
        move |e| (e * T::half()).min(coef * e.powf(p)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hilbert() -> NormedSpace<f64> {
        NormedSpace::hilbert(2).unwrap()
    }

    #[test]
    fn conversions() {
        assert_eq!(gamma_from_delta(0.125).unwrap(), 0.25);
        assert_eq!(delta_from_gamma(1.0).unwrap(), 0.25);
        let d = 0.3;
        assert_eq!(delta_from_gamma(gamma_from_delta(d).unwrap()).unwrap(), d / 2.0);
        assert!(gamma_from_delta(0.0).is_err());
        assert!(delta_from_gamma(-1.0).is_err());
    }

    #[test]
    fn compose_nested_example() {
        let y = YoungFunction::power(2.0).unwrap();
        let v = compose_modulus(&hilbert().modulus(), &y, 1.0, 1.0).unwrap();
        let breve = 1.0_f64 / 98304.0;
        let tilde = 4.0 * breve / 3.0;
        // scalar modulus of t²/2 is (zalinescu gauge)/4 = tilde²/16
        let expect = (tilde * tilde / 16.0).min(breve);
        assert!((v / expect - 1.0).abs() < 1e-12);
        let clamped = compose_modulus(&hilbert().modulus(), &y, 1.0, 5.0).unwrap();
        assert_eq!(clamped, compose_modulus(&hilbert().modulus(), &y, 1.0, 2.0).unwrap());
    }

    #[test]
    fn compose_is_antitone_in_radius() {
        let m = hilbert().modulus();
        for y in [YoungFunction::power(2.0).unwrap(), YoungFunction::Exp] {
            for &eps in &[0.1, 0.5, 1.0] {
                let vals: Vec<f64> = [1.0, 2.0, 4.0, 8.0]
                    .iter()
                    .map(|&r| compose_modulus(&m, &y, r, eps).unwrap())
                    .collect();
                assert!(vals.windows(2).all(|w| w[1] <= w[0]), "{} {vals:?}", y.name());
            }
        }
    }

    #[test]
    fn power_formulas() {
        let m = power_compose_modulus(0.125_f64, 0.25, 1.0, 2.0).unwrap();
        assert!((m.eval(1.0) - 1.0 / 512.0).abs() < 1e-18);
        let base = power_compose_modulus(0.1, 0.1, 1.0, 3.0).unwrap().eval(1.0);
        assert!(power_compose_modulus(0.2, 0.1, 1.0, 3.0).unwrap().eval(1.0) >= base);
        assert!(power_compose_modulus(0.1, 0.2, 1.0, 3.0).unwrap().eval(1.0) >= base);
        assert!(power_compose_modulus(0.1, 0.1, 2.0, 3.0).unwrap().eval(1.0) >= base);
        assert!(power_compose_modulus(0.5, 0.1, 1.0, 3.0).is_err());

        let n = power_norm_modulus(0.125_f64, 2.0).unwrap();
        assert!((n.eval(1.0) - 1.0 / 512.0).abs() < 1e-18);
        assert!((n.eval(2.0) / n.eval(1.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn psi_compose_hilbert_example() {
        let s = hilbert();
        let psi = PsiFunction::power(2.0).unwrap();
        let sm = s.modulus();
        for &eps in &[0.1, 1.0, 3.0] {
            let e8 = eps / 8.0;
            let w = WitnessPair::new(e8, 0.0, e8 * e8 / 16.0, &psi, &sm).unwrap();
            let v = psi_compose_modulus(&psi, &sm, Some(&w), eps).unwrap();
            let middle = eps / 4.0 * 0.5 * eps / 4.0;
            let expect = (eps * eps / 64.0).min(middle).min(eps * eps / 1024.0);
            assert!((v / expect - 1.0).abs() < 1e-12);
            assert!(v <= psi.delta_psi().eval(eps / 2.0));
        }
        assert!(psi_compose_modulus(&psi, &sm, None, 1.0).is_err());
    }

    #[test]
    fn witness_validation_rejects_bad_pairs() {
        let s = hilbert();
        let psi = PsiFunction::power(2.0).unwrap();
        assert!(WitnessPair::new(1.0, 0.0, 0.2, &psi, &s.modulus()).is_err());
        assert!(WitnessPair::new(1.0, 0.0, 0.125, &psi, &s.modulus()).is_ok());
        let l4 = NormedSpace::new(2, 4.0).unwrap();
        assert!(WitnessPair::power(&l4, 2.0, 0.5).is_err());
        assert!(WitnessPair::power(&l4, 4.0, 0.5).is_ok());
    }

    #[test]
    fn radius_bound_examples() {
        let y = YoungFunction::power(2.0_f64).unwrap();
        assert!((prox_radius_bound(&y, 1.0, 1.0).unwrap() - 10.0).abs() < 1e-12);
        assert!(prox_radius_bound(&y, 1e-3, 0.0).unwrap() >= 1.0);
    }

    #[test]
    fn uc_modulus_and_alternative() {
        let y = YoungFunction::power(2.0).unwrap();
        let sm = hilbert().modulus();
        let d = prox_uc_modulus(&y, &sm, 10.0, 1.0).unwrap();
        let expect = 0.5_f64.min(0.2 * compose_modulus(&sm, &y, 10.0, 0.5).unwrap());
        assert_eq!(d, expect);
        assert!(d <= 0.5);
        let alt1 = prox_uc_modulus_alt(&y, &sm, 10.0, 1.0, 1.0).unwrap();
        assert!((alt1 - d).abs() <= 1e-15 * d);
        // power Young functions are homogeneous: the rescaled modulus is λ-invariant
        let alt01 = prox_uc_modulus_alt(&y, &sm, 10.0, 0.1, 1.0).unwrap();
        assert!((alt01 / alt1 - 1.0).abs() < 1e-9);
        // exp is not: the radius R/λ costs a strictly smaller modulus
        let e = YoungFunction::Exp;
        let a1 = prox_uc_modulus_alt(&e, &sm, 2.0, 1.0, 1.0).unwrap();
        let a05 = prox_uc_modulus_alt(&e, &sm, 2.0, 0.5, 1.0).unwrap();
        let a01 = prox_uc_modulus_alt(&e, &sm, 2.0, 0.1, 1.0).unwrap();
        assert!(a1 > a05 && a05 > a01 && a01 > 0.0, "{a1} {a05} {a01}");
        assert!(prox_uc_modulus_alt(&e, &sm, 2.0, 1.5, 1.0).is_err());
    }

    #[test]
    fn lambda_threshold_structure() {
        let y = YoungFunction::power(2.0).unwrap();
        let sm = hilbert().modulus();
        let lam = lambda_threshold(&y, &sm, 0.5, 1.0, 1.0).unwrap();
        // ε̃ = 0.05·δ(0.5) = 0.05/32; argument = ε̃·φ(0.1)/2; η(t) = 2t for small t
        let tilde = 0.05 / 32.0;
        let expect = 0.5 * (2.0 * 0.5 * tilde * 0.1);
        assert!((lam / expect - 1.0).abs() < 1e-12);
        let mut prev = 1.0;
        for zeta in [1e-3, 1.0, 1e3, 1e6] {
            let l = lambda_threshold(&y, &sm, 0.5, 1.0, zeta).unwrap();
            assert!(l <= 1.0 && l <= prev);
            prev = l;
        }
        assert!(lambda_threshold(&y, &sm, 0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn hoelder_constant_example() {
        let l = hoelder_constant(0.125, 2.0, 1.0).unwrap();
        assert!((l - 16.0 * 40f64.sqrt()).abs() < 1e-12);
        assert!((hoelder_constant(0.125, 2.0, 3.0).unwrap() - 3.0 * l).abs() < 1e-11);
        let m = hoelder_modulus(0.125, 2.0, 1.0).unwrap();
        assert!(m.eval(1.0) <= 0.5);
    }

    #[test]
    fn tabulated_modulus_serializes() {
        let t = power_norm_modulus(0.125, 2.0).unwrap().tabulate(&[1.0, 2.0]);
        let js = serde_json::to_string(&t).unwrap();
        assert!(js.contains("\"A\":0.125"));
        assert!(js.contains("[2.0,0.0078125]"));
    }
}
