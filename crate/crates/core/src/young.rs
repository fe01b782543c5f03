//! Young functions `Φ(t) = ∫₀ᵗ φ` and the quantitative witnesses attached to
//! them: `η_Φ`, `ρ_Φ` (limit behaviour of `Φ(t)/t`), `ξ_{Φ,r}` (growth gap),
//! `ω_{Φ,r}` (continuity) and `δ_{Φ,r}` (scalar uniform convexity on `[0, r]`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{bisect_threshold, lit, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum YoungFunction<T> {
    /// `Φ(t) = t^p/p`, `φ(t) = t^{p−1}`, `p ≥ 2`.
    Power { p: T },
    /// `Φ(t) = e^t − t − 1`, `φ(t) = e^t − 1`.
    Exp,
    /// `Φ(t) = cosh t − 1`, `φ(t) = sinh t`.
    Cosh,
}

/// Grid cells used by the numeric scalar modulus of the non-power variants.
const SCALAR_GRID_CELLS: usize = 4096;

fn nonneg<T: Scalar>(t: T, what: &str) -> Result<()> {
    if t >= T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} must be finite and >= 0, got {t}")))
    }
}

fn positive<T: Scalar>(t: T, what: &str) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("{what} must be finite and > 0, got {t}")))
    }
}

/// `e^t − t − 1` accurate near zero.
fn exp_remainder<T: Scalar>(t: T) -> T {
    if t.abs() < lit(0.1) {
        // Σ_{k=2}^{10} t^k / k!
        let mut term = t * t / T::two();
        let mut sum = term;
        for k in 3..=10 {
            term = term * t / lit(k as f64);
            sum = sum + term;
        }
        sum
    } else {
        t.exp_m1() - t
    }
}

/// `cosh t − 1 = 2 sinh²(t/2)`.
fn cosh_m1<T: Scalar>(t: T) -> T {
    let s = (t * T::half()).sinh();
    T::two() * s * s
}

fn factorial<T: Scalar>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * lit(k as f64))
}

/// Zălinescu's power-type constant for `t ↦ |t|^p/p`:
/// `ε^p / (p² · 2^{(p²−2p)/(p−1)})`. This is a gauge (`γ`) modulus; the
/// midpoint modulus used by [`YoungFunction::delta_scalar`] is a quarter of it.
pub fn zalinescu_power_gauge<T: Scalar>(p: T, eps: T) -> T {
    let expo = (p * p - T::two() * p) / (p - T::one());
    eps.powf(p) / (p * p * T::two().powf(expo))
}

impl<T: Scalar> YoungFunction<T> {
    pub fn power(p: T) -> Result<Self> {
        if !(p >= T::two()) || !p.is_finite() {
            return Err(Error::input(format!("power Young function needs p >= 2, got {p}")));
        }
        Ok(YoungFunction::Power { p })
    }

    pub fn name(&self) -> String {
        match self {
            YoungFunction::Power { p } => format!("power({p})"),
            YoungFunction::Exp => "exp".into(),
            YoungFunction::Cosh => "cosh".into(),
        }
    }

    /// `Φ(t)` without input validation.
    #[inline]
    pub fn value(&self, t: T) -> T {
        match *self {
            YoungFunction::Power { p } => t.powf(p) / p,
            YoungFunction::Exp => exp_remainder(t),
            YoungFunction::Cosh => cosh_m1(t),
        }
    }

    /// `φ(t)` without input validation.
    #[inline]
    pub fn density_value(&self, t: T) -> T {
        match *self {
            YoungFunction::Power { p } => t.powf(p - T::one()),
            YoungFunction::Exp => t.exp_m1(),
            YoungFunction::Cosh => t.sinh(),
        }
    }

    pub fn eval(&self, t: T) -> Result<T> {
        nonneg(t, "t")?;
        Ok(self.value(t))
    }

    pub fn density(&self, t: T) -> Result<T> {
        nonneg(t, "t")?;
        Ok(self.density_value(t))
    }

    /// `Φ(s)/s`, strictly increasing in `s > 0`.
    fn ratio(&self, s: T) -> T {
        self.value(s) / s
    }

    /// `½Φ(a) + ½Φ(b) − Φ((a+b)/2)`, in a cancellation-free form where one exists.
    pub fn midpoint_gap(&self, a: T, b: T) -> T {
        let m = (a + b) * T::half();
        let e = (a - b).abs() * T::half();
        match *self {
            YoungFunction::Power { p } if p == T::two() => e * e * T::half(),
            YoungFunction::Power { .. } => {
                (self.value(a) + self.value(b)) * T::half() - self.value(m)
            }
            _ => self.gap_about(m, e),
        }
    }

    /// Gap of the non-power variants for the pair `m ± e`.
    fn gap_about(&self, m: T, e: T) -> T {
        match *self {
            YoungFunction::Cosh => m.cosh() * cosh_m1(e),
            _ => m.exp() * cosh_m1(e),
        }
    }

    /// `η_Φ(t)`: some `s > 0` with `Φ(s)/s ≤ t`.
    pub fn eta(&self, t: T) -> Result<T> {
        positive(t, "t")?;
        let s = match *self {
            YoungFunction::Power { p } => {
                let formula = (p * t).powf((p - T::one()).recip()) * (T::one() - lit::<T>(8.0) * T::epsilon());
                formula.min(T::one())
            }
            _ => {
                let mut hi = T::one();
                let mut lo;
                if self.ratio(hi) <= t {
                    lo = hi;
                    while self.ratio(hi) <= t {
                        lo = hi;
                        hi = hi * T::two();
                    }
                } else {
                    lo = hi * T::half();
                    while self.ratio(lo) > t {
                        hi = lo;
                        lo = lo * T::half();
                        if lo < T::min_positive_value() {
                            return Err(Error::Internal("eta bracket collapsed".into()));
                        }
                    }
                }
                let (lo, _) = bisect_threshold(lo, hi, lit(1e-12), |s| self.ratio(s) > t);
                lo
            }
        };
        debug_assert!(self.ratio(s) <= t);
        if self.density_value(s * T::half()) > T::two() * t {
            return Err(Error::Internal(format!("eta({t}) = {s} violates phi(s/2) <= 2t")));
        }
        Ok(s)
    }

    /// `ρ_Φ(t)`: some `s > 0` with `Φ(s)/s ≥ t`.
    pub fn rho(&self, t: T) -> Result<T> {
        positive(t, "t")?;
        let s = match *self {
            YoungFunction::Power { p } => {
                let formula = (p * t).powf((p - T::one()).recip()) * (T::one() + lit::<T>(8.0) * T::epsilon());
                formula.max(T::one())
            }
            _ => {
                let mut hi = T::one();
                while self.ratio(hi) < t {
                    hi = hi * T::two();
                }
                let (_, hi) = bisect_threshold(T::zero(), hi, lit(1e-12), |s| self.ratio(s) >= t);
                hi
            }
        };
        if self.ratio(s) < t {
            return Err(Error::Internal(format!("rho({t}) = {s} failed verification")));
        }
        Ok(s)
    }

    /// `ξ_{Φ,r}(ε) = Φ(ε)`: `Φ(β) ≥ Φ(α) + Φ(ε)` whenever `β ≥ α + ε`, since
    /// `φ` is increasing. Independent of `r`.
    pub fn xi(&self, r: T, eps: T) -> Result<T> {
        positive(r, "r")?;
        positive(eps, "eps")?;
        Ok(self.value(eps))
    }

    /// `ω_{Φ,r}(ε) = ε/φ(r)`, from the Lipschitz constant `φ(r)` of `Φ` on `[0, r]`.
    pub fn omega(&self, r: T, eps: T) -> Result<T> {
        positive(r, "r")?;
        positive(eps, "eps")?;
        let lip = self.density_value(r);
        if !(lip > T::zero()) {
            return Err(Error::Internal(format!("phi({r}) is not positive")));
        }
        Ok(eps / lip)
    }

    /// Modulus of uniform convexity of `Φ` on `[0, r]`.
    ///
    /// Power variants use a quarter of Zălinescu's gauge constant (a global
    /// modulus). The others minimize the midpoint gap over pairs at distance
    /// exactly `ε` (the gap only grows with the distance) on a grid of
    /// resolution `ε/64`, capped at 4096 cells, and halve the result.
    pub fn delta_scalar(&self, r: T, eps: T) -> Result<T> {
        positive(r, "r")?;
        positive(eps, "eps")?;
        match *self {
            YoungFunction::Power { p } => Ok(zalinescu_power_gauge(p, eps) / lit(4.0)),
            _ => {
                let eps = eps.min(r);
                let span = r - eps;
                let cells = lit::<T>(SCALAR_GRID_CELLS as f64);
                let h = (eps / lit(64.0)).max(span / cells);
                let n = if h > T::zero() {
                    (span / h).floor().to_usize().unwrap_or(0).min(SCALAR_GRID_CELLS)
                } else {
                    0
                };
                let half = eps * T::half();
                let mut best = T::infinity();
                for k in 0..=n {
                    let a = (lit::<T>(k as f64) * h).min(span);
                    best = best.min(self.gap_about(a + half, half));
                }
                best = best.min(self.gap_about(span + half, half));
                if !(best > T::zero()) {
                    return Err(Error::Internal(format!("scalar modulus underflow at eps = {eps}")));
                }
                Ok(best * T::half())
            }
        }
    }

    /// Writes `Φ = c·t^q/q + R` with `R` convex and nondecreasing on `[0, ∞)`
    /// and `q ≥ p_space`, returning `(c, q)`. Used to transfer the global
    /// power-type modulus of `t^q/q ∘ ‖·‖` to `Φ ∘ ‖·‖`.
    pub fn power_minorant(&self, p_space: T) -> Option<(T, T)> {
        match *self {
            YoungFunction::Power { p } => (p >= p_space).then_some((T::one(), p)),
            YoungFunction::Exp => {
                let q = p_space.ceil().max(T::two());
                let qi = q.to_u32()?;
                Some((factorial::<T>(qi - 1).recip(), q))
            }
            YoungFunction::Cosh => {
                let mut q = p_space.ceil().max(T::two());
                if q.to_u32()? % 2 == 1 {
                    q = q + T::one();
                }
                let qi = q.to_u32()?;
                Some((factorial::<T>(qi - 1).recip(), q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Y = YoungFunction<f64>;

    fn stock() -> Vec<Y> {
        vec![Y::power(2.0).unwrap(), Y::power(3.0).unwrap(), Y::power(4.0).unwrap(), Y::Exp, Y::Cosh]
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    #[test]
    fn eval_and_density_examples() {
        let p2 = Y::power(2.0).unwrap();
        assert_eq!(p2.eval(2.0).unwrap(), 2.0);
        assert_eq!(p2.density(2.0).unwrap(), 2.0);
        assert_eq!(Y::Exp.eval(0.0).unwrap(), 0.0);
        assert_eq!(Y::Exp.density(0.0).unwrap(), 0.0);
        let series: f64 = (1..12).map(|k| 1.0 / factorial::<f64>(2 * k)).sum();
        assert!((Y::Cosh.eval(1.0).unwrap() - series).abs() < 1e-15);
        assert!((Y::Cosh.density(1.0).unwrap() - 1f64.sinh()).abs() < 1e-15);
        assert!(p2.eval(-1.0).is_err());
        assert!(Y::power(1.5).is_err());
    }

    #[test]
    fn values_are_integrals_of_densities() {
        for y in stock() {
            for &t in &[0.3, 1.0, 2.5] {
                // composite Simpson with 2000 panels
                let n = 2000;
                let h = t / n as f64;
                let mut s = y.density_value(0.0) + y.density_value(t);
                for i in 1..n {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    s += w * y.density_value(i as f64 * h);
                }
                let integral = s * h / 3.0;
                assert!((integral - y.value(t)).abs() < 1e-8 * y.value(t).max(1.0), "{}", y.name());
            }
        }
    }

    #[test]
    fn eta_examples() {
        let p2 = Y::power(2.0).unwrap();
        assert_eq!(p2.eta(1.0).unwrap(), 1.0);
        assert!((p2.eta(0.25).unwrap() - 0.5).abs() < 1e-14);
        let s = Y::Exp.eta(0.1).unwrap();
        assert!(Y::Exp.value(s) / s <= 0.1);
        assert!(s > 0.15);
    }

    #[test]
    fn rho_examples() {
        let p2 = Y::power(2.0).unwrap();
        assert!((p2.rho(1.0).unwrap() - 2.0).abs() < 1e-14);
        let p4 = Y::power(4.0).unwrap();
        assert!((p4.rho(4.0).unwrap() - 16f64.cbrt()).abs() < 1e-13);
        let s = Y::Cosh.rho(10.0).unwrap();
        assert!(Y::Cosh.value(s) / s >= 10.0);
    }

    #[test]
    fn witness_inequalities_on_log_grid() {
        for y in stock() {
            for t in log_grid(1e-6, 1e6, 1000) {
                let e = y.eta(t).unwrap();
                assert!(y.value(e) / e <= t, "{} eta({t})", y.name());
                assert!(y.density_value(e / 2.0) <= 2.0 * t);
                let r = y.rho(t).unwrap();
                assert!(y.value(r) / r >= t, "{} rho({t})", y.name());
            }
        }
    }

    #[test]
    fn xi_examples_and_grid_oracle() {
        let p2 = Y::power(2.0).unwrap();
        assert_eq!(p2.xi(3.0, 1.0).unwrap(), 0.5);
        assert!((Y::Exp.xi(2.0, 1.0).unwrap() - (std::f64::consts::E - 2.0)).abs() < 1e-15);
        let mut prev = f64::INFINITY;
        for eps in [1.0, 0.1, 0.01, 1e-4] {
            let v = p2.xi(1.0, eps).unwrap();
            assert!(v < prev);
            prev = v;
        }
        for y in stock() {
            for &eps in &[0.1, 0.5, 1.0] {
                for &r in &[1.0, 2.0, 5.0] {
                    let xi = y.xi(r, eps).unwrap();
                    let steps = 2000;
                    let span = (r - eps).max(0.0);
                    let min_gap = (0..=steps)
                        .map(|k| span * k as f64 / steps as f64)
                        .map(|a| y.value(a + eps) - y.value(a))
                        .fold(f64::INFINITY, f64::min);
                    assert!(min_gap >= xi * (1.0 - 1e-12), "{} r={r} eps={eps}", y.name());
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let p2 = Y::power(2.0).unwrap();
        assert_eq!(p2.omega(1.0, 0.5).unwrap(), 0.5);
        assert_eq!(p2.omega(2.0, 0.5).unwrap(), 0.25);
        for y in stock() {
            assert!(y.omega(1.0, 0.1).unwrap() < y.omega(1.0, 0.2).unwrap());
        }
    }

    #[test]
    fn delta_scalar_examples() {
        let p2 = Y::power(2.0).unwrap();
        assert_eq!(zalinescu_power_gauge(2.0, 1.0), 0.25);
        assert_eq!(p2.delta_scalar(1.0, 1.0).unwrap(), 0.0625);
        let p4 = Y::power(4.0).unwrap();
        let expect = 1.0 / (16.0 * 2f64.powf(8.0 / 3.0)) / 4.0;
        assert!((p4.delta_scalar(1.0, 1.0).unwrap() - expect).abs() < 1e-16);
        // exp on [0,1] at eps = 1/2: the grid contains the minimizing pair (0, 1/2)
        let d = Y::Exp.delta_scalar(1.0, 0.5).unwrap();
        let exact = 0.5 * Y::Exp.value(0.5) - Y::Exp.value(0.25);
        assert!((d - exact / 2.0).abs() < 1e-15);
    }

    #[test]
    fn midpoint_gap_forms_agree_with_direct_evaluation() {
        for y in stock() {
            for &(a, b) in &[(0.0, 1.0), (0.3, 2.0), (1.5, 1.7)] {
                let direct = 0.5 * y.value(a) + 0.5 * y.value(b) - y.value(0.5 * (a + b));
                assert!((y.midpoint_gap(a, b) - direct).abs() < 1e-12, "{}", y.name());
            }
        }
    }

    #[test]
    fn power_minorant_choices() {
        assert_eq!(Y::Exp.power_minorant(2.0), Some((1.0, 2.0)));
        assert_eq!(Y::Exp.power_minorant(4.0), Some((1.0 / 6.0, 4.0)));
        assert_eq!(Y::Cosh.power_minorant(3.0), Some((1.0 / 6.0, 4.0)));
        assert_eq!(Y::power(2.0).unwrap().power_minorant(4.0), None);
        assert_eq!(Y::power(4.0).unwrap().power_minorant(2.0), Some((1.0, 4.0)));
        // remainder Φ − c t^q/q is convex and nondecreasing: check second differences
        for (y, p) in [(Y::Exp, 2.0), (Y::Exp, 4.0), (Y::Cosh, 4.0)] {
            let (c, q) = y.power_minorant(p).unwrap();
            let rem = |t: f64| y.value(t) - c * t.powf(q) / q;
            for k in 1..400 {
                let t = k as f64 * 0.01;
                assert!(rem(t + 0.01) - rem(t) >= -1e-15);
                assert!(rem(t + 0.01) - 2.0 * rem(t) + rem(t - 0.01) >= -1e-13);
            }
        }
    }
}
