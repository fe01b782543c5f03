//! Quantitative renorming: from a uniformly convex `f` on the unit ball,
//! continuous at `0`, to an equivalent uniformly convex norm.

use std::sync::Arc;

use super::Modulus;
use crate::error::{Error, Result};
use crate::scalar::{bisect_threshold, lit, Scalar};
use crate::spaces::NormedSpace;
use crate::vector::scale;

type Objective<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// The gauge `|||·|||` of `B = {x ∈ B_X : f(x) ≤ δ_f(α)}` with its modulus
/// and the sandwich constants `‖x‖/α ≤ |||x||| ≤ ‖x‖/β`.
#[derive(Clone)]
pub struct Renorm<T> {
    space: NormedSpace<T>,
    f: Objective<T>,
    level: T,
    alpha: T,
    beta: T,
    modulus: Modulus<T>,
    notes: Vec<String>,
}

/// Builds the renorming for `f` with modulus `f_modulus` on `B_X` and
/// modulus of continuity `omega_f0` at `0`, for a constant `M` with
/// `ω_{f,0}(M) < 1`.
///
/// `f` is replaced by `x ↦ ½(f(x) + f(−x)) − f(0)`.
pub fn renorm<T, F>(
    space: &NormedSpace<T>,
    f: F,
    f_modulus: &Modulus<T>,
    omega_f0: &Modulus<T>,
    m: T,
) -> Result<Renorm<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T + Send + Sync + 'static,
{
    if !(m > T::zero()) || !m.is_finite() {
        return Err(Error::input(format!("M must be finite and > 0, got {m}")));
    }
    let wm = omega_f0.eval(m);
    if !(wm > T::zero() && wm < T::one()) {
        return Err(Error::input(format!("need 0 < omega_f0(M) < 1, got {wm} at M = {m}")));
    }
    let n = space.dimension();
    let f0 = f(&vec![T::zero(); n]);
    let mut notes = Vec::new();
    let probes: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut e = vec![T::zero(); n];
            e[i] = T::half();
            e
        })
        .collect();
    if probes.iter().any(|e| (f(e) - f(&scale(e, -T::one()))).abs() > lit::<T>(1e-12)) {
        notes.push("f is not symmetric; replaced by its symmetrization".to_string());
    }
    let f: Objective<T> = Arc::new(move |x: &[T]| {
        let neg = scale(x, -T::one());
        (f(x) + f(&neg)) * T::half() - f0
    });
    let alpha = wm * T::half();
    let level = f_modulus.eval(alpha);
    if !(level > T::zero()) {
        return Err(Error::input(format!("f modulus vanishes at alpha = {alpha}")));
    }
    let beta = omega_f0.eval(level);
    if !(beta > T::zero() && beta <= alpha) {
        return Err(Error::input(format!("beta = {beta} must lie in (0, alpha = {alpha}]")));
    }
    let coef = wm / (lit::<T>(4.0) * m * alpha);
    let fm = f_modulus.clone();
    let modulus = Modulus::new(
        "renorming: omega(M)/(4 M alpha) * delta_f(beta eps)",
        &[
            ("M", m.to_f64_lossy()),
            ("alpha", alpha.to_f64_lossy()),
            ("beta", beta.to_f64_lossy()),
        ],
        (T::zero(), T::two()),
        move |e| coef * fm.eval(beta * e.min(T::two())),
    );
    Ok(Renorm { space: *space, f, level, alpha, beta, modulus, notes })
}

impl<T: Scalar> Renorm<T> {
    /// Membership in `B`.
    pub fn contains(&self, u: &[T]) -> bool {
        self.space.norm_unchecked(u) <= T::one() && (self.f)(u) <= self.level
    }

    /// `(lo, hi)` with `lo ≤ |||x||| ≤ hi` and `x/hi ∈ B`, relative width 1e-10.
    ///
    /// The bracket is found by membership tests alone, so it does not rely
    /// on the sandwich constants.
    pub fn gauge_bracket(&self, x: &[T]) -> (T, T) {
        let n = self.space.norm_unchecked(x);
        if n == T::zero() {
            return (T::zero(), T::zero());
        }
        let inside = |t: T| self.contains(&scale(x, t.recip()));
        let mut hi = n / self.beta;
        while !inside(hi) {
            hi = hi * T::two();
        }
        let mut lo = n;
        while inside(lo) && lo > n * lit(1e-300) {
            lo = lo * T::half();
        }
        if lo >= hi {
            return (hi, hi);
        }
        bisect_threshold(lo, hi, lit(1e-10), inside)
    }

    /// Upper end of [`Renorm::gauge_bracket`].
    pub fn gauge(&self, x: &[T]) -> T {
        self.gauge_bracket(x).1
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `δ_f(α)`, the level defining `B`.
    pub fn level(&self) -> T {
        self.level
    }

    pub fn modulus(&self) -> &Modulus<T> {
        &self.modulus
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// The symmetrized, normalized `f`.
    pub fn objective(&self, x: &[T]) -> T {
        (self.f)(x)
    }
}
