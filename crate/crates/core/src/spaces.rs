//! Finite-dimensional `ℓ_p^n` spaces (`p ≥ 2`), their moduli of uniform
//! convexity, duality elements and metric projections onto stock convex sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::Modulus;
use crate::scalar::{bisect_threshold, lit, Scalar};
use crate::vector::{self, check_dim, dot, lp_norm, norm2, orthonormalize, sub};

/// Default cap on the dimension accepted by constructors.
pub const DEFAULT_MAX_DIMENSION: usize = 16;

/// `ℓ_p^n` with `p ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormedSpace<T> {
    dimension: usize,
    p: T,
}

impl<T: Scalar> NormedSpace<T> {
    pub fn new(dimension: usize, p: T) -> Result<Self> {
        Self::with_max_dimension(dimension, p, DEFAULT_MAX_DIMENSION)
    }

    pub fn with_max_dimension(dimension: usize, p: T, max_dimension: usize) -> Result<Self> {
        if dimension == 0 || dimension > max_dimension {
            return Err(Error::input(format!(
                "dimension must be in 1..={max_dimension}, got {dimension}"
            )));
        }
        if !(p >= T::two()) || !p.is_finite() {
            return Err(Error::input(format!("exponent p must be finite and >= 2, got {p}")));
        }
        Ok(Self { dimension, p })
    }

    /// Euclidean `ℓ_2^n`.
    pub fn hilbert(dimension: usize) -> Result<Self> {
        Self::new(dimension, T::two())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn exponent(&self) -> T {
        self.p
    }

    pub fn is_hilbert(&self) -> bool {
        self.p == T::two()
    }

    /// Conjugate exponent `p' = p/(p-1)`.
    pub fn dual_exponent(&self) -> T {
        self.p / (self.p - T::one())
    }

    pub fn norm(&self, x: &[T]) -> Result<T> {
        check_dim(x, self.dimension)?;
        Ok(lp_norm(x, self.p))
    }

    /// Norm without the dimension check, for hot loops on validated data.
    #[inline]
    pub fn norm_unchecked(&self, x: &[T]) -> T {
        lp_norm(x, self.p)
    }

    pub fn dual_norm(&self, x: &[T]) -> T {
        lp_norm(x, self.dual_exponent())
    }

    pub fn distance(&self, x: &[T], y: &[T]) -> T {
        lp_norm(&sub(x, y), self.p)
    }

    /// The unclamped modulus formula: `ε²/8` for `p = 2` (valid for every
    /// `ε > 0`), and `1 − (1 − (ε/2)^p)^{1/p}` for `p > 2` (saturating at 1
    /// for `ε ≥ 2`).
    pub fn delta_raw(&self, eps: T) -> T {
        if self.is_hilbert() {
            return eps * eps / lit(8.0);
        }
        let e = eps.min(T::two());
        let s = (e / T::two()).powf(self.p);
        // 1 - (1-s)^{1/p} without cancellation for small s
        -((-s).ln_1p() / self.p).exp_m1()
    }

    /// Modulus of uniform convexity `δ_X(ε)`: the raw formula evaluated at
    /// `min(ε, 2)` and capped at `1/2`.
    pub fn delta_x(&self, eps: T) -> Result<T> {
        if !(eps > T::zero()) {
            return Err(Error::input(format!("eps must be positive, got {eps}")));
        }
        Ok(self.delta_clamped(eps))
    }

    #[inline]
    pub(crate) fn delta_clamped(&self, eps: T) -> T {
        self.delta_raw(eps.min(T::two())).min(T::half())
    }

    /// Upper bracket of `inf{ε : δ_raw(ε) ≥ s}` by bisection (relative 1e-12).
    /// For `p > 2` and `s ≥ 1` every `ε ≥ 2` works and 2 is returned.
    pub fn delta_inverse(&self, s: T) -> Result<T> {
        if !(s >= T::zero()) {
            return Err(Error::input(format!("modulus value must be nonnegative, got {s}")));
        }
        if s == T::zero() {
            return Ok(T::zero());
        }
        if !self.is_hilbert() && s >= T::one() {
            return Ok(T::two());
        }
        let mut hi = T::two();
        while self.delta_raw(hi) < s {
            hi = hi * T::two();
        }
        let (_, hi) = bisect_threshold(T::zero(), hi, lit(1e-12), |e| self.delta_raw(e) >= s);
        Ok(hi)
    }

    /// `δ_X` packaged as a [`Modulus`].
    pub fn modulus(&self) -> Modulus<T> {
        let space = *self;
        let formula = if self.is_hilbert() {
            "hilbert: min(eps^2/8, 1/2)"
        } else {
            "clarkson: min(1-(1-(eps/2)^p)^(1/p), 1/2)"
        };
        Modulus::new(
            formula,
            &[("p", self.p.to_f64_lossy()), ("dimension", self.dimension as f64)],
            (T::zero(), T::infinity()),
            move |e| space.delta_clamped(e),
        )
    }

    /// Constant `A` with `δ_X(ε) ≥ A·ε^p` on `(0, 2]`: `1/8` for `p = 2` and
    /// `1/(p·2^p)` otherwise (from `1 − (1−s)^{1/p} ≥ s/p`).
    pub fn power_type_constant(&self) -> T {
        if self.is_hilbert() {
            lit(0.125)
        } else {
            (self.p * T::two().powf(self.p)).recip()
        }
    }

    /// The unique element of `J_φ(x)` for the scalar value `phi_value = φ(‖x‖)`:
    /// `x*_i = φ(‖x‖)·sign(x_i)·(|x_i|/‖x‖)^{p−1}`.
    pub fn duality_element(&self, phi_value: T, x: &[T]) -> Result<Vec<T>> {
        check_dim(x, self.dimension)?;
        if !(phi_value >= T::zero()) {
            return Err(Error::input("phi value must be nonnegative"));
        }
        let n = self.norm_unchecked(x);
        if n == T::zero() {
            return Err(Error::input("duality element requested at x = 0"));
        }
        Ok(self.duality_unchecked(phi_value, x, n))
    }

    #[inline]
    pub(crate) fn duality_unchecked(&self, phi_value: T, x: &[T], norm: T) -> Vec<T> {
        let e = self.p - T::one();
        x.iter()
            .map(|&xi| phi_value * xi.signum() * (xi.abs() / norm).powf(e))
            .collect()
    }

    pub fn in_unit_ball(&self, x: &[T]) -> bool {
        self.norm_unchecked(x) <= T::one()
    }
}

/// Closed convex sets with membership, a separating hyperplane oracle and
/// closed-form Euclidean projections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexSet<T> {
    /// `{y : ‖y − center‖ ≤ radius}` in the ambient space's norm.
    Ball { center: Vec<T>, radius: T },
    Box { lower: Vec<T>, upper: Vec<T> },
    /// `{y : ⟨normal, y⟩ ≤ offset}`.
    Halfspace { normal: Vec<T>, offset: T },
    /// `point + span(basis)`.
    Affine { point: Vec<T>, basis: Vec<Vec<T>> },
}

impl<T: Scalar> ConvexSet<T> {
    pub fn unit_ball(dimension: usize) -> Self {
        ConvexSet::Ball {
            center: vec![T::zero(); dimension],
            radius: T::one(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ConvexSet::Ball { center, radius } => {
                check_dim(center, n)?;
                if !(*radius > T::zero()) {
                    return Err(Error::input("ball radius must be positive"));
                }
            }
            ConvexSet::Box { lower, upper } => {
                check_dim(lower, n)?;
                check_dim(upper, n)?;
                if lower.iter().zip(upper).any(|(l, u)| !(l <= u)) {
                    return Err(Error::input("box needs lower <= upper"));
                }
            }
            ConvexSet::Halfspace { normal, .. } => {
                check_dim(normal, n)?;
                if vector::is_zero(normal) {
                    return Err(Error::input("halfspace normal must be nonzero"));
                }
            }
            ConvexSet::Affine { point, basis } => {
                check_dim(point, n)?;
                for b in basis {
                    check_dim(b, n)?;
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, space: &NormedSpace<T>, y: &[T], tol: T) -> bool {
        match self {
            ConvexSet::Ball { center, radius } => space.distance(y, center) <= *radius + tol,
            ConvexSet::Box { lower, upper } => y
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(&v, (&l, &u))| v >= l - tol && v <= u + tol),
            ConvexSet::Halfspace { normal, offset } => dot(normal, y) <= *offset + tol,
            ConvexSet::Affine { point, basis } => {
                let e = orthonormalize(basis);
                let d = sub(y, point);
                let mut r = d.clone();
                for ei in &e {
                    let c = dot(&d, ei);
                    for (ri, &v) in r.iter_mut().zip(ei) {
                        *ri = *ri - c * v;
                    }
                }
                norm2(&r) <= tol.max(T::lit(1e-12))
            }
        }
    }

    /// A cut `(g, depth)` with `⟨g, z − y⟩ ≤ −depth < 0` for every `z` in the
    /// set, when `y` lies outside. `None` means `y` is inside (or the set is
    /// affine, which is handled by reparametrization instead of cuts).
    pub fn separate(&self, space: &NormedSpace<T>, y: &[T]) -> Option<(Vec<T>, T)> {
        match self {
            ConvexSet::Ball { center, radius } => {
                let d = sub(y, center);
                let n = space.norm_unchecked(&d);
                (n > *radius).then(|| (space.duality_unchecked(T::one(), &d, n), n - *radius))
            }
            ConvexSet::Box { lower, upper } => {
                let mut worst = T::zero();
                let mut cut = None;
                for i in 0..y.len() {
                    let (lo, hi) = (lower[i] - y[i], y[i] - upper[i]);
                    if hi > worst {
                        worst = hi;
                        cut = Some((i, T::one()));
                    }
                    if lo > worst {
                        worst = lo;
                        cut = Some((i, -T::one()));
                    }
                }
                cut.map(|(i, s)| {
                    let mut g = vec![T::zero(); y.len()];
                    g[i] = s;
                    (g, worst)
                })
            }
            ConvexSet::Halfspace { normal, offset } => {
                let depth = dot(normal, y) - *offset;
                (depth > T::zero()).then(|| (normal.clone(), depth))
            }
            ConvexSet::Affine { .. } => None,
        }
    }

    /// Euclidean projection (closed form for every variant).
    pub fn project_euclidean(&self, x: &[T]) -> Vec<T> {
        let hilbert = NormedSpace {
            dimension: x.len(),
            p: T::two(),
        };
        self.project_closed_form(&hilbert, x)
            .expect("every variant has a Euclidean closed form")
    }

    /// Projection in `space` when a closed form exists: all variants in
    /// `ℓ_2`, balls (radial) and boxes (coordinatewise clamp) in any `ℓ_p`.
    pub fn project_closed_form(&self, space: &NormedSpace<T>, x: &[T]) -> Option<Vec<T>> {
        match self {
            ConvexSet::Ball { center, radius } => {
                let d = sub(x, center);
                let n = space.norm_unchecked(&d);
                if n <= *radius {
                    Some(x.to_vec())
                } else {
                    let s = *radius / n;
                    Some(center.iter().zip(&d).map(|(&c, &di)| c + s * di).collect())
                }
            }
            ConvexSet::Box { lower, upper } => Some(
                x.iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(&v, (&l, &u))| v.max(l).min(u))
                    .collect(),
            ),
            ConvexSet::Halfspace { normal, offset } if space.is_hilbert() => {
                let viol = dot(normal, x) - *offset;
                if viol <= T::zero() {
                    Some(x.to_vec())
                } else {
                    let s = viol / dot(normal, normal);
                    Some(x.iter().zip(normal).map(|(&v, &a)| v - s * a).collect())
                }
            }
            ConvexSet::Affine { point, basis } if space.is_hilbert() => {
                let e = orthonormalize(basis);
                let d = sub(x, point);
                let mut y = point.clone();
                for ei in &e {
                    let c = dot(&d, ei);
                    for (yi, &v) in y.iter_mut().zip(ei) {
                        *yi = *yi + c * v;
                    }
                }
                Some(y)
            }
            _ => None,
        }
    }
}

/// `(R + r)·δ_X^{-1}(2r/(R + r))`, bounding `‖P_C(x) − P_C(y)‖` when
/// `d_C(x) < R` and `‖x − y‖ ≤ r < R`.
pub fn projection_continuity_bound<T: Scalar, F: Fn(T) -> T>(
    big_r: T,
    r: T,
    delta_inverse: F,
) -> Result<T> {
    if !(r > T::zero()) || !(r < big_r) {
        return Err(Error::input(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
    }
    let s = big_r + r;
    Ok(s * delta_inverse(T::two() * r / s))
}
