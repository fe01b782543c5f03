//! Seeded, boundary-biased sampling in balls of an ℓ_p space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spaces::NormedSpace;

const MAX_ATTEMPTS: usize = 1000;

pub(crate) struct Sampler {
    rng: ChaCha8Rng,
    space: NormedSpace<f64>,
}

impl Sampler {
    pub fn new(space: &NormedSpace<f64>, seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), space: *space }
    }

    pub fn space(&self) -> &NormedSpace<f64> {
        &self.space
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.gen()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Log-uniform on `[lo, hi]`.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + self.uniform() * (hi.ln() - lo.ln())).exp()
    }

    /// A unit vector in the space norm; axis and diagonal directions (the
    /// extreme points of ℓ_p balls) are oversampled.
    pub fn direction(&mut self) -> Vec<f64> {
        let n = self.space.dimension();
        loop {
            let v: Vec<f64> = match self.rng.gen_range(0..10) {
                0 => {
                    let mut e = vec![0.0; n];
                    e[self.rng.gen_range(0..n)] = if self.rng.gen() { 1.0 } else { -1.0 };
                    e
                }
                1 => (0..n).map(|_| if self.rng.gen() { 1.0 } else { -1.0 }).collect(),
                _ => (0..n).map(|_| self.rng.gen_range(-1.0..1.0)).collect(),
            };
            let norm = self.space.norm_unchecked(&v);
            if norm > 1e-3 {
                return v.iter().map(|x| x / norm).collect();
            }
        }
    }

    /// Radius fraction in `[0, 1]`: uniform volume, near the sphere, on the
    /// sphere or near the center.
    fn radial(&mut self) -> f64 {
        let n = self.space.dimension() as f64;
        match self.rng.gen_range(0..10) {
            0 | 1 => 1.0 - 1e-6 * self.uniform(),
            2 => 1.0,
            3 => 1e-3 * self.uniform(),
            _ => self.uniform().powf(1.0 / n),
        }
    }

    pub fn in_ball(&mut self, center: &[f64], r: f64) -> Vec<f64> {
        let s = r * self.radial();
        let d = self.direction();
        center.iter().zip(&d).map(|(c, v)| c + s * v).collect()
    }

    fn inside(&self, center: &[f64], r: f64, x: &[f64]) -> bool {
        self.space.distance(x, center) <= r
    }

    /// `x, y ∈ B(center, r)` with `‖x − y‖ < d`, biased toward separations
    /// just below `d` and toward near-coincident pairs.
    pub fn pair_within(&mut self, center: &[f64], r: f64, d: f64) -> (Vec<f64>, Vec<f64>) {
        for _ in 0..MAX_ATTEMPTS {
            let x = self.in_ball(center, r);
            let t = match self.rng.gen_range(0..4) {
                0 => 1.0 - 1e-9 * (1.0 + self.uniform()),
                1 => 1e-6 * self.uniform(),
                _ => self.uniform(),
            };
            let step = (t * d).min(2.0 * r);
            let dir = self.direction();
            for sign in [1.0, -1.0] {
                let y: Vec<f64> = x.iter().zip(&dir).map(|(a, v)| a + sign * step * v).collect();
                if self.inside(center, r, &y) && self.space.distance(&x, &y) < d {
                    return (x, y);
                }
            }
        }
        let x = center.to_vec();
        (x.clone(), x)
    }

    /// `x, y ∈ B(center, r)` with `‖x − y‖ ≥ eps`, or `None` when `eps`
    /// exceeds the diameter or no pair was found. Antipodal and
    /// just-separated pairs are oversampled.
    pub fn pair_apart(&mut self, center: &[f64], r: f64, eps: f64) -> Option<(Vec<f64>, Vec<f64>)> {
        if eps > 2.0 * r {
            return None;
        }
        for _ in 0..MAX_ATTEMPTS {
            let (x, y) = match self.rng.gen_range(0..6) {
                0 | 1 => {
                    let u = self.direction();
                    let w = self.direction();
                    let tilt = 1e-3 * self.uniform();
                    let s1 = r * (1.0 - 1e-6 * self.uniform());
                    let s2 = r * (1.0 - 1e-6 * self.uniform());
                    let x: Vec<f64> = center.iter().zip(&u).map(|(c, v)| c + s1 * v).collect();
                    let v: Vec<f64> = u.iter().zip(&w).map(|(a, b)| -a + tilt * b).collect();
                    let nv = self.space.norm_unchecked(&v);
                    let y: Vec<f64> = center.iter().zip(&v).map(|(c, b)| c + s2 * b / nv).collect();
                    (x, y)
                }
                2 | 3 => {
                    let x = self.in_ball(center, r);
                    let dir = self.direction();
                    let step = eps * (1.0 + 1e-12 + 1e-9 * self.uniform());
                    let y = x.iter().zip(&dir).map(|(a, v)| a + step * v).collect();
                    (x, y)
                }
                _ => (self.in_ball(center, r), self.in_ball(center, r)),
            };
            if self.inside(center, r, &x) && self.inside(center, r, &y) && self.space.distance(&x, &y) >= eps {
                return Some((x, y));
            }
        }
        None
    }

    /// A pair `0 ≤ a, b ≤ r` with `|a − b| ≥ eps`.
    pub fn scalar_pair(&mut self, r: f64, eps: f64) -> Option<(f64, f64)> {
        if eps > r {
            return None;
        }
        let slack = r - eps;
        let a = match self.rng.gen_range(0..4) {
            0 => 0.0,
            1 => slack,
            _ => slack * self.uniform(),
        };
        let gap = match self.rng.gen_range(0..3) {
            0 => eps,
            _ => eps + (slack - a) * self.uniform(),
        };
        let b = (a + gap).min(r);
        if b - a < eps {
            return None;
        }
        Some(if self.rng.gen() { (a, b) } else { (b, a) })
    }
}
