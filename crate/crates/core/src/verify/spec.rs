use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prox::{ConvexFunction, ProxKind, SolverOptions};
use crate::spaces::{ConvexSet, NormedSpace};
use crate::young::YoungFunction;

/// The property a check samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    UniformContinuity,
    VariationalInequalities,
    ConvergenceToProjection,
    ModulusInequalities,
    Hoelder,
    Nonexpansive,
    SweepMonotonicity,
    SubgradientMonotonicity,
    DualityCharacterization,
    ResolventIdentity,
    SolverOracle,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::UniformContinuity,
        CheckKind::VariationalInequalities,
        CheckKind::ConvergenceToProjection,
        CheckKind::ModulusInequalities,
        CheckKind::Hoelder,
        CheckKind::Nonexpansive,
        CheckKind::SweepMonotonicity,
        CheckKind::SubgradientMonotonicity,
        CheckKind::DualityCharacterization,
        CheckKind::ResolventIdentity,
        CheckKind::SolverOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::UniformContinuity => "uniform_continuity",
            CheckKind::VariationalInequalities => "variational_inequalities",
            CheckKind::ConvergenceToProjection => "convergence_to_projection",
            CheckKind::ModulusInequalities => "modulus_inequalities",
            CheckKind::Hoelder => "hoelder",
            CheckKind::Nonexpansive => "nonexpansive",
            CheckKind::SweepMonotonicity => "sweep_monotonicity",
            CheckKind::SubgradientMonotonicity => "subgradient_monotonicity",
            CheckKind::DualityCharacterization => "duality_characterization",
            CheckKind::ResolventIdentity => "resolvent_identity",
            CheckKind::SolverOracle => "solver_oracle",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CheckKind::UniformContinuity => {
                "‖x−y‖ < δ(ε) implies ‖prox x − prox y‖ < ε on B(z, r), one λ-free δ for the whole λ-grid"
            }
            CheckKind::VariationalInequalities => {
                "growth of the prox objective away from its minimizer, Young and rescaled forms"
            }
            CheckKind::ConvergenceToProjection => {
                "λ < Λ puts prox_λ(x) within ε of the projection onto the closed domain"
            }
            CheckKind::ModulusInequalities => "defining inequality of a modulus of uniform convexity, zero slack",
            CheckKind::Hoelder => "‖prox x − prox y‖ ≤ max{2‖x−y‖, L‖x−y‖^(1/p)} in power spaces",
            CheckKind::Nonexpansive => "Hilbert resolvents are 1-Lipschitz",
            CheckKind::SweepMonotonicity => "λ ↦ ‖x − x_λ‖ nondecreasing and λ ↦ f(x_λ) nonincreasing",
            CheckKind::SubgradientMonotonicity => "⟨x*−y*, x−y⟩ ≥ 4δ_r(ε) for duality elements of Φ∘‖·‖",
            CheckKind::DualityCharacterization => "J_φ(x − x_λ)/φ(λ) is a subgradient of f at x_λ",
            CheckKind::ResolventIdentity => "iterative solver agrees with the Hilbert resolvent formulas",
            CheckKind::SolverOracle => "certified solver agrees with a brute-force grid search",
        }
    }
}

/// Which modulus a `modulus_inequalities` check samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusTarget {
    /// `δ_X` of the space.
    Space,
    /// `δ_{Φ,r}` of the Young function on `[0, r]`.
    Scalar,
    /// `compose_modulus` of `Φ∘‖·‖` on `B(0, r)`.
    Compose,
    /// `power_norm_modulus` of `‖·‖^p/p`.
    PowerNorm,
    /// `psi_compose_modulus` with `Ψ(t) = t^q/q`, `q` the Young exponent.
    PsiCompose,
    /// Sandwich and modulus of the renormed gauge.
    Renorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub p: f64,
    pub dimension: usize,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<NormedSpace<f64>> {
        NormedSpace::new(self.dimension, self.p)
    }
}

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

/// Human-writable objective description; dimension-dependent defaults are
/// filled in by [`ObjectiveSpec::build`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveSpec {
    Zero,
    /// `½⟨Qy, y⟩ + ⟨b, y⟩`; defaults `Q = I`, `b = 0`.
    Quadratic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<Vec<f64>>,
    },
    BallIndicator {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        #[serde(default = "one")]
        radius: f64,
    },
    /// `[lower, upper]`, defaulting to `[−h, h]^n`.
    BoxIndicator {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lower: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        upper: Option<Vec<f64>>,
        #[serde(default = "half")]
        half_width: f64,
    },
    HalfspaceIndicator { normal: Vec<f64>, offset: f64 },
    AffineIndicator { point: Vec<f64>, basis: Vec<Vec<f64>> },
    L1 {
        #[serde(default = "one")]
        weight: f64,
    },
    MaxAffine { slopes: Vec<Vec<f64>>, offsets: Vec<f64> },
}

impl ObjectiveSpec {
    pub fn build(&self, n: usize) -> Result<ConvexFunction<f64>> {
        let f = match self {
            ObjectiveSpec::Zero => ConvexFunction::Zero,
            ObjectiveSpec::Quadratic { q, b } => {
                let q = q.clone().unwrap_or_else(|| {
                    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
                });
                ConvexFunction::quadratic(q, b.clone().unwrap_or_else(|| vec![0.0; n]))
            }
            ObjectiveSpec::BallIndicator { center, radius } => ConvexFunction::indicator(ConvexSet::Ball {
                center: center.clone().unwrap_or_else(|| vec![0.0; n]),
                radius: *radius,
            }),
            ObjectiveSpec::BoxIndicator { lower, upper, half_width } => ConvexFunction::indicator(ConvexSet::Box {
                lower: lower.clone().unwrap_or_else(|| vec![-half_width; n]),
                upper: upper.clone().unwrap_or_else(|| vec![*half_width; n]),
            }),
            ObjectiveSpec::HalfspaceIndicator { normal, offset } => {
                ConvexFunction::indicator(ConvexSet::Halfspace { normal: normal.clone(), offset: *offset })
            }
            ObjectiveSpec::AffineIndicator { point, basis } => {
                ConvexFunction::indicator(ConvexSet::Affine { point: point.clone(), basis: basis.clone() })
            }
            ObjectiveSpec::L1 { weight } => ConvexFunction::L1 { weight: *weight },
            ObjectiveSpec::MaxAffine { slopes, offsets } => {
                ConvexFunction::MaxAffine { slopes: slopes.clone(), offsets: offsets.clone() }
            }
        };
        f.validate(n)?;
        Ok(f)
    }
}

/// Fully resolved configuration of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub name: String,
    pub kind: CheckKind,
    pub space: SpaceSpec,
    pub young: YoungFunction<f64>,
    pub objective: ObjectiveSpec,
    /// Center `z` of the sampling ball; the origin when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<f64>>,
    pub radius: f64,
    pub eps: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    pub prox: Vec<ProxKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ModulusTarget>,
}

impl CheckSpec {
    /// A spec with smoke-test defaults: Hilbert plane, `Φ = t²/2`,
    /// `f = ½‖·‖²`, unit ball.
    pub fn new(name: &str, kind: CheckKind) -> Self {
        Self {
            name: name.to_string(),
            kind,
            space: SpaceSpec { p: 2.0, dimension: 2 },
            young: YoungFunction::Power { p: 2.0 },
            objective: ObjectiveSpec::Quadratic { q: None, b: None },
            center: None,
            radius: 1.0,
            eps: vec![0.5, 1.0],
            lambdas: vec![1.0, 0.3, 0.1, 0.03, 0.01],
            samples: 100,
            seed: 0,
            tol: 1e-10,
            max_iter: 100_000,
            prox: vec![ProxKind::Young, ProxKind::Pr],
            target: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, why: &str| Err(Error::input(format!("{}: {field} {why}", self.name)));
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return bad("name", "must be a nonempty identifier of [A-Za-z0-9_-]");
        }
        let space = self.space.build().map_err(|e| e.context(&format!("{}: space", self.name)))?;
        if let YoungFunction::Power { p } = self.young {
            YoungFunction::power(p).map_err(|e| e.context(&format!("{}: young", self.name)))?;
        }
        self.objective
            .build(space.dimension())
            .map_err(|e| e.context(&format!("{}: objective", self.name)))?;
        if let Some(c) = &self.center {
            if c.len() != space.dimension() || c.iter().any(|v| !v.is_finite()) {
                return bad("center", "must be a finite vector of the space dimension");
            }
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius", "must be finite and > 0");
        }
        if self.samples == 0 {
            return bad("samples", "must be > 0");
        }
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return bad("eps", "must be a nonempty grid of finite positive values");
        }
        if self.eps.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("eps", "must be strictly increasing");
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|l| !(*l > 0.0 && *l <= 1.0)) {
            return bad("lambdas", "must be a nonempty grid in (0, 1]");
        }
        if self.lambdas.windows(2).any(|w| !(w[1] < w[0])) {
            return bad("lambdas", "must be strictly decreasing");
        }
        if self.prox.is_empty() {
            return bad("prox", "must name at least one of young, pr");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol", "must be finite and > 0");
        }
        if self.max_iter == 0 {
            return bad("max_iter", "must be > 0");
        }
        if self.kind == CheckKind::ModulusInequalities && self.target.is_none() {
            return bad("target", "is required for modulus_inequalities");
        }
        Ok(())
    }

    pub(crate) fn options(&self) -> SolverOptions<f64> {
        SolverOptions { tol: self.tol, max_iter: self.max_iter, closed_form: true }
    }

    pub(crate) fn center_point(&self) -> Vec<f64> {
        self.center.clone().unwrap_or_else(|| vec![0.0; self.space.dimension])
    }
}
