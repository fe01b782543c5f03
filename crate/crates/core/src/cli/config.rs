use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::prox::ProxKind;
use crate::verify::{CheckKind, CheckSpec, ModulusTarget, ObjectiveSpec, SpaceSpec};
use crate::young::YoungFunction;

fn default_output() -> PathBuf {
    PathBuf::from("reports")
}

fn default_tol() -> f64 {
    1e-10
}

fn default_max_iter() -> usize {
    100_000
}

fn default_objective() -> ObjectiveSpec {
    ObjectiveSpec::Quadratic { q: None, b: None }
}

fn default_radius() -> f64 {
    1.0
}

fn default_samples() -> usize {
    100
}

fn default_eps() -> Vec<f64> {
    vec![0.5, 1.0]
}

fn default_lambdas() -> Vec<f64> {
    vec![1.0, 0.3, 0.1, 0.03, 0.01]
}

fn default_prox() -> Vec<ProxKind> {
    vec![ProxKind::Young, ProxKind::Pr]
}

fn default_tab_eps() -> Vec<f64> {
    vec![0.1, 0.25, 0.5, 1.0, 1.5, 2.0]
}

fn default_tab_lambdas() -> Vec<f64> {
    vec![1.0, 0.5, 0.1]
}

fn default_tab_radius() -> f64 {
    2.0
}

/// A batch experiment: shared space, Young function and objective, plus
/// `[[check]]` entries that may override any of them.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Worker threads; all processors when absent.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    pub space: SpaceSpec,
    pub young: YoungFunction<f64>,
    #[serde(default = "default_objective")]
    pub objective: ObjectiveSpec,
    #[serde(default)]
    pub tabulate: TabulateConfig,
    #[serde(default, rename = "check")]
    pub checks: Vec<CheckEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub kind: CheckKind,
    #[serde(default)]
    pub space: Option<SpaceSpec>,
    #[serde(default)]
    pub young: Option<YoungFunction<f64>>,
    #[serde(default)]
    pub objective: Option<ObjectiveSpec>,
    #[serde(default)]
    pub center: Option<Vec<f64>>,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_eps")]
    pub eps: Vec<f64>,
    #[serde(default = "default_lambdas")]
    pub lambdas: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_iter: Option<usize>,
    #[serde(default = "default_prox")]
    pub prox: Vec<ProxKind>,
    #[serde(default)]
    pub target: Option<ModulusTarget>,
}

/// Grids for `tabulate`; `young` and `space` default to the top level.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TabulateConfig {
    #[serde(default = "default_tab_eps")]
    pub eps: Vec<f64>,
    #[serde(default = "default_tab_lambdas")]
    pub lambdas: Vec<f64>,
    /// The radius `R` of the prox moduli.
    #[serde(default = "default_tab_radius")]
    pub radius: f64,
    #[serde(default)]
    pub young: Option<YoungFunction<f64>>,
    #[serde(default)]
    pub space: Option<SpaceSpec>,
}

impl Default for TabulateConfig {
    fn default() -> Self {
        Self {
            eps: default_tab_eps(),
            lambdas: default_tab_lambdas(),
            radius: default_tab_radius(),
            young: None,
            space: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::input(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| e.context(&path.display().to_string()))
    }

    fn validate(&self) -> Result<()> {
        if self.workers == Some(0) {
            return Err(Error::input("workers must be > 0"));
        }
        let mut names = BTreeSet::new();
        for (i, c) in self.checks.iter().enumerate() {
            if !names.insert(c.name.as_str()) {
                return Err(Error::input(format!("check[{i}]: duplicate name {}", c.name)));
            }
        }
        for (i, spec) in self.resolve().iter().enumerate() {
            spec.validate().map_err(|e| e.context(&format!("check[{i}]")))?;
        }
        self.tabulate.validate()
    }

    /// One fully resolved spec per `[[check]]`, in file order.
    pub fn resolve(&self) -> Vec<CheckSpec> {
        self.checks
            .iter()
            .map(|c| CheckSpec {
                name: c.name.clone(),
                kind: c.kind,
                space: c.space.unwrap_or(self.space),
                young: c.young.unwrap_or(self.young),
                objective: c.objective.clone().unwrap_or_else(|| self.objective.clone()),
                center: c.center.clone(),
                radius: c.radius,
                eps: c.eps.clone(),
                lambdas: c.lambdas.clone(),
                samples: c.samples,
                seed: c.seed.unwrap_or(self.seed),
                tol: c.tol.unwrap_or(self.tol),
                max_iter: c.max_iter.unwrap_or(self.max_iter),
                prox: c.prox.clone(),
                target: c.target,
            })
            .collect()
    }

    pub fn tabulate_space(&self) -> SpaceSpec {
        self.tabulate.space.unwrap_or(self.space)
    }

    pub fn tabulate_young(&self) -> YoungFunction<f64> {
        self.tabulate.young.unwrap_or(self.young)
    }
}

impl TabulateConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::input(format!("tabulate: {msg}")));
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return bad("eps must be a nonempty grid of finite positive values");
        }
        if self.eps.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("eps must be strictly increasing");
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|l| !(*l > 0.0 && *l <= 1.0)) {
            return bad("lambdas must be a nonempty grid in (0, 1]");
        }
        if self.lambdas.windows(2).any(|w| !(w[1] < w[0])) {
            return bad("lambdas must be strictly decreasing");
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius must be finite and > 0");
        }
        Ok(())
    }
}
