//! Sampled property checks: adversarial search for violations of the
//! quantitative inequalities, with margins adjusted by solver certificates.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

mod modulus_checks;
mod oracle;
mod prox_checks;
mod sample;
mod spec;

pub use oracle::grid_argmin;
pub use spec::{CheckKind, CheckSpec, ModulusTarget, ObjectiveSpec, SpaceSpec};

/// Solver errors kept verbatim in a report.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The worst sampled instance. `sample` is the index in the seeded stream.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub group: String,
    pub sample: usize,
    pub margin: f64,
    pub data: Value,
}

/// Margin statistics over one cell of the check (an `(ε, λ, form)` cell
/// or a named sub-property).
#[derive(Debug, Clone, Serialize)]
pub struct GroupStats {
    pub group: String,
    pub samples: usize,
    pub violations: usize,
    pub min_margin: f64,
    pub mean_margin: f64,
    pub max_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub kind: CheckKind,
    pub config: CheckSpec,
    pub verdict: Verdict,
    /// Smallest slack-adjusted margin; `None` when nothing was sampled.
    pub min_margin: Option<f64>,
    pub samples: usize,
    pub violations: usize,
    pub solver_failures: usize,
    /// No sample satisfied the hypotheses; the pass is vacuous.
    pub vacuous: bool,
    pub witness: Option<Witness>,
    pub groups: Vec<GroupStats>,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Acc {
    samples: usize,
    violations: usize,
    min: f64,
    max: f64,
    sum: f64,
}

/// Accumulates margins for one check.
pub(crate) struct Recorder {
    groups: BTreeMap<String, Acc>,
    samples: usize,
    violations: usize,
    min: f64,
    witness: Option<Witness>,
    solver_failures: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Recorder {
    pub fn new() -> Self {
        Self {
            groups: BTreeMap::new(),
            samples: 0,
            violations: 0,
            min: f64::INFINITY,
            witness: None,
            solver_failures: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Records one margin; `data` is only built for a new worst case.
    pub fn record(&mut self, group: &str, margin: f64, data: impl FnOnce() -> Value) {
        let margin = if margin.is_nan() {
            self.note(format!("non-finite margin in {group}"));
            f64::NEG_INFINITY
        } else {
            margin
        };
        let acc = self.groups.entry(group.to_string()).or_insert_with(|| Acc {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            ..Acc::default()
        });
        acc.samples += 1;
        acc.min = acc.min.min(margin);
        acc.max = acc.max.max(margin);
        acc.sum += margin;
        if margin < 0.0 {
            acc.violations += 1;
            self.violations += 1;
        }
        if margin < self.min || self.witness.is_none() {
            self.min = self.min.min(margin);
            self.witness = Some(Witness { group: group.to_string(), sample: self.samples, margin, data: data() });
        }
        self.samples += 1;
    }

    pub fn solver_failure(&mut self, group: &str, err: &Error) {
        self.solver_failures += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(format!("{group}: {err}"));
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn finish(self, spec: &CheckSpec) -> PropertyCheck {
        let mut notes = self.notes;
        let min_margin = (self.samples > 0).then_some(self.min);
        let mut verdict = match min_margin {
            Some(m) if m < 0.0 => Verdict::Fail,
            _ => Verdict::Pass,
        };
        if self.solver_failures > 0 {
            verdict = Verdict::Fail;
            notes.push(format!("{} solver failures; check degraded to fail", self.solver_failures));
        }
        let vacuous = self.samples == 0;
        if vacuous {
            notes.push("no sample satisfied the hypotheses; pass is vacuous".to_string());
        }
        let groups = self
            .groups
            .into_iter()
            .map(|(group, a)| GroupStats {
                group,
                samples: a.samples,
                violations: a.violations,
                min_margin: a.min,
                mean_margin: a.sum / a.samples as f64,
                max_margin: a.max,
            })
            .collect();
        PropertyCheck {
            name: spec.name.clone(),
            kind: spec.kind,
            config: spec.clone(),
            verdict,
            min_margin,
            samples: self.samples,
            violations: self.violations,
            solver_failures: self.solver_failures,
            vacuous,
            witness: self.witness,
            groups,
            notes,
            failures: self.failures,
        }
    }
}

/// Runs one check. Configuration problems (including unmet hypotheses
/// that a larger radius would fix) are errors; property violations and
/// solver failures are reported in the returned check.
pub fn run_check(spec: &CheckSpec) -> Result<PropertyCheck> {
    spec.validate()?;
    let mut rec = Recorder::new();
    match spec.kind {
        CheckKind::UniformContinuity => prox_checks::uniform_continuity(spec, &mut rec)?,
        CheckKind::VariationalInequalities => prox_checks::variational_inequalities(spec, &mut rec)?,
        CheckKind::ConvergenceToProjection => prox_checks::convergence_to_projection(spec, &mut rec)?,
        CheckKind::Hoelder => prox_checks::hoelder(spec, &mut rec)?,
        CheckKind::Nonexpansive => prox_checks::nonexpansive(spec, &mut rec)?,
        CheckKind::SweepMonotonicity => prox_checks::sweep_monotonicity(spec, &mut rec)?,
        CheckKind::DualityCharacterization => prox_checks::duality_characterization(spec, &mut rec)?,
        CheckKind::ResolventIdentity => prox_checks::resolvent_identity(spec, &mut rec)?,
        CheckKind::SolverOracle => prox_checks::solver_oracle(spec, &mut rec)?,
        CheckKind::ModulusInequalities => modulus_checks::modulus_inequalities(spec, &mut rec)?,
        CheckKind::SubgradientMonotonicity => modulus_checks::subgradient_monotonicity(spec, &mut rec)?,
    }
    Ok(rec.finish(spec))
}

/// Attempt budget for rejection loops.
pub(crate) fn attempts(spec: &CheckSpec) -> usize {
    spec.samples.saturating_mul(20).max(1000)
}

pub(crate) fn cell(eps: Option<f64>, lam: Option<f64>, form: Option<&str>) -> String {
    let mut parts = Vec::new();
    if let Some(form) = form {
        parts.push(form.to_string());
    }
    if let Some(e) = eps {
        parts.push(format!("eps={e}"));
    }
    if let Some(l) = lam {
        parts.push(format!("lambda={l}"));
    }
    parts.join(",")
}
