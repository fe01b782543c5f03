use std::fmt::Write as _;
use std::time::Duration;

use serde_json::json;

use super::config::TabulateConfig;
use crate::error::{Error, Result};
use crate::moduli::{compose_modulus, hoelder_modulus, power_norm_modulus, prox_uc_modulus, prox_uc_modulus_alt};
use crate::spaces::NormedSpace;
use crate::verify::PropertyCheck;
use crate::young::YoungFunction;

/// Pretty JSON whose first member, `run_info`, is the only line that
/// varies between identical runs.
pub fn report_json(check: &PropertyCheck, runtime: Duration, unix_seconds: u64) -> Result<String> {
    let info = json!({
        "unix_seconds": unix_seconds,
        "runtime_ms": runtime.as_millis() as u64,
    });
    let body = serde_json::to_string_pretty(check).map_err(|e| Error::Internal(e.to_string()))?;
    let rest = body.strip_prefix("{\n").ok_or_else(|| Error::Internal("unexpected JSON layout".into()))?;
    Ok(format!("{{\n  \"run_info\": {info},\n{rest}\n"))
}

pub fn margins_csv(checks: &[PropertyCheck]) -> String {
    let mut out = String::from("check,kind,verdict,group,samples,violations,min_margin,mean_margin,max_margin\n");
    for c in checks {
        let verdict = serde_json::to_value(c.verdict).ok().and_then(|v| v.as_str().map(String::from));
        let verdict = verdict.unwrap_or_default();
        for g in &c.groups {
            let _ = writeln!(
                out,
                "{},{},{},\"{}\",{},{},{:e},{:e},{:e}",
                c.name,
                c.kind.as_str(),
                verdict,
                g.group,
                g.samples,
                g.violations,
                g.min_margin,
                g.mean_margin,
                g.max_margin
            );
        }
    }
    out
}

/// One tabulated modulus value.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliRow {
    pub formula: &'static str,
    /// `key=value` pairs joined by `;`.
    pub params: String,
    pub eps: f64,
    pub lambda: Option<f64>,
    pub delta: f64,
}

fn params(pairs: &[(&str, f64)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Tabulates the space modulus, the composed modulus on `B(0, R)`, the
/// λ-free prox modulus and its rescaled alternative on every λ of the
/// grid, and the power-type formulas where they apply.
pub fn moduli_rows(space: &NormedSpace<f64>, young: &YoungFunction<f64>, tab: &TabulateConfig) -> Result<Vec<ModuliRow>> {
    let sm = space.modulus();
    let p = space.exponent();
    let big_r = tab.radius;
    let young_name = young.name();
    let mut rows = Vec::new();
    let base = |extra: &[(&str, f64)]| {
        let mut s = format!("young={young_name};p_space={p}");
        if !extra.is_empty() {
            s.push(';');
            s.push_str(&params(extra));
        }
        s
    };
    for &eps in &tab.eps {
        if eps <= 2.0 {
            rows.push(ModuliRow {
                formula: "space_modulus",
                params: params(&[("p", p)]),
                eps,
                lambda: None,
                delta: space.delta_x(eps)?,
            });
        }
        rows.push(ModuliRow {
            formula: "compose_modulus",
            params: base(&[("r", big_r)]),
            eps,
            lambda: None,
            delta: compose_modulus(&sm, young, big_r, eps)?,
        });
        let uc = prox_uc_modulus(young, &sm, big_r, eps)?;
        for &lam in &tab.lambdas {
            rows.push(ModuliRow { formula: "prox_uc_modulus", params: base(&[("R", big_r)]), eps, lambda: Some(lam), delta: uc });
        }
        for &lam in &tab.lambdas {
            rows.push(ModuliRow {
                formula: "prox_uc_modulus_alt",
                params: base(&[("R", big_r)]),
                eps,
                lambda: Some(lam),
                delta: prox_uc_modulus_alt(young, &sm, big_r, lam, eps)?,
            });
        }
        let a = space.power_type_constant();
        rows.push(ModuliRow {
            formula: "power_norm_modulus",
            params: params(&[("A", a), ("p", p)]),
            eps,
            lambda: None,
            delta: power_norm_modulus(a, p)?.eval(eps),
        });
        if matches!(young, YoungFunction::Power { p: q } if *q == p) {
            rows.push(ModuliRow {
                formula: "hoelder_modulus",
                params: params(&[("A", a), ("p", p), ("R", big_r)]),
                eps,
                lambda: None,
                delta: hoelder_modulus(a, p, big_r)?.eval(eps),
            });
        }
    }
    Ok(rows)
}

pub fn moduli_csv(rows: &[ModuliRow]) -> String {
    let mut out = String::from("formula,parameters,eps,lambda,delta\n");
    for r in rows {
        let lam = r.lambda.map(|l| l.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{:e}", r.formula, r.params, r.eps, lam, r.delta);
    }
    out
}

/// Whether the table shows `prox_uc_modulus` constant in λ and
/// `prox_uc_modulus_alt` strictly decreasing along the λ grid, for every ε.
pub fn scaling_contrast(rows: &[ModuliRow]) -> bool {
    let column = |formula: &str, eps: f64| -> Vec<f64> {
        rows.iter().filter(|r| r.formula == formula && r.eps == eps).map(|r| r.delta).collect()
    };
    let eps: Vec<f64> = rows.iter().filter(|r| r.formula == "prox_uc_modulus").map(|r| r.eps).collect();
    !eps.is_empty()
        && eps.iter().all(|&e| {
            let uc = column("prox_uc_modulus", e);
            let alt = column("prox_uc_modulus_alt", e);
            uc.windows(2).all(|w| w[0] == w[1]) && alt.windows(2).all(|w| w[1] < w[0])
        })
}
