//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use rayon::prelude::*;

use ucprox::cli::{report, ExperimentConfig};
use ucprox::moduli::{compose_modulus, hoelder_constant, lambda_threshold, power_norm_modulus};
use ucprox::prox::ProxKind;
use ucprox::spaces::NormedSpace;
use ucprox::verify::{run_check, CheckKind, CheckSpec, ModulusTarget, ObjectiveSpec, PropertyCheck, SpaceSpec, Verdict};
use ucprox::young::{zalinescu_power_gauge, YoungFunction};

struct Line {
    pass: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

/// `|computed − oracle| ≤ 1e-12·|oracle|`, evaluated in exact arithmetic.
fn rel_ok(computed: f64, oracle: &BigRational) -> bool {
    let diff = (exact(computed) - oracle).abs();
    diff * q(1_000_000_000_000, 1) <= oracle.abs()
}

fn criterion_1() -> Line {
    let mut failures = Vec::new();
    let check = |failures: &mut Vec<String>, what: &str, computed: f64, oracle: BigRational| {
        if !rel_ok(computed, &oracle) {
            failures.push(format!("{what}: {computed} vs {}", oracle.to_f64().unwrap_or(f64::NAN)));
        }
    };
    for (n, d) in [(1, 3), (7, 10), (1, 1), (3, 2), (2, 1)] {
        let e = exact(n as f64 / d as f64);
        let ef = e.to_f64().unwrap();
        check(&mut failures, "zalinescu p=2", zalinescu_power_gauge(2.0, ef), &e * &e / q(4, 1));
        let pcase = power_norm_modulus(0.125, 2.0).unwrap().eval(ef);
        check(&mut failures, "pcase A=1/8 p=2", pcase, &e * &e / q(512, 1));
    }
    // L = 16√40, compared through L² = 10240
    let l = hoelder_constant(0.125, 2.0, 1.0).unwrap();
    let l2 = exact(l) * exact(l);
    if ((l2 - q(10240, 1)).abs() * q(1_000_000_000_000, 1)) > q(2 * 10240, 1) {
        failures.push(format!("hoelder L = {l}"));
    }
    // Λ for Hilbert, Φ = t²/2, ε = 1/2, β = 1, ζ = 1:
    // ε̃ = (ε/10)·ε²/8, argument ½ε̃·φ(ε/5)/ζ, η(s) = 2s, Λ = ½η
    let space = NormedSpace::hilbert(2).unwrap();
    let sm = space.modulus();
    let y2 = YoungFunction::power(2.0).unwrap();
    let eps = q(1, 2);
    let tilde = &eps / q(10, 1) * (&eps * &eps / q(8, 1));
    let arg = q(1, 2) * &tilde * (&eps / q(5, 1));
    let big_lambda = q(1, 2) * (q(2, 1) * arg);
    check(&mut failures, "Lambda", lambda_threshold(&y2, &sm, 0.5, 1.0, 1.0).unwrap(), big_lambda);
    // composition at r = 1, ε = 1: ε̆ = ⅓Φ((ε/4)·δ_X(1/2)), ε̃ = 2ε̆/φ(3/2), δ = min(ε̃²/16, ε̆)
    let dx = q(1, 32);
    let inner = q(1, 4) * dx;
    let breve = &inner * &inner / q(2, 1) / q(3, 1);
    let tilde = q(2, 1) * &breve / q(3, 2);
    let scalar = &tilde * &tilde / q(16, 1);
    let expect = if scalar < breve { scalar } else { breve.clone() };
    check(&mut failures, "compose nested", compose_modulus(&sm, &y2, 1.0, 1.0).unwrap(), expect);
    if !(breve == q(1, 98304)) {
        failures.push("breve oracle".into());
    }
    Line {
        pass: failures.is_empty(),
        detail: if failures.is_empty() { "all fixtures within 1e-12".into() } else { failures.join("; ") },
    }
}

fn spec(name: String, kind: CheckKind, p: f64, dimension: usize, young: YoungFunction<f64>) -> CheckSpec {
    let name: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    let mut s = CheckSpec::new(&name, kind);
    s.space = SpaceSpec { p, dimension };
    s.young = young;
    s
}

fn summarize(checks: &[PropertyCheck], min_samples: usize) -> Line {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| c.verdict != Verdict::Pass || c.samples < min_samples || c.violations > 0)
        .map(|c| format!("{} (verdict {:?}, samples {}, min_margin {:?})", c.name, c.verdict, c.samples, c.min_margin))
        .collect();
    let worst = checks
        .iter()
        .filter_map(|c| c.min_margin.map(|m| (m, c.name.as_str())))
        .fold((f64::INFINITY, ""), |a, b| if b.0 < a.0 { b } else { a });
    let total: usize = checks.iter().map(|c| c.samples).sum();
    Line {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} checks, {total} samples, zero violations, smallest margin {:e} ({})", checks.len(), worst.0, worst.1)
        } else {
            bad.join("; ")
        },
    }
}

fn run_all(specs: Vec<CheckSpec>) -> Vec<PropertyCheck> {
    specs
        .par_iter()
        .map(|s| run_check(s).unwrap_or_else(|e| panic!("{}: {e}", s.name)))
        .collect()
}

fn criterion_2() -> Line {
    let mut specs = Vec::new();
    for p in [2.0, 4.0] {
        for dim in [2, 3] {
            let targets = [
                (ModulusTarget::Compose, YoungFunction::Power { p }),
                (ModulusTarget::Compose, YoungFunction::Exp),
                (ModulusTarget::PowerNorm, YoungFunction::Power { p }),
                (ModulusTarget::PsiCompose, YoungFunction::Power { p: 4.0 }),
                (ModulusTarget::Renorm, YoungFunction::Power { p }),
            ];
            for (i, (target, young)) in targets.into_iter().enumerate() {
                let mut s = spec(format!("{target:?}_{}_p{p}_n{dim}", young.name()), CheckKind::ModulusInequalities, p, dim, young);
                s.target = Some(target);
                s.eps = vec![0.05, 0.1, 0.5, 1.0, 1.9];
                s.radius = if target == ModulusTarget::Compose { 1.0 } else { 2.0 };
                s.samples = 100_000;
                s.seed = 100 + i as u64;
                specs.push(s);
            }
        }
    }
    summarize(&run_all(specs), 100_000)
}

fn objectives() -> Vec<ObjectiveSpec> {
    vec![
        ObjectiveSpec::Zero,
        ObjectiveSpec::Quadratic { q: Some(vec![vec![2.0, 0.5], vec![0.5, 1.0]]), b: Some(vec![0.3, -0.2]) },
        ObjectiveSpec::BallIndicator { center: None, radius: 0.5 },
        ObjectiveSpec::BoxIndicator { lower: None, upper: None, half_width: 0.3 },
        ObjectiveSpec::L1 { weight: 0.7 },
    ]
}

fn criterion_3() -> Line {
    let mut specs = Vec::new();
    for p in [2.0, 4.0] {
        for young in [YoungFunction::Power { p: 2.0 }, YoungFunction::Power { p: 4.0 }, YoungFunction::Exp] {
            for (i, obj) in objectives().into_iter().enumerate() {
                let mut s = spec(format!("oracle_p{p}_{}_{i}", young.name()), CheckKind::SolverOracle, p, 2, young);
                s.objective = obj;
                s.radius = 1.5;
                s.samples = 50;
                s.lambdas = vec![1.0, 0.5, 0.1];
                s.prox = vec![ProxKind::Young, ProxKind::Pr];
                specs.push(s);
            }
        }
    }
    // two records per instance: argmin agreement and the certified lower bound
    summarize(&run_all(specs), 100)
}

fn criterion_4() -> Line {
    let n = 10_000;
    let mut specs = Vec::new();
    let power2 = YoungFunction::Power { p: 2.0 };
    let power4 = YoungFunction::Power { p: 4.0 };
    let quad = ObjectiveSpec::Quadratic { q: Some(vec![vec![2.0, 0.5], vec![0.5, 1.0]]), b: Some(vec![0.3, -0.2]) };
    let ball = ObjectiveSpec::BallIndicator { center: None, radius: 0.5 };
    let boxed = ObjectiveSpec::BoxIndicator { lower: None, upper: None, half_width: 0.3 };
    let l1 = ObjectiveSpec::L1 { weight: 0.7 };
    let mut add = |kind: CheckKind, p: f64, young: YoungFunction<f64>, obj: &ObjectiveSpec| {
        let mut s = spec(format!("{}_p{p}_{}_{}", kind.as_str(), young.name(), specs.len()), kind, p, 2, young);
        s.objective = obj.clone();
        s.samples = n;
        s.seed = specs.len() as u64;
        specs.push(s);
    };
    for obj in [&quad, &boxed, &l1] {
        add(CheckKind::Nonexpansive, 2.0, power2, obj);
    }
    add(CheckKind::UniformContinuity, 2.0, power2, &quad);
    add(CheckKind::UniformContinuity, 4.0, power4, &l1);
    add(CheckKind::UniformContinuity, 4.0, YoungFunction::Exp, &ball);
    add(CheckKind::VariationalInequalities, 2.0, power2, &quad);
    add(CheckKind::VariationalInequalities, 4.0, power4, &ball);
    add(CheckKind::VariationalInequalities, 2.0, YoungFunction::Exp, &l1);
    add(CheckKind::Hoelder, 2.0, power2, &quad);
    add(CheckKind::Hoelder, 4.0, power4, &l1);
    add(CheckKind::SweepMonotonicity, 2.0, power2, &quad);
    add(CheckKind::SweepMonotonicity, 4.0, YoungFunction::Exp, &l1);
    add(CheckKind::SweepMonotonicity, 4.0, power4, &ball);
    add(CheckKind::DualityCharacterization, 2.0, YoungFunction::Exp, &quad);
    add(CheckKind::DualityCharacterization, 4.0, power4, &l1);
    add(CheckKind::ResolventIdentity, 2.0, power2, &quad);
    add(CheckKind::ResolventIdentity, 2.0, power2, &ball);
    for (p, young) in [(2.0, power2), (4.0, YoungFunction::Exp), (4.0, power4)] {
        let mut s = spec(format!("subgradient_p{p}_{}", young.name()), CheckKind::SubgradientMonotonicity, p, 3, young);
        s.eps = vec![0.1, 0.5, 1.0, 1.9];
        s.samples = n;
        specs.push(s);
    }
    for s in specs.iter_mut().filter(|s| s.kind == CheckKind::UniformContinuity) {
        s.eps = vec![0.1, 0.5, 1.0];
    }
    summarize(&run_all(specs), n)
}

fn criterion_5() -> Line {
    let mut specs = Vec::new();
    let cases = [
        (2.0, 2, YoungFunction::Power { p: 2.0 }, ObjectiveSpec::BallIndicator { center: None, radius: 1.0 }),
        (4.0, 3, YoungFunction::Power { p: 4.0 }, ObjectiveSpec::BoxIndicator { lower: None, upper: None, half_width: 0.5 }),
        (4.0, 2, YoungFunction::Exp, ObjectiveSpec::BallIndicator { center: None, radius: 0.5 }),
        (2.0, 2, YoungFunction::Cosh, ObjectiveSpec::HalfspaceIndicator { normal: vec![1.0, 1.0], offset: 0.2 }),
    ];
    for (i, (p, dim, young, obj)) in cases.into_iter().enumerate() {
        let mut s = spec(format!("projection_{i}"), CheckKind::ConvergenceToProjection, p, dim, young);
        s.objective = obj;
        s.radius = 2.0;
        s.eps = vec![0.1, 0.25, 0.5];
        s.samples = 1000;
        s.seed = i as u64;
        specs.push(s);
    }
    let mut line = summarize(&run_all(specs), 1000);
    // the worked example: unit ball, x = (2, 0), ε = 1/2
    let space = NormedSpace::hilbert(2).unwrap();
    let y2 = YoungFunction::power(2.0).unwrap();
    let f = ucprox::ConvexFunction::indicator(ucprox::ConvexSet::unit_ball(2));
    let opts = ucprox::SolverOptions::default();
    let p1 = ucprox::prox::prox_young(&space, &f, &y2, 1.0, &[2.0, 0.0], &opts).unwrap();
    let beta = space.distance(&[2.0, 0.0], &p1.minimizer);
    let big = lambda_threshold(&y2, &space.modulus(), 0.5, beta, 1.0).unwrap();
    for lam in [big / 2.0, big / 10.0] {
        let r = ucprox::prox::prox_young(&space, &f, &y2, lam, &[2.0, 0.0], &opts).unwrap();
        if !(space.distance(&r.minimizer, &[1.0, 0.0]) + r.distance_bound < 0.5) {
            line.pass = false;
            line.detail.push_str(&format!("; worked example fails at lambda {lam}"));
        }
    }
    line
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn criterion_6() -> Line {
    let path = workspace_root().join("configs/default.toml");
    let cfg = ExperimentConfig::load(&path).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let rows = ucprox::cli::tabulate(&cfg, Some(dir.path())).unwrap();
    let csv = std::fs::read_to_string(dir.path().join("moduli.csv")).unwrap();
    let mut pass = report::scaling_contrast(&rows) && csv.lines().count() == rows.len() + 1;
    let mut detail = format!("{} rows for {}", rows.len(), cfg.tabulate_young().name());
    for young in [YoungFunction::Cosh, YoungFunction::Exp] {
        for p in [2.0, 4.0] {
            let space = NormedSpace::new(2, p).unwrap();
            let r = report::moduli_rows(&space, &young, &cfg.tabulate).unwrap();
            if !report::scaling_contrast(&r) {
                pass = false;
                detail.push_str(&format!("; contrast missing for {} p={p}", young.name()));
            }
        }
    }
    Line { pass, detail }
}

/// Files of a report directory with the `run_info` line removed.
fn stripped(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with("\"run_info\"")).collect();
            (p.file_name().unwrap().to_string_lossy().into_owned(), body.join("\n"))
        })
        .collect();
    files.sort();
    files
}

fn criterion_7() -> Line {
    let config = workspace_root().join("configs/default.toml");
    let start = Instant::now();
    let mut dirs = Vec::new();
    let mut codes = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_ucprox"))
            .arg("run")
            .arg(&config)
            .arg("--output")
            .arg(dir.path())
            .output()
            .unwrap();
        codes.push(status.status.code());
        dirs.push(dir);
    }
    let elapsed = start.elapsed();
    let a = stripped(dirs[0].path());
    let b = stripped(dirs[1].path());
    let reports = a.iter().filter(|(n, _)| n.ends_with(".json")).count();
    let pass = codes.iter().all(|c| *c == Some(0)) && a == b && reports == 12 && elapsed.as_secs() < 60;
    Line {
        pass,
        detail: format!("exit codes {codes:?}, {reports} reports, identical = {}, {:.1}s for two runs", a == b, elapsed.as_secs_f64()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Line); 7] = [
        ("formula fidelity", criterion_1),
        ("modulus soundness", criterion_2),
        ("solver oracle equivalence", criterion_3),
        ("prox properties", criterion_4),
        ("convergence threshold", criterion_5),
        ("scaling contrast", criterion_6),
        ("CLI contract", criterion_7),
    ];
    let mut all = true;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let line = f();
        all &= line.pass;
        println!(
            "criterion {} {title}: {} ({:.1}s) {}",
            i + 1,
            if line.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            line.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
