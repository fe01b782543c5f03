use ucprox::prox::ProxKind;
use ucprox::verify::{run_check, CheckKind, CheckSpec, ModulusTarget, ObjectiveSpec, SpaceSpec, Verdict};
use ucprox::YoungFunction;

fn spec(kind: CheckKind) -> CheckSpec {
    let mut s = CheckSpec::new("t", kind);
    s.samples = 200;
    s
}

fn assert_pass(s: &CheckSpec) {
    let r = run_check(s).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", serde_json::to_string_pretty(&r).unwrap());
    assert!(!r.vacuous, "{:?}", r.notes);
    println!("{} {:?} min_margin={:?} samples={}", s.name, s.kind, r.min_margin, r.samples);
}

fn l4(dimension: usize) -> SpaceSpec {
    SpaceSpec { p: 4.0, dimension }
}

#[test]
fn uniform_continuity_configurations() {
    let mut s = spec(CheckKind::UniformContinuity);
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Power { p: 4.0 };
    s.objective = ObjectiveSpec::L1 { weight: 0.5 };
    s.samples = 60;
    assert_pass(&s);
    s.young = YoungFunction::Exp;
    s.objective = ObjectiveSpec::BallIndicator { center: None, radius: 0.5 };
    assert_pass(&s);
}

#[test]
fn uniform_continuity_beyond_the_diameter_is_vacuous() {
    let mut s = spec(CheckKind::UniformContinuity);
    s.eps = vec![5.0];
    let r = run_check(&s).unwrap();
    assert!(r.vacuous && r.verdict == Verdict::Pass && r.samples == 0);
}

#[test]
fn variational_inequality_configurations() {
    let mut s = spec(CheckKind::VariationalInequalities);
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Power { p: 4.0 };
    s.objective = ObjectiveSpec::BallIndicator { center: None, radius: 0.5 };
    assert_pass(&s);
    s.space = SpaceSpec { p: 2.0, dimension: 2 };
    s.young = YoungFunction::Exp;
    s.objective = ObjectiveSpec::L1 { weight: 1.0 };
    assert_pass(&s);
}

#[test]
fn convergence_configurations() {
    let mut s = spec(CheckKind::ConvergenceToProjection);
    s.objective = ObjectiveSpec::BallIndicator { center: None, radius: 1.0 };
    s.radius = 2.0;
    s.eps = vec![0.25, 0.5];
    s.samples = 100;
    assert_pass(&s);
    s.space = l4(3);
    s.young = YoungFunction::Power { p: 4.0 };
    s.objective = ObjectiveSpec::BoxIndicator { lower: None, upper: None, half_width: 0.5 };
    assert_pass(&s);
    s.objective = ObjectiveSpec::Zero;
    assert!(run_check(&s).is_err());
}

#[test]
fn modulus_targets() {
    for (p, young) in [(2.0, YoungFunction::Power { p: 2.0 }), (4.0, YoungFunction::Power { p: 4.0 }), (4.0, YoungFunction::Exp)] {
        for target in [
            ModulusTarget::Space,
            ModulusTarget::Scalar,
            ModulusTarget::Compose,
            ModulusTarget::PowerNorm,
            ModulusTarget::PsiCompose,
            ModulusTarget::Renorm,
        ] {
            if target == ModulusTarget::PsiCompose && young == YoungFunction::Exp {
                continue;
            }
            let mut s = spec(CheckKind::ModulusInequalities);
            s.space = SpaceSpec { p, dimension: 3 };
            s.young = young;
            s.target = Some(target);
            s.eps = vec![0.1, 0.5, 1.0, 1.9];
            s.samples = 2000;
            s.name = format!("{target:?}_{p}");
            assert_pass(&s);
        }
    }
}

#[test]
fn hoelder_configurations() {
    let mut s = spec(CheckKind::Hoelder);
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Power { p: 4.0 };
    s.objective = ObjectiveSpec::L1 { weight: 1.0 };
    s.samples = 60;
    assert_pass(&s);
    s.young = YoungFunction::Exp;
    assert!(run_check(&s).is_err());
    let mut s = spec(CheckKind::Hoelder);
    s.radius = 0.5;
    let err = run_check(&s).unwrap_err().to_string();
    assert!(err.contains("increase radius"), "{err}");
}

#[test]
fn hilbert_only_checks() {
    let mut s = spec(CheckKind::Nonexpansive);
    assert_pass(&s);
    s.objective = ObjectiveSpec::BoxIndicator { lower: None, upper: None, half_width: 0.3 };
    assert_pass(&s);
    let mut s = spec(CheckKind::ResolventIdentity);
    s.samples = 40;
    assert_pass(&s);
    s.objective = ObjectiveSpec::BallIndicator { center: None, radius: 0.5 };
    assert_pass(&s);
    s.space = l4(2);
    assert!(run_check(&s).is_err());
}

#[test]
fn sweeps_and_duality() {
    let mut s = spec(CheckKind::SweepMonotonicity);
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Exp;
    s.objective = ObjectiveSpec::L1 { weight: 1.0 };
    s.samples = 80;
    assert_pass(&s);
    let mut s = spec(CheckKind::DualityCharacterization);
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Power { p: 4.0 };
    s.objective = ObjectiveSpec::L1 { weight: 1.0 };
    assert_pass(&s);
}

#[test]
fn subgradient_monotonicity_configurations() {
    for young in [YoungFunction::Power { p: 2.0 }, YoungFunction::Exp] {
        let mut s = spec(CheckKind::SubgradientMonotonicity);
        s.young = young;
        s.space = l4(3);
        s.samples = 2000;
        assert_pass(&s);
    }
}

#[test]
fn solver_oracle_configurations() {
    let mut s = spec(CheckKind::SolverOracle);
    s.samples = 10;
    assert_pass(&s);
    s.space = l4(2);
    s.young = YoungFunction::Exp;
    s.objective = ObjectiveSpec::L1 { weight: 1.0 };
    s.prox = vec![ProxKind::Young, ProxKind::Pr];
    assert_pass(&s);
}

#[test]
fn reports_replay_from_the_seed() {
    let mut s = spec(CheckKind::Hoelder);
    s.samples = 30;
    let a = serde_json::to_string(&run_check(&s).unwrap()).unwrap();
    let b = serde_json::to_string(&run_check(&s).unwrap()).unwrap();
    assert_eq!(a, b);
    s.seed = 1;
    let c = serde_json::to_string(&run_check(&s).unwrap()).unwrap();
    assert_ne!(a, c);
}
