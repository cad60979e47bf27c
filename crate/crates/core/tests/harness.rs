use oel::harness::{
    self, evaluate, fuzz_chain, read_report, shrink_witness, trial_witness, write_report, GeneratorConfig, Report,
    ReportOptions, Status, Witness,
};
use oel::Matrix;

#[test]
fn every_chain_has_a_working_generator() {
    let cfg = GeneratorConfig::default();
    for def in harness::chains() {
        for trial in 0..20 {
            let w = trial_witness(def, &cfg, trial).unwrap();
            let r = evaluate(def, &w, cfg.tol);
            assert_eq!(r.status, Status::Pass, "{} trial {trial}: {:?} {:?}", def.id, r.error, w);
        }
    }
}

#[test]
fn constrained_generators_never_draw_out_of_regime() {
    let cfg = GeneratorConfig { trials: 300, seed: 11, ..Default::default() };
    for id in ["thm-3.3", "thm-3.5", "thm-3.6", "thm-3.11", "thm-2.12"] {
        let r = fuzz_chain(id, &cfg).unwrap();
        assert_eq!(r.not_applicable, 0, "{id}");
        assert!(r.failures.is_empty(), "{id}");
    }
}

#[test]
fn single_trial_is_bit_reproducible() {
    let cfg = GeneratorConfig { trials: 1, seed: 77, ..Default::default() };
    for def in harness::chains() {
        let a = fuzz_chain(def.id, &cfg).unwrap();
        let b = fuzz_chain(def.id, &cfg).unwrap();
        let bits = |r: &harness::FuzzReport| r.slacks.iter().map(|(t, s)| (*t, s.to_bits())).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b), "{}", def.id);
    }
}

#[test]
fn failing_runs_record_and_shrink_witnesses() {
    let cfg = GeneratorConfig { trials: 8, seed: 1, tol: -1.0, ..Default::default() };
    let a = fuzz_chain("zou", &cfg).unwrap();
    let b = fuzz_chain("zou", &cfg).unwrap();
    assert_eq!(a.failures.len(), 8);
    assert_eq!(a.failures, b.failures);
    let shrunk: Vec<_> = a.failures.iter().filter_map(|f| f.shrunk.as_ref()).collect();
    assert_eq!(shrunk.len(), harness::MAX_SHRUNK_FAILURES);
    let def = harness::chain("zou").unwrap();
    for w in shrunk {
        assert_eq!(evaluate(def, w, -1.0).status, Status::Fail);
    }
}

#[test]
fn commuting_failure_shrinks_to_a_scalar() {
    let a = Matrix::diag(&[0.5, 1.0, 2.0, 3.0, 5.0, 8.0]);
    let b = Matrix::diag(&[1.5, 0.2, 4.0, 3.5, 1.0, 9.0]);
    let w = Witness::default().matrix("A", &a).matrix("B", &b).param("t", 0.8);
    let small = shrink_witness("zou", &w, -1.0).unwrap();
    assert_eq!(small.dim(), Some(1));
    assert_eq!(small.params["t"], 0.5);
    let def = harness::chain("zou").unwrap();
    assert_eq!(evaluate(def, &small, -1.0).status, Status::Fail);
}

#[test]
fn scalar_witness_at_fixpoint_is_unchanged() {
    let one = Matrix::diag(&[2.0]);
    let w = Witness::default().matrix("A", &one).matrix("B", &one.scale(3.0)).param("t", 0.5);
    assert_eq!(shrink_witness("zou", &w, -1.0).unwrap(), w);
}

#[test]
fn shrinking_keeps_the_failure_kind() {
    // t = 0 is outside (0, 1], so evaluation errors; shrinking must keep an erroring witness.
    let a = Matrix::diag(&[1.0, 2.0, 3.0]);
    let w = Witness::default().matrix("A", &a).matrix("B", &a.scale(2.0)).param("t", 0.0);
    let def = harness::chain("zou").unwrap();
    assert!(evaluate(def, &w, 1e-9).error.is_some());
    let small = shrink_witness("zou", &w, 1e-9).unwrap();
    assert!(evaluate(def, &small, 1e-9).error.is_some());
}

#[test]
fn injected_failure_terminates_within_budget() {
    let cfg = GeneratorConfig { dim_range: (8, 8), ..Default::default() };
    for id in ["thm-3.5", "prop-3.10", "cor-2.4", "prop-2.1"] {
        let def = harness::chain(id).unwrap();
        let w = trial_witness(def, &cfg, 0).unwrap();
        assert_eq!(evaluate(def, &w, -1.0).status, Status::Fail, "{id}");
        let small = shrink_witness(id, &w, -1.0).unwrap();
        assert_eq!(evaluate(def, &small, -1.0).status, Status::Fail, "{id}");
    }
}

#[test]
fn passing_witness_cannot_be_shrunk() {
    let cfg = GeneratorConfig::default();
    let def = harness::chain("thm-3.3").unwrap();
    let w = trial_witness(def, &cfg, 0).unwrap();
    assert!(shrink_witness("thm-3.3", &w, 1e-9).is_err());
}

#[test]
fn report_with_failures_round_trips() {
    let cfg = GeneratorConfig { trials: 5, seed: 9, tol: -1.0, ..Default::default() };
    let reports = vec![fuzz_chain("lem-3.2", &cfg).unwrap(), fuzz_chain("thm-3.6", &cfg).unwrap()];
    let dir = tempdir();
    let path = dir.join("r.json");
    write_report(9, &reports, &path, ReportOptions { timing: true, pretty: true }).unwrap();
    let back = read_report(&path).unwrap();
    assert_eq!(back, Report::from_fuzz(9, &reports, ReportOptions { timing: true, pretty: true }));
    assert_eq!(back.chains[0].failures.len(), 5);
    let csv = std::fs::read_to_string(path.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("oel-harness-it-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
