use std::process::Command as Proc;

use cubicdet::realgeom::SegreType;
use cubicdet_cli::report::Report;
use cubicdet_cli::spec::{Builtin, SurfaceSpec};
use cubicdet_cli::*;

fn fermat() -> SurfaceSpec {
    SurfaceSpec::Builtin(Builtin::Fermat)
}

#[test]
fn classify_real_fermat() {
    let r = cmd_classify_real(&fermat(), &RunOptions::default()).unwrap();
    let real = r.real.unwrap();
    assert_eq!(real.segre_type, SegreType::F4);
    assert_eq!(real.counts, [3, 12, 12]);
    assert_eq!(real.self_conjugate_double_sixes.len(), 3);
    let s = cmd_selfadjoint(&fermat(), &RunOptions::default()).unwrap();
    assert_eq!(s.selfadjoint.unwrap().len(), 6);
    assert!(s.checks.iter().all(|c| c.passed));
}

#[test]
fn reps_fermat() {
    let r = cmd_reps(&fermat(), &RunOptions::default()).unwrap();
    let reps = r.representations.as_ref().unwrap();
    assert_eq!(reps.len(), 72);
    assert!(r.all_passed(), "{:?}", r.checks);
    for (i, rep) in reps.iter().enumerate() {
        assert_eq!(reps[rep.transpose].transpose, i);
    }
}

#[test]
fn definiteness_f5() {
    let r = cmd_definiteness(&SurfaceSpec::Builtin(Builtin::F5paper), &RunOptions::default()).unwrap();
    let s = r.definiteness_summary.unwrap();
    assert_eq!((s.definite, s.indefinite, s.unknown), (16, 8, 0));
}

#[test]
fn report_round_trip_and_schema_check() {
    let r = cmd_verify(&fermat(), &RunOptions::default()).unwrap();
    assert!(r.all_passed(), "{:?}", r.checks);
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let bumped = r.to_json().replacen("\"1.0.0\"", "\"2.0.0\"", 1);
    assert!(Report::from_json(&bumped).is_err());
    let minor = r.to_json().replacen("\"1.0.0\"", "\"1.7.0\"", 1);
    assert!(Report::from_json(&minor).is_ok());
}

#[test]
fn float_reports_are_deterministic() {
    let spec = SurfaceSpec::Builtin(Builtin::Clebsch);
    let o = RunOptions {
        seed: 3,
        ..Default::default()
    };
    let a = cmd_lines(&spec, &o).unwrap().to_json();
    let b = cmd_lines(&spec, &o).unwrap().to_json();
    assert_eq!(a, b);
    let r = Report::from_json(&a).unwrap();
    assert!(r.configuration.unwrap().lines.iter().all(|l| l.real == Some(true)));
}

fn classify(points: &str) -> (SegreType, [usize; 3], usize) {
    let spec = SurfaceSpec::from_arg(points).unwrap();
    let r = cmd_verify(&spec, &RunOptions::default()).unwrap();
    assert!(r.all_passed(), "{:?}", r.checks);
    let real = r.real.unwrap();
    (real.segre_type, real.counts, r.selfadjoint.unwrap().len())
}

#[test]
fn exact_points_over_gaussian_field() {
    // two real points and two conjugate pairs
    let f3 = r#"{"points": [["1","0","0"], ["0","1","0"], ["1","2+1i","3-2i"], ["1","2-1i","3+2i"],
                            ["2-1i","1","1+3i"], ["2+1i","1","1-3i"]]}"#;
    assert_eq!(classify(f3), (SegreType::F3, [7, 4, 16], 4));
    // four real points and one pair
    let f2 = r#"{"points": [["1","0","0"], ["0","1","0"], ["0","0","1"], ["1","1","1"],
                            ["1","2+1i","3-2i"], ["1","2-1i","3+2i"]]}"#;
    assert_eq!(classify(f2), (SegreType::F2, [15, 0, 12], 2));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cubicdet");
    let out = Proc::new(bin).args(["classify-real", "fermat"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.real.unwrap().segre_type, SegreType::F4);

    let out = Proc::new(bin).args(["lines", r#"{"cubic": ["1", "2"]}"#]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(r.error.is_some());

    let out = Proc::new(bin).args(["classify-real", "f5paper", "--mode", "exact"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
