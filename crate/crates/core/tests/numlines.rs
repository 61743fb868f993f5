use cubicdet::builtin::*;
use cubicdet::numlines::*;
use cubicdet::poly::fermat_cubic;
use cubicdet::projective::{lines_meet, MeetResult};
use cubicdet::scalars::ComplexF;

#[test]
fn f5_lines_and_planes() {
    let f = to_float_form(&f5_cubic());
    let nl = find_lines_numeric(&f, &LineSearchOptions::default()).unwrap();
    assert_eq!(nl.lines.len(), 27);
    assert!(nl.max_residual < 1e-8);
    let real: Vec<_> = nl.lines.iter().zip(&nl.real).filter(|(_, r)| **r).map(|(l, _)| l.clone()).collect();
    assert_eq!(real.len(), 3);
    // coplanar: pairwise meeting
    for i in 0..3 {
        for j in (i + 1)..3 {
            assert!(matches!(lines_meet(&real[i], &real[j]), MeetResult::Point(_)));
        }
    }
    let planes = real_tritangents_through(&f, &f5_line_r());
    assert_eq!(planes.len(), 4);
    for (name, want) in f5_printed_planes() {
        let best = planes
            .iter()
            .map(|p| plane_distance(&plane_to_f64(p), &want))
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-4, "{name}: {best}");
    }
}

#[test]
fn fermat_numeric_matches_exact() {
    let f = fermat_cubic::<ComplexF>();
    let nl = find_lines_numeric(&f, &LineSearchOptions::default()).unwrap();
    let exact: Vec<_> = fermat_27_lines().iter().map(to_float_line).collect();
    let (_, worst) = match_lines(&exact, &nl.lines);
    assert!(worst < 1e-8);
}

#[test]
fn enumeration_is_deterministic() {
    let f = to_float_form(&f5_cubic());
    let o = LineSearchOptions { seed: 7, ..Default::default() };
    let a = find_lines_numeric(&f, &o).unwrap();
    let b = find_lines_numeric(&f, &o).unwrap();
    assert_eq!(a.lines, b.lines);
}
