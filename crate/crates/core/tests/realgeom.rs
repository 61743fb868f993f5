use cubicdet::builtin::*;
use cubicdet::lineconfig::LineConfiguration;
use cubicdet::numlines::{find_lines_numeric, LineSearchOptions};
use cubicdet::realgeom::*;
use cubicdet::scalars::{Eisenstein, Field};

fn fermat_cfg() -> LineConfiguration<Eisenstein> {
    let s = fermat_surface();
    LineConfiguration::from_labeled(s.lines().unwrap(), s.cubic.clone()).unwrap()
}

#[test]
fn fermat_is_f4_with_six_classes() {
    let cfg = fermat_cfg();
    assert_eq!(segre_type(&cfg).unwrap(), SegreType::F4);
    let sc = self_conjugate_double_sixes(&cfg).unwrap();
    assert_eq!(sc.len(), 3);
    assert!(sc.iter().all(|(_, k)| k.kind == ConjKind::III));
    let classes = selfadjoint_classes(&cfg).unwrap();
    assert_eq!(classes.len(), 6);
    for c in &classes {
        assert!(c.pencil.is_selfadjoint());
        assert!(c.pencil.det().proportional_to(cfg.cubic()));
    }
    // distinct up to sign and hermitean congruence
    for i in 0..6 {
        for j in (i + 1)..6 {
            let h = hermitean_equivalent_in(&cfg, &classes[i].pencil, &classes[j].pencil).unwrap();
            assert!(!matches!(h, HermiteanEquivalence::Plus { .. }), "{i} {j}");
        }
    }
}

#[test]
fn fermat_u1_u2_are_plus_equivalent() {
    let u1 = fermat_u1();
    let u2 = fermat_u2();
    assert!(u1.is_selfadjoint() && u2.is_selfadjoint());
    let h = hermitean_equivalent(&u1, &u2).unwrap();
    assert!(matches!(h, HermiteanEquivalence::Plus { .. }));
    assert!(h.verifies(&u1, &u2));
    let h = hermitean_equivalent_in(&fermat_cfg(), &u1, &u2).unwrap();
    assert!(matches!(h, HermiteanEquivalence::Plus { .. }) && h.verifies(&u1, &u2));
}

#[test]
fn fermat_u1_self_orthogonal_vector() {
    let o = DefinitenessOptions::default();
    let sov = self_orthogonal_vectors(&fermat_u1(), &o).unwrap();
    let w = Eisenstein::omega();
    let target = [w, Eisenstein::zero(), Eisenstein::zero()];
    // projectively equal: v ∧ target = 0
    assert!(sov.iter().any(|v| {
        (0..3).all(|i| (0..3).all(|j| (v[i].clone() * target[j].clone() - v[j].clone() * target[i].clone()).is_zero()))
    }));
    let r = is_definite(&fermat_u1(), &o);
    assert!(r.is_indefinite());
    assert!(certificate_holds(&fermat_u1(), &r, 1e-9));
}

#[test]
fn f5_census_and_certificates() {
    let f = to_float_form(&f5_cubic());
    let nl = find_lines_numeric(&f, &LineSearchOptions::default()).unwrap();
    let cfg = LineConfiguration::from_lines(nl.lines.clone(), f.clone()).unwrap();
    assert_eq!(segre_type(&cfg).unwrap(), SegreType::F5);
    let sc = self_conjugate_double_sixes(&cfg).unwrap();
    assert_eq!(sc.len(), 12);
    assert!(sc.iter().all(|(_, k)| k.kind == ConjKind::IV));
    let classes = selfadjoint_classes(&cfg).unwrap();
    assert_eq!(classes.len(), 24);
    let o = DefinitenessOptions::default();
    let (mut d, mut i) = (0, 0);
    for c in &classes {
        let r = is_definite(&c.pencil, &o);
        assert!(certificate_holds(&c.pencil, &r, 1e-8), "{r:?}");
        match r {
            DefinitenessResult::Definite { .. } => d += 1,
            DefinitenessResult::Indefinite { .. } => i += 1,
            DefinitenessResult::Unknown { .. } => panic!("undecided: {r:?}"),
        }
    }
    assert_eq!((d, i), (16, 8));
}

#[test]
fn f5_u_prime_has_e2_certificate_and_no_self_orthogonal_vector() {
    let up = f5_u_prime();
    let o = DefinitenessOptions::default();
    let r = is_definite(&up, &o);
    assert!(matches!(
        r,
        DefinitenessResult::Indefinite {
            certificate: IndefiniteCertificate::NegativeE2Gram { .. }
        }
    ));
    assert!(certificate_holds(&up, &r, 1e-9));
    assert!(self_orthogonal_vectors(&up, &o).unwrap().is_empty());
}

#[test]
fn f5_definite_rep_eigenvalues() {
    let d = f5_definite_rep();
    let mut ev = eigenvalues_at(&d, &[0.02, 0.0, -1.2, -0.3]);
    ev.sort_by(|a, b| b.total_cmp(a));
    for (a, b) in ev.iter().zip([1.50013, 1.17540, 0.00293]) {
        assert!((a - b).abs() < 1e-4, "{ev:?}");
    }
    assert!(is_definite(&d, &DefinitenessOptions::default()).is_definite());
}
