//! Acceptance runner: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubicdet::builtin::*;
use cubicdet::detrep::*;
use cubicdet::lineconfig::{double_six_catalog, LineConfiguration};
use cubicdet::numlines::*;
use cubicdet::poly::fermat_cubic;
use cubicdet::projective::{lines_meet, LineH, MeetResult, PlanePointP2};
use cubicdet::realgeom::*;
use cubicdet::scalars::{Eisenstein, Field};
use cubicdet::surface::{b_index, c_index, line_on_surface, BlowupSurface};

type E = Eisenstein;
type Outcome = Result<(), String>;

fn check(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(t: Instant, limit: Duration) -> Outcome {
    let e = t.elapsed();
    check(e < limit, format!("runtime {e:.2?} exceeds {limit:?}"))
}

fn fermat_cfg() -> LineConfiguration<E> {
    let s = fermat_surface();
    LineConfiguration::from_labeled(s.lines().unwrap(), s.cubic.clone()).unwrap()
}

fn same_set(a: &[LineH<E>], b: &[LineH<E>]) -> bool {
    a.len() == b.len() && a.iter().all(|l| b.contains(l)) && b.iter().all(|l| a.contains(l))
}

fn fermat_lines() -> Outcome {
    let t = Instant::now();
    let s = fermat_surface();
    let lines = s.lines().map_err(|e| e.to_string())?;
    check(same_set(&lines, &fermat_27_lines()), "line set differs from the printed list")?;
    check(lines.iter().all(|l| line_on_surface(&fermat_cubic(), l)), "nonzero residual")?;
    within(t, Duration::from_secs(10))
}

fn pencil_consistency() -> Outcome {
    let t = Instant::now();
    let s = BlowupSurface::from_points_and_basis(fermat_base_points(), fermat_cubic_basis())
        .map_err(|e| e.to_string())?;
    // M(z)·x = L(x)·z holds identically iff L(x) read off M equals L
    let from_m = s.pencil.l_matrix();
    for i in 0..3 {
        for k in 0..4 {
            check(from_m[i][k] == s.l.form(i, k), format!("bilinear identity fails at ({i},{k})"))?;
        }
    }
    let det = s.pencil.det();
    let f = fermat_cubic::<E>();
    let c = det.ratio_to(&f).ok_or("det M is not proportional to the Fermat cubic")?;
    check(det == f.scale(&c), "coefficient ratios differ")?;
    within(t, Duration::from_secs(5))
}

fn base_points_of_m() -> Outcome {
    let w = E::omega();
    let w2 = E::omega_sq();
    let (o, z) = (E::one(), E::zero());
    let p = |v: [&E; 3]| PlanePointP2::new(v.iter().map(|x| (*x).clone()).collect()).unwrap();
    let expect_m = [
        p([&o, &z, &z]),
        p([&z, &o, &z]),
        p([&z, &z, &o]),
        p([&o, &o, &o]),
        p([&o, &w, &w2]),
        p([&o, &w2, &w]),
    ];
    let expect_mt = [
        p([&o, &z, &z]),
        p([&z, &o, &z]),
        p([&z, &z, &o]),
        p([&w2, &o, &o]),
        p([&o, &o, &w2]),
        p([&o, &w2, &o]),
    ];
    let bm = base_points(&fermat_m()).map_err(|e| e.to_string())?;
    let bmt = base_points(&fermat_m().transpose()).map_err(|e| e.to_string())?;
    check(bm.len() == 6 && expect_m.iter().all(|e| bm.contains(e)), "base points of M")?;
    check(bmt.len() == 6 && expect_mt.iter().all(|e| bmt.contains(e)), "base points of Mᵗ")
}

fn equivalence() -> Outcome {
    let cfg = fermat_cfg();
    let (m, mp, mpp) = (fermat_m(), fermat_m_prime(), fermat_m_double_prime());
    let e = |a, b| equivalent_in(&cfg, a, b).map_err(|e| e.to_string());
    check(e(&m, &mpp)?, "M ~ M'' should hold")?;
    check(!e(&m, &mp)?, "M ~ M' should fail")?;
    let w = witness_in(&cfg, &m, &mpp)
        .map_err(|e| e.to_string())?
        .ok_or("no witness for M ~ M''")?;
    check(w.verifies(&m, &mpp), "X M Y differs from M''")?;
    for x in [&m, &mpp] {
        let (w, r) = reduce_to_rform_in(&cfg, x).map_err(|e| e.to_string())?;
        check(w.apply(x) == r.pencil, "X M Y differs from the ℜ-form")?;
    }
    Ok(())
}

fn counting() -> Outcome {
    let t = Instant::now();
    let cfg = fermat_cfg();
    let err = |e: cubicdet::Error| e.to_string();
    check(cfg.lines().len() == 27, "27 lines")?;
    check(cfg.tritangent_planes().map_err(err)?.len() == 45, "45 tritangent planes")?;
    check(cfg.double_sixes().map_err(err)?.len() == 36, "36 double-sixes")?;
    let mut split = BTreeMap::new();
    for d in double_six_catalog() {
        *split.entry(d.catalog_shape()).or_insert(0usize) += 1;
    }
    let split: Vec<usize> = split.values().copied().collect();
    check(split == [1, 15, 20], format!("double-six split {split:?}"))?;
    check(cfg.steiner_sets().map_err(err)?.len() == 120, "120 Steiner sets")?;
    let reps = all_representations(&cfg).map_err(err)?;
    let mut sets = reps
        .iter()
        .map(|r| {
            let mut s = lines_of_rep_in(&cfg, &r.pencil)?;
            s.sort();
            Ok(s)
        })
        .collect::<cubicdet::Result<Vec<_>>>()
        .map_err(err)?;
    sets.sort();
    sets.dedup();
    check(reps.len() == 72 && sets.len() == 72, "72 pairwise nonequivalent ℜ-forms")?;
    let classes = enumerate_72_classes();
    let mut counts = BTreeMap::new();
    for c in &classes {
        *counts.entry(c.alpha).or_insert(0usize) += 1;
    }
    let counts: Vec<usize> = counts.values().copied().collect();
    check(classes.len() == 72 && counts == [1, 20, 30, 20, 1], format!("divisor classes {counts:?}"))?;
    within(t, Duration::from_secs(120))
}

fn adjugates() -> Outcome {
    let cfg = fermat_cfg();
    let m = fermat_m();
    let adj = adjugate(&m);
    check(adj.verifies(&m), "M·adj ≠ det·Id")?;
    let mut n = 0;
    for l in cfg.lines().iter().take(10) {
        for z in sample_line_points(l, 3).into_iter().skip(2) {
            check(adj.eval(&z).rank() == 1, "adjugate rank ≠ 1 on S")?;
            n += 1;
        }
    }
    check(n >= 10, "too few samples")?;
    let ds = cfg.double_sixes().map_err(|e| e.to_string())?[0].clone();
    let r = rform_from_double_six(&cfg, &ds).map_err(|e| e.to_string())?;
    let radj = adjugate(&r.pencil);
    for k in [b_index(1), c_index(1, 2), b_index(2)] {
        for z in sample_line_points(cfg.line(k), 5) {
            check(radj.eval(&z).col(0).iter().all(|v| v.is_zero()), "first column does not vanish")?;
        }
    }
    Ok(())
}

fn real_fermat() -> Outcome {
    let cfg = fermat_cfg();
    let err = |e: cubicdet::Error| e.to_string();
    check(segre_type(&cfg).map_err(err)? == SegreType::F4, "Segre type")?;
    let sc = self_conjugate_double_sixes(&cfg).map_err(err)?;
    check(sc.len() == 3 && sc.iter().all(|(_, k)| k.kind == ConjKind::III), "3 kind III double-sixes")?;
    let classes = selfadjoint_classes(&cfg).map_err(err)?;
    check(classes.len() == 6, format!("{} self-adjoint classes", classes.len()))?;
    for c in &classes {
        check(c.pencil.is_selfadjoint(), "not hermitean")?;
        check(c.pencil.det().proportional_to(cfg.cubic()), "det U not ∝ F")?;
    }
    let (u1, u2) = (fermat_u1(), fermat_u2());
    let h = hermitean_equivalent(&u1, &u2).map_err(err)?;
    check(matches!(h, HermiteanEquivalence::Plus { .. }), format!("{h:?}"))?;
    check(h.verifies(&u1, &u2), "X does not verify")
}

fn f5_numerics() -> Outcome {
    let t = Instant::now();
    let f = to_float_form(&f5_cubic());
    let nl = find_lines_numeric(&f, &LineSearchOptions::default()).map_err(|e| e.to_string())?;
    check(nl.lines.len() == 27, "27 lines")?;
    let real: Vec<_> = nl.lines.iter().zip(&nl.real).filter(|(_, r)| **r).map(|(l, _)| l).collect();
    check(real.len() == 3, format!("{} real lines", real.len()))?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            check(matches!(lines_meet(real[i], real[j]), MeetResult::Point(_)), "real lines not coplanar")?;
        }
    }
    let planes = real_tritangents_through(&f, &f5_line_r());
    check(planes.len() == 4, format!("{} real tritangent planes", planes.len()))?;
    for (name, want) in f5_printed_planes() {
        let best = planes.iter().map(|p| plane_distance(&plane_to_f64(p), &want)).fold(f64::INFINITY, f64::min);
        check(best < 1e-4, format!("plane {name} off by {best:.2e}"))?;
    }
    let mut ev = eigenvalues_at(&f5_definite_rep(), &[0.02, 0.0, -1.2, -0.3]);
    ev.sort_by(|a, b| b.total_cmp(a));
    for (a, b) in ev.iter().zip([1.50013, 1.17540, 0.00293]) {
        check((a - b).abs() < 1e-4, format!("eigenvalues {ev:?}"))?;
    }
    within(t, Duration::from_secs(300))
}

fn census() -> Outcome {
    let f = to_float_form(&f5_cubic());
    let err = |e: cubicdet::Error| e.to_string();
    let nl = find_lines_numeric(&f, &LineSearchOptions::default()).map_err(err)?;
    let cfg = LineConfiguration::from_lines(nl.lines, f).map_err(err)?;
    let classes = selfadjoint_classes(&cfg).map_err(err)?;
    check(classes.len() == 24, format!("{} self-adjoint classes", classes.len()))?;
    let o = DefinitenessOptions::default();
    let (mut d, mut i, mut u) = (0, 0, 0);
    for c in &classes {
        let r = is_definite(&c.pencil, &o);
        check(certificate_holds(&c.pencil, &r, 1e-8), "certificate does not hold")?;
        match r {
            DefinitenessResult::Definite { .. } => d += 1,
            DefinitenessResult::Indefinite { .. } => i += 1,
            DefinitenessResult::Unknown { .. } => u += 1,
        }
    }
    check((d, i, u) == (16, 8, 0), format!("definite/indefinite/unknown = {d}/{i}/{u}"))
}

fn certificates() -> Outcome {
    let o = DefinitenessOptions::default();
    let u = fermat_u1();
    let sov = self_orthogonal_vectors(&u, &o).map_err(|e| e.to_string())?;
    let target = [E::omega(), E::zero(), E::zero()];
    let parallel = |v: &Vec<E>| {
        (0..3).all(|i| (0..3).all(|j| (v[i].clone() * target[j].clone() - v[j].clone() * target[i].clone()).is_zero()))
    };
    check(sov.iter().any(parallel), "(ω, 0, 0) not found")?;
    let r = is_definite(&u, &o);
    check(r.is_indefinite() && certificate_holds(&u, &r, 1e-9), "Fermat U not certified indefinite")?;
    let up = f5_u_prime();
    let r = is_definite(&up, &o);
    check(
        matches!(
            r,
            DefinitenessResult::Indefinite {
                certificate: IndefiniteCertificate::NegativeE2Gram { .. }
            }
        ) && certificate_holds(&up, &r, 1e-9),
        format!("U' gave {r:?}"),
    )?;
    check(
        self_orthogonal_vectors(&up, &o).map_err(|e| e.to_string())?.is_empty(),
        "U' has self-orthogonal vectors",
    )
}

fn properties() -> Outcome {
    let fails: Vec<String> = std::thread::scope(|s| {
        let hs: Vec<_> = common::PROPERTIES
            .iter()
            .map(|(name, f)| s.spawn(move || f(1000).map_err(|e| format!("{name}: {e}"))))
            .collect();
        hs.into_iter().filter_map(|h| h.join().unwrap().err()).collect()
    });
    check(fails.is_empty(), fails.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("fermat 27 lines", fermat_lines),
        ("pencil/bilinear/det consistency", pencil_consistency),
        ("base points of M and Mᵗ", base_points_of_m),
        ("equivalence decisions", equivalence),
        ("counting suite", counting),
        ("adjugate properties", adjugates),
        ("real classification of Fermat", real_fermat),
        ("F5 numerics", f5_numerics),
        ("definiteness census", census),
        ("definiteness certificates", certificates),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let e = t.elapsed();
        match r {
            Ok(()) => println!("PASS {:>2} {name} ({e:.2?})", k + 1),
            Err(m) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({e:.2?}): {m}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
