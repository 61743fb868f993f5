//! Randomized property checks shared by the property tests and the
//! acceptance runner.

#![allow(dead_code)]

use std::sync::OnceLock;

use cubicdet::builtin::{f5_cubic, fermat_surface, fermat_u1, to_float_form};
use cubicdet::detrep::{all_representations, equivalent_in, lines_of_rep_in, witness_in, RFormRep};
use cubicdet::linalg::Mat;
use cubicdet::lineconfig::{incidence_graph, standard_incidence, LineConfiguration};
use cubicdet::numlines::{find_lines_numeric, LineSearchOptions};
use cubicdet::pencil::LinearPencil;
use cubicdet::projective::{LineH, PlanePointP2};
use cubicdet::realgeom::{conj_line, conj_pencil, is_definite, DefinitenessOptions};
use cubicdet::scalars::{ComplexF, Eisenstein, Field, Gaussian, Rational};
use cubicdet::surface::BlowupSurface;
use proptest::prelude::*;
use rayon::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..25).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

pub fn gaussian() -> impl Strategy<Value = Gaussian> {
    (rational(), rational()).prop_map(|(a, b)| Gaussian::new(a, b))
}

pub fn eisenstein() -> impl Strategy<Value = Eisenstein> {
    (rational(), rational()).prop_map(|(a, b)| Eisenstein::new(a, b))
}

pub fn complexf() -> impl Strategy<Value = ComplexF> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b)| ComplexF::new(a, b))
}

fn ensure(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        max_global_rejects: 100 * cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), TestCaseError> {
    let eq = |x: F, y: F| x.approx_eq(&y);
    ensure(eq(a.clone() + b, b.clone() + a), "a+b = b+a")?;
    ensure(eq(a.clone() * b, b.clone() * a), "ab = ba")?;
    ensure(eq((a.clone() + b) + c, a.clone() + (b.clone() + c)), "associative +")?;
    ensure(eq((a.clone() * b) * c, a.clone() * (b.clone() * c)), "associative *")?;
    ensure(eq(a.clone() * (b.clone() + c), a.clone() * b + a.clone() * c), "distributive")?;
    ensure(eq(a.clone() + F::zero(), a.clone()), "a+0 = a")?;
    ensure(eq(a.clone() * F::one(), a.clone()), "a*1 = a")?;
    ensure((a.clone() - a).is_zero(), "a-a = 0")?;
    ensure(eq(a.clone() + (-a.clone()), F::zero()), "a+(-a) = 0")?;
    if !a.is_zero() {
        let i = a.inv().ok_or_else(|| TestCaseError::fail("nonzero without inverse"))?;
        ensure((a.clone() * i - F::one()).is_zero(), "a·a⁻¹ = 1")?;
        ensure(eq(b.clone() / a * a, b.clone()), "(b/a)·a = b")?;
    }
    ensure(eq((a.clone() + b).conj(), a.conj() + b.conj()), "conj additive")?;
    ensure(eq((a.clone() * b).conj(), a.conj() * b.conj()), "conj multiplicative")?;
    ensure(a.norm_sq().is_real(), "a·ā real")?;
    Ok(())
}

/// Field axioms in all four fields.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(rational(), rational(), rational()), |(a, b, c)| axioms(&a, &b, &c)))?;
    report(runner(cases).run(&(gaussian(), gaussian(), gaussian()), |(a, b, c)| axioms(&a, &b, &c)))?;
    report(runner(cases).run(&(eisenstein(), eisenstein(), eisenstein()), |(a, b, c)| axioms(&a, &b, &c)))?;
    report(runner(cases).run(&(complexf(), complexf(), complexf()), |(a, b, c)| axioms(&a, &b, &c)))
}

fn pencil<F: Field>(xs: &[F]) -> LinearPencil<F> {
    let m = |k: usize| Mat::from_fn(3, 3, |i, j| xs[9 * k + 3 * i + j].clone());
    LinearPencil::new([m(0), m(1), m(2), m(3)]).unwrap()
}

/// Conjugation is an involution on scalars, lines and pencils.
pub fn conj_involution(cases: u32) -> Result<(), String> {
    report(runner(cases).run(
        &(
            prop::collection::vec(eisenstein(), 36),
            prop::collection::vec(gaussian(), 8),
            prop::collection::vec(complexf(), 4),
        ),
        |(e, g, c)| {
            for x in &e {
                ensure(x.conj().conj() == *x, "Eisenstein conj∘conj")?;
            }
            for x in &g {
                ensure(x.conj().conj() == *x, "Gaussian conj∘conj")?;
            }
            for x in &c {
                ensure(x.conj().conj().approx_eq(x), "float conj∘conj")?;
            }
            if let Ok(l) = LineH::from_forms(&[g[..4].to_vec(), g[4..].to_vec()]) {
                ensure(conj_line(&conj_line(&l)) == l, "line conj∘conj")?;
            }
            let p = pencil(&e);
            ensure(conj_pencil(&conj_pencil(&p)) == p, "pencil conj∘conj")?;
            ensure(p.adjoint().adjoint() == p, "pencil adjoint∘adjoint")?;
            Ok(())
        },
    ))
}

/// Six rational points of small height; non-general choices are rejected.
fn six_points() -> impl Strategy<Value = Vec<[i64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-4i64..5), 6)
}

/// The lines of blow-ups of random rational points meet symmetrically, each
/// meets exactly ten others, and the labeled incidence is the standard one.
pub fn incidence(cases: u32) -> Result<(), String> {
    let std_inc = standard_incidence();
    report(runner(cases).run(&six_points(), |pts| {
        let pts: Option<Vec<PlanePointP2<Rational>>> = pts
            .iter()
            .map(|p| PlanePointP2::new(p.iter().map(|&x| Rational::from_i64(x)).collect()).ok())
            .collect();
        let pts = pts.ok_or_else(|| TestCaseError::reject("zero point"))?;
        let s = BlowupSurface::from_points(pts).map_err(|_| TestCaseError::reject("not in general position"))?;
        let lines = s.lines().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let inc = incidence_graph(&lines).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for i in 0..27 {
            ensure(!inc[i][i], "irreflexive")?;
            ensure(inc[i].iter().filter(|x| **x).count() == 10, "degree 10")?;
            for j in 0..27 {
                ensure(inc[i][j] == inc[j][i], "symmetric")?;
            }
        }
        ensure(inc == std_inc, "labeled incidence is standard")
    }))
}

struct FermatData {
    cfg: LineConfiguration<Eisenstein>,
    reps: Vec<RFormRep<Eisenstein>>,
}

fn fermat_data() -> &'static FermatData {
    static D: OnceLock<FermatData> = OnceLock::new();
    D.get_or_init(|| {
        let s = fermat_surface();
        let cfg = LineConfiguration::from_labeled(s.lines().unwrap(), s.cubic.clone()).unwrap();
        let reps = all_representations(&cfg).unwrap();
        FermatData { cfg, reps }
    })
}

fn small_eis() -> impl Strategy<Value = Eisenstein> {
    (-2i64..3, -2i64..3).prop_map(|(a, b)| Eisenstein::new(Rational::from_i64(a), Rational::from_i64(b)))
}

/// A representative from a small pool of classes, moved by random `X`, `Y`.
fn random_rep() -> impl Strategy<Value = (usize, Vec<Eisenstein>, Vec<Eisenstein>)> {
    (0usize..4, prop::collection::vec(small_eis(), 9), prop::collection::vec(small_eis(), 9))
}

/// Equivalence is reflexive, symmetric and transitive on random triples,
/// agrees with the class of origin, and comes with verifying witnesses.
pub fn equivalence_laws(cases: u32) -> Result<(), String> {
    let d = fermat_data();
    // classes 0 and 1 come from one double-six, 2 and 3 from another
    let pool = [0usize, 1, 2, 3];
    report(runner(cases).run(&(random_rep(), random_rep(), random_rep()), |(a, b, c)| {
        let mut ms = Vec::new();
        let mut classes = Vec::new();
        for (k, x, y) in [a, b, c] {
            let x = Mat::from_fn(3, 3, |i, j| x[3 * i + j].clone());
            let y = Mat::from_fn(3, 3, |i, j| y[3 * i + j].clone());
            if x.det().is_zero() || y.det().is_zero() {
                return Err(TestCaseError::reject("singular transform"));
            }
            ms.push(d.reps[pool[k]].pencil.transform(&x, &y));
            classes.push(pool[k]);
        }
        let fail = |e: cubicdet::Error| TestCaseError::fail(e.to_string());
        let sets: Vec<[usize; 6]> = ms
            .par_iter()
            .map(|m| {
                let mut s = lines_of_rep_in(&d.cfg, m)?;
                s.sort();
                Ok(s)
            })
            .collect::<cubicdet::Result<_>>()
            .map_err(fail)?;
        let rel = |i: usize, j: usize| sets[i] == sets[j];
        for i in 0..3 {
            ensure(rel(i, i), "reflexive")?;
            for j in 0..3 {
                ensure(rel(i, j) == rel(j, i), "symmetric")?;
                ensure(rel(i, j) == (classes[i] == classes[j]), "matches class of origin")?;
                for k in 0..3 {
                    ensure(!(rel(i, j) && rel(j, k)) || rel(i, k), "transitive")?;
                }
            }
        }
        let (e01, e10) = rayon::join(|| equivalent_in(&d.cfg, &ms[0], &ms[1]), || equivalent_in(&d.cfg, &ms[1], &ms[0]));
        let (e01, e10) = (e01.map_err(fail)?, e10.map_err(fail)?);
        ensure(e01 == e10 && e01 == rel(0, 1), "equivalent_in agrees")?;
        if let Some((i, j)) = [(0, 1), (0, 2), (1, 2)].into_iter().find(|&(i, j)| rel(i, j)) {
            let w = witness_in(&d.cfg, &ms[i], &ms[j])
                .map_err(fail)?
                .ok_or_else(|| TestCaseError::fail("equivalent without witness"))?;
            ensure(w.verifies(&ms[i], &ms[j]), "witness verifies")?;
        }
        Ok(())
    }))
}

/// Numeric results depend only on the seed.
pub fn seed_determinism(cases: u32) -> Result<(), String> {
    let f = to_float_form(&f5_cubic());
    let u = fermat_u1();
    report(runner(cases).run(&any::<u64>(), |seed| {
        let o = LineSearchOptions {
            seed,
            starts_per_chart: 20,
            ..Default::default()
        };
        let a = find_lines_numeric(&f, &o);
        let b = find_lines_numeric(&f, &o);
        match (a, b) {
            (Ok(a), Ok(b)) => ensure(a.lines == b.lines && a.real == b.real, "same lines")?,
            (Err(a), Err(b)) => ensure(a == b, "same error")?,
            _ => return Err(TestCaseError::fail("one run failed")),
        }
        let d = DefinitenessOptions {
            seed,
            directions: 4,
            ascent_steps: 5,
            so_starts: 2,
            dual_steps: 20,
            ..Default::default()
        };
        ensure(is_definite(&u, &d) == is_definite(&u, &d), "same definiteness result")
    }))
}

pub const PROPERTIES: [(&str, fn(u32) -> Result<(), String>); 5] = [
    ("conj involution", conj_involution),
    ("field axioms", field_axioms),
    ("incidence symmetry/degree 10", incidence),
    ("equivalence laws", equivalence_laws),
    ("seed determinism", seed_determinism),
];
