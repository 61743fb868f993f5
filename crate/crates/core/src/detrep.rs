//! Determinantal representations: ℜ-forms built from double-sixes, base
//! points and lines of a pencil, reduction to ℜ-form, equivalence, the
//! adjugate and its twisted cubics, and Picard divisor classes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lineconfig::{fit_two_products, DoubleSix, LineConfiguration};
use crate::linalg::Mat;
use crate::numeric::{gauss_newton, normalize_max, projective_distance, CPoly, C};
use crate::pencil::{det3, Adjugate, LinearPencil};
use crate::poly::{CubicForm, Form, PlaneCubic, QuadraticForm};
use crate::projective::{span_plane, LineH, PlanePointP2};
use crate::scalars::Field;
use crate::surface::{b_index, c_index, C_PAIRS};

/// A zero-diagonal representation whose off-diagonal entries are the
/// tritangent planes `π_ij = span(b_i, a_j)`.
#[derive(Clone, Debug)]
pub struct RFormRep<F> {
    pub pencil: LinearPencil<F>,
    /// The double-six whose upper row gives the columns, when known.
    pub double_six: Option<DoubleSix>,
    /// `(s, t)` with `F = s·π12π23π31 + t·π13π21π32` for the planes
    /// normalized to leading coefficient one.
    pub fit: (F, F),
}

/// `X`, `Y` with `X·M·Y` equal to a target pencil.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceWitness<F> {
    pub x: Mat<F>,
    pub y: Mat<F>,
}

impl<F: Field> EquivalenceWitness<F> {
    pub fn apply(&self, m: &LinearPencil<F>) -> LinearPencil<F> {
        m.transform(&self.x, &self.y)
    }

    pub fn verifies(&self, m: &LinearPencil<F>, target: &LinearPencil<F>) -> bool {
        self.apply(m).approx_eq(target)
    }
}

fn plane_form<F: Field>(coords: &[F]) -> Form<F> {
    Form::linear(coords)
}

/// First coefficient that is not negligible against the largest one.
fn leading<F: Field>(v: &[F]) -> Option<F> {
    let scale = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let cut = if F::is_exact() { 0.0 } else { 1e-6 * scale };
    v.iter().find(|x| !x.is_zero() && x.magnitude() > cut).cloned()
}

const OFF_DIAGONAL: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// Diagonal `D1`, `D2` such that `D1·M·D2` has entries `(2,1), (2,3), (3,1),
/// (3,2)` with leading coefficient one and determinant equal to `target`.
/// `M` must have zero diagonal and nonzero off-diagonal entries.
pub fn normalize_zero_diagonal<F: Field>(
    m: &LinearPencil<F>,
    target: &CubicForm<F>,
) -> Result<(Mat<F>, Mat<F>, LinearPencil<F>)> {
    if !m.has_zero_diagonal() {
        return Err(Error::IrreducibilityViolation("diagonal is not zero".into()));
    }
    let mut kappa = vec![vec![F::zero(); 3]; 3];
    for &(i, j) in &OFF_DIAGONAL {
        kappa[i][j] = leading(&m.entry(i, j)).ok_or_else(|| {
            Error::IrreducibilityViolation(format!("entry ({}, {}) vanishes", i + 1, j + 1))
        })?;
    }
    let c = m
        .det()
        .ratio_to(target)
        .ok_or_else(|| Error::IdentityUnsolvable("determinant is not proportional to F".into()))?;
    let (k21, k23, k31, k32) = (&kappa[1][0], &kappa[1][2], &kappa[2][0], &kappa[2][1]);
    let d2 = c / (k21.clone() * k32 * k23);
    let e1 = F::one() / (d2.clone() * k21);
    let d3 = d2.clone() * k21 / k31;
    let e3 = F::one() / (d2.clone() * k23);
    let e2 = k31.clone() / (d2.clone() * k21 * k32);
    let d1m = Mat::diag(&[F::one(), d2, d3]);
    let d2m = Mat::diag(&[e1, e2, e3]);
    let out = m.transform(&d1m, &d2m);
    Ok((d1m, d2m, out))
}

impl<F: Field> RFormRep<F> {
    /// Wraps a zero-diagonal pencil, recording the two-product fit.
    pub fn from_zero_diagonal(pencil: LinearPencil<F>, double_six: Option<DoubleSix>) -> Result<Self> {
        let norm = |i: usize, j: usize| {
            let e = pencil.entry(i, j);
            let l = leading(&e).ok_or_else(|| Error::IrreducibilityViolation("zero entry".into()))?;
            Ok::<_, Error>(plane_form(&e.iter().map(|x| x.clone() / &l).collect::<Vec<_>>()))
        };
        let p = norm(0, 1)?.mul(&norm(1, 2)?).mul(&norm(2, 0)?);
        let q = norm(0, 2)?.mul(&norm(1, 0)?).mul(&norm(2, 1)?);
        let fit = fit_two_products(&pencil.det(), &p, &q)?;
        Ok(RFormRep {
            pencil,
            double_six,
            fit,
        })
    }

    /// The plane `π_ij` (1-based indices as in the matrix) as stored.
    pub fn pi(&self, i: usize, j: usize) -> Form<F> {
        self.pencil.entry_form(i - 1, j - 1)
    }
}

/// The ℜ-form of a double-six: `π_ij = span(b_i, a_j)` off the diagonal,
/// scaled so that `det = F` with `F` made monic, then put in the canonical
/// diagonal normalization.
pub fn rform_from_double_six<F: Field>(cfg: &LineConfiguration<F>, ds: &DoubleSix) -> Result<RFormRep<F>> {
    if !ds.check(cfg.incidence()) {
        return Err(Error::BadConfiguration(format!("{} is not a double-six", ds.label())));
    }
    let (f, _) = cfg
        .cubic()
        .monic()
        .ok_or_else(|| Error::DegenerateSurface("zero cubic".into()))?;
    let mut pi = vec![vec![Vec::new(); 3]; 3];
    for &(i, j) in &OFF_DIAGONAL {
        let plane = span_plane(cfg.line(ds.lower[i]), cfg.line(ds.upper[j]))?;
        pi[i][j] = plane.coords().to_vec();
    }
    let form = |i: usize, j: usize| plane_form(&pi[i][j]);
    let p = form(0, 1).mul(&form(1, 2)).mul(&form(2, 0));
    let q = form(0, 2).mul(&form(1, 0)).mul(&form(2, 1));
    let (s, t) = fit_two_products(&f, &p, &q)?;
    let mut m = LinearPencil::zero();
    for &(i, j) in &OFF_DIAGONAL {
        let scale = match (i, j) {
            (0, 1) => s.clone(),
            (0, 2) => t.clone(),
            _ => F::one(),
        };
        let v: Vec<F> = pi[i][j].iter().map(|x| x.clone() * &scale).collect();
        m.set_entry(i, j, &v);
    }
    let (_, _, m) = normalize_zero_diagonal(&m, &f)?;
    let mut rep = RFormRep::from_zero_diagonal(m, Some(ds.clone()))?;
    rep.fit = (s, t);
    Ok(rep)
}

/// Ordering key putting coordinate points first.
fn point_key<F: Field>(p: &[F]) -> (usize, usize, String) {
    let zeros = p.iter().filter(|x| x.is_zero()).count();
    let first = p.iter().position(|x| !x.is_zero()).unwrap_or(3);
    let text = p.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(" ");
    (3 - zeros, first, text)
}

fn sort_points<F: Field, T>(v: &mut [(PlanePointP2<F>, T)]) {
    v.sort_by(|a, b| point_key(a.0.coords()).cmp(&point_key(b.0.coords())));
}

/// The four signed maximal minors of `L(x)`, cubics in `x0, x1, x2`.
pub fn l_minors<F: Field>(m: &LinearPencil<F>) -> Vec<PlaneCubic<F>> {
    let l = m.l_matrix();
    (0..4)
        .map(|k| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
            let e: Vec<Vec<Form<F>>> = (0..3).map(|i| cols.iter().map(|&c| l[i][c].clone()).collect()).collect();
            let d = det3(&e);
            if k % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect()
}

/// Numerical common zeros of the minors of `L`, chart by chart.
fn numeric_base_points<F: Field>(m: &LinearPencil<F>) -> Vec<Vec<C>> {
    let minors: Vec<CPoly> = l_minors(m).iter().map(CPoly::from_form).collect();
    let scale = minors.iter().map(|p| p.max_abs()).fold(0.0, f64::max).max(1e-300);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6261_7365);
    let mut found: Vec<Vec<C>> = Vec::new();
    for chart in 0..3 {
        let free: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
        let embed = |u: &[C]| {
            let mut x = vec![C::new(0.0, 0.0); 3];
            x[chart] = C::new(1.0, 0.0);
            x[free[0]] = u[0];
            x[free[1]] = u[1];
            x
        };
        let f = |u: &[C]| {
            let x = embed(u);
            let mut r = Vec::with_capacity(4);
            let mut j = nalgebra::DMatrix::zeros(4, 2);
            for (k, p) in minors.iter().enumerate() {
                let (v, g) = p.eval_grad(&x);
                r.push(v / scale);
                j[(k, 0)] = g[free[0]] / scale;
                j[(k, 1)] = g[free[1]] / scale;
            }
            (r, j)
        };
        for _ in 0..80 {
            let mut g = || -> f64 { StandardNormal.sample(&mut rng) };
            let u0 = [C::new(g(), g()), C::new(g(), g())];
            let (u, rn) = gauss_newton(&f, &u0, 80, 1e-15);
            if rn > 1e-11 {
                continue;
            }
            let x = normalize_max(&embed(&u));
            if !found.iter().any(|y| projective_distance(y, &x) < 1e-6) {
                found.push(x);
            }
        }
    }
    found
}

/// Converts a numerical point to the field: scales the first significant
/// coordinate to one and rounds the rest.
fn field_point<F: Field>(x: &[C]) -> Option<Vec<F>> {
    let mx = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let k = x.iter().position(|v| v.norm() > 1e-7 * mx)?;
    x.iter()
        .map(|v| {
            let y = v / x[k];
            if y.norm() < 1e-9 {
                Some(F::zero())
            } else {
                F::from_complex(y)
            }
        })
        .collect()
}

/// The six points where `L(x)` drops rank, in a fixed order with coordinate
/// points first.
///
/// The points are located numerically and then rounded into the field; for
/// exact fields each is certified by an exact rank computation. This fails
/// with `SolveFailure` when a point has no small-height representative; use
/// [`base_points_on`] when the 27 lines are known.
pub fn base_points<F: Field>(m: &LinearPencil<F>) -> Result<Vec<PlanePointP2<F>>> {
    let approx = numeric_base_points(m);
    let mut out: Vec<(PlanePointP2<F>, ())> = Vec::new();
    for x in &approx {
        let p = field_point::<F>(x)
            .ok_or_else(|| Error::SolveFailure(format!("cannot represent base point {x:?} in the field")))?;
        if m.line_at(&p).is_none() {
            return Err(Error::SolveFailure(format!("base point {x:?} fails certification")));
        }
        out.push((PlanePointP2::new(p)?, ()));
    }
    if out.len() != 6 {
        return Err(Error::SolveFailure(format!("found {} base points, expected 6", out.len())));
    }
    sort_points(&mut out);
    Ok(out.into_iter().map(|(p, _)| p).collect())
}

/// Base points of `M` with the indices of their lines in `cfg`, found by
/// testing each of the 27 lines exactly.
pub fn base_points_on<F: Field>(
    cfg: &LineConfiguration<F>,
    m: &LinearPencil<F>,
) -> Result<Vec<(PlanePointP2<F>, usize)>> {
    let mut out = Vec::new();
    for (k, l) in cfg.lines().iter().enumerate() {
        let [p, q] = l.points();
        let stacked = m.eval(p.coords()).vstack(&m.eval(q.coords()));
        let ns = stacked.nullspace();
        if ns.len() == 1 {
            out.push((PlanePointP2::new(ns[0].clone())?.normalized(), k));
        }
    }
    if out.len() != 6 {
        return Err(Error::SolveFailure(format!("{} lines of the surface are lines of M, expected 6", out.len())));
    }
    sort_points(&mut out);
    Ok(out)
}

/// The six skew lines of `M`, in base-point order.
pub fn lines_of_rep<F: Field>(m: &LinearPencil<F>) -> Result<Vec<LineH<F>>> {
    base_points(m)?
        .iter()
        .map(|p| {
            m.line_at(p.coords())
                .ok_or_else(|| Error::SolveFailure("line over base point degenerate".into()))
        })
        .collect()
}

/// Indices in `cfg` of the six lines of `M`, in base-point order.
pub fn lines_of_rep_in<F: Field>(cfg: &LineConfiguration<F>, m: &LinearPencil<F>) -> Result<[usize; 6]> {
    let v: Vec<usize> = base_points_on(cfg, m)?.into_iter().map(|(_, k)| k).collect();
    Ok(v.try_into().unwrap())
}

/// Runs the reduction with the given first three base points.
///
/// `M' = M·[P1 P2 P3]`, then three left multiplications clear the diagonal
/// one entry at a time, and a final diagonal scaling reaches the canonical
/// normalization. Returns the witness and the ℜ-form.
pub fn reduce_with_points<F: Field>(
    m: &LinearPencil<F>,
    pts: &[Vec<F>],
) -> Result<(EquivalenceWitness<F>, LinearPencil<F>)> {
    let (target, _) = m
        .det()
        .monic()
        .ok_or_else(|| Error::DegenerateSurface("det M vanishes".into()))?;
    let p = Mat::from_fn(3, 3, |i, j| pts[j][i].clone());
    if p.det().is_zero() {
        return Err(Error::IrreducibilityViolation("first three base points are collinear".into()));
    }
    let m0 = m.right_mul(&p);
    let unit = |k: usize| -> Vec<F> { (0..3).map(|i| if i == k { F::one() } else { F::zero() }).collect() };
    let null_of_column = |mm: &LinearPencil<F>, j: usize| -> Result<Vec<F>> {
        let ns = mm.forms_at(&unit(j)).left_nullspace();
        if ns.len() != 1 {
            return Err(Error::IrreducibilityViolation(format!(
                "column {} has {} independent relations",
                j + 1,
                ns.len()
            )));
        }
        Ok(ns[0].clone())
    };

    // A1 = [v; e_j; e_k]
    let v = null_of_column(&m0, 0)?;
    let piv = v.iter().position(|x| !x.is_zero()).unwrap();
    let rest: Vec<usize> = (0..3).filter(|&k| k != piv).collect();
    let a1 = Mat::from_rows(&[v, unit(rest[0]), unit(rest[1])]);
    let m1 = m0.left_mul(&a1);

    // A2 = [e1; w; e_j]
    let w = null_of_column(&m1, 1)?;
    if w[1].is_zero() && w[2].is_zero() {
        return Err(Error::IrreducibilityViolation("row 1 meets column 2 in a zero entry".into()));
    }
    let a2 = [2usize, 1]
        .iter()
        .map(|&k| Mat::from_rows(&[unit(0), w.clone(), unit(k)]))
        .find(|a| !a.det().is_zero())
        .unwrap();
    let m2 = m1.left_mul(&a2);

    // A3 = [e1; e2; u]
    let u = null_of_column(&m2, 2)?;
    if u[2].is_zero() {
        return Err(Error::IrreducibilityViolation("third row cannot be cleared".into()));
    }
    let a3 = Mat::from_rows(&[unit(0), unit(1), u]);
    let m3 = m2.left_mul(&a3);
    for i in 0..3 {
        if !m3.entry(i, i).iter().all(|x| x.is_zero()) {
            return Err(Error::IrreducibilityViolation(format!("diagonal entry {} survived", i + 1)));
        }
    }
    // exact zeros on the diagonal for floats too
    let mut m3 = m3;
    for i in 0..3 {
        m3.set_entry(i, i, &vec![F::zero(); 4]);
    }
    let (d1, d2, r) = normalize_zero_diagonal(&m3, &target)?;
    let x = d1.mul(&a3).mul(&a2).mul(&a1);
    let y = p.mul(&d2);
    Ok((EquivalenceWitness { x, y }, r))
}

/// Reduces `M` to ℜ-form using its first three base points.
pub fn reduce_to_rform<F: Field>(m: &LinearPencil<F>) -> Result<(EquivalenceWitness<F>, RFormRep<F>)> {
    let pts = base_points(m)?;
    let pv: Vec<Vec<F>> = pts[..3].iter().map(|p| p.coords().to_vec()).collect();
    let (w, r) = reduce_with_points(m, &pv)?;
    Ok((w, RFormRep::from_zero_diagonal(r, None)?))
}

/// Same as [`reduce_to_rform`] with base points found from the lines of `cfg`.
pub fn reduce_to_rform_in<F: Field>(
    cfg: &LineConfiguration<F>,
    m: &LinearPencil<F>,
) -> Result<(EquivalenceWitness<F>, RFormRep<F>)> {
    let bp = base_points_on(cfg, m)?;
    let pv: Vec<Vec<F>> = bp[..3].iter().map(|p| p.0.coords().to_vec()).collect();
    let (w, r) = reduce_with_points(m, &pv)?;
    let upper: Vec<usize> = bp.iter().map(|(_, k)| *k).collect();
    let ds = cfg.complete_half(&upper).ok().map(|d| orient(&d, &upper));
    Ok((w, RFormRep::from_zero_diagonal(r, ds)?))
}

/// Rearranges a double-six so its upper row is `upper` in the given order.
fn orient(ds: &DoubleSix, upper: &[usize]) -> DoubleSix {
    let d = if ds.upper.contains(&upper[0]) { ds.clone() } else { ds.swapped() };
    let col = |l: usize| d.upper.iter().position(|&x| x == l).unwrap();
    DoubleSix {
        upper: std::array::from_fn(|i| upper[i]),
        lower: std::array::from_fn(|i| d.lower[col(upper[i])]),
    }
}

fn same_line_set<F: Field>(a: &[LineH<F>], b: &[LineH<F>]) -> bool {
    a.len() == b.len() && a.iter().all(|l| b.iter().any(|m| m.same_as(l)))
}

/// Two representations are equivalent iff they have the same six lines.
pub fn equivalent<F: Field>(m1: &LinearPencil<F>, m2: &LinearPencil<F>) -> Result<bool> {
    Ok(same_line_set(&lines_of_rep(m1)?, &lines_of_rep(m2)?))
}

pub fn equivalent_in<F: Field>(cfg: &LineConfiguration<F>, m1: &LinearPencil<F>, m2: &LinearPencil<F>) -> Result<bool> {
    let mut a = lines_of_rep_in(cfg, m1)?;
    let mut b = lines_of_rep_in(cfg, m2)?;
    a.sort();
    b.sort();
    Ok(a == b)
}

fn compose<F: Field>(
    m1: &LinearPencil<F>,
    p1: &[Vec<F>],
    m2: &LinearPencil<F>,
    p2: &[Vec<F>],
) -> Result<EquivalenceWitness<F>> {
    let (w1, r1) = reduce_with_points(m1, p1)?;
    let (w2, r2) = reduce_with_points(m2, p2)?;
    if !r1.approx_eq(&r2) {
        return Err(Error::SolveFailure("reductions reached different ℜ-forms".into()));
    }
    let x2i = w2.x.inverse().ok_or_else(|| Error::SolveFailure("singular X".into()))?;
    let y2i = w2.y.inverse().ok_or_else(|| Error::SolveFailure("singular Y".into()))?;
    Ok(EquivalenceWitness {
        x: x2i.mul(&w1.x),
        y: w1.y.mul(&y2i),
    })
}

/// `X`, `Y` with `X·M1·Y = M2` when the two are equivalent.
///
/// Both pencils are reduced to the ℜ-form of the same ordered lines and the
/// two reductions are composed.
pub fn witness<F: Field>(m1: &LinearPencil<F>, m2: &LinearPencil<F>) -> Result<Option<EquivalenceWitness<F>>> {
    let b1 = base_points(m1)?;
    let b2 = base_points(m2)?;
    let l1: Vec<LineH<F>> = b1.iter().map(|p| m1.line_at(p.coords()).unwrap()).collect();
    let l2: Vec<LineH<F>> = b2.iter().map(|p| m2.line_at(p.coords()).unwrap()).collect();
    if !same_line_set(&l1, &l2) {
        return Ok(None);
    }
    let p1: Vec<Vec<F>> = b1[..3].iter().map(|p| p.coords().to_vec()).collect();
    let p2: Vec<Vec<F>> = l1[..3]
        .iter()
        .map(|l| {
            let k = l2.iter().position(|m| m.same_as(l)).unwrap();
            b2[k].coords().to_vec()
        })
        .collect();
    compose(m1, &p1, m2, &p2).map(Some)
}

pub fn witness_in<F: Field>(
    cfg: &LineConfiguration<F>,
    m1: &LinearPencil<F>,
    m2: &LinearPencil<F>,
) -> Result<Option<EquivalenceWitness<F>>> {
    let b1 = base_points_on(cfg, m1)?;
    let b2 = base_points_on(cfg, m2)?;
    let mut s1: Vec<usize> = b1.iter().map(|x| x.1).collect();
    let mut s2: Vec<usize> = b2.iter().map(|x| x.1).collect();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let p1: Vec<Vec<F>> = b1[..3].iter().map(|p| p.0.coords().to_vec()).collect();
    let p2: Vec<Vec<F>> = b1[..3]
        .iter()
        .map(|(_, k)| b2.iter().find(|x| x.1 == *k).unwrap().0.coords().to_vec())
        .collect();
    compose(m1, &p1, m2, &p2).map(Some)
}

/// One ℜ-form for each of the 72 skew sixes: every double-six in catalog
/// order, upper row first, then lower.
pub fn all_representations<F: Field>(cfg: &LineConfiguration<F>) -> Result<Vec<RFormRep<F>>> {
    let ds = cfg.double_sixes()?;
    let sides: Vec<DoubleSix> = ds.iter().flat_map(|d| [d.clone(), d.swapped()]).collect();
    sides.par_iter().map(|d| rform_from_double_six(cfg, d)).collect()
}

/// `adj M`, with `M·adj M = det M·Id`.
pub fn adjugate<F: Field>(m: &LinearPencil<F>) -> Adjugate<F> {
    m.adjugate()
}

/// The columns of `adj M` and their divisor class `5L − 2ΣA_i`.
#[derive(Clone, Debug)]
pub struct TwistedCubicSystem<F> {
    pub columns: Vec<Vec<QuadraticForm<F>>>,
    pub class: DivisorClass,
}

pub fn twisted_cubic_system<F: Field>(m: &LinearPencil<F>) -> TwistedCubicSystem<F> {
    let adj = m.adjugate();
    TwistedCubicSystem {
        columns: (0..3).map(|j| adj.column(j)).collect(),
        class: DivisorClass::new(5, [2; 6]),
    }
}

/// Points `s·p + t·q` on a line for a few fixed `(s, t)`.
pub fn sample_line_points<F: Field>(l: &LineH<F>, n: usize) -> Vec<Vec<F>> {
    let [p, q] = l.points();
    const ST: [(i64, i64); 6] = [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3), (3, -1)];
    ST.iter()
        .take(n)
        .map(|&(s, t)| {
            p.coords()
                .iter()
                .zip(q.coords())
                .map(|(a, b)| F::from_i64(s) * a + F::from_i64(t) * b)
                .collect()
        })
        .collect()
}

/// The 15 members `b_i + b_j + c_ij` of the twisted cubic system of `M`,
/// as combinations `v` of adjugate columns with `adj(z)·v = 0` along the
/// three lines. Labels refer to the double-six whose upper row is the lines
/// of `M` in base-point order.
pub fn degenerate_twisted_cubics<F: Field>(
    cfg: &LineConfiguration<F>,
    m: &LinearPencil<F>,
) -> Result<Vec<((usize, usize), Vec<F>)>> {
    let six = lines_of_rep_in(cfg, m)?;
    let perm = cfg.relabel_permutation(&six)?;
    let adj = m.adjugate();
    let mut out = Vec::new();
    for &(i, j) in &C_PAIRS {
        let mut rows = Vec::new();
        for k in [b_index(i), b_index(j), c_index(i, j)] {
            for z in sample_line_points(cfg.line(perm[k]), 4) {
                rows.extend(adj.eval(&z).rows_vec());
            }
        }
        let ns = Mat::from_rows(&rows).nullspace();
        if ns.len() != 1 {
            return Err(Error::BadConfiguration(format!(
                "b{} + b{} + c{}{} is not cut by one member",
                i + 1,
                j + 1,
                i + 1,
                j + 1
            )));
        }
        out.push(((i, j), ns[0].clone()));
    }
    Ok(out)
}

/// A divisor class `αL − Σ β_i A_i` on the blown-up plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub alpha: i64,
    pub beta: [i64; 6],
}

impl DivisorClass {
    pub fn new(alpha: i64, beta: [i64; 6]) -> Self {
        DivisorClass { alpha, beta }
    }

    /// `d = 3α − Σβ_i`.
    pub fn degree(&self) -> i64 {
        3 * self.alpha - self.beta.iter().sum::<i64>()
    }

    /// `D² = α² − Σβ_i²`.
    pub fn self_intersection(&self) -> i64 {
        self.alpha * self.alpha - self.beta.iter().map(|b| b * b).sum::<i64>()
    }

    /// Arithmetic genus from `D² = 2(p_a − 1) + d`. For integer classes
    /// `D² − d` is always even, so the error is a guard only.
    pub fn genus(&self) -> Result<i64> {
        let t = self.self_intersection() - self.degree();
        if t % 2 != 0 {
            return Err(Error::NonIntegerGenus);
        }
        Ok(t / 2 + 1)
    }

    /// The β values sorted in decreasing order.
    pub fn pattern(&self) -> [i64; 6] {
        let mut b = self.beta;
        b.sort_by(|x, y| y.cmp(x));
        b
    }
}

/// All classes with `d = 3` and `p_a = 0`; `1 ≤ α ≤ 5` is forced by the
/// Schwarz inequality. Sorted by `α`, then by `β` decreasing.
pub fn enumerate_72_classes() -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for alpha in 1..=5i64 {
        let mut beta = [0i64; 6];
        let bound = ((alpha * alpha - 1) as f64).sqrt() as i64;
        fn rec(k: usize, beta: &mut [i64; 6], alpha: i64, bound: i64, out: &mut Vec<DivisorClass>) {
            if k == 6 {
                let d = DivisorClass::new(alpha, *beta);
                if d.degree() == 3 && d.genus() == Ok(0) {
                    out.push(d);
                }
                return;
            }
            for b in -bound..=bound {
                beta[k] = b;
                rec(k + 1, beta, alpha, bound, out);
            }
        }
        rec(0, &mut beta, alpha, bound, &mut out);
    }
    out.sort_by(|a, b| a.alpha.cmp(&b.alpha).then(b.beta.cmp(&a.beta)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{fermat_m, fermat_m_double_prime, fermat_m_prime};
    use crate::scalars::Eisenstein;

    #[test]
    fn divisor_examples() {
        let tc = DivisorClass::new(5, [2; 6]);
        assert_eq!((tc.degree(), tc.genus().unwrap()), (3, 0));
        let line = DivisorClass::new(0, [-1, 0, 0, 0, 0, 0]);
        assert_eq!(line.degree(), 1);
        let l = DivisorClass::new(1, [0; 6]);
        assert_eq!((l.degree(), l.genus().unwrap()), (3, 0));
        // D² − d = α(α−3) − Σβ(β−1) is always even
        for d in enumerate_72_classes() {
            assert!(d.genus().is_ok());
        }
        assert_eq!(DivisorClass::new(1, [1, 0, 0, 0, 0, 0]).genus(), Ok(0));
    }

    #[test]
    fn seventy_two_classes() {
        let cls = enumerate_72_classes();
        assert_eq!(cls.len(), 72);
        let by_alpha: Vec<usize> = (1..=5).map(|a| cls.iter().filter(|c| c.alpha == a).count()).collect();
        assert_eq!(by_alpha, vec![1, 20, 30, 20, 1]);
        assert!(cls.iter().filter(|c| c.alpha == 3).all(|c| c.pattern() == [2, 1, 1, 1, 1, 0]));
        assert!(cls.iter().filter(|c| c.alpha == 2).all(|c| c.pattern() == [1, 1, 1, 0, 0, 0]));
        assert_eq!(cls, enumerate_72_classes());
    }

    #[test]
    fn fermat_base_points_standalone() {
        let bp = base_points(&fermat_m()).unwrap();
        assert_eq!(bp.len(), 6);
        let e = |v: [i64; 3]| PlanePointP2::<Eisenstein>::from_i64(&v);
        assert_eq!(bp[0], e([1, 0, 0]));
        assert_eq!(bp[1], e([0, 1, 0]));
        assert_eq!(bp[2], e([0, 0, 1]));
    }

    #[test]
    fn fermat_equivalences() {
        assert!(equivalent(&fermat_m(), &fermat_m_double_prime()).unwrap());
        assert!(!equivalent(&fermat_m(), &fermat_m_prime()).unwrap());
        let w = witness(&fermat_m(), &fermat_m_double_prime()).unwrap().unwrap();
        assert!(w.verifies(&fermat_m(), &fermat_m_double_prime()));
    }

    #[test]
    fn reduction_clears_diagonal() {
        let m = fermat_m();
        let (w, r) = reduce_to_rform(&m).unwrap();
        assert!(r.pencil.has_zero_diagonal());
        assert!(w.verifies(&m, &r.pencil));
        assert!(!w.x.det().is_zero() && !w.y.det().is_zero());
    }
}
