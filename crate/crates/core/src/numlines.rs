//! Floating-point search for the 27 lines of a cubic surface given only by
//! its equation, and the real tritangent planes through a real line.

use nalgebra::{DMatrix, Matrix3};
use pathfinding::prelude::{kuhn_munkres_min, Matrix as PMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{gauss_newton, poly_roots, CPoly, C};
use crate::poly::{CubicForm, Form};
use crate::projective::{LineH, PlaneH};
use crate::scalars::{ComplexF, Field};
use crate::surface::smoothness_check;

/// A line found in chart `(i, j)`: it is spanned by
/// `e_i + u0·e_k + u1·e_l` and `e_j + u2·e_k + u3·e_l`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineChartSolution {
    pub chart: (usize, usize),
    pub params: [(f64, f64); 4],
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct LineSearchOptions {
    pub seed: u64,
    pub tol: f64,
    pub starts_per_chart: usize,
}

impl Default for LineSearchOptions {
    fn default() -> Self {
        LineSearchOptions {
            seed: 0,
            tol: 1e-8,
            starts_per_chart: 2000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NumericLines {
    pub lines: Vec<LineH<ComplexF>>,
    pub real: Vec<bool>,
    pub solutions: Vec<LineChartSolution>,
    /// Largest normalized |F| over the five certification points of each line.
    pub max_residual: f64,
}

pub const CHARTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

const SAMPLE_ST: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];
const CERT_ST: [(f64, f64); 5] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0), (1.0, 2.0)];

fn chart_points(chart: (usize, usize), u: &[C]) -> ([C; 4], [C; 4]) {
    let (i, j) = chart;
    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    let mut p = [C::new(0.0, 0.0); 4];
    let mut q = [C::new(0.0, 0.0); 4];
    p[i] = C::new(1.0, 0.0);
    q[j] = C::new(1.0, 0.0);
    p[rest[0]] = u[0];
    p[rest[1]] = u[1];
    q[rest[0]] = u[2];
    q[rest[1]] = u[3];
    (p, q)
}

fn chart_line(chart: (usize, usize), u: &[C]) -> LineH<ComplexF> {
    let (i, j) = chart;
    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    // z_k = u0·z_i + u2·z_j, z_l = u1·z_i + u3·z_j
    let mut f1 = vec![ComplexF::zero(); 4];
    let mut f2 = vec![ComplexF::zero(); 4];
    f1[rest[0]] = ComplexF::one();
    f1[i] = ComplexF::from_c64(-u[0]);
    f1[j] = ComplexF::from_c64(-u[2]);
    f2[rest[1]] = ComplexF::one();
    f2[i] = ComplexF::from_c64(-u[1]);
    f2[j] = ComplexF::from_c64(-u[3]);
    LineH::from_forms(&[f1, f2]).expect("chart forms are independent")
}

fn unit(v: [C; 4]) -> [C; 4] {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

/// Largest |F| at five points of the line, relative to the coefficients of F.
fn line_residual(f: &CPoly, l: &LineH<ComplexF>) -> f64 {
    let pts = l.points();
    let p: Vec<C> = pts[0].coords().iter().map(|x| x.z).collect();
    let q: Vec<C> = pts[1].coords().iter().map(|x| x.z).collect();
    let scale = f.max_abs().max(1e-300);
    CERT_ST
        .iter()
        .map(|&(s, t)| {
            let x = unit(std::array::from_fn(|k| p[k] * s + q[k] * t));
            f.eval(&x).norm() / scale
        })
        .fold(0.0, f64::max)
}

fn solve_chart(f: &CPoly, chart: (usize, usize), seed: u64, starts: usize) -> Vec<(Vec<C>, f64)> {
    let scale = f.max_abs().max(1e-300);
    let system = |u: &[C]| {
        let (p, q) = chart_points(chart, u);
        let (i, j) = chart;
        let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
        let mut r = Vec::with_capacity(4);
        let mut jac = DMatrix::zeros(4, 4);
        for (row, &(s, t)) in SAMPLE_ST.iter().enumerate() {
            let x: Vec<C> = (0..4).map(|k| p[k] * s + q[k] * t).collect();
            let (v, g) = f.eval_grad(&x);
            r.push(v / scale);
            jac[(row, 0)] = g[rest[0]] * s / scale;
            jac[(row, 1)] = g[rest[1]] * s / scale;
            jac[(row, 2)] = g[rest[0]] * t / scale;
            jac[(row, 3)] = g[rest[1]] * t / scale;
        }
        (r, jac)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(Vec<C>, f64)> = Vec::new();
    for _ in 0..starts {
        let mut g = || -> f64 { StandardNormal.sample(&mut rng) };
        let u0: Vec<C> = (0..4).map(|_| C::new(g(), g())).collect();
        let (u, rn) = gauss_newton(&system, &u0, 100, 1e-15);
        if rn > 1e-11 || u.iter().any(|x| !x.is_finite() || x.norm() > 1e6) {
            continue;
        }
        if !found
            .iter()
            .any(|(v, _)| v.iter().zip(&u).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < 1e-7)
        {
            found.push((u, rn));
            if found.len() == 27 {
                break;
            }
        }
    }
    found
}

/// Smallest subspace distance between `l` and a real line, via the rank of
/// the forms stacked with their conjugates.
fn real_defect(l: &LineH<ComplexF>) -> f64 {
    l.distance(&l.conj())
}

/// The real line closest to `l`: the top two right singular vectors of the
/// real and imaginary parts of its forms.
fn snap_real(l: &LineH<ComplexF>) -> LineH<ComplexF> {
    let m = l.matrix();
    let a = DMatrix::<f64>::from_fn(4, 4, |r, c| {
        let z = m[(r % 2, c)].z;
        if r < 2 {
            z.re
        } else {
            z.im
        }
    });
    let svd = a.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut idx: Vec<usize> = (0..4).collect();
    idx.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let rows: Vec<Vec<ComplexF>> = idx[..2]
        .iter()
        .map(|&k| (0..4).map(|c| ComplexF::new(vt[(k, c)], 0.0)).collect())
        .collect();
    LineH::from_forms(&rows).expect("two singular vectors")
}

fn sort_key(l: &LineH<ComplexF>, real: bool) -> (bool, Vec<i64>) {
    let mut key = Vec::with_capacity(16);
    for f in l.forms() {
        for x in f {
            key.push((x.z.re * 1e6).round() as i64);
            key.push((x.z.im * 1e6).round() as i64);
        }
    }
    (!real, key)
}

/// All 27 lines of a smooth cubic, found by seeded multistart damped Newton
/// in the six affine charts of the Grassmannian.
///
/// Lines are deduplicated across charts, certified at five points, real ones
/// are snapped to real forms and conjugate pairs are made exactly conjugate.
pub fn find_lines_numeric(f: &CubicForm<ComplexF>, opts: &LineSearchOptions) -> Result<NumericLines> {
    let sm = smoothness_check(f);
    if !sm.smooth {
        return Err(Error::DegenerateSurface(format!(
            "partial derivatives have a common zero (margin {:?})",
            sm.numeric_margin
        )));
    }
    let cp = CPoly::from_form(f);
    let per_chart: Vec<Vec<(Vec<C>, f64)>> = CHARTS
        .par_iter()
        .enumerate()
        .map(|(k, &chart)| solve_chart(&cp, chart, opts.seed ^ (0x6c69_6e65 + k as u64), opts.starts_per_chart))
        .collect();
    let merge_dist = 10.0 * opts.tol;
    let mut lines: Vec<LineH<ComplexF>> = Vec::new();
    let mut solutions = Vec::new();
    for (k, sols) in per_chart.iter().enumerate() {
        for (u, rn) in sols {
            let l = chart_line(CHARTS[k], u);
            if lines.iter().any(|m| m.distance(&l) < merge_dist.max(1e-7)) {
                continue;
            }
            lines.push(l);
            solutions.push(LineChartSolution {
                chart: CHARTS[k],
                params: std::array::from_fn(|i| (u[i].re, u[i].im)),
                residual: *rn,
            });
        }
    }
    let mut max_residual: f64 = 0.0;
    let mut keep = Vec::new();
    for (l, s) in lines.into_iter().zip(solutions) {
        let r = line_residual(&cp, &l);
        if r < opts.tol {
            max_residual = max_residual.max(r);
            keep.push((l, s));
        }
    }
    if keep.len() != 27 {
        return Err(Error::IncompleteEnumeration {
            found: keep.len(),
            expected: 27,
        });
    }
    let (mut lines, solutions): (Vec<_>, Vec<_>) = keep.into_iter().unzip();
    let real_tol = 1e3 * opts.tol;
    let mut real: Vec<bool> = lines.iter().map(|l| real_defect(l) < real_tol).collect();
    for k in 0..27 {
        if real[k] {
            lines[k] = snap_real(&lines[k]);
        }
    }
    // make conjugate pairs exact
    for k in 0..27 {
        if real[k] {
            continue;
        }
        let c = lines[k].conj();
        let partner = (0..27)
            .filter(|&m| m != k && !real[m])
            .min_by(|&a, &b| lines[a].distance(&c).total_cmp(&lines[b].distance(&c)));
        if let Some(m) = partner {
            if m > k && lines[m].distance(&c) < real_tol {
                lines[m] = c;
            }
        }
    }
    let mut order: Vec<usize> = (0..27).collect();
    order.sort_by_key(|&k| sort_key(&lines[k], real[k]));
    let lines: Vec<LineH<ComplexF>> = order.iter().map(|&k| lines[k].clone()).collect();
    real = order.iter().map(|&k| real[k]).collect();
    let solutions = order.iter().map(|&k| solutions[k].clone()).collect();
    Ok(NumericLines {
        lines,
        real,
        solutions,
        max_residual,
    })
}

/// Converts a line over any field to complex floats.
pub fn to_float_line<F: Field>(l: &LineH<F>) -> LineH<ComplexF> {
    let rows: Vec<Vec<ComplexF>> = l
        .forms()
        .iter()
        .map(|f| f.iter().map(|x| ComplexF::from_c64(x.to_complex())).collect())
        .collect();
    LineH::from_forms(&rows).expect("rank is preserved")
}

/// Optimal one-to-one matching of two line lists by projector distance.
/// Returns `perm` with `a[i] ↔ b[perm[i]]` and the largest matched distance.
pub fn match_lines(a: &[LineH<ComplexF>], b: &[LineH<ComplexF>]) -> (Vec<usize>, f64) {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let d: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| x.distance(y)).collect()).collect();
    let weights = PMatrix::from_fn(n, n, |(i, j)| (d[i][j] * 1e12).round() as i64);
    let (_, perm) = kuhn_munkres_min(&weights);
    let worst = (0..n).map(|i| d[i][perm[i]]).fold(0.0, f64::max);
    (perm, worst)
}

/// A tritangent plane through a given real line.
#[derive(Clone, Debug)]
pub struct PlaneThroughLine {
    pub plane: PlaneH<ComplexF>,
    /// The residual conic splits into two complex conjugate lines.
    pub conjugate_pair: bool,
    /// Eigenvalues of the residual conic, by increasing absolute value.
    pub conic_eigenvalues: [f64; 3],
}

/// Real basis of the pencil of planes through a real line, two points of the
/// line, and the dual points `v1`, `v2` with `P_a(v_b) = δ_ab`.
struct PlanePencil {
    planes: [[f64; 4]; 2],
    p: [f64; 4],
    q: [f64; 4],
    v: [[f64; 4]; 2],
}

impl PlanePencil {
    fn new(r: &LineH<ComplexF>) -> Self {
        let m = r.matrix();
        let planes: [[f64; 4]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)].z.re));
        let a = nalgebra::Matrix2x4::from_fn(|i, j| planes[i][j]);
        let aat_inv = (a * a.transpose()).try_inverse().expect("independent planes");
        let pinv = a.transpose() * aat_inv;
        let v = std::array::from_fn(|b| std::array::from_fn(|k| pinv[(k, b)]));
        // the kernel is spanned by the two smallest right singular vectors
        let full = nalgebra::Matrix4::from_fn(|i, j| if i < 2 { planes[i][j] } else { 0.0 });
        let svd4 = full.svd(false, true);
        let vt4 = svd4.v_t.unwrap();
        let mut idx: Vec<usize> = (0..4).collect();
        idx.sort_by(|&x, &y| svd4.singular_values[x].total_cmp(&svd4.singular_values[y]));
        let p = std::array::from_fn(|k| vt4[(idx[0], k)]);
        let q = std::array::from_fn(|k| vt4[(idx[1], k)]);
        PlanePencil { planes, p, q, v }
    }

    fn plane(&self, lam: f64, mu: f64) -> [f64; 4] {
        std::array::from_fn(|k| lam * self.planes[0][k] + mu * self.planes[1][k])
    }

    /// The residual conic of `F` on the plane `λP1 + μP2`, in coordinates
    /// `a·p + b·q + c·w` with `w = μ·v1 − λ·v2`.
    fn conic(&self, f: &Form<ComplexF>, lam: f64, mu: f64) -> Matrix3<f64> {
        let w: [f64; 4] = std::array::from_fn(|k| mu * self.v[0][k] - lam * self.v[1][k]);
        let imgs: Vec<Form<ComplexF>> = (0..4)
            .map(|k| {
                Form::linear(&[
                    ComplexF::new(self.p[k], 0.0),
                    ComplexF::new(self.q[k], 0.0),
                    ComplexF::new(w[k], 0.0),
                ])
            })
            .collect();
        let g = f.substitute(&imgs);
        let co = |ea: u32, eb: u32, ec: u32| g.coeff(&[ea, eb, ec + 1]).z.re;
        Matrix3::new(
            co(2, 0, 0),
            co(1, 1, 0) / 2.0,
            co(1, 0, 1) / 2.0,
            co(1, 1, 0) / 2.0,
            co(0, 2, 0),
            co(0, 1, 1) / 2.0,
            co(1, 0, 1) / 2.0,
            co(0, 1, 1) / 2.0,
            co(0, 0, 2),
        )
    }
}

fn normalize_plane(v: [f64; 4]) -> [f64; 4] {
    let mx = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let k = v.iter().position(|x| x.abs() > 1e-8 * mx).unwrap_or(0);
    v.map(|x| x / v[k])
}

/// All real tritangent planes through the real line `r` of `F`.
///
/// A plane `λP1 + μP2` through `r` cuts `F` in `r` plus a conic; it is
/// tritangent exactly when the conic is degenerate, a quintic condition on
/// `(λ : μ)`. Real roots are found from the interpolated quintic and
/// refined by Newton on the determinant.
pub fn tritangent_planes_through(f: &CubicForm<ComplexF>, r: &LineH<ComplexF>) -> Vec<PlaneThroughLine> {
    let pp = PlanePencil::new(r);
    let detf = |lam: f64| pp.conic(f, lam, 1.0).determinant();
    // interpolate the quintic det(λ, 1) at Chebyshev nodes in [-4, 4]
    let nodes: Vec<f64> = (0..6)
        .map(|k| 4.0 * ((2 * k + 1) as f64 * std::f64::consts::PI / 12.0).cos())
        .collect();
    let vals: Vec<f64> = nodes.iter().map(|&x| detf(x)).collect();
    let vand = nalgebra::DMatrix::<f64>::from_fn(6, 6, |i, j| nodes[i].powi(j as i32));
    let coef = vand
        .lu()
        .solve(&nalgebra::DVector::from_vec(vals))
        .expect("Chebyshev nodes are distinct");
    let ccoef: Vec<C> = coef.iter().map(|&x| C::new(x, 0.0)).collect();
    let cmax = coef.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut params: Vec<(f64, f64)> = Vec::new();
    for z in poly_roots(&ccoef) {
        if z.im.abs() > 1e-6 * z.norm().max(1.0) {
            continue;
        }
        // Newton with a numerical derivative on the true determinant
        let mut x = z.re;
        for _ in 0..30 {
            let h = 1e-6 * x.abs().max(1.0);
            let d = (detf(x + h) - detf(x - h)) / (2.0 * h);
            if d == 0.0 {
                break;
            }
            let step = detf(x) / d;
            x -= step;
            if step.abs() < 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        params.push((x, 1.0));
    }
    if coef[5].abs() < 1e-10 * cmax {
        params.push((1.0, 0.0));
    }
    let mut out: Vec<PlaneThroughLine> = Vec::new();
    for (lam, mu) in params {
        let plane = normalize_plane(pp.plane(lam, mu));
        if out
            .iter()
            .any(|o| o.plane.coords().iter().zip(&plane).all(|(a, b)| (a.z.re - b).abs() < 1e-7))
        {
            continue;
        }
        let conic = pp.conic(f, lam, mu);
        let mut ev: Vec<f64> = conic.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        let conjugate_pair = ev[1] * ev[2] > 0.0;
        out.push(PlaneThroughLine {
            plane: PlaneH::new(plane.iter().map(|&x| ComplexF::new(x, 0.0)).collect()).unwrap(),
            conjugate_pair,
            conic_eigenvalues: [ev[0], ev[1], ev[2]],
        });
    }
    out
}

/// The real tritangent planes through `r` whose other two lines are complex
/// conjugate.
pub fn real_tritangents_through(f: &CubicForm<ComplexF>, r: &LineH<ComplexF>) -> Vec<PlaneH<ComplexF>> {
    tritangent_planes_through(f, r)
        .into_iter()
        .filter(|p| p.conjugate_pair)
        .map(|p| p.plane)
        .collect()
}

/// Largest coefficient difference between two planes after scaling each so
/// its first significant coefficient is one.
pub fn plane_distance(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let (x, y) = (normalize_plane(*a), normalize_plane(*b));
    x.iter().zip(&y).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

pub fn plane_to_f64(p: &PlaneH<ComplexF>) -> [f64; 4] {
    std::array::from_fn(|k| p.coords()[k].z.re)
}
