//! Definiteness of self-adjoint pencils and their self-orthogonal vectors.
//!
//! All searches run in floating point on the four coefficient matrices.
//! Certificates are checked by substitution before they are returned.

use nalgebra::{DMatrix, DVector, Matrix3, Matrix4, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{levenberg_marquardt, C};
use crate::pencil::LinearPencil;
use crate::scalars::Field;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DefinitenessOptions {
    pub seed: u64,
    /// Random unit directions in ℝ⁴ for the λ_min search.
    pub directions: usize,
    /// Supergradient steps per direction.
    pub ascent_steps: usize,
    /// Multistart count per chart for self-orthogonal vectors.
    pub so_starts: usize,
    /// Box budget of the branch-and-bound nonexistence proof.
    pub max_boxes: usize,
    /// Steps of the dual (witness pattern) search.
    pub dual_steps: usize,
    pub tol: f64,
}

impl Default for DefinitenessOptions {
    fn default() -> Self {
        DefinitenessOptions {
            seed: 0,
            directions: 256,
            ascent_steps: 50,
            so_starts: 64,
            max_boxes: 4_000_000,
            dual_steps: 4000,
            tol: 1e-9,
        }
    }
}

/// A complex vector as `[re, im]` pairs.
pub type CVec = Vec<[f64; 2]>;

fn cvec(v: &[C]) -> CVec {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum IndefiniteCertificate {
    /// `h*·Uᵢ·h = 0` for all i.
    SelfOrthogonalVector { h: CVec, residual: f64 },
    /// The second elementary symmetric function of the eigenvalues of `U(z)`
    /// is `zᵀ·G·z` with `G ⪯ 0`, so no `U(z)` has three eigenvalues of one
    /// sign.
    NegativeE2Gram { gram: [[f64; 4]; 4], eigenvalues: [f64; 4] },
    /// Points `h_k` with weights `w_k > 0` and `Σ w_k·h_k*·Uᵢ·h_k = 0` for all
    /// i; any `U(c) ≻ 0` would make the sum positive.
    WitnessPointPattern { points: Vec<CVec>, weights: Vec<f64>, residual: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DefinitenessResult {
    /// `Σ cᵢ·Uᵢ` has all eigenvalues at least `margin > 0` (with `|c| = 1`).
    Definite { c: [f64; 4], margin: f64, eigenvalues: [f64; 3] },
    Indefinite { certificate: IndefiniteCertificate },
    Unknown {
        best_lambda_min: f64,
        best_dual_lambda_min: Option<f64>,
        directions: usize,
        ascent_steps: usize,
    },
}

impl DefinitenessResult {
    pub fn is_definite(&self) -> bool {
        matches!(self, DefinitenessResult::Definite { .. })
    }
    pub fn is_indefinite(&self) -> bool {
        matches!(self, DefinitenessResult::Indefinite { .. })
    }
}

type M3 = Matrix3<C>;

fn coeff_matrices<F: Field>(u: &LinearPencil<F>) -> [M3; 4] {
    std::array::from_fn(|k| {
        let m = u.coeff(k);
        let a = M3::from_fn(|i, j| m[(i, j)].to_complex());
        (a + a.adjoint()) * C::new(0.5, 0.0)
    })
}

fn combo(us: &[M3; 4], c: &[f64]) -> M3 {
    let mut m = M3::zeros();
    for k in 0..4 {
        m += us[k] * C::new(c[k], 0.0);
    }
    m
}

fn scale_of(us: &[M3; 4]) -> f64 {
    us.iter().map(|m| m.iter().map(|x| x.norm()).fold(0.0, f64::max)).fold(0.0, f64::max).max(1e-300)
}

/// Ascending eigenvalues and the eigenvector of the smallest.
fn eig_min(m: &M3) -> (Vector3<f64>, Vector3<C>) {
    let e = m.symmetric_eigen();
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let ev = Vector3::new(e.eigenvalues[idx[0]], e.eigenvalues[idx[1]], e.eigenvalues[idx[2]]);
    (ev, e.eigenvectors.column(idx[0]).into_owned())
}

fn quad(m: &M3, h: &Vector3<C>) -> f64 {
    (h.adjoint() * m * h)[(0, 0)].re
}

/// Maximizes `λ_min(Σ cᵢUᵢ)` over the unit ball of ℝ⁴ by projected
/// supergradient ascent from random directions. Returns the best unit `c`
/// and its value.
fn max_lambda_min(us: &[M3; 4], opts: &DefinitenessOptions) -> ([f64; 4], f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6465_6669);
    let scale = scale_of(us);
    let mut best = ([1.0, 0.0, 0.0, 0.0], f64::NEG_INFINITY);
    for _ in 0..opts.directions {
        let mut c: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        c.iter_mut().for_each(|x| *x /= n);
        for step in 0..=opts.ascent_steps {
            let (ev, v) = eig_min(&combo(us, &c));
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 && ev[0] / n > best.1 {
                best = (c.map(|x| x / n), ev[0] / n);
            }
            if step == opts.ascent_steps {
                break;
            }
            let g: [f64; 4] = std::array::from_fn(|k| quad(&us[k], &v));
            let gn = g.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
            let eta = 0.5 / (1.0 + step as f64).sqrt();
            for k in 0..4 {
                c[k] += eta * g[k] / gn;
            }
            let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1.0 {
                c.iter_mut().for_each(|x| *x /= n);
            }
        }
    }
    (best.0, best.1 / scale)
}

/// Gram matrix of `e2(U(z)) = ½((tr U)² − tr U²)` as a quadratic form in z.
pub fn e2_gram(us: &[M3; 4]) -> [[f64; 4]; 4] {
    std::array::from_fn(|k| {
        std::array::from_fn(|l| 0.5 * (us[k].trace() * us[l].trace() - (us[k] * us[l]).trace()).re)
    })
}

fn e2_certificate(us: &[M3; 4], tol: f64) -> Option<IndefiniteCertificate> {
    let g = e2_gram(us);
    let m = Matrix4::from_fn(|i, j| g[i][j]);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
    if ev[3] <= tol * scale {
        Some(IndefiniteCertificate::NegativeE2Gram {
            gram: g,
            eigenvalues: [ev[0], ev[1], ev[2], ev[3]],
        })
    } else {
        None
    }
}

/// Real basis of hermitean 3×3 matrices.
fn herm_basis() -> Vec<M3> {
    let mut b = Vec::with_capacity(9);
    for k in 0..3 {
        let mut m = M3::zeros();
        m[(k, k)] = C::new(1.0, 0.0);
        b.push(m);
    }
    for (k, l) in [(0, 1), (0, 2), (1, 2)] {
        let mut m = M3::zeros();
        m[(k, l)] = C::new(1.0, 0.0);
        m[(l, k)] = C::new(1.0, 0.0);
        b.push(m);
        let mut m = M3::zeros();
        m[(k, l)] = C::new(0.0, 1.0);
        m[(l, k)] = C::new(0.0, -1.0);
        b.push(m);
    }
    b
}

/// Searches `Z ⪰ 0` with `tr Z = 1` and `tr(Uᵢ·Z) = 0`. Returns the best
/// matrix found and its smallest eigenvalue.
fn dual_search(us: &[M3; 4], steps: usize) -> Option<(M3, f64)> {
    let basis = herm_basis();
    let mut a = DMatrix::<f64>::zeros(5, 9);
    for (p, b) in basis.iter().enumerate() {
        for k in 0..4 {
            a[(k, p)] = (us[k] * b).trace().re;
        }
        a[(4, p)] = b.trace().re;
    }
    // padded to 9×9 so the SVD returns the full nullspace
    let a = a.insert_rows(5, 4, 0.0);
    let mut rhs = DVector::<f64>::zeros(9);
    rhs[4] = 1.0;
    let svd = a.clone().svd(true, true);
    let t0 = svd.solve(&rhs, 1e-12).ok()?;
    if (&a * &t0 - &rhs).norm() > 1e-9 {
        return None;
    }
    let vt = svd.v_t.as_ref()?;
    let smax = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|s| **s > 1e-10 * smax).count();
    let mut order: Vec<usize> = (0..9).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let null: Vec<DVector<f64>> = order[rank..].iter().map(|&r| vt.row(r).transpose()).collect();
    let to_m = |t: &DVector<f64>| -> M3 {
        let mut m = M3::zeros();
        for (p, b) in basis.iter().enumerate() {
            m += b * C::new(t[p], 0.0);
        }
        m
    };
    let z0 = to_m(&t0);
    let ns: Vec<M3> = null.iter().map(to_m).collect();
    let mut s = vec![0.0; ns.len()];
    let build = |s: &[f64]| {
        let mut z = z0;
        for (k, n) in ns.iter().enumerate() {
            z += n * C::new(s[k], 0.0);
        }
        z
    };
    let mut best = (z0, eig_min(&z0).0[0]);
    for step in 0..steps {
        let z = build(&s);
        let (ev, v) = eig_min(&z);
        if ev[0] > best.1 {
            best = (z, ev[0]);
        }
        if best.1 > 1e-4 {
            break;
        }
        let g: Vec<f64> = ns.iter().map(|n| quad(n, &v)).collect();
        let gn = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if gn < 1e-300 {
            break;
        }
        let eta = 0.5 / (1.0 + step as f64).sqrt();
        for k in 0..s.len() {
            s[k] += eta * g[k] / gn;
        }
    }
    Some(best)
}

fn pattern_certificate(us: &[M3; 4], z: &M3, tol: f64) -> Option<IndefiniteCertificate> {
    let e = z.symmetric_eigen();
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut zz = M3::zeros();
    for k in 0..3 {
        let w = e.eigenvalues[k];
        if w < -tol {
            return None;
        }
        if w > tol {
            let v = e.eigenvectors.column(k).into_owned();
            zz += v * v.adjoint() * C::new(w, 0.0);
            points.push(cvec(v.as_slice()));
            weights.push(w);
        }
    }
    if weights.is_empty() {
        return None;
    }
    let scale = scale_of(us);
    let residual = us.iter().map(|u| (u * zz).trace().norm()).fold(0.0, f64::max) / scale;
    if residual > 1e3 * tol {
        return None;
    }
    Some(IndefiniteCertificate::WitnessPointPattern {
        points,
        weights,
        residual,
    })
}

// ---------------------------------------------------------------------------
// self-orthogonal vectors

/// The four real quadrics `h*·Uᵢ·h` in chart `c` (`h_c = 1`, the other two
/// coordinates split into real and imaginary parts): constant, gradient and
/// Hessian-half `Q` with `E(x) = e0 + lin·x + xᵀQx`.
struct ChartQuadrics {
    chart: usize,
    free: [usize; 2],
    e0: [f64; 4],
    lin: [[f64; 4]; 4],
    q: [[[f64; 4]; 4]; 4],
}

fn direction(free: [usize; 2], m: usize) -> Vector3<C> {
    let mut d = Vector3::zeros();
    d[free[m / 2]] = if m % 2 == 0 { C::new(1.0, 0.0) } else { C::new(0.0, 1.0) };
    d
}

impl ChartQuadrics {
    fn new(us: &[M3; 4], chart: usize) -> Self {
        let free: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
        let free = [free[0], free[1]];
        let mut ec = Vector3::zeros();
        ec[chart] = C::new(1.0, 0.0);
        let dirs: Vec<Vector3<C>> = (0..4).map(|m| direction(free, m)).collect();
        let mut e0 = [0.0; 4];
        let mut lin = [[0.0; 4]; 4];
        let mut q = [[[0.0; 4]; 4]; 4];
        for i in 0..4 {
            e0[i] = us[i][(chart, chart)].re;
            for m in 0..4 {
                lin[i][m] = 2.0 * (ec.adjoint() * us[i] * dirs[m])[(0, 0)].re;
                for n in 0..4 {
                    q[i][m][n] = (dirs[m].adjoint() * us[i] * dirs[n])[(0, 0)].re;
                }
            }
        }
        ChartQuadrics {
            chart,
            free,
            e0,
            lin,
            q,
        }
    }

    fn eval(&self, x: &[f64]) -> ([f64; 4], [[f64; 4]; 4]) {
        let mut v = [0.0; 4];
        let mut g = [[0.0; 4]; 4];
        for i in 0..4 {
            let mut s = self.e0[i];
            for m in 0..4 {
                s += self.lin[i][m] * x[m];
                let mut gm = self.lin[i][m];
                for n in 0..4 {
                    s += self.q[i][m][n] * x[m] * x[n];
                    gm += 2.0 * self.q[i][m][n] * x[n];
                }
                g[i][m] = gm;
            }
            v[i] = s;
        }
        (v, g)
    }

    fn vector(&self, x: &[f64]) -> Vec<C> {
        let mut h = vec![C::new(0.0, 0.0); 3];
        h[self.chart] = C::new(1.0, 0.0);
        h[self.free[0]] = C::new(x[0], x[1]);
        h[self.free[1]] = C::new(x[2], x[3]);
        h
    }

    fn solve(&self, x0: &[f64], scale: f64) -> (Vec<f64>, f64) {
        let f = |x: &[f64]| {
            let (v, g) = self.eval(x);
            (
                DVector::from_iterator(4, v.iter().map(|a| a / scale)),
                DMatrix::from_fn(4, 4, |i, m| g[i][m] / scale),
            )
        };
        levenberg_marquardt(&f, x0, 200, 1e-15)
    }

    /// Interval enclosure of each quadric over the box `center ± r`.
    fn excludes_zero(&self, center: &[f64; 4], r: &[f64; 4], slack: f64) -> bool {
        let (v, g) = self.eval(center);
        for i in 0..4 {
            let mut lo = v[i];
            let mut hi = v[i];
            for m in 0..4 {
                let gr = g[i][m].abs() * r[m];
                lo -= gr;
                hi += gr;
                let d = self.q[i][m][m] * r[m] * r[m];
                if d < 0.0 {
                    lo += d;
                } else {
                    hi += d;
                }
                for n in (m + 1)..4 {
                    let o = 2.0 * self.q[i][m][n].abs() * r[m] * r[n];
                    lo -= o;
                    hi += o;
                }
            }
            if lo > slack || hi < -slack {
                return true;
            }
        }
        false
    }
}

fn normalize_projective(h: &[C]) -> Vec<C> {
    let mx = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let k = h.iter().position(|z| z.norm() > 1e-6 * mx).unwrap_or(0);
    h.iter().map(|z| z / h[k]).collect()
}

fn so_residual(us: &[M3; 4], h: &[C]) -> f64 {
    let v = Vector3::from_column_slice(h);
    let n2 = v.norm_squared();
    us.iter().map(|u| quad(u, &v).abs() / n2).fold(0.0, f64::max) / scale_of(us)
}

fn push_unique(found: &mut Vec<Vec<C>>, h: Vec<C>) {
    let h = normalize_projective(&h);
    if !found
        .iter()
        .any(|g| g.iter().zip(&h).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < 1e-6)
    {
        found.push(h);
    }
}

/// Multistart search for self-orthogonal vectors in the three charts.
fn search_self_orthogonal(us: &[M3; 4], opts: &DefinitenessOptions) -> Vec<Vec<C>> {
    let scale = scale_of(us);
    let mut found = Vec::new();
    // coordinate vectors first
    for k in 0..3 {
        let mut h = vec![C::new(0.0, 0.0); 3];
        h[k] = C::new(1.0, 0.0);
        if so_residual(us, &h) < opts.tol {
            push_unique(&mut found, h);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x736f_7663);
    for chart in 0..3 {
        let cq = ChartQuadrics::new(us, chart);
        for _ in 0..opts.so_starts {
            let x0: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let (x, rn) = cq.solve(&x0, scale);
            if rn < 1e-12 {
                let h = cq.vector(&x);
                if so_residual(us, &h) < opts.tol {
                    push_unique(&mut found, h);
                }
            }
        }
    }
    found
}

/// Outcome of the branch-and-bound over the three max-modulus charts.
enum BoxSearch {
    Empty,
    Found(Vec<C>),
    Budget(usize),
}

fn branch_and_bound(us: &[M3; 4], opts: &DefinitenessOptions) -> BoxSearch {
    let scale = scale_of(us);
    let slack = 1e-13 * scale;
    let mut processed = 0usize;
    for chart in 0..3 {
        let cq = ChartQuadrics::new(us, chart);
        let mut stack: Vec<([f64; 4], f64)> = vec![([0.0; 4], 1.0)];
        // boxes are cubes: center and half-width
        while let Some((c, r)) = stack.pop() {
            processed += 1;
            if processed > opts.max_boxes {
                return BoxSearch::Budget(processed);
            }
            if cq.excludes_zero(&c, &[r; 4], slack) {
                continue;
            }
            if r < 1e-3 {
                let (x, rn) = cq.solve(&c, scale);
                if rn < 1e-12 {
                    let h = cq.vector(&x);
                    if so_residual(us, &h) < opts.tol {
                        return BoxSearch::Found(h);
                    }
                }
                if r < 1e-9 {
                    return BoxSearch::Budget(processed);
                }
            }
            let h = r / 2.0;
            for mask in 0..16u32 {
                let child: [f64; 4] = std::array::from_fn(|m| c[m] + if mask >> m & 1 == 1 { h } else { -h });
                stack.push((child, h));
            }
        }
    }
    BoxSearch::Empty
}

/// Self-orthogonal vectors of a self-adjoint pencil, normalized so the
/// first significant coordinate is one.
///
/// Candidates come from a multistart search in the charts `h_c = 1`; for
/// exact fields each is rounded into the field and checked exactly. An empty
/// list is returned only when nonexistence is proved, either by a definite
/// combination `Σ cᵢUᵢ ≻ 0` or by branch-and-bound on the four quadrics over
/// the compact charts `h_c = 1, |h_j| ≤ 1`. Otherwise the result is
/// `Inconclusive`.
pub fn self_orthogonal_vectors<F: Field>(u: &LinearPencil<F>, opts: &DefinitenessOptions) -> Result<Vec<Vec<F>>> {
    let us = coeff_matrices(u);
    let mut found = search_self_orthogonal(&us, opts);
    if found.is_empty() {
        let (_, lam) = max_lambda_min(&us, opts);
        if lam > 1e-7 {
            return Ok(Vec::new());
        }
        match branch_and_bound(&us, opts) {
            BoxSearch::Empty => return Ok(Vec::new()),
            BoxSearch::Found(h) => push_unique(&mut found, h),
            BoxSearch::Budget(n) => {
                return Err(Error::Inconclusive(format!(
                    "no self-orthogonal vector found; branch-and-bound stopped after {n} boxes"
                )))
            }
        }
    }
    let mut out = Vec::new();
    for h in found {
        let v: Option<Vec<F>> = h.iter().map(|z| if z.norm() < 1e-9 { Some(F::zero()) } else { F::from_complex(*z) }).collect();
        let v = v.ok_or_else(|| Error::Inconclusive(format!("vector {h:?} has no representative in the field")))?;
        let ok = (0..4).all(|k| {
            let m = u.coeff(k);
            let mv = m.mul_vec(&v);
            let s = v.iter().zip(&mv).fold(F::zero(), |acc, (a, b)| acc + a.conj() * b);
            s.is_negligible(m.max_abs())
        });
        if !ok {
            return Err(Error::Inconclusive(format!("vector {h:?} fails the exact check")));
        }
        out.push(v);
    }
    Ok(out)
}

/// Decides definiteness of a self-adjoint pencil.
///
/// In order: a self-orthogonal vector proves indefiniteness; a combination
/// with positive smallest eigenvalue proves definiteness; a negative
/// semidefinite e2 Gram matrix, or a positive witness pattern, proves
/// indefiniteness. Otherwise the result is `Unknown` with the best values.
pub fn is_definite<F: Field>(u: &LinearPencil<F>, opts: &DefinitenessOptions) -> DefinitenessResult {
    let us = coeff_matrices(u);
    let found = search_self_orthogonal(&us, opts);
    if let Some(h) = found.first() {
        return DefinitenessResult::Indefinite {
            certificate: IndefiniteCertificate::SelfOrthogonalVector {
                h: cvec(h),
                residual: so_residual(&us, h),
            },
        };
    }
    let (mut c, lam) = max_lambda_min(&us, opts);
    if lam > 1e-7 {
        return definite_at(&us, c);
    }
    if let Some(cert) = e2_certificate(&us, 1e-9) {
        return DefinitenessResult::Indefinite { certificate: cert };
    }
    // Congruence preserves definiteness, so retry in coordinates where the
    // best combination found so far is close to ±identity.
    let mut t = M3::identity();
    let mut best_lam = lam;
    let mut best_dual = None::<f64>;
    for round in 0..PRECONDITION_ROUNDS {
        if round > 0 {
            let ur = congruence(&us, &t);
            let (c2, l2) = max_lambda_min(&ur, opts);
            best_lam = best_lam.max(l2);
            if l2 > 1e-7 {
                return definite_at(&us, c2);
            }
            c = c2;
        }
        let ur = congruence(&us, &t);
        if let Some((z, l)) = dual_search(&ur, opts.dual_steps) {
            best_dual = Some(best_dual.map_or(l, |b| b.max(l)));
            if l > 1e-9 {
                let z = t.adjoint() * z * t;
                let z = z / z.trace();
                if let Some(cert) = pattern_certificate(&us, &z, 1e-12) {
                    return DefinitenessResult::Indefinite { certificate: cert };
                }
            }
        }
        t = balancing(&combo(&ur, &c)) * t;
    }
    DefinitenessResult::Unknown {
        best_lambda_min: best_lam,
        best_dual_lambda_min: best_dual,
        directions: opts.directions,
        ascent_steps: opts.ascent_steps,
    }
}

const PRECONDITION_ROUNDS: usize = 4;

fn definite_at(us: &[M3; 4], c: [f64; 4]) -> DefinitenessResult {
    let (ev, _) = eig_min(&combo(us, &c));
    DefinitenessResult::Definite {
        c,
        margin: ev[0],
        eigenvalues: [ev[0], ev[1], ev[2]],
    }
}

fn congruence(us: &[M3; 4], t: &M3) -> [M3; 4] {
    std::array::from_fn(|k| {
        let m = t * us[k] * t.adjoint();
        (m + m.adjoint()) * C::new(0.5, 0.0)
    })
}

/// `T` with `T·A·T*` diagonal with entries of modulus about one.
fn balancing(a: &M3) -> M3 {
    let e = a.symmetric_eigen();
    let mx = e.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
    let mut t = e.eigenvectors.adjoint();
    for k in 0..3 {
        let s = 1.0 / e.eigenvalues[k].abs().max(1e-8 * mx).sqrt();
        for j in 0..3 {
            t[(k, j)] *= C::new(s, 0.0);
        }
    }
    let n = t.iter().map(|x| x.norm()).fold(0.0, f64::max);
    t / C::new(n, 0.0)
}

/// Checks a certificate against the pencil by substitution.
pub fn certificate_holds<F: Field>(u: &LinearPencil<F>, r: &DefinitenessResult, tol: f64) -> bool {
    let us = coeff_matrices(u);
    let scale = scale_of(&us);
    match r {
        DefinitenessResult::Definite { c, margin, .. } => {
            let (ev, _) = eig_min(&combo(&us, c));
            *margin > 0.0 && ev[0] >= margin - tol * scale
        }
        DefinitenessResult::Indefinite { certificate } => match certificate {
            IndefiniteCertificate::SelfOrthogonalVector { h, .. } => {
                let h: Vec<C> = h.iter().map(|p| C::new(p[0], p[1])).collect();
                so_residual(&us, &h) < tol
            }
            IndefiniteCertificate::NegativeE2Gram { .. } => e2_certificate(&us, tol).is_some(),
            IndefiniteCertificate::WitnessPointPattern { points, weights, .. } => {
                let mut z = M3::zeros();
                for (p, w) in points.iter().zip(weights) {
                    if *w <= 0.0 {
                        return false;
                    }
                    let v = Vector3::from_iterator(p.iter().map(|q| C::new(q[0], q[1])));
                    z += v * v.adjoint() * C::new(*w, 0.0);
                }
                us.iter().all(|u| (u * z).trace().norm() <= tol * scale)
            }
        },
        DefinitenessResult::Unknown { .. } => false,
    }
}

/// Evaluates the pencil at a real point and returns ascending eigenvalues.
pub fn eigenvalues_at<F: Field>(u: &LinearPencil<F>, z: &[f64; 4]) -> [f64; 3] {
    let us = coeff_matrices(u);
    let (ev, _) = eig_min(&combo(&us, z));
    [ev[0], ev[1], ev[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::scalars::ComplexF;

    fn diag_pencil(d: [[f64; 3]; 4]) -> LinearPencil<ComplexF> {
        LinearPencil::new(std::array::from_fn(|k| {
            Mat::diag(&d[k].map(|x| ComplexF::new(x, 0.0)))
        }))
        .unwrap()
    }

    #[test]
    fn identity_combination_is_definite() {
        let u = diag_pencil([[1.0, 1.0, 1.0], [1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [0.0, 0.0, 0.0]]);
        let r = is_definite(&u, &DefinitenessOptions::default());
        assert!(r.is_definite(), "{r:?}");
        assert!(certificate_holds(&u, &r, 1e-9));
        assert!(self_orthogonal_vectors(&u, &DefinitenessOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn traceless_span_is_indefinite() {
        // every combination has trace zero
        let u = diag_pencil([[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [1.0, 0.0, -1.0], [2.0, -1.0, -1.0]]);
        let r = is_definite(&u, &DefinitenessOptions::default());
        assert!(r.is_indefinite(), "{r:?}");
        assert!(certificate_holds(&u, &r, 1e-9));
    }
}
