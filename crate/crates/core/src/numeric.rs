//! Floating-point helpers: compiled polynomials, univariate roots, damped
//! Gauss-Newton, and Hermitian eigenvalues.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::linalg::Mat;
use crate::poly::{monomials, Form};
use crate::scalars::Field;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// A polynomial with complex float coefficients, for fast evaluation.
#[derive(Clone, Debug)]
pub struct CPoly {
    pub nvars: usize,
    pub terms: Vec<(C, Vec<u32>)>,
}

impl CPoly {
    pub fn from_form<F: Field>(f: &Form<F>) -> Self {
        let mons = monomials(f.nvars(), f.degree());
        let terms = f
            .coeffs()
            .iter()
            .zip(mons)
            .map(|(c, e)| (c.to_complex(), e))
            .filter(|(c, _)| *c != C::new(0.0, 0.0))
            .collect();
        CPoly { nvars: f.nvars(), terms }
    }

    pub fn eval(&self, x: &[C]) -> C {
        self.terms
            .iter()
            .map(|(c, e)| e.iter().zip(x).fold(*c, |acc, (&k, xi)| acc * xi.powu(k)))
            .sum()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, x: &[C]) -> (C, Vec<C>) {
        let mut v = C::new(0.0, 0.0);
        let mut g = vec![C::new(0.0, 0.0); self.nvars];
        for (c, e) in &self.terms {
            let pw: Vec<C> = e.iter().zip(x).map(|(&k, xi)| xi.powu(k)).collect();
            v += pw.iter().fold(*c, |a, b| a * b);
            for i in 0..self.nvars {
                if e[i] == 0 {
                    continue;
                }
                let mut t = *c * e[i] as f64 * x[i].powu(e[i] - 1);
                for (j, p) in pw.iter().enumerate() {
                    if j != i {
                        t *= p;
                    }
                }
                g[i] += t;
            }
        }
        (v, g)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max)
    }
}

/// Roots of `Σ coeffs[k]·t^k` by the Aberth iteration. Trailing zero
/// leading coefficients are dropped, so the degree may be lower than
/// `coeffs.len() - 1`.
pub fn poly_roots(coeffs: &[C]) -> Vec<C> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].norm() <= 1e-14 * scale {
        n -= 1;
    }
    if n <= 1 {
        return Vec::new();
    }
    let a: Vec<C> = coeffs[..n].iter().map(|c| c / coeffs[n - 1]).collect();
    let deg = n - 1;
    let radius = 1.0 + a[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..deg)
        .map(|k| C::from_polar(radius.min(2.0), 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    let eval = |t: C| {
        let mut p = C::new(1.0, 0.0);
        let mut dp = C::new(0.0, 0.0);
        for k in (0..deg).rev() {
            dp = dp * t + p;
            p = p * t + a[k];
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C = (0..deg).filter(|&j| j != i).map(|j| C::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (C::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    // a few Newton polishing steps
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

/// Minimizes `‖r(x)‖²` from `x0` with damped Gauss-Newton.
/// `f` returns the residual vector and its Jacobian (rows = residuals).
/// Returns the final point and residual norm.
pub fn gauss_newton(
    f: &dyn Fn(&[C]) -> (Vec<C>, DMatrix<C>),
    x0: &[C],
    max_iter: usize,
    tol: f64,
) -> (Vec<C>, f64) {
    let norm = |r: &[C]| r.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let mut x = x0.to_vec();
    let (mut r, mut j) = f(&x);
    let mut rn = norm(&r);
    for _ in 0..max_iter {
        if rn < tol || !rn.is_finite() {
            break;
        }
        let b = DVector::from_iterator(r.len(), r.iter().map(|v| -v));
        let Ok(step) = j.clone().svd(true, true).solve(&b, 1e-14) else {
            break;
        };
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let xn: Vec<C> = x.iter().zip(step.iter()).map(|(a, s)| a + s * t).collect();
            let (rr, jj) = f(&xn);
            let n = norm(&rr);
            if n.is_finite() && n < rn {
                x = xn;
                r = rr;
                j = jj;
                rn = n;
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (x, rn)
}

/// Real Levenberg-Marquardt for `‖r(x)‖² → min`, `f` returning residuals
/// and Jacobian.
pub fn levenberg_marquardt(
    f: &dyn Fn(&[f64]) -> (DVector<f64>, DMatrix<f64>),
    x0: &[f64],
    max_iter: usize,
    tol: f64,
) -> (Vec<f64>, f64) {
    let mut x = DVector::from_column_slice(x0);
    let (mut r, mut j) = f(x.as_slice());
    let mut rn = r.norm();
    let mut mu = 1e-3;
    for _ in 0..max_iter {
        if rn < tol || !rn.is_finite() {
            break;
        }
        let jt = j.transpose();
        let jtj = &jt * &j;
        let g = &jt * &r;
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj.clone();
            for k in 0..a.nrows() {
                a[(k, k)] += mu * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                mu *= 10.0;
                continue;
            };
            let xn = &x + step;
            let (rr, jj) = f(xn.as_slice());
            let n = rr.norm();
            if n.is_finite() && n < rn {
                x = xn;
                r = rr;
                j = jj;
                rn = n;
                mu = (mu * 0.3).max(1e-12);
                improved = true;
                break;
            }
            mu *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (x.as_slice().to_vec(), rn)
}

pub fn to_dmatrix<F: Field>(m: &Mat<F>) -> DMatrix<C> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].to_complex())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<C>) -> Vec<f64> {
    let h = (m + m.adjoint()) * C::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Smallest eigenvalue and a unit eigenvector of a Hermitian matrix.
pub fn min_eigenpair(m: &DMatrix<C>) -> (f64, DVector<C>) {
    let h = (m + m.adjoint()) * C::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let (k, &v) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    (v, eig.eigenvectors.column(k).into_owned())
}

/// Projective distance between two complex vectors: sine of the angle.
pub fn projective_distance(a: &[C], b: &[C]) -> f64 {
    let na: f64 = a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    let ip: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let cos = (ip.norm() / (na * nb)).min(1.0);
    (1.0 - cos * cos).max(0.0).sqrt()
}

/// Scales `v` so its largest entry is 1.
pub fn normalize_max(v: &[C]) -> Vec<C> {
    let k = (0..v.len()).max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm())).unwrap();
    v.iter().map(|x| x / v[k]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cyclotomic() {
        // t^3 - 1
        let r = poly_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z.powu(3) - c(1.0, 0.0)).norm() < 1e-12);
        }
        // degree drops when the top coefficient vanishes
        assert_eq!(poly_roots(&[c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).len(), 1);
    }

    #[test]
    fn gauss_newton_finds_intersection() {
        // x^2 + y^2 = 2, x = y
        let f = |x: &[C]| {
            let r = vec![x[0] * x[0] + x[1] * x[1] - c(2.0, 0.0), x[0] - x[1]];
            let j = DMatrix::from_row_slice(2, 2, &[x[0] * 2.0, x[1] * 2.0, c(1.0, 0.0), c(-1.0, 0.0)]);
            (r, j)
        };
        let (x, rn) = gauss_newton(&f, &[c(0.7, 0.1), c(1.3, -0.2)], 100, 1e-14);
        assert!(rn < 1e-12);
        assert!((x[0] - x[1]).norm() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12);
    }
}
