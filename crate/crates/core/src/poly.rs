//! Homogeneous forms with dense coefficient vectors.
//!
//! Monomials are listed in graded-lex order with `x0 > x1 > ... > x(n-1)`:
//! for cubics in four variables this is `z0³, z0²z1, z0²z2, z0²z3, z0z1², ...`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::Field;

/// Exponent vectors of degree `deg` in `nvars` variables, in graded-lex order.
pub fn monomials(nvars: usize, deg: usize) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars - 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, deg as u32, &mut Vec::new(), &mut out);
    out
}

/// Number of monomials of degree `deg` in `nvars` variables.
pub fn num_monomials(nvars: usize, deg: usize) -> usize {
    let mut n = 1usize;
    for i in 1..nvars {
        n = n * (deg + i) / i;
    }
    n
}

/// Position of an exponent vector in [`monomials`].
pub fn monomial_index(exps: &[u32]) -> usize {
    // count monomials that come earlier: those with a larger exponent at the
    // first position where they differ
    let nvars = exps.len();
    let mut remaining: usize = exps.iter().map(|&e| e as usize).sum();
    let mut idx = 0;
    for (k, &e) in exps.iter().enumerate().take(nvars.saturating_sub(1)) {
        let rest_vars = nvars - k - 1;
        for bigger in (e as usize + 1)..=remaining {
            idx += num_monomials(rest_vars, remaining - bigger);
        }
        remaining -= e as usize;
    }
    idx
}

fn monomial_value<T: Clone>(exps: &[u32], point: &[T], one: T, mul: impl Fn(T, &T) -> T) -> T {
    let mut acc = one;
    for (e, x) in exps.iter().zip(point) {
        for _ in 0..*e {
            acc = mul(acc, x);
        }
    }
    acc
}

/// A homogeneous polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<F> {
    nvars: usize,
    degree: usize,
    coeffs: Vec<F>,
}

/// Cubic form in `z0..z3`.
pub type CubicForm<F> = Form<F>;
/// Cubic form in `x0..x2`.
pub type PlaneCubic<F> = Form<F>;
/// Quadratic form in `z0..z3`.
pub type QuadraticForm<F> = Form<F>;

impl<F: Field> Form<F> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Form {
            nvars,
            degree,
            coeffs: vec![F::zero(); num_monomials(nvars, degree)],
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Form {
            nvars,
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != num_monomials(nvars, degree) {
            return Err(Error::Parse(format!(
                "expected {} coefficients for degree {degree} in {nvars} variables, got {}",
                num_monomials(nvars, degree),
                coeffs.len()
            )));
        }
        Ok(Form {
            nvars,
            degree,
            coeffs,
        })
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(c: &[F]) -> Self {
        Form {
            nvars: c.len(),
            degree: 1,
            coeffs: c.to_vec(),
        }
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut f = Self::zero(nvars, 1);
        f.coeffs[i] = F::one();
        f
    }

    /// Builds a form from `(coefficient, exponents)` terms.
    pub fn from_terms(nvars: usize, degree: usize, terms: &[(F, Vec<u32>)]) -> Self {
        let mut f = Self::zero(nvars, degree);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            assert_eq!(e.iter().sum::<u32>() as usize, degree);
            let i = monomial_index(e);
            f.coeffs[i] = f.coeffs[i].clone() + c;
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> &F {
        &self.coeffs[monomial_index(exps)]
    }

    pub fn is_zero(&self) -> bool {
        let scale = self.max_abs();
        self.coeffs.iter().all(|c| c.is_negligible(scale.min(1.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// First nonzero coefficient in monomial order.
    pub fn leading_coeff(&self) -> Option<&F> {
        if F::is_exact() {
            self.coeffs.iter().find(|c| !c.is_zero())
        } else {
            let scale = self.max_abs();
            self.coeffs
                .iter()
                .find(|c| !c.is_negligible(scale) && c.magnitude() > 1e-6 * scale)
        }
    }

    /// Scales so the leading coefficient is one; returns the removed factor.
    pub fn monic(&self) -> Option<(Self, F)> {
        let lc = self.leading_coeff()?.clone();
        let inv = lc.inv()?;
        Some((self.scale(&inv), lc))
    }

    pub fn scale(&self, s: &F) -> Self {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (o.nvars, o.degree), "form shape mismatch");
        Form {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "form variable count mismatch");
        let ma = monomials(self.nvars, self.degree);
        let mb = monomials(o.nvars, o.degree);
        let mut out = Self::zero(self.nvars, self.degree + o.degree);
        let mut e = vec![0u32; self.nvars];
        for (ca, ea) in self.coeffs.iter().zip(&ma) {
            if ca.is_zero() && F::is_exact() {
                continue;
            }
            for (cb, eb) in o.coeffs.iter().zip(&mb) {
                if cb.is_zero() && F::is_exact() {
                    continue;
                }
                for k in 0..self.nvars {
                    e[k] = ea[k] + eb[k];
                }
                let i = monomial_index(&e);
                out.coeffs[i] = out.coeffs[i].clone() + ca.clone() * cb;
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::constant(self.nvars, F::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mons = monomials(self.nvars, self.degree);
        let mut s = F::zero();
        for (c, e) in self.coeffs.iter().zip(&mons) {
            if c.is_zero() && F::is_exact() {
                continue;
            }
            s = s + c.clone() * monomial_value(e, point, F::one(), |a, b| a * b);
        }
        s
    }

    /// Evaluation in complex floating point.
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        let mons = monomials(self.nvars, self.degree);
        let mut s = Complex64::new(0.0, 0.0);
        for (c, e) in self.coeffs.iter().zip(&mons) {
            s += c.to_complex() * monomial_value(e, point, Complex64::new(1.0, 0.0), |a, b| a * b);
        }
        s
    }

    pub fn derivative(&self, var: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(self.nvars, 0);
        }
        let mons = monomials(self.nvars, self.degree);
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (c, e) in self.coeffs.iter().zip(&mons) {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            let i = monomial_index(&d);
            out.coeffs[i] = out.coeffs[i].clone() + c.clone() * F::from_i64(e[var] as i64);
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Composes with a substitution `x_i ↦ images[i]` (forms in a common ring,
    /// all of the same degree).
    pub fn substitute(&self, images: &[Form<F>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let nv = images[0].nvars;
        let d = images[0].degree;
        let mons = monomials(self.nvars, self.degree);
        // powers of each image, computed once
        let mut powers: Vec<Vec<Form<F>>> = Vec::with_capacity(self.nvars);
        for img in images {
            let mut p = vec![Form::constant(nv, F::one())];
            for k in 1..=self.degree {
                let next = p[k - 1].mul(img);
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = Form::zero(nv, d * self.degree);
        for (c, e) in self.coeffs.iter().zip(&mons) {
            if c.is_zero() && F::is_exact() {
                continue;
            }
            let mut term = Form::constant(nv, c.clone());
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    term = term.mul(&powers[k][ek as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Restriction to the line through `p` and `q`, as a binary form in `(s, t)`
    /// for the point `s·p + t·q`.
    pub fn restrict_to_line(&self, p: &[F], q: &[F]) -> Self {
        let imgs: Vec<Form<F>> = p
            .iter()
            .zip(q)
            .map(|(a, b)| Form::linear(&[a.clone(), b.clone()]))
            .collect();
        self.substitute(&imgs)
    }

    /// True when `self = λ·other` for some nonzero `λ`.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.nvars != other.nvars || self.degree != other.degree {
            return false;
        }
        let m = Mat::from_rows(&[self.coeffs.clone(), other.coeffs.clone()]);
        !self.is_zero() && !other.is_zero() && m.rank() == 1
    }

    /// `λ` with `self = λ·other`, if it exists.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        if !self.proportional_to(other) {
            return None;
        }
        let (i, b) = other
            .coeffs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.magnitude().total_cmp(&y.1.magnitude()))?;
        Some(self.coeffs[i].clone() / b)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Form<G> {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars
            && self.degree == o.degree
            && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.approx_eq(b))
    }

    /// Human-readable rendering with the given variable prefix.
    pub fn render(&self, var: &str) -> String {
        let mons = monomials(self.nvars, self.degree);
        let mut parts = Vec::new();
        for (c, e) in self.coeffs.iter().zip(&mons) {
            if c.is_zero() {
                continue;
            }
            let mut m = String::new();
            for (k, &ek) in e.iter().enumerate() {
                match ek {
                    0 => {}
                    1 => m.push_str(&format!("{var}{k}")),
                    _ => m.push_str(&format!("{var}{k}^{ek}")),
                }
            }
            parts.push(if m.is_empty() {
                format!("({})", c.to_text())
            } else {
                format!("({})*{m}", c.to_text())
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.nvars == 4 { "z" } else { "x" };
        f.write_str(&self.render(var))
    }
}

/// The Fermat cubic `z0³ + z1³ + z2³ + z3³`.
pub fn fermat_cubic<F: Field>() -> CubicForm<F> {
    Form::from_terms(
        4,
        3,
        &[
            (F::one(), vec![3, 0, 0, 0]),
            (F::one(), vec![0, 3, 0, 0]),
            (F::one(), vec![0, 0, 3, 0]),
            (F::one(), vec![0, 0, 0, 3]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn grlex_order() {
        let m = monomials(4, 3);
        assert_eq!(m.len(), 20);
        assert_eq!(m[0], vec![3, 0, 0, 0]);
        assert_eq!(m[1], vec![2, 1, 0, 0]);
        assert_eq!(m[4], vec![1, 2, 0, 0]);
        assert_eq!(m[19], vec![0, 0, 0, 3]);
        for (i, e) in m.iter().enumerate() {
            assert_eq!(monomial_index(e), i);
        }
        for (n, d) in [(3, 3), (3, 4), (3, 9), (4, 2), (4, 5), (2, 3)] {
            let ms = monomials(n, d);
            assert_eq!(ms.len(), num_monomials(n, d));
            for (i, e) in ms.iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
        }
    }

    #[test]
    fn mul_and_eval() {
        let x: Form<Rational> = Form::linear(&[Rational::from_i64(1), Rational::from_i64(2)]);
        let y: Form<Rational> = Form::linear(&[Rational::from_i64(3), Rational::from_i64(-1)]);
        let p = x.mul(&y);
        let pt = [Rational::from_i64(2), Rational::from_i64(5)];
        assert_eq!(p.eval(&pt), x.eval(&pt) * y.eval(&pt));
    }

    #[test]
    fn derivative_and_euler() {
        let f: Form<Rational> = fermat_cubic();
        let pt: Vec<Rational> = [1, 2, -1, 3].iter().map(|&v| Rational::from_i64(v)).collect();
        let mut euler = Rational::from_i64(0);
        for (i, d) in f.gradient().iter().enumerate() {
            euler = euler + pt[i].clone() * d.eval(&pt);
        }
        assert_eq!(euler, Rational::from_i64(3) * f.eval(&pt));
    }

    #[test]
    fn restriction_to_line_of_fermat() {
        // z0 + z1 = z2 + z3 = 0 lies on the Fermat cubic
        let f: Form<Rational> = fermat_cubic();
        let r = |v: i64| Rational::from_i64(v);
        let g = f.restrict_to_line(&[r(1), r(-1), r(0), r(0)], &[r(0), r(0), r(1), r(-1)]);
        assert!(g.is_zero());
    }
}
