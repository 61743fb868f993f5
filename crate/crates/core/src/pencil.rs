//! 3×3 matrices of linear forms in `z0..z3`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::{CubicForm, Form, QuadraticForm};
use crate::projective::LineH;
use crate::scalars::Field;

/// `M(z) = z0·M0 + z1·M1 + z2·M2 + z3·M3`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearPencil<F> {
    coeffs: [Mat<F>; 4],
}

impl<F: Field> LinearPencil<F> {
    pub fn new(coeffs: [Mat<F>; 4]) -> Result<Self> {
        if coeffs.iter().any(|m| m.nrows() != 3 || m.ncols() != 3) {
            return Err(Error::Parse("pencil coefficients must be 3×3".into()));
        }
        Ok(LinearPencil { coeffs })
    }

    /// From the 4 coefficients of each entry's linear form.
    pub fn from_entries(entries: &[[Vec<F>; 3]; 3]) -> Self {
        let coeffs = std::array::from_fn(|k| Mat::from_fn(3, 3, |i, j| entries[i][j][k].clone()));
        LinearPencil { coeffs }
    }

    pub fn zero() -> Self {
        LinearPencil {
            coeffs: std::array::from_fn(|_| Mat::zeros(3, 3)),
        }
    }

    pub fn coeff(&self, k: usize) -> &Mat<F> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Mat<F>; 4] {
        &self.coeffs
    }

    /// Coefficients of the linear form in entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Vec<F> {
        (0..4).map(|k| self.coeffs[k][(i, j)].clone()).collect()
    }

    pub fn entry_form(&self, i: usize, j: usize) -> Form<F> {
        Form::linear(&self.entry(i, j))
    }

    pub fn set_entry(&mut self, i: usize, j: usize, c: &[F]) {
        for k in 0..4 {
            self.coeffs[k][(i, j)] = c[k].clone();
        }
    }

    pub fn eval(&self, z: &[F]) -> Mat<F> {
        let mut m = Mat::zeros(3, 3);
        for k in 0..4 {
            m = m.add(&self.coeffs[k].scale(&z[k]));
        }
        m
    }

    pub fn map(&self, f: impl Fn(&Mat<F>) -> Mat<F>) -> Self {
        LinearPencil {
            coeffs: std::array::from_fn(|k| f(&self.coeffs[k])),
        }
    }

    pub fn transpose(&self) -> Self {
        self.map(|m| m.transpose())
    }

    pub fn conj(&self) -> Self {
        self.map(|m| m.conj())
    }

    /// Conjugate transpose as a matrix of forms.
    pub fn adjoint(&self) -> Self {
        self.map(|m| m.adjoint())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|m| m.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `X · M · Y`.
    pub fn transform(&self, x: &Mat<F>, y: &Mat<F>) -> Self {
        self.map(|m| x.mul(m).mul(y))
    }

    pub fn left_mul(&self, x: &Mat<F>) -> Self {
        self.map(|m| x.mul(m))
    }

    pub fn right_mul(&self, y: &Mat<F>) -> Self {
        self.map(|m| m.mul(y))
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        (0..4).all(|k| self.coeffs[k].approx_eq(&o.coeffs[k]))
    }

    pub fn is_selfadjoint(&self) -> bool {
        self.approx_eq(&self.adjoint())
    }

    pub fn is_symmetric(&self) -> bool {
        self.approx_eq(&self.transpose())
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..3).all(|i| self.entry(i, i).iter().all(|c| c.is_zero()))
    }

    /// The three linear forms of `M(z)·x`, as rows of a 3×4 matrix.
    pub fn forms_at(&self, x: &[F]) -> Mat<F> {
        Mat::from_fn(3, 4, |i, k| {
            let mut s = F::zero();
            for (j, xj) in x.iter().enumerate() {
                s = s + self.coeffs[k][(i, j)].clone() * xj;
            }
            s
        })
    }

    /// The three linear forms of `yᵀ·M(z)`.
    pub fn row_forms_at(&self, y: &[F]) -> Mat<F> {
        self.transpose().forms_at(y)
    }

    /// The line `{z : M(z)·x = 0}` when those forms have rank 2.
    pub fn line_at(&self, x: &[F]) -> Option<LineH<F>> {
        let m = self.forms_at(x);
        if m.rank() != 2 {
            return None;
        }
        LineH::from_forms(&m.rows_vec()).ok()
    }

    /// The 3×4 matrix `L(x)` with `M(z)·x = L(x)·z`, as a matrix of linear
    /// forms in `x0..x2`: entry `(i, k)` has coefficient `(M_k)_{ij}` on `x_j`.
    pub fn l_matrix(&self) -> Vec<Vec<Form<F>>> {
        (0..3)
            .map(|i| {
                (0..4)
                    .map(|k| Form::linear(&self.coeffs[k].row(i)))
                    .collect()
            })
            .collect()
    }

    /// Matrix of entry forms.
    pub fn entry_forms(&self) -> Vec<Vec<Form<F>>> {
        (0..3)
            .map(|i| (0..3).map(|j| self.entry_form(i, j)).collect())
            .collect()
    }

    /// Symbolic determinant.
    pub fn det(&self) -> CubicForm<F> {
        det3(&self.entry_forms())
    }

    /// Cofactor transpose; every entry is a quadratic form.
    pub fn adjugate(&self) -> Adjugate<F> {
        let e = self.entry_forms();
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let m = e[rs[0]][cs[0]]
                .mul(&e[rs[1]][cs[1]])
                .sub(&e[rs[0]][cs[1]].mul(&e[rs[1]][cs[0]]));
            if (r + c) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        };
        Adjugate {
            entries: (0..3).map(|i| (0..3).map(|j| cof(j, i)).collect()).collect(),
        }
    }
}

/// Determinant of a 3×3 matrix of forms.
pub fn det3<F: Field>(e: &[Vec<Form<F>>]) -> Form<F> {
    let t1 = e[0][0].mul(&e[1][1].mul(&e[2][2]).sub(&e[1][2].mul(&e[2][1])));
    let t2 = e[0][1].mul(&e[1][0].mul(&e[2][2]).sub(&e[1][2].mul(&e[2][0])));
    let t3 = e[0][2].mul(&e[1][0].mul(&e[2][1]).sub(&e[1][1].mul(&e[2][0])));
    t1.sub(&t2).add(&t3)
}

/// The adjugate of a pencil.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjugate<F> {
    pub entries: Vec<Vec<QuadraticForm<F>>>,
}

impl<F: Field> Adjugate<F> {
    pub fn eval(&self, z: &[F]) -> Mat<F> {
        Mat::from_fn(3, 3, |i, j| self.entries[i][j].eval(z))
    }

    pub fn column(&self, j: usize) -> Vec<QuadraticForm<F>> {
        (0..3).map(|i| self.entries[i][j].clone()).collect()
    }

    /// Checks `M · adj = det M · Id` symbolically.
    pub fn verifies(&self, m: &LinearPencil<F>) -> bool {
        let det = m.det();
        let e = m.entry_forms();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Form::zero(4, 3);
                for k in 0..3 {
                    s = s.add(&e[i][k].mul(&self.entries[k][j]));
                }
                let target = if i == j { det.clone() } else { Form::zero(4, 3) };
                if !s.sub(&target).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl<F: Field> fmt::Display for LinearPencil<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            let row: Vec<String> = (0..3).map(|j| self.entry_form(i, j).render("z")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn unit(k: usize) -> Vec<Rational> {
        (0..4).map(|i| if i == k { r(1) } else { r(0) }).collect()
    }

    #[test]
    fn zero_diagonal_det_pattern() {
        // [[0,a,b],[c,0,d],[e,f,0]] with a..f = z0,z1,z2,z3,z0,z1
        let mut p = LinearPencil::<Rational>::zero();
        let ent = [(0, 1, 0), (0, 2, 1), (1, 0, 2), (1, 2, 3), (2, 0, 0), (2, 1, 1)];
        for (i, j, k) in ent {
            p.set_entry(i, j, &unit(k));
        }
        let a = Form::var(4, 0);
        let b = Form::var(4, 1);
        let c = Form::var(4, 2);
        let d = Form::var(4, 3);
        let e = Form::var(4, 0);
        let f = Form::var(4, 1);
        let expected = a.mul(&d).mul(&e).add(&b.mul(&c).mul(&f));
        assert_eq!(p.det(), expected);
    }

    #[test]
    fn adjugate_of_scalar_pencil() {
        let p = LinearPencil::new([Mat::identity(3), Mat::zeros(3, 3), Mat::zeros(3, 3), Mat::zeros(3, 3)]).unwrap();
        let adj = p.adjugate();
        let z0sq: Form<Rational> = Form::var(4, 0).pow(2);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(adj.entries[i][j], z0sq);
                } else {
                    assert!(adj.entries[i][j].is_zero());
                }
            }
        }
        assert!(adj.verifies(&p));
    }

    #[test]
    fn det_is_multiplicative() {
        let mut p = LinearPencil::<Rational>::zero();
        for i in 0..3 {
            for j in 0..3 {
                let c: Vec<Rational> = (0..4).map(|k| r(((i * 7 + j * 3 + k * 5) % 11) as i64 - 5)).collect();
                p.set_entry(i, j, &c);
            }
        }
        let x = Mat::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let y = Mat::from_i64(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        let lhs = p.transform(&x, &y).det();
        let rhs = p.det().scale(&(x.det() * y.det()));
        assert_eq!(lhs, rhs);
    }
}
