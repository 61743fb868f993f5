//! Dense matrices over a [`Field`] with exact or tolerance-aware elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(&v)
    }

    pub fn diag(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + &o[(r, c)])
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - &o[(r, c)])
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Self::from_fn(self.rows, o.cols, |r, c| {
            let mut s = F::zero();
            for k in 0..self.cols {
                s = s + self[(r, k)].clone() * &o[(k, c)];
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = F::zero();
                for (k, x) in v.iter().enumerate() {
                    s = s + self[(r, k)].clone() * x;
                }
                s
            })
            .collect()
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        let scale = self.max_abs();
        self.data.iter().all(|x| x.is_negligible(scale.min(1.0)))
    }

    /// Entrywise equality, exact or within tolerance.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    ///
    /// Exact fields take the first nonzero pivot. Float fields take the
    /// largest pivot and treat entries below `tol · max|entry|` as zero.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pick = if F::is_exact() {
                (r..self.rows).find(|&i| !self[(i, c)].is_zero())
            } else {
                let (best, mag) = (r..self.rows)
                    .map(|i| (i, self[(i, c)].magnitude()))
                    .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                if self[(best, c)].is_negligible(scale) || mag <= 0.0 {
                    None
                } else {
                    Some(best)
                }
            };
            let Some(p) = pick else {
                for i in r..self.rows {
                    self[(i, c)] = F::zero();
                }
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                self[(r, j)] = self[(r, j)].clone() * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() && F::is_exact() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * &self[(r, j)];
                    self[(i, j)] = v;
                }
                self[(i, c)] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{w : wᵀ · self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space(&self) -> Vec<Vec<F>> {
        let (r, p) = self.rref();
        (0..p.len()).map(|i| r.row(i)).collect()
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        match n {
            0 => return F::one(),
            1 => return self[(0, 0)].clone(),
            2 => {
                return self[(0, 0)].clone() * &self[(1, 1)]
                    - self[(0, 1)].clone() * &self[(1, 0)]
            }
            3 => {
                let m = |r, c| self[(r, c)].clone();
                return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            }
            _ => {}
        }
        let mut a = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let p = if F::is_exact() {
                (c..n).find(|&i| !a[(i, c)].is_zero())
            } else {
                (c..n).max_by(|&i, &j| {
                    a[(i, c)].magnitude().total_cmp(&a[(j, c)].magnitude())
                })
            };
            let Some(p) = p else { return F::zero() };
            if a[(p, c)].magnitude() == 0.0 {
                return F::zero();
            }
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = a[(i, c)].clone() * &inv;
                if f.is_zero() && F::is_exact() {
                    continue;
                }
                for j in c..n {
                    let v = a[(i, j)].clone() - f.clone() * &a[(c, j)];
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        let p = aug.rref_in_place();
        if p.len() < n || p[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Some solution of `self · x = b`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Mat::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::SolveFailure("inconsistent linear system".into()));
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Ok(x)
    }
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_text()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scales a vector so its first nonzero entry is one (exact), or to unit
/// norm with the largest entry real and positive (floats).
pub fn normalize_projective<F: Field>(v: &[F]) -> Option<Vec<F>> {
    if F::is_exact() {
        let lead = v.iter().find(|x| !x.is_zero())?;
        let inv = lead.inv()?;
        Some(v.iter().map(|x| x.clone() * &inv).collect())
    } else {
        let norm = v.iter().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let big = v
            .iter()
            .max_by(|a, b| a.magnitude().total_cmp(&b.magnitude()))?
            .to_complex();
        let phase = F::from_complex(big.conj() / (big.norm() * norm))?;
        Some(v.iter().map(|x| x.clone() * &phase).collect())
    }
}

/// True when the two vectors are proportional and nonzero.
pub fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    let m = Mat::from_rows(&[a.to_vec(), b.to_vec()]);
    let ra = Mat::from_rows(&[a.to_vec()]).rank();
    let rb = Mat::from_rows(&[b.to_vec()]).rank();
    ra == 1 && rb == 1 && m.rank() == 1
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |s, (x, y)| s + x.clone() * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ComplexF, Rational};

    #[test]
    fn rank_and_nullspace() {
        let m: Mat<Rational> = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn det_inverse_solve() {
        let m: Mat<Rational> = Mat::from_i64(&[&[2, 1, 0, 0], &[1, 3, 1, 0], &[0, 1, 4, 1], &[0, 0, 1, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(4));
        assert_eq!(m.det() * inv.det(), Rational::from_i64(1));
        let x = m.solve(&[Rational::from_i64(1), Rational::from_i64(0), Rational::from_i64(0), Rational::from_i64(0)]).unwrap();
        assert_eq!(x, inv.col(0));
        let sing: Mat<Rational> = Mat::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[Rational::from_i64(1), Rational::from_i64(2)]).is_err());
    }

    #[test]
    fn det_matches_cofactor_for_4x4() {
        let m: Mat<Rational> = Mat::from_i64(&[&[0, 1, 2, 3], &[1, 0, 4, 2], &[5, 1, 0, 1], &[2, 2, 1, 0]]);
        // Laplace expansion along the first row
        let minor = |c: usize| {
            Mat::from_fn(3, 3, |r, k| {
                let kk = if k < c { k } else { k + 1 };
                m[(r + 1, kk)].clone()
            })
            .det()
        };
        let mut lap = Rational::from_i64(0);
        for c in 0..4 {
            let t = m[(0, c)].clone() * minor(c);
            lap = if c % 2 == 0 { lap + t } else { lap - t };
        }
        assert_eq!(m.det(), lap);
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let m = Mat::from_rows(&[
            vec![ComplexF::new(1.0, 0.0), ComplexF::new(2.0, 0.0)],
            vec![ComplexF::new(1.0, 0.0), ComplexF::new(2.0 + 1e-13, 0.0)],
        ]);
        assert_eq!(m.rank(), 1);
    }
}
