//! Points, planes and lines in P² and P³.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{dot, normalize_projective, Mat};
use crate::scalars::Field;

fn check_nonzero<F: Field>(v: &[F]) -> Result<()> {
    if v.iter().all(|x| x.is_zero()) {
        Err(Error::DegeneratePoints("all coordinates vanish".into()))
    } else {
        Ok(())
    }
}

fn same_projective<F: Field>(a: &[F], b: &[F]) -> bool {
    Mat::from_rows(&[a.to_vec(), b.to_vec()]).rank() == 1
}

macro_rules! projective_vector {
    ($name:ident, $n:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Clone, Debug)]
        pub struct $name<F> {
            coords: Vec<F>,
        }

        impl<F: Field> $name<F> {
            /// Fails if the vector has the wrong length or vanishes.
            pub fn new(coords: Vec<F>) -> Result<Self> {
                if coords.len() != $n {
                    return Err(Error::Parse(format!(
                        "expected {} coordinates, got {}",
                        $n,
                        coords.len()
                    )));
                }
                check_nonzero(&coords)?;
                Ok($name { coords })
            }

            pub fn from_i64(c: &[i64]) -> Self {
                Self::new(c.iter().map(|&x| F::from_i64(x)).collect()).expect("valid coordinates")
            }

            pub fn coords(&self) -> &[F] {
                &self.coords
            }

            /// Canonical representative of the projective class.
            pub fn normalized(&self) -> Self {
                $name {
                    coords: normalize_projective(&self.coords).expect("nonzero"),
                }
            }

            pub fn conj(&self) -> Self {
                $name {
                    coords: self.coords.iter().map(|x| x.conj()).collect(),
                }
            }

            pub fn is_real(&self) -> bool {
                same_projective(&self.coords, &self.conj().coords)
            }
        }

        impl<F: Field> PartialEq for $name<F> {
            fn eq(&self, other: &Self) -> bool {
                same_projective(&self.coords, &other.coords)
            }
        }

        impl<F: Field> fmt::Display for $name<F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let n = self.normalized();
                let parts: Vec<String> = n.coords.iter().map(|x| x.to_text()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    };
}

projective_vector!(PlanePointP2, 3, "A point of P² in homogeneous coordinates.");
projective_vector!(PointP3, 4, "A point of P³ in homogeneous coordinates.");
projective_vector!(PlaneH, 4, "A plane of P³, given by the coefficients of its linear form.");

impl<F: Field> PlaneH<F> {
    /// Value of the linear form at a point.
    pub fn eval(&self, p: &[F]) -> F {
        dot(&self.coords, p)
    }

    pub fn contains_point(&self, p: &PointP3<F>) -> bool {
        let v = self.eval(p.coords());
        let scale = self.coords.iter().chain(p.coords()).map(|x| x.magnitude()).fold(0.0, f64::max);
        v.is_negligible(scale)
    }

    pub fn contains_line(&self, l: &LineH<F>) -> bool {
        let [p, q] = l.points();
        self.contains_point(&p) && self.contains_point(&q)
    }
}

/// How two lines in P³ relate.
#[derive(Clone, Debug)]
pub enum MeetResult<F> {
    Skew,
    Point(PointP3<F>),
    Equal,
}

impl<F: Field> PartialEq for MeetResult<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MeetResult::Skew, MeetResult::Skew) | (MeetResult::Equal, MeetResult::Equal) => true,
            (MeetResult::Point(a), MeetResult::Point(b)) => a == b,
            _ => false,
        }
    }
}

/// A line of P³ as the common zero set of two linear forms.
///
/// The two forms are stored in reduced row echelon form, so two exact lines
/// are equal iff their stored forms are equal.
#[derive(Clone, Debug)]
pub struct LineH<F> {
    forms: [Vec<F>; 2],
}

impl<F: Field> LineH<F> {
    /// From the rows of a 2×4 (or taller, rank 2) coefficient matrix.
    pub fn from_forms(rows: &[Vec<F>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != 4) {
            return Err(Error::Parse("line forms need 4 coefficients".into()));
        }
        let m = Mat::from_rows(rows);
        let rs = m.row_space();
        if rs.len() != 2 {
            return Err(Error::DependentPlanes);
        }
        Ok(LineH {
            forms: [rs[0].clone(), rs[1].clone()],
        })
    }

    pub fn from_i64(rows: [[i64; 4]; 2]) -> Self {
        let r: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_forms(&r).expect("rank-2 forms")
    }

    /// Line through two distinct points.
    pub fn through(p: &PointP3<F>, q: &PointP3<F>) -> Result<Self> {
        let m = Mat::from_rows(&[p.coords().to_vec(), q.coords().to_vec()]);
        if m.rank() != 2 {
            return Err(Error::DegeneratePoints("points coincide".into()));
        }
        Self::from_forms(&m.nullspace())
    }

    pub fn forms(&self) -> &[Vec<F>; 2] {
        &self.forms
    }

    pub fn planes(&self) -> [PlaneH<F>; 2] {
        [
            PlaneH::new(self.forms[0].clone()).unwrap(),
            PlaneH::new(self.forms[1].clone()).unwrap(),
        ]
    }

    pub fn matrix(&self) -> Mat<F> {
        Mat::from_rows(&self.forms)
    }

    /// Two points spanning the line.
    pub fn points(&self) -> [PointP3<F>; 2] {
        let ns = self.matrix().nullspace();
        [
            PointP3::new(ns[0].clone()).unwrap(),
            PointP3::new(ns[1].clone()).unwrap(),
        ]
    }

    pub fn contains_point(&self, p: &PointP3<F>) -> bool {
        self.planes().iter().all(|pl| pl.contains_point(p))
    }

    pub fn conj(&self) -> Self {
        Self::from_forms(&[
            self.forms[0].iter().map(|x| x.conj()).collect(),
            self.forms[1].iter().map(|x| x.conj()).collect(),
        ])
        .expect("conjugation preserves rank")
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.matrix().vstack(&other.matrix()).rank() == 2
    }

    /// Euclidean distance between normalized Plücker-free representatives,
    /// used for float comparisons and matching.
    pub fn distance(&self, other: &Self) -> f64 {
        // distance between the orthogonal projectors onto the row spaces
        let pa = projector(&self.matrix());
        let pb = projector(&other.matrix());
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += (pa[i][j] - pb[i][j]).norm_sqr();
            }
        }
        s.sqrt()
    }
}

fn projector<F: Field>(m: &Mat<F>) -> [[num_complex::Complex64; 4]; 4] {
    use num_complex::Complex64;
    // Gram-Schmidt on the two rows
    let r: Vec<Vec<Complex64>> = (0..2)
        .map(|i| m.row(i).iter().map(|x| x.to_complex()).collect())
        .collect();
    let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let u0: Vec<Complex64> = r[0].iter().map(|x| x / norm(&r[0])).collect();
    let ip: Complex64 = u0.iter().zip(&r[1]).map(|(a, b)| a.conj() * b).sum();
    let w: Vec<Complex64> = r[1].iter().zip(&u0).map(|(b, a)| b - ip * a).collect();
    let u1: Vec<Complex64> = w.iter().map(|x| x / norm(&w)).collect();
    let mut p = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            p[i][j] = u0[i] * u0[j].conj() + u1[i] * u1[j].conj();
        }
    }
    p
}

impl<F: Field> PartialEq for LineH<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<F: Field> fmt::Display for LineH<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |v: &Vec<F>| v.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(" ");
        write!(f, "({} / {})", r(&self.forms[0]), r(&self.forms[1]))
    }
}

/// The line cut out by two planes.
pub fn line_from_planes<F: Field>(p: &PlaneH<F>, q: &PlaneH<F>) -> Result<LineH<F>> {
    LineH::from_forms(&[p.coords().to_vec(), q.coords().to_vec()])
}

/// Decides whether two lines are skew, meet in a point, or coincide.
pub fn lines_meet<F: Field>(l1: &LineH<F>, l2: &LineH<F>) -> MeetResult<F> {
    let m = l1.matrix().vstack(&l2.matrix());
    match m.rank() {
        4 => MeetResult::Skew,
        3 => {
            let ns = m.nullspace();
            MeetResult::Point(PointP3::new(ns[0].clone()).unwrap().normalized())
        }
        _ => MeetResult::Equal,
    }
}

pub fn lines_intersect<F: Field>(l1: &LineH<F>, l2: &LineH<F>) -> bool {
    matches!(lines_meet(l1, l2), MeetResult::Point(_))
}

/// The plane spanned by two concurrent lines.
pub fn span_plane<F: Field>(l1: &LineH<F>, l2: &LineH<F>) -> Result<PlaneH<F>> {
    if !matches!(lines_meet(l1, l2), MeetResult::Point(_)) {
        return Err(Error::NotConcurrent);
    }
    // a plane containing both lines is a common vector of both row spaces
    let [p1, q1] = l1.points();
    let [p2, q2] = l2.points();
    let m = Mat::from_rows(&[
        p1.coords().to_vec(),
        q1.coords().to_vec(),
        p2.coords().to_vec(),
        q2.coords().to_vec(),
    ]);
    let ns = m.nullspace();
    if ns.len() != 1 {
        return Err(Error::NotConcurrent);
    }
    Ok(PlaneH::new(ns[0].clone())?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Eisenstein, Rational};

    type E = Eisenstein;

    fn w() -> E {
        E::omega()
    }

    fn line(r: [[E; 4]; 2]) -> LineH<E> {
        LineH::from_forms(&[r[0].to_vec(), r[1].to_vec()]).unwrap()
    }

    fn o() -> E {
        E::zero()
    }
    fn l() -> E {
        E::one()
    }

    #[test]
    fn line_from_coordinate_planes() {
        let p = PlaneH::<Rational>::from_i64(&[1, 0, 0, 0]);
        let q = PlaneH::<Rational>::from_i64(&[0, 1, 0, 0]);
        let ln = line_from_planes(&p, &q).unwrap();
        assert_eq!(ln, LineH::from_i64([[1, 0, 0, 0], [0, 1, 0, 0]]));
        assert!(matches!(line_from_planes(&p, &p.clone()), Err(Error::DependentPlanes)));
    }

    #[test]
    fn fermat_meet_examples() {
        let a1 = line([[w(), l(), o(), o()], [o(), o(), w(), l()]]);
        let b1 = line([[l(), l(), o(), o()], [o(), o(), l(), l()]]);
        assert_eq!(lines_meet(&a1, &b1), MeetResult::Skew);
        assert_eq!(lines_meet(&a1, &a1), MeetResult::Equal);
        let l1 = line([[l(), w(), o(), o()], [o(), o(), l(), l()]]);
        let l2 = line([[l(), E::omega_sq(), o(), o()], [o(), o(), l(), l()]]);
        let expected = PointP3::new(vec![o(), o(), l(), -l()]).unwrap();
        assert_eq!(lines_meet(&l1, &l2), MeetResult::Point(expected));
        let pl = span_plane(&l1, &l2).unwrap();
        assert_eq!(pl, PlaneH::new(vec![o(), o(), l(), l()]).unwrap());
        assert_eq!(span_plane(&a1, &b1), Err(Error::NotConcurrent));
    }

    #[test]
    fn span_contains_meet_point() {
        let l1: LineH<Rational> = LineH::from_i64([[1, 0, 0, 0], [0, 0, 0, 1]]);
        let l2: LineH<Rational> = LineH::from_i64([[0, 1, 0, 0], [0, 0, 0, 1]]);
        let pl = span_plane(&l1, &l2).unwrap();
        assert_eq!(pl, PlaneH::from_i64(&[0, 0, 0, 1]));
        if let MeetResult::Point(p) = lines_meet(&l1, &l2) {
            assert!(pl.contains_point(&p));
        } else {
            panic!("expected a point");
        }
    }
}
