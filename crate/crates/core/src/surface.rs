//! Cubic surfaces as blow-ups of six plane points.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::pencil::LinearPencil;
use crate::poly::{monomials, CubicForm, Form, PlaneCubic};
use crate::projective::{LineH, PlanePointP2, PointP3};
use crate::scalars::Field;

/// Label of line `index` in the standard ordering
/// `a1..a6, b1..b6, c12, c13, ..., c56`.
pub fn line_label(index: usize) -> String {
    match index {
        0..=5 => format!("a{}", index + 1),
        6..=11 => format!("b{}", index - 5),
        12..=26 => {
            let (i, j) = C_PAIRS[index - 12];
            format!("c{}{}", i + 1, j + 1)
        }
        _ => panic!("line index out of range"),
    }
}

/// The pairs `(i, j)`, `i < j`, in lexicographic order.
pub const C_PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

pub const fn a_index(i: usize) -> usize {
    i
}

pub const fn b_index(j: usize) -> usize {
    6 + j
}

/// Index of `c_ij` (order of `i, j` irrelevant).
pub fn c_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    assert!(i != j && j < 6);
    12 + C_PAIRS.iter().position(|&p| p == (i, j)).unwrap()
}

/// 3×4 matrix of linear forms in `x0, x1, x2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertBurchL<F> {
    /// `entries[i][k]` holds the 3 coefficients of `L_{ik}`.
    pub entries: Vec<Vec<Vec<F>>>,
    /// `λ` with `(-1)^k · det(L without column k) = λ · F_k`.
    pub minor_scale: F,
}

impl<F: Field> HilbertBurchL<F> {
    pub fn eval(&self, x: &[F]) -> Mat<F> {
        Mat::from_fn(3, 4, |i, k| crate::linalg::dot(&self.entries[i][k], x))
    }

    pub fn form(&self, i: usize, k: usize) -> Form<F> {
        Form::linear(&self.entries[i][k])
    }

    /// Signed maximal minors `(-1)^k · det(L without column k)`.
    pub fn signed_minors(&self) -> Vec<PlaneCubic<F>> {
        (0..4)
            .map(|k| {
                let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
                let e: Vec<Vec<Form<F>>> = (0..3)
                    .map(|i| cols.iter().map(|&c| self.form(i, c)).collect())
                    .collect();
                let d = crate::pencil::det3(&e);
                if k % 2 == 0 {
                    d
                } else {
                    d.neg()
                }
            })
            .collect()
    }
}

/// Evaluates all monomials of a degree at a point.
fn monomial_row<F: Field>(nvars: usize, deg: usize, p: &[F]) -> Vec<F> {
    monomials(nvars, deg)
        .iter()
        .map(|e| {
            let mut v = F::one();
            for (k, &ek) in e.iter().enumerate() {
                for _ in 0..ek {
                    v = v * &p[k];
                }
            }
            v
        })
        .collect()
}

/// Checks that six plane points are distinct, no three collinear, and not on
/// a conic.
pub fn check_general_position<F: Field>(points: &[PlanePointP2<F>]) -> Result<()> {
    if points.len() != 6 {
        return Err(Error::DegeneratePoints(format!("need 6 points, got {}", points.len())));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if points[i] == points[j] {
                return Err(Error::DegeneratePoints(format!(
                    "points {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let m = Mat::from_rows(&[
                    points[i].coords().to_vec(),
                    points[j].coords().to_vec(),
                    points[k].coords().to_vec(),
                ]);
                if m.rank() < 3 {
                    return Err(Error::DegeneratePoints(format!(
                        "points {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    let conic = Mat::from_rows(
        &points
            .iter()
            .map(|p| monomial_row(3, 2, p.coords()))
            .collect::<Vec<_>>(),
    );
    if conic.rank() < 6 {
        return Err(Error::DegeneratePoints("the six points lie on a conic".into()));
    }
    Ok(())
}

/// A basis of the plane cubics through six points in general position.
pub fn cubic_system_through<F: Field>(points: &[PlanePointP2<F>]) -> Result<Vec<PlaneCubic<F>>> {
    check_general_position(points)?;
    let m = Mat::from_rows(
        &points
            .iter()
            .map(|p| monomial_row(3, 3, p.coords()))
            .collect::<Vec<_>>(),
    );
    let ns = m.nullspace();
    if ns.len() != 4 {
        return Err(Error::DegeneratePoints(format!(
            "interpolation system has {} solutions instead of 4",
            ns.len()
        )));
    }
    Ok(ns
        .into_iter()
        .map(|c| Form::from_coeffs(3, 3, c).unwrap())
        .collect())
}

/// The 3×4 linear matrix whose signed maximal minors are the given cubics.
///
/// Rows are a basis of the linear syzygies `Σ_k l_k F_k = 0`.
pub fn hilbert_burch<F: Field>(cubics: &[PlaneCubic<F>]) -> Result<HilbertBurchL<F>> {
    if cubics.len() != 4 {
        return Err(Error::ResolutionFailure("need four cubics".into()));
    }
    // column (k, j) holds the coefficients of x_j · F_k
    let cols: Vec<Vec<F>> = (0..4)
        .flat_map(|k| (0..3).map(move |j| (k, j)))
        .map(|(k, j)| Form::var(3, j).mul(&cubics[k]).coeffs().to_vec())
        .collect();
    let m = Mat::from_fn(15, 12, |r, c| cols[c][r].clone());
    let ns = m.nullspace();
    if ns.len() != 3 {
        return Err(Error::ResolutionFailure(format!(
            "expected 3 linear syzygies, found {}",
            ns.len()
        )));
    }
    let entries: Vec<Vec<Vec<F>>> = ns
        .iter()
        .map(|v| (0..4).map(|k| v[3 * k..3 * k + 3].to_vec()).collect())
        .collect();
    let mut l = HilbertBurchL {
        entries,
        minor_scale: F::one(),
    };
    let minors = l.signed_minors();
    let lam = minors[0]
        .ratio_to(&cubics[0])
        .ok_or_else(|| Error::ResolutionFailure("minor is not a multiple of the cubic".into()))?;
    for k in 0..4 {
        if !minors[k].sub(&cubics[k].scale(&lam)).is_zero() {
            return Err(Error::ResolutionFailure(format!(
                "signed minor {k} is not the common multiple of its cubic"
            )));
        }
    }
    l.minor_scale = lam;
    Ok(l)
}

/// The pencil `M` with `M(z)·x = L(x)·z`.
pub fn pencil_from_l<F: Field>(l: &HilbertBurchL<F>) -> LinearPencil<F> {
    let coeffs = std::array::from_fn(|k| Mat::from_fn(3, 3, |i, j| l.entries[i][k][j].clone()));
    LinearPencil::new(coeffs).unwrap()
}

/// Symbolic determinant of a pencil.
pub fn det_pencil<F: Field>(m: &LinearPencil<F>) -> CubicForm<F> {
    m.det()
}

/// Outcome of [`smoothness_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct Smoothness {
    pub smooth: bool,
    /// `None` for an exact decision; otherwise the ratio of the smallest to
    /// the largest singular value of the elimination matrix.
    pub numeric_margin: Option<f64>,
}

/// Decides whether the partial derivatives of `f` have a common projective
/// zero.
///
/// The partials of a cubic are four quadrics; they have no common zero iff
/// the degree-5 part of the ideal they generate is the whole space of quintics
/// (dimension 56). Over exact fields the rank is decided exactly; over floats
/// by the singular values, and the margin is reported.
pub fn smoothness_check<F: Field>(f: &CubicForm<F>) -> Smoothness {
    let partials = f.gradient();
    let mons = monomials(4, 3);
    let mut rows = Vec::with_capacity(80);
    for p in &partials {
        for e in &mons {
            let mono = Form::from_terms(4, 3, &[(F::one(), e.clone())]);
            rows.push(mono.mul(p).coeffs().to_vec());
        }
    }
    if F::is_exact() {
        let rank = Mat::from_rows(&rows).rank();
        Smoothness {
            smooth: rank == 56,
            numeric_margin: None,
        }
    } else {
        let m = DMatrix::<Complex64>::from_fn(80, 56, |r, c| rows[r][c].to_complex());
        let sv = m.singular_values();
        let max = sv.max();
        let min = sv.min();
        let ratio = if max > 0.0 { min / max } else { 0.0 };
        Smoothness {
            smooth: ratio > 1e-8,
            numeric_margin: Some(ratio),
        }
    }
}

/// A smooth cubic surface obtained by blowing up six plane points.
#[derive(Clone, Debug)]
pub struct BlowupSurface<F> {
    pub points: Vec<PlanePointP2<F>>,
    pub basis: Vec<PlaneCubic<F>>,
    pub l: HilbertBurchL<F>,
    pub pencil: LinearPencil<F>,
    /// Defining cubic, scaled so its leading coefficient is one.
    pub cubic: CubicForm<F>,
    /// `det M = c · F`.
    pub c: F,
}

impl<F: Field> BlowupSurface<F> {
    pub fn from_points(points: Vec<PlanePointP2<F>>) -> Result<Self> {
        let basis = cubic_system_through(&points)?;
        Self::from_points_and_basis(points, basis)
    }

    /// Uses a caller-chosen basis of the cubics through the points; it fixes
    /// the coordinates of the embedding in P³.
    pub fn from_points_and_basis(
        points: Vec<PlanePointP2<F>>,
        basis: Vec<PlaneCubic<F>>,
    ) -> Result<Self> {
        check_general_position(&points)?;
        if basis.len() != 4 {
            return Err(Error::DegeneratePoints("need a basis of four cubics".into()));
        }
        for (k, b) in basis.iter().enumerate() {
            for (i, p) in points.iter().enumerate() {
                if !b.eval(p.coords()).is_zero() {
                    return Err(Error::DegeneratePoints(format!(
                        "cubic {} does not vanish at point {}",
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        let coeffs = Mat::from_rows(&basis.iter().map(|b| b.coeffs().to_vec()).collect::<Vec<_>>());
        if coeffs.rank() != 4 {
            return Err(Error::DegeneratePoints("cubics are linearly dependent".into()));
        }
        let l = hilbert_burch(&basis)?;
        let pencil = pencil_from_l(&l);
        let det = pencil.det();
        let (cubic, c) = det
            .monic()
            .ok_or_else(|| Error::DegenerateSurface("det M vanishes identically".into()))?;
        Ok(BlowupSurface {
            points,
            basis,
            l,
            pencil,
            cubic,
            c,
        })
    }

    /// The rational map P² → P³ given by the cubic basis.
    pub fn image(&self, x: &[F]) -> Vec<F> {
        self.basis.iter().map(|b| b.eval(x)).collect()
    }

    /// A point of the surface: the image of a plane point off the base locus.
    pub fn surface_point(&self, x: &[F]) -> Option<PointP3<F>> {
        PointP3::new(self.image(x)).ok()
    }

    /// Checks `M(z)·x = L(x)·z` at the given sample pairs.
    pub fn bilinear_identity_holds(&self, samples: &[(Vec<F>, Vec<F>)]) -> bool {
        samples.iter().all(|(x, z)| {
            let lhs = self.pencil.eval(z).mul_vec(x);
            let rhs = self.l.eval(x).mul_vec(z);
            lhs.iter().zip(&rhs).all(|(a, b)| a.approx_eq(b))
        })
    }

    fn line_through_images(&self, samples: &[Vec<F>], what: &str) -> Result<LineH<F>> {
        let imgs: Vec<Vec<F>> = samples
            .iter()
            .map(|x| self.image(x))
            .filter(|v| !v.iter().all(|c| c.is_zero()))
            .collect();
        if imgs.len() < 3 {
            return Err(Error::DegenerateSurface(format!("too few image points for {what}")));
        }
        let m = Mat::from_rows(&imgs);
        if m.rank() != 2 {
            return Err(Error::DegenerateSurface(format!("image of {what} is not a line")));
        }
        LineH::from_forms(&m.nullspace())
    }

    /// `a_i`: the line of `M` over the base point `P_i`.
    pub fn exceptional_line(&self, i: usize) -> Result<LineH<F>> {
        self.pencil
            .line_at(self.points[i].coords())
            .ok_or_else(|| Error::DegenerateSurface(format!("L has rank 3 at point {}", i + 1)))
    }

    /// `c_ij`: image of the line through `P_i` and `P_j`.
    pub fn chord_line(&self, i: usize, j: usize) -> Result<LineH<F>> {
        let p = self.points[i].coords();
        let q = self.points[j].coords();
        let samples: Vec<Vec<F>> = [1i64, 2, -1, 3]
            .iter()
            .map(|&t| {
                let t = F::from_i64(t);
                p.iter().zip(q).map(|(a, b)| a.clone() + t.clone() * b).collect()
            })
            .collect();
        self.line_through_images(&samples, &format!("chord {}{}", i + 1, j + 1))
    }

    /// `b_j`: image of the conic through the five points other than `P_j`.
    pub fn conic_line(&self, j: usize) -> Result<LineH<F>> {
        let five: Vec<&PlanePointP2<F>> =
            (0..6).filter(|&i| i != j).map(|i| &self.points[i]).collect();
        let m = Mat::from_rows(
            &five
                .iter()
                .map(|p| monomial_row(3, 2, p.coords()))
                .collect::<Vec<_>>(),
        );
        let ns = m.nullspace();
        if ns.len() != 1 {
            return Err(Error::DegenerateSurface("conic through five points is not unique".into()));
        }
        let conic = Form::from_coeffs(3, 2, ns[0].clone()).unwrap();
        let q0 = five[0].coords().to_vec();
        let bilinear = |u: &[F], v: &[F]| {
            let s: Vec<F> = u.iter().zip(v).map(|(a, b)| a.clone() + b).collect();
            (conic.eval(&s) - conic.eval(u) - conic.eval(v)) / F::from_i64(2)
        };
        // second intersections of lines through q0; points landing on the
        // base locus map to zero and are skipped
        let mut samples = Vec::new();
        for k in 0..64i64 {
            let d: Vec<F> = [1 + k % 5, 2 * k - 7, k * k - 3 * k + 2]
                .iter()
                .map(|&v| F::from_i64(v))
                .collect();
            let qd = conic.eval(&d);
            let b = bilinear(&q0, &d);
            let pt: Vec<F> = q0
                .iter()
                .zip(&d)
                .map(|(a, dd)| qd.clone() * a - F::from_i64(2) * b.clone() * dd)
                .collect();
            if self.image(&pt).iter().all(|c| c.is_zero()) {
                continue;
            }
            samples.push(pt);
            if samples.len() == 4 {
                break;
            }
        }
        self.line_through_images(&samples, &format!("conic {}", j + 1))
    }

    /// The 27 lines in the order `a1..a6, b1..b6, c12..c56`.
    pub fn lines(&self) -> Result<Vec<LineH<F>>> {
        let mut out = Vec::with_capacity(27);
        for i in 0..6 {
            out.push(self.exceptional_line(i)?);
        }
        for j in 0..6 {
            out.push(self.conic_line(j)?);
        }
        for &(i, j) in &C_PAIRS {
            out.push(self.chord_line(i, j)?);
        }
        for (k, l) in out.iter().enumerate() {
            if !line_on_surface(&self.cubic, l) {
                return Err(Error::DegenerateSurface(format!(
                    "{} does not lie on the surface",
                    line_label(k)
                )));
            }
        }
        Ok(out)
    }
}

/// True when `f` vanishes identically on the line (checked at five points).
pub fn line_on_surface<F: Field>(f: &CubicForm<F>, l: &LineH<F>) -> bool {
    let [p, q] = l.points();
    let scale = f.max_abs().max(1.0);
    [(1i64, 0i64), (0, 1), (1, 1), (1, -2), (2, 3)].iter().all(|&(s, t)| {
        let s = F::from_i64(s);
        let t = F::from_i64(t);
        let pt: Vec<F> = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| s.clone() * a + t.clone() * b)
            .collect();
        let norm = pt.iter().map(|x| x.magnitude()).fold(0.0, f64::max).max(1e-300);
        let v = f.eval(&pt);
        v.is_negligible(scale * norm.powi(3))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn pts(v: &[[i64; 3]]) -> Vec<PlanePointP2<Rational>> {
        v.iter().map(|p| PlanePointP2::from_i64(p)).collect()
    }

    const GENERIC: [[i64; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]];

    #[test]
    fn degenerate_inputs_rejected() {
        let collinear = pts(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [2, -1, 5]]);
        assert!(matches!(cubic_system_through(&collinear), Err(Error::DegeneratePoints(_))));
        // six points on the conic x0·x1 = x2²
        let conic = pts(&[[1, 0, 0], [0, 1, 0], [1, 1, 1], [1, 4, 2], [4, 1, 2], [1, 9, 3]]);
        assert!(matches!(cubic_system_through(&conic), Err(Error::DegeneratePoints(_))));
        let dup = pts(&[[1, 0, 0], [2, 0, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]]);
        assert!(matches!(cubic_system_through(&dup), Err(Error::DegeneratePoints(_))));
    }

    #[test]
    fn generic_blowup_is_consistent() {
        let s = BlowupSurface::from_points(pts(&GENERIC)).unwrap();
        for b in &s.basis {
            for p in &s.points {
                assert!(b.eval(p.coords()).is_zero());
            }
        }
        for p in &s.points {
            assert_eq!(s.l.eval(p.coords()).rank(), 2);
        }
        let x = [3, -2, 7].map(Rational::from_i64);
        assert_eq!(s.l.eval(&x).rank(), 3);
        let samples: Vec<(Vec<Rational>, Vec<Rational>)> = (0..5)
            .map(|k| {
                (
                    vec![Rational::from_i64(k), Rational::from_i64(2 - k), Rational::from_i64(k * k)],
                    vec![
                        Rational::from_i64(1),
                        Rational::from_i64(k),
                        Rational::from_i64(-3),
                        Rational::from_i64(k + 4),
                    ],
                )
            })
            .collect();
        assert!(s.bilinear_identity_holds(&samples));
        assert!(smoothness_check(&s.cubic).smooth);
        let lines = s.lines().unwrap();
        assert_eq!(lines.len(), 27);
    }

    #[test]
    fn transposed_reading_breaks_identity() {
        let s = BlowupSurface::from_points(pts(&GENERIC)).unwrap();
        let wrong = s.pencil.transpose();
        let x = vec![Rational::from_i64(1), Rational::from_i64(2), Rational::from_i64(-1)];
        let z = vec![Rational::from_i64(2), Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(5)];
        assert_ne!(wrong.eval(&z).mul_vec(&x), s.l.eval(&x).mul_vec(&z));
    }

    #[test]
    fn singular_cubics_detected() {
        let z0cubed: CubicForm<Rational> = Form::from_terms(4, 3, &[(Rational::from_i64(1), vec![3, 0, 0, 0])]);
        assert!(!smoothness_check(&z0cubed).smooth);
        let f: CubicForm<Rational> = Form::from_terms(
            4,
            3,
            &[
                (Rational::from_i64(1), vec![1, 1, 1, 0]),
                (Rational::from_i64(1), vec![0, 0, 0, 3]),
            ],
        );
        assert!(!smoothness_check(&f).smooth);
        assert!(smoothness_check(&crate::poly::fermat_cubic::<Rational>()).smooth);
    }

    #[test]
    fn labels() {
        assert_eq!(line_label(0), "a1");
        assert_eq!(line_label(11), "b6");
        assert_eq!(line_label(12), "c12");
        assert_eq!(line_label(26), "c56");
        assert_eq!(c_index(3, 1), c_index(1, 3));
    }
}
