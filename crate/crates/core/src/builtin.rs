//! Built-in surfaces and matrices.
//!
//! `fermat` and `f5` come with the explicit representations worked out for
//! them; `clebsch` (the diagonal cubic, all 27 lines real) is an extra test
//! surface.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::pencil::LinearPencil;
use crate::poly::{CubicForm, Form, PlaneCubic};
use crate::projective::{LineH, PlanePointP2};
use crate::scalars::{ComplexF, Eisenstein, Field, Rational};
use crate::surface::BlowupSurface;

type E = Eisenstein;

fn coeff_token(tok: &str) -> Result<E> {
    match tok {
        "" => Ok(E::one()),
        "w" => Ok(E::omega()),
        "w2" => Ok(E::omega_sq()),
        t => t
            .parse::<i64>()
            .map(E::from_i64)
            .map_err(|_| Error::Parse(format!("bad coefficient `{t}`"))),
    }
}

/// Parses a linear form such as `w*z0+z1-2*z3` (`w` is ω, `w2` is ω²).
pub fn parse_linear_eisenstein(s: &str) -> Result<Vec<E>> {
    let mut out = vec![E::zero(); 4];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(out);
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let zpos = body
            .rfind('z')
            .ok_or_else(|| Error::Parse(format!("missing variable in `{body}`")))?;
        let var: usize = body[zpos + 1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable in `{body}`")))?;
        if var > 3 {
            return Err(Error::Parse(format!("variable index {var} out of range")));
        }
        let mut c = E::one();
        for tok in body[..zpos].split('*').filter(|x| !x.is_empty()) {
            c = c * coeff_token(tok)?;
        }
        if neg {
            c = -c;
        }
        out[var] = out[var].clone() + c;
    }
    Ok(out)
}

/// Builds a pencil from nine entry strings (row-major).
pub fn pencil_eisenstein(entries: [&str; 9]) -> LinearPencil<E> {
    let e: Vec<Vec<E>> = entries
        .iter()
        .map(|s| parse_linear_eisenstein(s).expect("valid built-in entry"))
        .collect();
    let rows: [[Vec<E>; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| e[3 * i + j].clone()));
    LinearPencil::from_entries(&rows)
}

fn w() -> E {
    E::omega()
}

fn r(n: i64) -> E {
    E::from_i64(n)
}

/// The six base points `(1,0,0), (0,1,0), (0,0,1), (1,1,1), (1,ω,ω²), (1,ω²,ω)`.
pub fn fermat_base_points() -> Vec<PlanePointP2<E>> {
    let w2 = E::omega_sq();
    [
        [r(1), r(0), r(0)],
        [r(0), r(1), r(0)],
        [r(0), r(0), r(1)],
        [r(1), r(1), r(1)],
        [r(1), w(), w2.clone()],
        [r(1), w2, w()],
    ]
    .into_iter()
    .map(|c| PlanePointP2::new(c.to_vec()).unwrap())
    .collect()
}

/// The cubics through the Fermat base points whose image is exactly
/// `z0³ + z1³ + z2³ + z3³ = 0`.
pub fn fermat_cubic_basis() -> Vec<PlaneCubic<E>> {
    let ab = |a: i64, b: i64| E::from_i64(a) + w() * E::from_i64(b);
    let t = |c: E, e: [u32; 3]| (c, e.to_vec());
    vec![
        Form::from_terms(3, 3, &[t(ab(1, -1), [2, 0, 1]), t(ab(-2, -1), [1, 2, 0]), t(ab(1, 2), [0, 1, 2])]),
        Form::from_terms(3, 3, &[t(ab(-1, -2), [2, 0, 1]), t(ab(2, 1), [1, 2, 0]), t(ab(-1, 1), [0, 1, 2])]),
        Form::from_terms(3, 3, &[t(ab(-1, 1), [2, 1, 0]), t(ab(2, 1), [1, 0, 2]), t(ab(-1, -2), [0, 2, 1])]),
        Form::from_terms(3, 3, &[t(ab(1, 2), [2, 1, 0]), t(ab(-2, -1), [1, 0, 2]), t(ab(1, -1), [0, 2, 1])]),
    ]
}

/// The Fermat cubic surface as a blow-up, over ℚ(ω).
pub fn fermat_surface() -> BlowupSurface<E> {
    BlowupSurface::from_points_and_basis(fermat_base_points(), fermat_cubic_basis())
        .expect("Fermat blow-up is valid")
}

/// The Hilbert-Burch matrix of the Fermat base points in its standard form,
/// rows `(x1 x1 x2 x2 / x2 ωx2 ωx0 x0 / ωx0 x0 x1 ωx1)`.
pub fn fermat_l_matrix() -> Vec<Vec<Vec<E>>> {
    let x = |k: usize, c: E| {
        let mut v = vec![E::zero(); 3];
        v[k] = c;
        v
    };
    vec![
        vec![x(1, r(1)), x(1, r(1)), x(2, r(1)), x(2, r(1))],
        vec![x(2, r(1)), x(2, w()), x(0, w()), x(0, r(1))],
        vec![x(0, w()), x(0, r(1)), x(1, r(1)), x(1, w())],
    ]
}

/// The representation `M` of the Fermat cubic.
pub fn fermat_m() -> LinearPencil<E> {
    pencil_eisenstein([
        "0", "z0+z1", "z2+z3", //
        "w*z2+z3", "0", "z0+w*z1", //
        "w*z0+z1", "z2+w*z3", "0",
    ])
}

/// A representation of the Fermat cubic not equivalent to `M`.
pub fn fermat_m_prime() -> LinearPencil<E> {
    pencil_eisenstein([
        "0", "z2+w*z3", "z0+w*z1", //
        "w*z0+z1", "0", "z2+z3", //
        "w*z2+z3", "z0+z1", "0",
    ])
}

/// A representation of the Fermat cubic equivalent to `M`.
pub fn fermat_m_double_prime() -> LinearPencil<E> {
    pencil_eisenstein([
        "0", "w*z0+z1+z2+w*z3", "w*z0+z1+w2*z2+z3", //
        "w*z0+w2*z1+z2+z3", "0", "w*z0+z3", //
        "z0+w*z1+w*z2+w*z3", "z1+z2", "0",
    ])
}

/// A self-adjoint representation of the Fermat cubic.
pub fn fermat_u1() -> LinearPencil<E> {
    pencil_eisenstein([
        "0", "w2*z2+z3", "w2*z0+z1", //
        "w*z2+z3", "z0+z1", "0", //
        "w*z0+z1", "0", "z2+z3",
    ])
}

/// A second self-adjoint representation, hermitean equivalent to `U1`.
pub fn fermat_u2() -> LinearPencil<E> {
    pencil_eisenstein([
        "3*z0+3*z3", "w2*z0+w2*z1+w*z2+w2*z3", "z0+w*z1+z2+z3", //
        "w*z0+w*z1+w2*z2+w*z3", "z0+z1", "0", //
        "z0+w2*z1+z2+z3", "0", "z2+z3",
    ])
}

/// `A` with `U1 = A · U2 · A*`.
pub fn fermat_u_transform() -> Mat<E> {
    let w2 = E::omega_sq();
    Mat::from_rows(&[
        vec![r(1), -w2.clone(), r(-1)],
        vec![r(0), w2, r(0)],
        vec![r(0), r(0), w()],
    ])
}

/// The lines of `M` as printed in 2×4 form, in base-point order.
pub fn fermat_lines_of_m() -> Vec<LineH<E>> {
    [
        "w*z0+z1;w*z2+z3",
        "z0+z1;z2+w*z3",
        "z0+w*z1;z2+z3",
        "z0+z3;z1+z2",
        "z0+w*z3;z1+w*z2",
        "w*z0+z3;w*z1+z2",
    ]
    .iter()
    .map(|s| line_eisenstein(s))
    .collect()
}

/// The lines of `Mᵗ`, in base-point order.
pub fn fermat_lines_of_mt() -> Vec<LineH<E>> {
    [
        "z0+z1;z2+z3",
        "z0+w*z1;w*z2+z3",
        "w*z0+z1;z2+w*z3",
        "w*z0+z3;z1+w*z2",
        "z0+z3;w*z1+z2",
        "z0+w*z3;z1+z2",
    ]
    .iter()
    .map(|s| line_eisenstein(s))
    .collect()
}

/// A line given as `form;form`.
pub fn line_eisenstein(s: &str) -> LineH<E> {
    let (a, b) = s.split_once(';').expect("two forms");
    LineH::from_forms(&[
        parse_linear_eisenstein(a).unwrap(),
        parse_linear_eisenstein(b).unwrap(),
    ])
    .expect("rank-2 line")
}

/// The 27 lines of the Fermat cubic in their printed 2×4 form.
pub fn fermat_27_lines() -> Vec<LineH<E>> {
    [
        "z0+z1;z2+z3", "z0+z1;z2+w*z3", "z0+z1;w*z2+z3",
        "z0+w*z1;z2+z3", "z0+w*z1;z2+w*z3", "z0+w*z1;w*z2+z3",
        "w*z0+z1;z2+z3", "w*z0+z1;z2+w*z3", "w*z0+z1;w*z2+z3",
        "z0+z2;z1+z3", "z0+z2;z1+w*z3", "z0+z2;w*z1+z3",
        "z0+w*z2;z1+z3", "z0+w*z2;z1+w*z3", "z0+w*z2;w*z1+z3",
        "w*z0+z2;z1+z3", "w*z0+z2;z1+w*z3", "w*z0+z2;w*z1+z3",
        "z0+z3;z1+z2", "z0+z3;z1+w*z2", "z0+z3;w*z1+z2",
        "z0+w*z3;z1+z2", "z0+w*z3;z1+w*z2", "z0+w*z3;w*z1+z2",
        "w*z0+z3;z1+z2", "w*z0+z3;z1+w*z2", "w*z0+z3;w*z1+z2",
    ]
    .iter()
    .map(|s| line_eisenstein(s))
    .collect()
}

/// The Clebsch diagonal cubic `Σ zᵢ³ − (Σ zᵢ)³`.
pub fn clebsch_cubic() -> CubicForm<Rational> {
    let one = Rational::from_i64(1);
    let s = Form::linear(&[one.clone(), one.clone(), one.clone(), one]);
    crate::poly::fermat_cubic::<Rational>().sub(&s.pow(3))
}

/// The F5-type surface `(25/6·z0² + z1²)(z0 + z2) − z3(z3 − z2/2)(z3 − 2z2/3)`.
pub fn f5_cubic() -> CubicForm<Rational> {
    let q = |n: i64, d: i64| Rational::from_ratio(n, d);
    Form::from_terms(
        4,
        3,
        &[
            (q(25, 6), vec![3, 0, 0, 0]),
            (q(25, 6), vec![2, 0, 1, 0]),
            (q(1, 1), vec![1, 2, 0, 0]),
            (q(1, 1), vec![0, 2, 1, 0]),
            (q(-1, 1), vec![0, 0, 0, 3]),
            (q(7, 6), vec![0, 0, 1, 2]),
            (q(-1, 3), vec![0, 0, 2, 1]),
        ],
    )
}

pub fn to_float_form(f: &CubicForm<Rational>) -> CubicForm<ComplexF> {
    f.map(|c| ComplexF::from_rational(c))
}

fn cf(re: f64, im: f64) -> ComplexF {
    ComplexF::new(re, im)
}

/// The printed definite representation of the F5 surface (5 decimals).
pub fn f5_definite_rep() -> LinearPencil<ComplexF> {
    let c = |z: Complex64| ComplexF::from_c64(z);
    let i = Complex64::new(0.0, 1.0);
    let d13_scale = Complex64::new(1.0, 0.0) / (28.68441 * (Complex64::new(1.0, 0.0) - i));
    let d23_scale = Complex64::new(1.0, 1.0);
    let s6 = 6f64.sqrt() / 10.0;
    let zero = || vec![cf(0.0, 0.0); 4];
    let d11 = vec![cf(-1.0, 0.0), cf(0.0, 0.0), cf(-0.98987, 0.0), cf(-0.01519, 0.0)];
    let d13 = vec![
        c(2.04124 * d13_scale),
        c(-i * d13_scale),
        cf(0.0, 0.0),
        c(8.14425 * d13_scale),
    ];
    let d22 = vec![cf(0.0, 0.0), cf(0.0, 0.0), cf(-2.0, 0.0), cf(3.0, 0.0)];
    let d23 = vec![c(0.5 * d23_scale), c(-i * s6 * d23_scale), cf(0.0, 0.0), cf(0.0, 0.0)];
    let d33 = vec![cf(0.0, 0.0), cf(0.0, 0.0), cf(0.0, 0.0), cf(-0.02020, 0.0)];
    let conj = |v: &Vec<ComplexF>| v.iter().map(|x| x.conj()).collect::<Vec<_>>();
    let rows: [[Vec<ComplexF>; 3]; 3] = [
        [d11, zero(), d13.clone()],
        [zero(), d22, d23.clone()],
        [conj(&d13), conj(&d23), d33],
    ];
    LinearPencil::from_entries(&rows)
}

/// The printed indefinite self-adjoint representation `U′` of the F5
/// surface. The printed coefficients are hermitean only to rounding, so
/// each coefficient matrix is replaced by its hermitean part.
pub fn f5_u_prime() -> LinearPencil<ComplexF> {
    let m = |rows: [[(f64, f64); 3]; 3]| {
        Mat::from_fn(3, 3, |i, j| cf(rows[i][j].0, rows[i][j].1))
    };
    let u0 = m([
        [(-0.09032, 0.0), (0.0, 2.04691), (0.08361, 0.0)],
        [(0.0, -2.04691), (-0.16722, 0.0), (0.0, 0.02718)],
        [(0.08361, 0.0), (0.0, -0.02719), (-1.0, 0.0)],
    ]);
    let u1 = m([
        [(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
        [(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        [(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    ]);
    let u2 = m([
        [(-0.00662, 0.0), (0.0, -0.01360), (-0.58361, 0.0)],
        [(0.0, 0.01361), (0.00055, 0.0), (0.0, 0.0)],
        [(-0.58361, 0.0), (0.0, 0.0), (-1.0, 0.0)],
    ]);
    let u3 = m([
        [(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        [(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
        [(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
    ]);
    let half = cf(0.5, 0.0);
    let herm = |a: Mat<ComplexF>| a.add(&a.adjoint()).scale(&half);
    LinearPencil::new([herm(u0), herm(u1), herm(u2), herm(u3)]).unwrap()
}

/// The real line `z0 + z2 = 3z3 − 2z2 = 0` of the F5 surface.
pub fn f5_line_r() -> LineH<ComplexF> {
    LineH::from_forms(&[
        vec![cf(1.0, 0.0), cf(0.0, 0.0), cf(1.0, 0.0), cf(0.0, 0.0)],
        vec![cf(0.0, 0.0), cf(0.0, 0.0), cf(-2.0, 0.0), cf(3.0, 0.0)],
    ])
    .unwrap()
}

/// The four real tritangent planes through `r` besides `z0 + z2 = 0`,
/// labelled γ, β, β′, γ′, as printed to 5 decimals.
pub fn f5_printed_planes() -> Vec<(&'static str, [f64; 4])> {
    vec![
        ("gamma", [1.0, 0.0, 0.98987, 0.01519]),
        ("beta", [1.0, 0.0, 0.01345, 1.47982]),
        ("beta_prime", [1.0, 0.0, -3.00333, 6.00499]),
        ("gamma_prime", [0.0, 0.0, -2.0, 3.0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::fermat_cubic;

    #[test]
    fn parser_handles_signs_and_omega() {
        let f = parse_linear_eisenstein("w*z0-z1+w2*z3").unwrap();
        assert_eq!(f[0], E::omega());
        assert_eq!(f[1], E::from_i64(-1));
        assert_eq!(f[2], E::zero());
        assert_eq!(f[3], E::omega_sq());
        assert!(parse_linear_eisenstein("z7").is_err());
    }

    #[test]
    fn fermat_pencils_have_fermat_determinant() {
        let f = fermat_cubic::<E>();
        for m in [fermat_m(), fermat_m_prime(), fermat_m_double_prime(), fermat_u1(), fermat_u2()] {
            assert!(m.det().proportional_to(&f), "{m}");
        }
    }

    #[test]
    fn printed_u_transform_holds() {
        let a = fermat_u_transform();
        let lhs = fermat_u2().transform(&a, &a.adjoint());
        assert_eq!(lhs, fermat_u1());
    }

    #[test]
    fn fermat_line_list_lies_on_surface() {
        let f = fermat_cubic::<E>();
        let lines = fermat_27_lines();
        assert_eq!(lines.len(), 27);
        for l in &lines {
            assert!(crate::surface::line_on_surface(&f, l));
        }
    }

    #[test]
    fn definite_rep_eigenvalues() {
        let d = f5_definite_rep();
        let z = [0.02, 0.0, -1.2, -0.3].map(|v| cf(v, 0.0));
        let m = d.eval(&z);
        let nm = nalgebra::Matrix3::from_fn(|i, j| m[(i, j)].z);
        let mut ev: Vec<f64> = nm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let expect = [0.00293, 1.17540, 1.50013];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-4, "{ev:?}");
        }
    }
}
