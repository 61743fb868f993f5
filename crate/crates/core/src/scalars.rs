//! Coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Four implementations are
//! provided: exact rationals ([`Rational`]), Gaussian rationals
//! ([`Gaussian`], `a + b·i`), Eisenstein rationals ([`Eisenstein`],
//! `a + b·ω` with `ω² = −1 − ω`) and tolerance-carrying complex floats
//! ([`ComplexF`]). The [`Scalar`] enum wraps all four for textual and JSON I/O.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = BigRational;

/// Default comparison tolerance for [`ComplexF`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Which coefficient field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarKind {
    RationalQ,
    GaussianQ,
    EisensteinQ,
    ComplexFloat,
}

impl ScalarKind {
    pub fn is_exact(self) -> bool {
        self != ScalarKind::ComplexFloat
    }
}

/// A field with complex conjugation.
///
/// Exact implementations decide `is_zero` structurally. [`ComplexF`] decides it
/// against its tolerance, and `is_negligible` measures relative to a caller
/// supplied scale (the largest entry of a matrix being reduced, say).
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const KIND: ScalarKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// Absolute value as a float (approximate for exact fields).
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    /// Nearest field element to a complex number, if one with small height is
    /// close enough. Floats convert directly.
    fn from_complex(c: Complex64) -> Option<Self>;
    /// A primitive cube root of unity, if the field has one.
    fn cube_root_of_unity() -> Option<Self>;
    /// An element with `conj(x) = -x`, `x != 0`, if the field has one.
    fn imaginary_element() -> Option<Self>;
    /// Some `s` with `s * conj(s) = r` for a real positive `r`.
    fn norm_root(r: &Self) -> Option<Self>;
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;

    fn is_exact() -> bool {
        Self::KIND.is_exact()
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other).is_zero()
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn is_real(&self) -> bool {
        self.approx_eq(&self.conj())
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    /// `self * conj(self)`; real and nonnegative.
    fn norm_sq(&self) -> Self {
        self.clone() * self.conj()
    }

    /// Real part as a float.
    fn re_f64(&self) -> f64 {
        self.to_complex().re
    }
}

// ---------------------------------------------------------------------------
// helpers for rationals

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Best rational approximation with bounded denominator, accepted only when it
/// reproduces `x` to near machine precision.
fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    const MAX_DEN: i64 = 1 << 24;
    let tol = 1e-10 * x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > MAX_DEN as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if ((p1 as f64) / (q1 as f64) - x).abs() <= tol {
            return Some(Rational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn fmt_part(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(rat(0));
    }
    if s == "+" {
        return Ok(rat(1));
    }
    if s == "-" {
        return Ok(-rat(1));
    }
    let s = s.strip_prefix('+').unwrap_or(s);
    Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

/// Splits `"x+y*u"` into (`"x"`, `"y"`) for the unit suffix `u`.
fn split_two_part(s: &str, unit: char) -> Result<(Rational, Rational)> {
    let s = s.trim();
    let Some(body) = s.strip_suffix(unit) else {
        return Ok((parse_rational(s)?, rat(0)));
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => Ok((parse_rational(&body[..i])?, parse_rational(&body[i..])?)),
        None => Ok((rat(0), parse_rational(body)?)),
    }
}

fn fmt_two_part(a: &Rational, b: &Rational, unit: char) -> String {
    let sign = if b.is_negative() { '-' } else { '+' };
    format!("{}{}{}*{}", fmt_part(a), sign, fmt_part(&b.abs()), unit)
}

// ---------------------------------------------------------------------------
// Rational

impl Field for Rational {
    const KIND: ScalarKind = ScalarKind::RationalQ;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        rat_to_f64(self).abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }
    fn from_complex(c: Complex64) -> Option<Self> {
        if c.im.abs() > 1e-9 * c.norm().max(1.0) {
            return None;
        }
        rationalize(c.re)
    }
    fn cube_root_of_unity() -> Option<Self> {
        None
    }
    fn imaginary_element() -> Option<Self> {
        None
    }
    fn norm_root(r: &Self) -> Option<Self> {
        rational_sqrt(r)
    }
    fn to_text(&self) -> String {
        fmt_part(self)
    }
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(rat(0), rat(1))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}
impl<'a> Add<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(self.re + &o.re, self.im + &o.im)
    }
}
impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}
impl<'a> Sub<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(self.re - &o.re, self.im - &o.im)
    }
}
impl<'a> Mul<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}
impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        self * &o
    }
}
impl<'a> Div<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn div(self, o: &Gaussian) -> Gaussian {
        self * &o.inv().expect("division by zero")
    }
}
impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, o: Gaussian) -> Gaussian {
        self / &o
    }
}
impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

/// Searches `x² + y² = r` over small rationals.
fn sum_of_two_squares(r: &Rational) -> Option<(Rational, Rational)> {
    if let Some(s) = rational_sqrt(r) {
        return Some((s, rat(0)));
    }
    // r = n/d = n·d/d², so it suffices to write n·d as a sum of two squares
    let nd = r.numer() * r.denom();
    let nd = nd.to_i64()?;
    if nd <= 0 || nd > 1 << 40 {
        return None;
    }
    let mut x = 0i64;
    while x * x <= nd {
        let rest = nd - x * x;
        let y = (rest as f64).sqrt().round() as i64;
        for y in [y - 1, y, y + 1] {
            if y >= 0 && y * y == rest {
                let d = r.denom();
                return Some((
                    Rational::new(BigInt::from(x), d.clone()),
                    Rational::new(BigInt::from(y), d.clone()),
                ));
            }
        }
        x += 1;
    }
    None
}

impl Field for Gaussian {
    const KIND: ScalarKind = ScalarKind::GaussianQ;

    fn zero() -> Self {
        Gaussian::new(rat(0), rat(0))
    }
    fn one() -> Self {
        Gaussian::new(rat(1), rat(0))
    }
    fn from_rational(q: &Rational) -> Self {
        Gaussian::new(q.clone(), rat(0))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -(&self.im / &n)))
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }
    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn from_complex(c: Complex64) -> Option<Self> {
        Some(Gaussian::new(rationalize(c.re)?, rationalize(c.im)?))
    }
    fn cube_root_of_unity() -> Option<Self> {
        None
    }
    fn imaginary_element() -> Option<Self> {
        Some(Gaussian::i())
    }
    fn norm_root(r: &Self) -> Option<Self> {
        if !r.im.is_zero() || r.re.is_negative() {
            return None;
        }
        sum_of_two_squares(&r.re).map(|(x, y)| Gaussian::new(x, y))
    }
    fn to_text(&self) -> String {
        fmt_two_part(&self.re, &self.im, 'i')
    }
    fn parse_text(s: &str) -> Result<Self> {
        let (a, b) = split_two_part(s, 'i')?;
        Ok(Gaussian::new(a, b))
    }
}

// ---------------------------------------------------------------------------
// Eisenstein rationals

/// `a + b·ω` with rational `a, b`, where `ω` is a primitive cube root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: Rational,
    pub b: Rational,
}

impl Eisenstein {
    pub fn new(a: Rational, b: Rational) -> Self {
        Eisenstein { a, b }
    }

    pub fn omega() -> Self {
        Eisenstein::new(rat(0), rat(1))
    }

    /// `ω² = −1 − ω`.
    pub fn omega_sq() -> Self {
        Eisenstein::new(rat(-1), rat(-1))
    }

    /// Field norm `a² − ab + b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}
impl<'a> Add<&'a Eisenstein> for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a + &o.a, self.b + &o.b)
    }
}
impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}
impl<'a> Sub<&'a Eisenstein> for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: &Eisenstein) -> Eisenstein {
        Eisenstein::new(self.a - &o.a, self.b - &o.b)
    }
}
impl<'a> Mul<&'a Eisenstein> for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: &Eisenstein) -> Eisenstein {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω
        let bd = &self.b * &o.b;
        Eisenstein::new(
            &self.a * &o.a - &bd,
            &self.a * &o.b + &self.b * &o.a - bd,
        )
    }
}
impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Eisenstein) -> Eisenstein {
        self * &o
    }
}
impl<'a> Div<&'a Eisenstein> for Eisenstein {
    type Output = Eisenstein;
    fn div(self, o: &Eisenstein) -> Eisenstein {
        self * &o.inv().expect("division by zero")
    }
}
impl Div for Eisenstein {
    type Output = Eisenstein;
    fn div(self, o: Eisenstein) -> Eisenstein {
        self / &o
    }
}
impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Field for Eisenstein {
    const KIND: ScalarKind = ScalarKind::EisensteinQ;

    fn zero() -> Self {
        Eisenstein::new(rat(0), rat(0))
    }
    fn one() -> Self {
        Eisenstein::new(rat(1), rat(0))
    }
    fn from_rational(q: &Rational) -> Self {
        Eisenstein::new(q.clone(), rat(0))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Eisenstein::new(c.a / &n, c.b / &n))
    }
    fn conj(&self) -> Self {
        // conj(a + bω) = a + bω² = (a − b) − bω
        Eisenstein::new(&self.a - &self.b, -self.b.clone())
    }
    fn magnitude(&self) -> f64 {
        rat_to_f64(&self.norm()).sqrt()
    }
    fn to_complex(&self) -> Complex64 {
        let a = rat_to_f64(&self.a);
        let b = rat_to_f64(&self.b);
        Complex64::new(a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
    fn from_complex(c: Complex64) -> Option<Self> {
        let b = c.im * 2.0 / 3f64.sqrt();
        let a = c.re + 0.5 * b;
        let out = Eisenstein::new(rationalize(a)?, rationalize(b)?);
        if (out.to_complex() - c).norm() <= 1e-9 * c.norm().max(1.0) {
            Some(out)
        } else {
            None
        }
    }
    fn cube_root_of_unity() -> Option<Self> {
        Some(Eisenstein::omega())
    }
    fn imaginary_element() -> Option<Self> {
        // 1 + 2ω = √−3
        Some(Eisenstein::new(rat(1), rat(2)))
    }
    fn norm_root(r: &Self) -> Option<Self> {
        if !r.b.is_zero() || r.a.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt(&r.a) {
            return Some(Eisenstein::from_rational(&s));
        }
        // N(1 + 2ω) = 3
        if let Some(s) = rational_sqrt(&(&r.a / rat(3))) {
            return Some(Eisenstein::new(s.clone(), s * rat(2)));
        }
        // N(x + yω) = x² − xy + y²; search small numerators over the denominator
        let nd = (r.a.numer() * r.a.denom()).to_i64()?;
        if nd <= 0 || nd > 1 << 30 {
            return None;
        }
        let bound = (4.0 * nd as f64 / 3.0).sqrt() as i64 + 1;
        for y in 0..=bound {
            for x in -bound..=bound {
                if x * x - x * y + y * y == nd {
                    let d = r.a.denom();
                    return Some(Eisenstein::new(
                        Rational::new(BigInt::from(x), d.clone()),
                        Rational::new(BigInt::from(y), d.clone()),
                    ));
                }
            }
        }
        None
    }
    fn to_text(&self) -> String {
        fmt_two_part(&self.a, &self.b, 'w')
    }
    fn parse_text(s: &str) -> Result<Self> {
        let (a, b) = split_two_part(s, 'w')?;
        Ok(Eisenstein::new(a, b))
    }
}

// ---------------------------------------------------------------------------
// Complex floats

/// A complex float with a comparison tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexF {
    pub z: Complex64,
    pub tol: f64,
}

impl ComplexF {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexF {
            z: Complex64::new(re, im),
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn from_c64(z: Complex64) -> Self {
        ComplexF {
            z,
            tol: DEFAULT_TOLERANCE,
        }
    }

    /// Same value, different tolerance. Panics unless `tol > 0`.
    pub fn with_tol(self, tol: f64) -> Self {
        assert!(tol > 0.0, "tolerance must be strictly positive");
        ComplexF { z: self.z, tol }
    }

    fn lift(self, z: Complex64, other: &ComplexF) -> ComplexF {
        ComplexF {
            z,
            tol: self.tol.max(other.tol),
        }
    }
}

impl fmt::Display for ComplexF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for ComplexF {
    type Output = ComplexF;
    fn add(self, o: ComplexF) -> ComplexF {
        self.lift(self.z + o.z, &o)
    }
}
impl<'a> Add<&'a ComplexF> for ComplexF {
    type Output = ComplexF;
    fn add(self, o: &ComplexF) -> ComplexF {
        self.lift(self.z + o.z, o)
    }
}
impl Sub for ComplexF {
    type Output = ComplexF;
    fn sub(self, o: ComplexF) -> ComplexF {
        self.lift(self.z - o.z, &o)
    }
}
impl<'a> Sub<&'a ComplexF> for ComplexF {
    type Output = ComplexF;
    fn sub(self, o: &ComplexF) -> ComplexF {
        self.lift(self.z - o.z, o)
    }
}
impl Mul for ComplexF {
    type Output = ComplexF;
    fn mul(self, o: ComplexF) -> ComplexF {
        self.lift(self.z * o.z, &o)
    }
}
impl<'a> Mul<&'a ComplexF> for ComplexF {
    type Output = ComplexF;
    fn mul(self, o: &ComplexF) -> ComplexF {
        self.lift(self.z * o.z, o)
    }
}
impl Div for ComplexF {
    type Output = ComplexF;
    fn div(self, o: ComplexF) -> ComplexF {
        self.lift(self.z / o.z, &o)
    }
}
impl<'a> Div<&'a ComplexF> for ComplexF {
    type Output = ComplexF;
    fn div(self, o: &ComplexF) -> ComplexF {
        self.lift(self.z / o.z, o)
    }
}
impl Neg for ComplexF {
    type Output = ComplexF;
    fn neg(self) -> ComplexF {
        ComplexF {
            z: -self.z,
            tol: self.tol,
        }
    }
}

impl Field for ComplexF {
    const KIND: ScalarKind = ScalarKind::ComplexFloat;

    fn zero() -> Self {
        ComplexF::new(0.0, 0.0)
    }
    fn one() -> Self {
        ComplexF::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        ComplexF::new(rat_to_f64(q), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.z.norm() <= self.tol
    }
    fn is_negligible(&self, scale: f64) -> bool {
        self.z.norm() <= self.tol * scale.max(1.0)
    }
    fn approx_eq(&self, other: &Self) -> bool {
        let tol = self.tol.max(other.tol);
        let scale = 1f64.max(self.z.norm()).max(other.z.norm());
        (self.z - other.z).norm() <= tol * scale
    }
    fn inv(&self) -> Option<Self> {
        if self.z.norm() == 0.0 {
            None
        } else {
            Some(ComplexF {
                z: self.z.inv(),
                tol: self.tol,
            })
        }
    }
    fn conj(&self) -> Self {
        ComplexF {
            z: self.z.conj(),
            tol: self.tol,
        }
    }
    fn magnitude(&self) -> f64 {
        self.z.norm()
    }
    fn to_complex(&self) -> Complex64 {
        self.z
    }
    fn from_complex(c: Complex64) -> Option<Self> {
        Some(ComplexF::from_c64(c))
    }
    fn cube_root_of_unity() -> Option<Self> {
        Some(ComplexF::new(-0.5, 3f64.sqrt() / 2.0))
    }
    fn imaginary_element() -> Option<Self> {
        Some(ComplexF::new(0.0, 1.0))
    }
    fn norm_root(r: &Self) -> Option<Self> {
        if r.z.re < 0.0 {
            return None;
        }
        Some(ComplexF {
            z: Complex64::new(r.z.re.sqrt(), 0.0),
            tol: r.tol,
        })
    }
    fn to_text(&self) -> String {
        format!("{:?},{:?}", self.z.re, self.z.im)
    }
    fn parse_text(s: &str) -> Result<Self> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `re,im`, got `{s}`")))?;
        let p = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad float `{t}`")))
        };
        Ok(ComplexF::new(p(re)?, p(im)?))
    }
}

// ---------------------------------------------------------------------------
// Dynamic scalar

/// A scalar tagged with its field.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(Gaussian),
    Eisenstein(Eisenstein),
    Complex(ComplexF),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::RationalQ,
            Scalar::Gaussian(_) => ScalarKind::GaussianQ,
            Scalar::Eisenstein(_) => ScalarKind::EisensteinQ,
            Scalar::Complex(_) => ScalarKind::ComplexFloat,
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(x.clone()),
            Scalar::Gaussian(x) => Scalar::Gaussian(x.conj()),
            Scalar::Eisenstein(x) => Scalar::Eisenstein(x.conj()),
            Scalar::Complex(x) => Scalar::Complex(x.conj()),
        }
    }

    /// Field equality; tolerance-based for complex floats.
    pub fn scalar_eq(&self, other: &Scalar) -> Result<bool> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(a == b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Ok(a == b),
            (Scalar::Eisenstein(a), Scalar::Eisenstein(b)) => Ok(a == b),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(a.approx_eq(b)),
            _ => Err(Error::VariantMismatch(self.kind(), other.kind())),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(x) => x.to_complex(),
            Scalar::Gaussian(x) => x.to_complex(),
            Scalar::Eisenstein(x) => x.to_complex(),
            Scalar::Complex(x) => x.z,
        }
    }

    /// Parses the textual form; the field is inferred from the suffix
    /// (`i` Gaussian, `w` Eisenstein, a comma means a float pair).
    pub fn parse(s: &str) -> Result<Scalar> {
        let t = s.trim();
        if t.contains(',') {
            Ok(Scalar::Complex(ComplexF::parse_text(t)?))
        } else if t.ends_with('i') {
            Ok(Scalar::Gaussian(Gaussian::parse_text(t)?))
        } else if t.ends_with('w') {
            Ok(Scalar::Eisenstein(Eisenstein::parse_text(t)?))
        } else {
            Ok(Scalar::Rational(parse_rational(t)?))
        }
    }

    /// Converts into a concrete field, embedding rationals anywhere and
    /// anything into complex floats.
    pub fn into_field<F: Field>(&self) -> Result<F> {
        match (self, F::KIND) {
            (Scalar::Rational(q), _) => Ok(F::from_rational(q)),
            (_, ScalarKind::ComplexFloat) => {
                F::from_complex(self.to_complex()).ok_or_else(|| Error::Parse(self.to_string()))
            }
            (Scalar::Gaussian(x), ScalarKind::GaussianQ) => F::parse_text(&x.to_text()),
            (Scalar::Eisenstein(x), ScalarKind::EisensteinQ) => F::parse_text(&x.to_text()),
            _ => Err(Error::VariantMismatch(self.kind(), F::KIND)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => f.write_str(&x.to_text()),
            Scalar::Gaussian(x) => f.write_str(&x.to_text()),
            Scalar::Eisenstein(x) => f.write_str(&x.to_text()),
            Scalar::Complex(x) => f.write_str(&x.to_text()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Field::conj(&q(3, 2)), q(3, 2));
        assert_eq!(Eisenstein::omega().conj(), Eisenstein::new(q(-1, 1), q(-1, 1)));
        let g = Gaussian::new(q(1, 1), q(1, 1));
        assert_eq!(g.conj(), Gaussian::new(q(1, 1), q(-1, 1)));
    }

    #[test]
    fn scalar_eq_examples() {
        let a = Scalar::Rational(q(1, 3) + q(1, 6));
        assert!(a.scalar_eq(&Scalar::Rational(q(1, 2))).unwrap());
        let w = Eisenstein::omega();
        let w3 = w.clone() * &w * &w;
        assert!(Scalar::Eisenstein(w3)
            .scalar_eq(&Scalar::Eisenstein(Eisenstein::one()))
            .unwrap());
        let x = Scalar::Complex(ComplexF::new(1.0000000001, 0.0));
        assert!(x.scalar_eq(&Scalar::Complex(ComplexF::new(1.0, 0.0))).unwrap());
        assert!(matches!(
            a.scalar_eq(&Scalar::Complex(ComplexF::new(0.5, 0.0))),
            Err(Error::VariantMismatch(..))
        ));
    }

    #[test]
    fn omega_identities() {
        let w = Eisenstein::omega();
        assert_eq!(w.clone() * &w, Eisenstein::omega_sq());
        assert_eq!(
            Eisenstein::one() + &w + &Eisenstein::omega_sq(),
            Eisenstein::zero()
        );
        assert!((w.to_complex() - Complex64::new(-0.5, 0.75f64.sqrt())).norm() < 1e-15);
        assert_eq!(Eisenstein::from_complex(w.to_complex()), Some(w));
    }

    #[test]
    fn text_forms() {
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::Rational(q(3, 4)));
        assert_eq!(
            Scalar::parse("1/2-3*i").unwrap(),
            Scalar::Gaussian(Gaussian::new(q(1, 2), q(-3, 1)))
        );
        assert_eq!(
            Scalar::parse("-1/3+2/5*w").unwrap(),
            Scalar::Eisenstein(Eisenstein::new(q(-1, 3), q(2, 5)))
        );
        assert_eq!(Eisenstein::omega().to_text(), "0+1*w");
        assert!(Scalar::parse("1/x").is_err());
        assert!(matches!(Scalar::parse("1.5,-2").unwrap(), Scalar::Complex(_)));
    }

    #[test]
    fn norm_roots() {
        let r = Eisenstein::from_i64(7);
        let s = Eisenstein::norm_root(&r).unwrap();
        assert_eq!(s.norm_sq(), r);
        let g = Gaussian::norm_root(&Gaussian::from_ratio(5, 4)).unwrap();
        assert_eq!(g.norm_sq(), Gaussian::from_ratio(5, 4));
        assert!(Rational::norm_root(&q(2, 1)).is_none());
    }

    #[test]
    #[should_panic]
    fn zero_tolerance_rejected() {
        let _ = ComplexF::new(1.0, 0.0).with_tol(0.0);
    }
}
