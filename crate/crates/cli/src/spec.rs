//! Surface input: builtins, explicit cubics and six plane points.

use cubicdet::builtin::{clebsch_cubic, f5_cubic, fermat_surface};
use cubicdet::lineconfig::LineConfiguration;
use cubicdet::numlines::{find_lines_numeric, LineSearchOptions};
use cubicdet::poly::{num_monomials, CubicForm, Form};
use cubicdet::projective::{LineH, PlanePointP2};
use cubicdet::scalars::{ComplexF, Eisenstein, Field, Gaussian, Rational, Scalar, ScalarKind};
use cubicdet::surface::{line_on_surface, BlowupSurface};
use cubicdet::{Error, Result};
use serde::{Deserialize, Serialize};

/// A scalar in JSON: exact values as strings in their textual form, complex
/// floats as `[re, im]`. Plain numbers are accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JScalar {
    Text(String),
    Complex([f64; 2]),
    Number(f64),
}

impl JScalar {
    pub fn from_field<F: Field>(x: &F) -> Self {
        if F::is_exact() {
            JScalar::Text(x.to_text())
        } else {
            let c = x.to_complex();
            JScalar::Complex([c.re, c.im])
        }
    }

    pub fn to_scalar(&self) -> Result<Scalar> {
        match self {
            JScalar::Text(s) => Scalar::parse(s),
            JScalar::Complex([re, im]) => Ok(Scalar::Complex(ComplexF::new(*re, *im))),
            JScalar::Number(x) => {
                if x.fract() == 0.0 && x.abs() < 9.0e15 {
                    Ok(Scalar::Rational(Rational::from_integer((*x as i64).into())))
                } else {
                    Ok(Scalar::Complex(ComplexF::new(*x, 0.0)))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Builtin {
    Fermat,
    F5paper,
    /// Clebsch diagonal cubic, all 27 lines real.
    Clebsch,
}

impl Builtin {
    pub fn parse(s: &str) -> Option<Builtin> {
        match s {
            "fermat" => Some(Builtin::Fermat),
            "f5paper" => Some(Builtin::F5paper),
            "clebsch" => Some(Builtin::Clebsch),
            _ => None,
        }
    }
}

/// Exactly one way of giving the surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SurfaceSpec {
    Builtin(Builtin),
    /// 20 coefficients in graded-lex order `z0³, z0²z1, z0²z2, …, z3³`.
    Cubic(Vec<JScalar>),
    /// Six points of P², three coordinates each.
    Points(Vec<Vec<JScalar>>),
}

impl SurfaceSpec {
    /// A builtin name, inline JSON, `-` for stdin, or a path to a JSON file.
    pub fn from_arg(arg: &str) -> Result<SurfaceSpec> {
        if let Some(b) = Builtin::parse(arg) {
            return Ok(SurfaceSpec::Builtin(b));
        }
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else if arg == "-" {
            std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(format!("stdin: {e}")))?
        } else {
            std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
        };
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("surface spec: {e}")))
    }

    pub fn describe(&self) -> String {
        match self {
            SurfaceSpec::Builtin(b) => format!("builtin:{}", serde_json::to_value(b).unwrap().as_str().unwrap()),
            SurfaceSpec::Cubic(_) => "cubic".into(),
            SurfaceSpec::Points(_) => "points".into(),
        }
    }
}

/// A line configuration over one of the supported fields.
pub enum Resolved {
    Q(LineConfiguration<Rational>),
    G(LineConfiguration<Gaussian>),
    E(LineConfiguration<Eisenstein>),
    C(LineConfiguration<ComplexF>, Option<Vec<bool>>),
}

impl Resolved {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Resolved::Q(_) => ScalarKind::RationalQ,
            Resolved::G(_) => ScalarKind::GaussianQ,
            Resolved::E(_) => ScalarKind::EisensteinQ,
            Resolved::C(..) => ScalarKind::ComplexFloat,
        }
    }
}

/// Smallest field holding all the scalars.
fn common_kind(xs: &[Scalar]) -> Result<ScalarKind> {
    let mut k = ScalarKind::RationalQ;
    for x in xs {
        k = match (k, x.kind()) {
            (a, ScalarKind::RationalQ) => a,
            (ScalarKind::RationalQ, b) => b,
            (a, b) if a == b => a,
            (_, _) => ScalarKind::ComplexFloat,
        };
    }
    Ok(k)
}

fn to_field<F: Field>(xs: &[Scalar]) -> Result<Vec<F>> {
    xs.iter().map(|x| x.into_field::<F>()).collect()
}

fn cubic_from<F: Field>(c: &[Scalar]) -> Result<CubicForm<F>> {
    Form::from_coeffs(4, 3, to_field(c)?)
}

fn float_cubic<F: Field>(f: &CubicForm<F>) -> CubicForm<ComplexF> {
    f.map(|x| ComplexF::from_c64(x.to_complex()))
}

/// Numeric lines of a float cubic.
fn numeric(f: CubicForm<ComplexF>, opts: &LineSearchOptions) -> Result<Resolved> {
    let nl = find_lines_numeric(&f, opts)?;
    let cfg = LineConfiguration::from_lines(nl.lines, f)?;
    Ok(Resolved::C(cfg, Some(nl.real)))
}

/// Numeric lines rounded into `F` and verified exactly on the cubic.
fn rounded<F: Field>(f: CubicForm<F>, opts: &LineSearchOptions) -> Result<LineConfiguration<F>> {
    let nl = find_lines_numeric(&float_cubic(&f), opts)?;
    let mut lines = Vec::with_capacity(27);
    for l in &nl.lines {
        let rows: Option<Vec<Vec<F>>> = l
            .forms()
            .iter()
            .map(|r| r.iter().map(|x| if x.is_zero() { Some(F::zero()) } else { F::from_complex(x.z) }).collect())
            .collect();
        let line = rows
            .and_then(|r| LineH::from_forms(&r).ok())
            .filter(|m| line_on_surface(&f, m))
            .ok_or_else(|| {
                Error::UnsupportedField(format!(
                    "line {l} is not defined over {:?}; use --mode float",
                    F::KIND
                ))
            })?;
        lines.push(line);
    }
    LineConfiguration::from_lines(lines, f)
}

fn blowup<F: Field>(pts: &[Vec<Scalar>]) -> Result<LineConfiguration<F>> {
    let points = pts
        .iter()
        .map(|p| PlanePointP2::new(to_field::<F>(p)?))
        .collect::<Result<Vec<_>>>()?;
    let s = BlowupSurface::from_points(points)?;
    LineConfiguration::from_labeled(s.lines()?, s.cubic.clone())
}

fn cubic_exact<F: Field>(c: &[Scalar], opts: &LineSearchOptions) -> Result<LineConfiguration<F>> {
    rounded(cubic_from::<F>(c)?, opts)
}

/// Builds the line configuration. Default mode is exact for the Fermat
/// builtin and for point input, float for cubics.
pub fn resolve(spec: &SurfaceSpec, mode: Option<Mode>, opts: &LineSearchOptions) -> Result<Resolved> {
    match spec {
        SurfaceSpec::Builtin(Builtin::Fermat) => {
            let s = fermat_surface();
            match mode.unwrap_or(Mode::Exact) {
                Mode::Exact => Ok(Resolved::E(LineConfiguration::from_labeled(s.lines()?, s.cubic.clone())?)),
                Mode::Float => numeric(float_cubic(&s.cubic), opts),
            }
        }
        SurfaceSpec::Builtin(b) => {
            let f = if *b == Builtin::F5paper { f5_cubic() } else { clebsch_cubic() };
            match mode.unwrap_or(Mode::Float) {
                Mode::Exact => Ok(Resolved::Q(rounded(f, opts)?)),
                Mode::Float => numeric(float_cubic(&f), opts),
            }
        }
        SurfaceSpec::Cubic(c) => {
            let n = num_monomials(4, 3);
            if c.len() != n {
                return Err(Error::Parse(format!("a cubic needs {n} coefficients, got {}", c.len())));
            }
            let c: Vec<Scalar> = c.iter().map(JScalar::to_scalar).collect::<Result<_>>()?;
            let kind = common_kind(&c)?;
            match (mode.unwrap_or(Mode::Float), kind) {
                (Mode::Float, _) => numeric(cubic_from::<ComplexF>(&c)?, opts),
                (Mode::Exact, ScalarKind::RationalQ) => Ok(Resolved::Q(cubic_exact(&c, opts)?)),
                (Mode::Exact, ScalarKind::GaussianQ) => Ok(Resolved::G(cubic_exact(&c, opts)?)),
                (Mode::Exact, ScalarKind::EisensteinQ) => Ok(Resolved::E(cubic_exact(&c, opts)?)),
                (Mode::Exact, ScalarKind::ComplexFloat) => {
                    Err(Error::Parse("float coefficients need --mode float".into()))
                }
            }
        }
        SurfaceSpec::Points(p) => {
            if p.len() != 6 || p.iter().any(|q| q.len() != 3) {
                return Err(Error::Parse("expected six points with three coordinates each".into()));
            }
            let p: Vec<Vec<Scalar>> = p
                .iter()
                .map(|q| q.iter().map(JScalar::to_scalar).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let flat: Vec<Scalar> = p.concat();
            let kind = common_kind(&flat)?;
            let mode = mode.unwrap_or(if kind.is_exact() { Mode::Exact } else { Mode::Float });
            match (mode, kind) {
                (Mode::Float, _) => Ok(Resolved::C(blowup::<ComplexF>(&p)?, None)),
                (Mode::Exact, ScalarKind::RationalQ) => Ok(Resolved::Q(blowup(&p)?)),
                (Mode::Exact, ScalarKind::GaussianQ) => Ok(Resolved::G(blowup(&p)?)),
                (Mode::Exact, ScalarKind::EisensteinQ) => Ok(Resolved::E(blowup(&p)?)),
                (Mode::Exact, ScalarKind::ComplexFloat) => {
                    Err(Error::Parse("float coordinates need --mode float".into()))
                }
            }
        }
    }
}
