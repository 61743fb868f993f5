//! Python bindings: surfaces, their lines and representations, and the
//! definiteness test for hermitean pencils.

use cubicdet::detrep::{all_representations, enumerate_72_classes};
use cubicdet::linalg::Mat;
use cubicdet::lineconfig::LineConfiguration;
use cubicdet::pencil::LinearPencil;
use cubicdet::realgeom::{self, line_kinds, segre_type, selfadjoint_classes, DefinitenessOptions};
use cubicdet::scalars::{ComplexF, Field};
use cubicdet::surface::line_label;
use cubicdet_cli::spec::{resolve, JScalar, Mode, Resolved, SurfaceSpec};
use cubicdet_cli::{run, Command, RunOptions};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A coefficient from Python: text in the exact syntax, an integer, or a
/// float/complex number.
#[derive(FromPyObject)]
enum PyScalar {
    Text(String),
    Int(i64),
    Complex(Complex64),
}

impl PyScalar {
    fn json(self) -> JScalar {
        match self {
            PyScalar::Text(s) => JScalar::Text(s),
            PyScalar::Int(n) => JScalar::Text(n.to_string()),
            PyScalar::Complex(z) => JScalar::Complex([z.re, z.im]),
        }
    }
}

fn parse_mode(mode: Option<&str>) -> PyResult<Option<Mode>> {
    match mode {
        None => Ok(None),
        Some("exact") => Ok(Some(Mode::Exact)),
        Some("float") => Ok(Some(Mode::Float)),
        Some(m) => Err(err(format!("unknown mode `{m}`"))),
    }
}

fn parse_command(c: &str) -> PyResult<Command> {
    Ok(match c {
        "lines" => Command::Lines,
        "reps" => Command::Reps,
        "classify-real" => Command::ClassifyReal,
        "selfadjoint" => Command::Selfadjoint,
        "definiteness" => Command::Definiteness,
        "verify" => Command::Verify,
        _ => return Err(err(format!("unknown command `{c}`"))),
    })
}

type PyPencil = Vec<Vec<Vec<Complex64>>>;

fn pencil_out<F: Field>(m: &LinearPencil<F>) -> PyPencil {
    m.coeffs()
        .iter()
        .map(|c| (0..3).map(|i| (0..3).map(|j| c[(i, j)].to_complex()).collect()).collect())
        .collect()
}

fn pencil_in(coeffs: PyPencil) -> PyResult<LinearPencil<ComplexF>> {
    if coeffs.len() != 4 || coeffs.iter().any(|m| m.len() != 3 || m.iter().any(|r| r.len() != 3)) {
        return Err(err("expected four 3×3 matrices"));
    }
    let mats: Vec<Mat<ComplexF>> = coeffs
        .iter()
        .map(|m| Mat::from_rows(&m.iter().map(|r| r.iter().map(|z| ComplexF::from_c64(*z)).collect()).collect::<Vec<_>>()))
        .collect();
    LinearPencil::new(mats.try_into().map_err(|_| err("expected four matrices"))?).map_err(err)
}

macro_rules! with_cfg {
    ($r:expr, $c:ident => $body:expr) => {
        match $r {
            Resolved::Q($c) => $body,
            Resolved::G($c) => $body,
            Resolved::E($c) => $body,
            Resolved::C($c, _) => $body,
        }
    };
}

/// A smooth cubic surface with its 27 lines.
#[pyclass(name = "Surface", frozen)]
struct PySurface {
    spec: SurfaceSpec,
    opts: RunOptions,
    resolved: Resolved,
}

impl PySurface {
    fn build(spec: SurfaceSpec, mode: Option<&str>, seed: u64) -> PyResult<Self> {
        let opts = RunOptions {
            seed,
            tol: None,
            mode: parse_mode(mode)?,
        };
        let ls = cubicdet::numlines::LineSearchOptions {
            seed,
            ..Default::default()
        };
        let resolved = resolve(&spec, opts.mode, &ls).map_err(err)?;
        Ok(PySurface { spec, opts, resolved })
    }
}

fn lines_of<F: Field>(cfg: &LineConfiguration<F>) -> Vec<(String, Vec<Vec<Complex64>>)> {
    (0..27)
        .map(|k| {
            let forms = cfg.line(k).forms().iter().map(|r| r.iter().map(|x| x.to_complex()).collect()).collect();
            (line_label(k), forms)
        })
        .collect()
}

#[pymethods]
impl PySurface {
    /// One of `fermat`, `f5paper`, `clebsch`.
    #[staticmethod]
    #[pyo3(signature = (name, mode=None, seed=0))]
    fn builtin(name: &str, mode: Option<&str>, seed: u64) -> PyResult<Self> {
        let spec = SurfaceSpec::from_arg(name).map_err(err)?;
        if !matches!(spec, SurfaceSpec::Builtin(_)) {
            return Err(err(format!("unknown builtin `{name}`")));
        }
        Self::build(spec, mode, seed)
    }

    /// 20 coefficients in graded-lex order `z0³, z0²z1, …, z3³`.
    #[staticmethod]
    #[pyo3(signature = (coeffs, mode=None, seed=0))]
    fn from_cubic(coeffs: Vec<PyScalar>, mode: Option<&str>, seed: u64) -> PyResult<Self> {
        let spec = SurfaceSpec::Cubic(coeffs.into_iter().map(PyScalar::json).collect());
        Self::build(spec, mode, seed)
    }

    /// Blow-up of six points of P².
    #[staticmethod]
    #[pyo3(signature = (points, mode=None, seed=0))]
    fn from_points(points: Vec<Vec<PyScalar>>, mode: Option<&str>, seed: u64) -> PyResult<Self> {
        let spec = SurfaceSpec::Points(points.into_iter().map(|p| p.into_iter().map(PyScalar::json).collect()).collect());
        Self::build(spec, mode, seed)
    }

    /// Coefficient field: `RationalQ`, `GaussianQ`, `EisensteinQ` or `ComplexFloat`.
    #[getter]
    fn field(&self) -> String {
        format!("{:?}", self.resolved.kind())
    }

    /// `(label, forms)` for the 27 lines; each line is cut out by two forms.
    fn lines(&self) -> Vec<(String, Vec<Vec<Complex64>>)> {
        with_cfg!(&self.resolved, c => lines_of(c))
    }

    fn double_sixes(&self) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
        let ds = with_cfg!(&self.resolved, c => c.double_sixes()).map_err(err)?;
        let l = |r: &[usize; 6]| r.iter().map(|&k| line_label(k)).collect::<Vec<_>>();
        Ok(ds.iter().map(|d| (l(&d.upper), l(&d.lower))).collect())
    }

    fn tritangent_planes(&self) -> PyResult<Vec<Vec<String>>> {
        let t = with_cfg!(&self.resolved, c => c.tritangent_planes().map(|v| v.iter().map(|p| p.lines).collect::<Vec<_>>()))
            .map_err(err)?;
        Ok(t.iter().map(|l| l.iter().map(|&k| line_label(k)).collect()).collect())
    }

    /// Coefficient matrices of the 72 ℜ-form representatives.
    fn representations(&self) -> PyResult<Vec<PyPencil>> {
        with_cfg!(&self.resolved, c => all_representations(c).map(|v| v.iter().map(|r| pencil_out(&r.pencil)).collect()))
            .map_err(err)
    }

    /// Segre type `F1`..`F5` of a real surface.
    fn segre_type(&self) -> PyResult<String> {
        let t = with_cfg!(&self.resolved, c => segre_type(c)).map_err(err)?;
        Ok(t.name().to_string())
    }

    /// `Real`, `FirstKind` or `SecondKind` for each line.
    fn line_kinds(&self) -> Vec<String> {
        with_cfg!(&self.resolved, c => line_kinds(c).iter().map(|k| format!("{:?}", k.tag())).collect())
    }

    /// Coefficient matrices of the self-adjoint classes, two per mutually
    /// self-conjugate double-six.
    fn selfadjoint_classes(&self) -> PyResult<Vec<PyPencil>> {
        with_cfg!(&self.resolved, c => selfadjoint_classes(c).map(|v| v.iter().map(|r| pencil_out(&r.pencil)).collect()))
            .map_err(err)
    }

    /// Full JSON report for a command (`lines`, `reps`, `classify-real`,
    /// `selfadjoint`, `definiteness`, `verify`).
    fn report(&self, command: &str) -> PyResult<String> {
        let r = run(parse_command(command)?, &self.spec, &self.opts).map_err(err)?;
        Ok(r.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Surface({}, field={})", self.spec.describe(), self.field())
    }
}

/// Decides definiteness of a hermitean pencil given by four 3×3 matrices.
/// Returns the result with its certificate as JSON.
#[pyfunction]
#[pyo3(signature = (coeffs, seed=0))]
fn is_definite(coeffs: PyPencil, seed: u64) -> PyResult<String> {
    let u = pencil_in(coeffs)?;
    let o = DefinitenessOptions {
        seed,
        ..Default::default()
    };
    let r = realgeom::is_definite(&u, &o);
    serde_json_string(&r)
}

fn serde_json_string(r: &realgeom::DefinitenessResult) -> PyResult<String> {
    cubicdet_cli::report::to_json_value(r).map_err(err)
}

/// Ascending eigenvalues of `Σ zᵢ·Uᵢ` at a real point.
#[pyfunction]
fn eigenvalues_at(coeffs: PyPencil, z: [f64; 4]) -> PyResult<[f64; 3]> {
    Ok(realgeom::eigenvalues_at(&pencil_in(coeffs)?, &z))
}

/// The 72 divisor classes `αL − Σβᵢ·Aᵢ` of degree 3 and genus 0.
#[pyfunction]
fn divisor_classes() -> Vec<(i64, [i64; 6])> {
    enumerate_72_classes().iter().map(|c| (c.alpha, c.beta)).collect()
}

#[pymodule]
fn cubicdet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(is_definite, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues_at, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_classes, m)?)?;
    Ok(())
}
