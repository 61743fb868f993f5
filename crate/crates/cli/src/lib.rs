//! Command implementations for the `cubicdet` binary.

pub mod report;
pub mod spec;

use cubicdet::detrep::{adjugate, all_representations, enumerate_72_classes, lines_of_rep_in, RFormRep};
use cubicdet::lineconfig::{double_six_catalog, DoubleSix, LineConfiguration};
use cubicdet::numlines::LineSearchOptions;
use cubicdet::pencil::LinearPencil;
use cubicdet::realgeom::{
    certificate_holds, conjugation_permutation, is_definite, line_kinds, segre_type, selfadjoint_classes,
    self_conjugate_double_sixes, DefinitenessOptions, DefinitenessResult, LineKindTag, SelfAdjointRep,
};
use cubicdet::scalars::Field;
use cubicdet::surface::line_label;
use cubicdet::{Error, Result};
use serde::{Deserialize, Serialize};

use report::*;
use spec::{resolve, JScalar, Mode, Resolved, SurfaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Lines,
    Reps,
    ClassifyReal,
    Selfadjoint,
    Definiteness,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lines => "lines",
            Command::Reps => "reps",
            Command::ClassifyReal => "classify-real",
            Command::Selfadjoint => "selfadjoint",
            Command::Definiteness => "definiteness",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub tol: Option<f64>,
    pub mode: Option<Mode>,
}

impl RunOptions {
    fn line_search(&self) -> LineSearchOptions {
        let mut o = LineSearchOptions {
            seed: self.seed,
            ..Default::default()
        };
        if let Some(t) = self.tol {
            o.tol = t;
        }
        o
    }

    fn definiteness(&self) -> DefinitenessOptions {
        let mut o = DefinitenessOptions {
            seed: self.seed,
            ..Default::default()
        };
        if let Some(t) = self.tol {
            o.tol = t;
        }
        o
    }
}

/// Runs a command. Input problems come back as `Err`; failed checks are
/// recorded in the report.
pub fn run(cmd: Command, spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    let resolved = resolve(spec, opts.mode, &opts.line_search())?;
    let mut report = Report::new(cmd.name(), opts.seed);
    match &resolved {
        Resolved::Q(c) => drive(cmd, c, None, spec, opts, &mut report)?,
        Resolved::G(c) => drive(cmd, c, None, spec, opts, &mut report)?,
        Resolved::E(c) => drive(cmd, c, None, spec, opts, &mut report)?,
        Resolved::C(c, real) => drive(cmd, c, real.as_deref(), spec, opts, &mut report)?,
    }
    Ok(report)
}

pub fn cmd_lines(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::Lines, spec, opts)
}
pub fn cmd_reps(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::Reps, spec, opts)
}
pub fn cmd_classify_real(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::ClassifyReal, spec, opts)
}
pub fn cmd_selfadjoint(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::Selfadjoint, spec, opts)
}
pub fn cmd_definiteness(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::Definiteness, spec, opts)
}
pub fn cmd_verify(spec: &SurfaceSpec, opts: &RunOptions) -> Result<Report> {
    run(Command::Verify, spec, opts)
}

fn js<F: Field>(x: &F) -> JScalar {
    JScalar::from_field(x)
}

fn labels(ix: &[usize]) -> Vec<String> {
    ix.iter().map(|&k| line_label(k)).collect()
}

fn ds_record(ds: &DoubleSix) -> DoubleSixRecord {
    DoubleSixRecord {
        upper: labels(&ds.upper),
        lower: labels(&ds.lower),
    }
}

fn pencil_json<F: Field>(m: &LinearPencil<F>) -> Vec<JMatrix> {
    m.coeffs()
        .iter()
        .map(|c| (0..3).map(|i| (0..3).map(|j| js(&c[(i, j)])).collect()).collect())
        .collect()
}

fn cubic_is_real<F: Field>(cfg: &LineConfiguration<F>) -> bool {
    cfg.cubic().coeffs().iter().all(|c| c.is_real())
}

/// Largest coefficient of `F` restricted to the line, relative to `F`.
fn line_residual<F: Field>(cfg: &LineConfiguration<F>, k: usize) -> f64 {
    let [p, q] = cfg.line(k).points();
    let r = cfg.cubic().restrict_to_line(p.coords(), q.coords());
    let np = p.coords().iter().chain(q.coords()).map(|x| x.magnitude()).fold(0.0, f64::max);
    r.max_abs() / (cfg.cubic().max_abs() * np.powi(3)).max(1e-300)
}

fn drive<F: Field>(
    cmd: Command,
    cfg: &LineConfiguration<F>,
    real_flags: Option<&[bool]>,
    spec: &SurfaceSpec,
    opts: &RunOptions,
    report: &mut Report,
) -> Result<()> {
    report.surface = Some(SurfaceInfo {
        source: spec.describe(),
        field: F::KIND,
        mode: if F::is_exact() { Mode::Exact } else { Mode::Float },
        cubic: cfg.cubic().coeffs().iter().map(js).collect(),
    });
    let verify = cmd == Command::Verify;
    if matches!(cmd, Command::Lines | Command::Verify) {
        lines_section(cfg, real_flags, report)?;
    }
    if matches!(cmd, Command::Reps | Command::Verify) {
        reps_section(cfg, report, verify)?;
    }
    let real_surface = cubic_is_real(cfg);
    if cmd == Command::ClassifyReal || (verify && real_surface) {
        require_real(cfg)?;
        real_section(cfg, report)?;
    }
    if matches!(cmd, Command::Selfadjoint | Command::Definiteness) || (verify && real_surface) {
        require_real(cfg)?;
        let classes = selfadjoint_section(cfg, report)?;
        if cmd == Command::Definiteness || verify {
            definiteness_section(&classes, opts, report);
        }
    }
    Ok(())
}

fn require_real<F: Field>(cfg: &LineConfiguration<F>) -> Result<()> {
    if cubic_is_real(cfg) {
        Ok(())
    } else {
        Err(Error::TableMismatch("the cubic has non-real coefficients".into()))
    }
}

fn lines_section<F: Field>(cfg: &LineConfiguration<F>, real_flags: Option<&[bool]>, report: &mut Report) -> Result<()> {
    let real_surface = cubic_is_real(cfg);
    let kinds = if real_surface && real_flags.is_none() { Some(line_kinds(cfg)) } else { None };
    let lines = (0..27)
        .map(|k| LineRecord {
            label: line_label(k),
            forms: cfg.line(k).forms().iter().map(|r| r.iter().map(js).collect()).collect(),
            real: match (real_flags, &kinds) {
                (Some(r), _) => Some(r[k]),
                (None, Some(ks)) => Some(ks[k].tag() == LineKindTag::Real),
                _ => None,
            },
        })
        .collect();
    let planes = cfg.tritangent_planes()?;
    let dss = cfg.double_sixes()?;
    let steiner = cfg.steiner_sets()?;
    let worst = (0..27).map(|k| line_residual(cfg, k)).fold(0.0, f64::max);
    let on_surface = if F::is_exact() { worst == 0.0 } else { worst < 1e-8 };
    report.checks.push(Check::new("lines_on_surface", on_surface).value(worst));
    let inc = cfg.incidence();
    let sym_deg = (0..27).all(|i| !inc[i][i] && (0..27).all(|j| inc[i][j] == inc[j][i]))
        && (0..27).all(|i| inc[i].iter().filter(|x| **x).count() == 10);
    report.checks.push(Check::new("incidence_symmetric_degree_10", sym_deg));
    report.checks.push(Check::new("tritangent_planes_45", planes.len() == 45).value(planes.len() as f64));
    report.checks.push(Check::new("double_sixes_36", dss.len() == 36).value(dss.len() as f64));
    let mut split = [0usize; 3];
    for d in double_six_catalog() {
        match d.catalog_shape() {
            1 => split[0] += 1,
            15 => split[1] += 1,
            _ => split[2] += 1,
        }
    }
    report.checks.push(
        Check::new("double_six_split_1_15_20", split == [1, 15, 20]).detail(format!("{split:?}")),
    );
    report.checks.push(Check::new("steiner_sets_120", steiner.len() == 120).value(steiner.len() as f64));
    report.configuration = Some(Configuration {
        lines,
        tritangent_planes: planes
            .iter()
            .map(|t| PlaneRecord {
                lines: t.lines.map(line_label),
                coefficients: t.plane.normalized().coords().iter().map(js).collect(),
                eckardt: t.eckardt,
            })
            .collect(),
        double_sixes: dss.iter().map(ds_record).collect(),
        steiner_sets: steiner.len(),
    });
    Ok(())
}

fn sorted(mut a: [usize; 6]) -> [usize; 6] {
    a.sort();
    a
}

fn reps_section<F: Field>(cfg: &LineConfiguration<F>, report: &mut Report, verify: bool) -> Result<()> {
    let reps: Vec<RFormRep<F>> = all_representations(cfg)?;
    let mut records = Vec::with_capacity(reps.len());
    let mut sixes = Vec::with_capacity(reps.len());
    let mut det_ok = true;
    let mut transpose_ok = true;
    let mut adj_ok = true;
    for r in &reps {
        let ds = r.double_six.clone().ok_or_else(|| Error::BadConfiguration("representative without double-six".into()))?;
        let partner = reps
            .iter()
            .position(|s| s.double_six.as_ref().is_some_and(|d| sorted(d.upper) == sorted(ds.lower)))
            .unwrap_or(usize::MAX);
        let cols = lines_of_rep_in(cfg, &r.pencil)?;
        det_ok &= r.pencil.det().proportional_to(cfg.cubic());
        if verify {
            let t = lines_of_rep_in(cfg, &r.pencil.transpose())?;
            transpose_ok &= sorted(t) == sorted(ds.lower);
            adj_ok &= adjugate(&r.pencil).verifies(&r.pencil);
        }
        sixes.push(sorted(cols));
        records.push(RepresentationRecord {
            double_six: ds_record(&ds),
            column_lines: labels(&cols),
            transpose: partner,
            coefficients: pencil_json(&r.pencil),
        });
    }
    transpose_ok &= records.iter().all(|r| r.transpose < records.len());
    let n = reps.len();
    sixes.sort();
    sixes.dedup();
    report.checks.push(Check::new("representations_72", n == 72).value(n as f64));
    report.checks.push(Check::new("representations_pairwise_nonequivalent", sixes.len() == n));
    report.checks.push(Check::new("representations_det_proportional", det_ok));
    if verify {
        report.checks.push(Check::new("transpose_pairing", transpose_ok));
        report.checks.push(Check::new("adjugate_identity", adj_ok));
        let classes = enumerate_72_classes();
        let mut counts = std::collections::BTreeMap::new();
        for c in &classes {
            *counts.entry(c.alpha).or_insert(0usize) += 1;
        }
        let got: Vec<usize> = counts.values().copied().collect();
        report.checks.push(
            Check::new("divisor_classes_1_20_30_20_1", classes.len() == 72 && got == [1, 20, 30, 20, 1])
                .detail(format!("{got:?}")),
        );
    }
    report.representations = Some(records);
    Ok(())
}

fn real_section<F: Field>(cfg: &LineConfiguration<F>, report: &mut Report) -> Result<()> {
    let sigma = conjugation_permutation(cfg)?;
    report.checks.push(Check::new("conjugation_involution", (0..27).all(|k| sigma[sigma[k]] == k)));
    let t = segre_type(cfg)?;
    let kinds: Vec<LineKindTag> = line_kinds(cfg).iter().map(|k| k.tag()).collect();
    let count = |tag| kinds.iter().filter(|k| **k == tag).count();
    let counts = [count(LineKindTag::Real), count(LineKindTag::FirstKind), count(LineKindTag::SecondKind)];
    let sc = self_conjugate_double_sixes(cfg)?;
    let (n, kind) = t.self_conjugate_double_sixes();
    let kinds_ok = sc.len() == n && sc.iter().all(|(_, k)| Some(k.kind) == kind);
    report.checks.push(Check::new("self_conjugate_double_sixes_match_table", kinds_ok).value(sc.len() as f64));
    report.real = Some(RealRecord {
        segre_type: t,
        counts,
        line_kinds: kinds,
        self_conjugate_double_sixes: sc
            .iter()
            .map(|(d, k)| ConjDoubleSixRecord {
                double_six: ds_record(d),
                kind: k.kind,
                tau: k.tau,
            })
            .collect(),
    });
    Ok(())
}

fn selfadjoint_section<F: Field>(cfg: &LineConfiguration<F>, report: &mut Report) -> Result<Vec<SelfAdjointRep<F>>> {
    let t = segre_type(cfg)?;
    let classes = selfadjoint_classes(cfg)?;
    let ok = classes
        .iter()
        .all(|c| c.pencil.is_selfadjoint() && c.pencil.det().proportional_to(cfg.cubic()));
    report.checks.push(Check::new("selfadjoint_hermitean_det_proportional", ok));
    report.checks.push(
        Check::new("selfadjoint_count_matches_table", classes.len() == t.selfadjoint_count())
            .value(classes.len() as f64),
    );
    report.selfadjoint = Some(
        classes
            .iter()
            .map(|c| SelfAdjointRecord {
                double_six: c.double_six.as_ref().map(ds_record),
                gamma: c.gamma.as_ref().map(js),
                coefficients: pencil_json(&c.pencil),
            })
            .collect(),
    );
    Ok(classes)
}

fn definiteness_section<F: Field>(classes: &[SelfAdjointRep<F>], opts: &RunOptions, report: &mut Report) {
    let o = opts.definiteness();
    let results: Vec<DefinitenessResult> = {
        use rayon::prelude::*;
        classes.par_iter().map(|c| is_definite(&c.pencil, &o)).collect()
    };
    let holds = classes
        .iter()
        .zip(&results)
        .all(|(c, r)| matches!(r, DefinitenessResult::Unknown { .. }) || certificate_holds(&c.pencil, r, 1e-8));
    let summary = DefinitenessSummary {
        definite: results.iter().filter(|r| r.is_definite()).count(),
        indefinite: results.iter().filter(|r| r.is_indefinite()).count(),
        unknown: results.iter().filter(|r| matches!(r, DefinitenessResult::Unknown { .. })).count(),
    };
    report.checks.push(Check::new("definiteness_certificates_hold", holds));
    report.checks.push(Check::new("definiteness_decided", summary.unknown == 0).value(summary.unknown as f64));
    report.definiteness = Some(
        results
            .into_iter()
            .enumerate()
            .map(|(class, result)| DefinitenessRecord { class, result })
            .collect(),
    );
    report.definiteness_summary = Some(summary);
}

/// Report carrying only an error record.
pub fn error_report(cmd: Command, seed: u64, kind: ErrorKind, e: &Error) -> Report {
    let mut r = Report::new(cmd.name(), seed);
    r.error = Some(ErrorRecord {
        kind,
        message: e.to_string(),
    });
    r
}
