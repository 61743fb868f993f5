//! Real structure: conjugate lines and pencils, line kinds and Segre type,
//! self-conjugate double-sixes, self-adjoint representations and their
//! hermitean equivalence. Definiteness lives in [`definite`].

pub mod definite;

use serde::{Deserialize, Serialize};

use crate::detrep::{rform_from_double_six, witness, witness_in, EquivalenceWitness};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::lineconfig::{DoubleSix, LineConfiguration};
use crate::pencil::LinearPencil;
use crate::projective::{lines_meet, LineH, MeetResult, PointP3};
use crate::scalars::Field;

pub use definite::{
    certificate_holds, eigenvalues_at, is_definite, self_orthogonal_vectors, DefinitenessOptions,
    DefinitenessResult, IndefiniteCertificate,
};

pub fn conj_line<F: Field>(l: &LineH<F>) -> LineH<F> {
    l.conj()
}

pub fn conj_pencil<F: Field>(m: &LinearPencil<F>) -> LinearPencil<F> {
    m.conj()
}

#[derive(Clone, Debug)]
pub enum LineKind<F> {
    Real,
    /// `l` meets its conjugate in this real point.
    FirstKind(PointP3<F>),
    SecondKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineKindTag {
    Real,
    FirstKind,
    SecondKind,
}

impl<F: Field> PartialEq for LineKind<F> {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (LineKind::FirstKind(p), LineKind::FirstKind(q)) => p == q,
            _ => self.tag() == o.tag(),
        }
    }
}

impl<F> LineKind<F> {
    pub fn tag(&self) -> LineKindTag {
        match self {
            LineKind::Real => LineKindTag::Real,
            LineKind::FirstKind(_) => LineKindTag::FirstKind,
            LineKind::SecondKind => LineKindTag::SecondKind,
        }
    }
}

pub fn line_kind<F: Field>(l: &LineH<F>) -> LineKind<F> {
    match lines_meet(l, &l.conj()) {
        MeetResult::Equal => LineKind::Real,
        MeetResult::Point(p) => LineKind::FirstKind(p),
        MeetResult::Skew => LineKind::SecondKind,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegreType {
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl SegreType {
    pub const ALL: [SegreType; 5] = [SegreType::F1, SegreType::F2, SegreType::F3, SegreType::F4, SegreType::F5];

    /// Numbers of real, first-kind and second-kind lines.
    pub fn counts(self) -> (usize, usize, usize) {
        match self {
            SegreType::F1 => (27, 0, 0),
            SegreType::F2 => (15, 0, 12),
            SegreType::F3 => (7, 4, 16),
            SegreType::F4 => (3, 12, 12),
            SegreType::F5 => (3, 24, 0),
        }
    }

    pub fn from_counts(c: (usize, usize, usize)) -> Option<SegreType> {
        Self::ALL.into_iter().find(|t| t.counts() == c)
    }

    /// Number of mutually self-conjugate double-sixes and their kind.
    pub fn self_conjugate_double_sixes(self) -> (usize, Option<ConjKind>) {
        match self {
            SegreType::F1 => (0, None),
            SegreType::F2 => (1, Some(ConjKind::I)),
            SegreType::F3 => (2, Some(ConjKind::II)),
            SegreType::F4 => (3, Some(ConjKind::III)),
            SegreType::F5 => (12, Some(ConjKind::IV)),
        }
    }

    /// Number of classes of self-adjoint representations.
    pub fn selfadjoint_count(self) -> usize {
        2 * self.self_conjugate_double_sixes().0
    }

    pub fn name(self) -> &'static str {
        match self {
            SegreType::F1 => "F1",
            SegreType::F2 => "F2",
            SegreType::F3 => "F3",
            SegreType::F4 => "F4",
            SegreType::F5 => "F5",
        }
    }
}

fn check_real<F: Field>(cfg: &LineConfiguration<F>) -> Result<()> {
    if cfg.cubic().coeffs().iter().all(|c| c.is_real()) {
        Ok(())
    } else {
        Err(Error::TableMismatch("the cubic is not real".into()))
    }
}

/// Kinds of all 27 lines, in configuration order.
pub fn line_kinds<F: Field>(cfg: &LineConfiguration<F>) -> Vec<LineKind<F>> {
    cfg.lines().iter().map(line_kind).collect()
}

pub fn segre_type<F: Field>(cfg: &LineConfiguration<F>) -> Result<SegreType> {
    check_real(cfg)?;
    let mut c = (0, 0, 0);
    for k in line_kinds(cfg) {
        match k {
            LineKind::Real => c.0 += 1,
            LineKind::FirstKind(_) => c.1 += 1,
            LineKind::SecondKind => c.2 += 1,
        }
    }
    SegreType::from_counts(c).ok_or_else(|| Error::TableMismatch(format!("line kind counts {c:?}")))
}

/// `σ` with `conj(line k) = line σ(k)`.
pub fn conjugation_permutation<F: Field>(cfg: &LineConfiguration<F>) -> Result<[usize; 27]> {
    let mut sigma = [0usize; 27];
    for (k, l) in cfg.lines().iter().enumerate() {
        sigma[k] = cfg
            .index_of(&l.conj())
            .ok_or_else(|| Error::TableMismatch(format!("conjugate of line {k} is not a line of the surface")))?;
    }
    if (0..27).any(|k| sigma[sigma[k]] != k) {
        return Err(Error::TableMismatch("conjugation is not an involution on the lines".into()));
    }
    Ok(sigma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjKind {
    I,
    II,
    III,
    IV,
}

/// Kind of a self-conjugate double-six together with `τ`, where
/// `conj(upper[i]) = lower[τ(i)]`. `τ` is an involution; its number of
/// transpositions (0..=3) is the kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjDoubleSixKind {
    pub kind: ConjKind,
    pub tau: [usize; 6],
}

/// Kind of `ds` if `{lower} = conj{upper}`, else `None`.
pub fn conj_kind(ds: &DoubleSix, sigma: &[usize; 27]) -> Option<ConjDoubleSixKind> {
    let mut tau = [0usize; 6];
    for i in 0..6 {
        tau[i] = ds.lower.iter().position(|&b| b == sigma[ds.upper[i]])?;
    }
    if (0..6).any(|i| tau[tau[i]] != i) {
        return None;
    }
    let swaps = (0..6).filter(|&i| tau[i] > i).count();
    let kind = match swaps {
        0 => ConjKind::I,
        1 => ConjKind::II,
        2 => ConjKind::III,
        3 => ConjKind::IV,
        _ => return None,
    };
    Some(ConjDoubleSixKind { kind, tau })
}

/// The mutually self-conjugate double-sixes, in catalog order.
pub fn self_conjugate_double_sixes<F: Field>(cfg: &LineConfiguration<F>) -> Result<Vec<(DoubleSix, ConjDoubleSixKind)>> {
    check_real(cfg)?;
    let sigma = conjugation_permutation(cfg)?;
    Ok(cfg
        .double_sixes()?
        .into_iter()
        .filter_map(|ds| conj_kind(&ds, &sigma).map(|k| (ds, k)))
        .collect())
}

/// A self-adjoint representation with the data of its construction:
/// `pencil = scale · X⁻¹ · ℜ` where `X·ℜ*·Y = ℜ` and `X⁻¹ℜ = γ·(X⁻¹ℜ)*`.
#[derive(Clone, Debug)]
pub struct SelfAdjointRep<F> {
    pub pencil: LinearPencil<F>,
    pub double_six: Option<DoubleSix>,
    pub rform: Option<LinearPencil<F>>,
    pub x: Option<Mat<F>>,
    pub gamma: Option<F>,
    pub scale: Option<F>,
}

impl<F: Field> SelfAdjointRep<F> {
    /// Wraps a pencil after checking `U = U*`.
    pub fn new(pencil: LinearPencil<F>) -> Result<Self> {
        if !pencil.is_selfadjoint() {
            return Err(Error::IrreducibilityViolation("pencil is not self-adjoint".into()));
        }
        Ok(SelfAdjointRep {
            pencil,
            double_six: None,
            rform: None,
            x: None,
            gamma: None,
            scale: None,
        })
    }

    pub fn neg(&self) -> Self {
        SelfAdjointRep {
            pencil: self.pencil.neg(),
            scale: self.scale.as_ref().map(|s| -s.clone()),
            ..self.clone()
        }
    }
}

/// Index of the largest coefficient of a pencil, as (k, i, j).
fn largest_entry<F: Field>(m: &LinearPencil<F>) -> (usize, usize, usize) {
    let mut best = (0, 0, 0);
    let mut mx = -1.0;
    for k in 0..4 {
        for i in 0..3 {
            for j in 0..3 {
                let v = m.coeff(k)[(i, j)].magnitude();
                if v > mx {
                    mx = v;
                    best = (k, i, j);
                }
            }
        }
    }
    best
}

/// Hermitean part `(U + U*)/2`, used to remove rounding from float pencils
/// once `U ≈ U*` has been checked.
fn hermitean_part<F: Field>(u: &LinearPencil<F>) -> LinearPencil<F> {
    if F::is_exact() {
        return u.clone();
    }
    let half = F::from_ratio(1, 2);
    u.map(|a| a.add(&a.adjoint()).scale(&half))
}

/// A self-adjoint representation from a mutually self-conjugate double-six.
///
/// With ℜ the ℜ-form of `ds`, the adjoint ℜ* has the same six column lines,
/// so `X·ℜ*·Y = ℜ` for some `X`, `Y`. Then `W = X⁻¹ℜ` satisfies
/// `W = γ·W*` with `|γ| = 1`, and `U = t·W` with `t = c + γ̄·c̄` is
/// self-adjoint (`c = 1`, or an imaginary unit when `γ = −1`).
pub fn selfadjoint_from_double_six<F: Field>(cfg: &LineConfiguration<F>, ds: &DoubleSix) -> Result<SelfAdjointRep<F>> {
    check_real(cfg)?;
    let sigma = conjugation_permutation(cfg)?;
    if conj_kind(ds, &sigma).is_none() {
        return Err(Error::NotSelfConjugate);
    }
    let r = rform_from_double_six(cfg, ds)?.pencil;
    let rstar = r.adjoint();
    let w: EquivalenceWitness<F> = witness_in(cfg, &rstar, &r)?
        .ok_or_else(|| Error::SolveFailure("ℜ* and ℜ have different lines".into()))?;
    let xi = w.x.inverse().ok_or_else(|| Error::SolveFailure("singular X".into()))?;
    let wm = r.left_mul(&xi);
    let wstar = wm.adjoint();
    let (k, i, j) = largest_entry(&wm);
    let gamma = wm.coeff(k)[(i, j)].clone() / wstar.coeff(k)[(i, j)].clone();
    if !wm.approx_eq(&wstar.scale(&gamma)) {
        return Err(Error::SolveFailure("X⁻¹ℜ is not a multiple of its adjoint".into()));
    }
    let gbar = gamma.conj();
    let mut t = F::one() + gbar.clone();
    if t.magnitude() < 0.5 {
        let e = F::imaginary_element()
            .ok_or_else(|| Error::UnsupportedField("no imaginary element for γ = −1".into()))?;
        t = e.clone() + gbar * e.conj();
    }
    let mut u = wm.scale(&t);
    if !F::is_exact() {
        // bring the largest coefficient to size one by a positive real
        let (k, i, j) = largest_entry(&u);
        let s = F::from_complex(num_complex::Complex64::new(1.0 / u.coeff(k)[(i, j)].magnitude(), 0.0)).unwrap();
        u = u.scale(&s);
        t = t * s;
    }
    if !u.is_selfadjoint() {
        return Err(Error::SolveFailure("scaled pencil is not self-adjoint".into()));
    }
    let u = hermitean_part(&u);
    if !u.det().proportional_to(cfg.cubic()) {
        return Err(Error::SolveFailure("det U is not proportional to F".into()));
    }
    Ok(SelfAdjointRep {
        pencil: u,
        double_six: Some(ds.clone()),
        rform: Some(r),
        x: Some(w.x),
        gamma: Some(gamma),
        scale: Some(t),
    })
}

/// Two self-adjoint representations per self-conjugate double-six, one for
/// each row, in catalog order.
pub fn selfadjoint_classes<F: Field>(cfg: &LineConfiguration<F>) -> Result<Vec<SelfAdjointRep<F>>> {
    let mut out = Vec::new();
    for (ds, _) in self_conjugate_double_sixes(cfg)? {
        let a = selfadjoint_from_double_six(cfg, &ds)?;
        let b = selfadjoint_from_double_six(cfg, &ds.swapped())?;
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

/// Outcome of [`hermitean_equivalent`]: `±U2 = k·X·U1·X*` with `k > 0`.
/// When `k` is a norm in the field it is absorbed into `X` and reported as 1.
#[derive(Clone, Debug, PartialEq)]
pub enum HermiteanEquivalence<F> {
    Plus { x: Mat<F>, k: F },
    Minus { x: Mat<F>, k: F },
    No,
}

impl<F: Field> HermiteanEquivalence<F> {
    /// Checks the identity by substitution.
    pub fn verifies(&self, u1: &LinearPencil<F>, u2: &LinearPencil<F>) -> bool {
        match self {
            HermiteanEquivalence::Plus { x, k } => u1.transform(x, &x.adjoint()).scale(k).approx_eq(u2),
            HermiteanEquivalence::Minus { x, k } => u1.transform(x, &x.adjoint()).scale(k).approx_eq(&u2.neg()),
            HermiteanEquivalence::No => true,
        }
    }
}

fn from_witness<F: Field>(w: EquivalenceWitness<F>) -> Result<HermiteanEquivalence<F>> {
    // X·U1·Y = U2 forces Y = k·X* with k real
    let xs = w.x.adjoint();
    let mut best = (0, 0);
    for i in 0..3 {
        for j in 0..3 {
            if xs[(i, j)].magnitude() > xs[best].magnitude() {
                best = (i, j);
            }
        }
    }
    let k = w.y[best].clone() / xs[best].clone();
    if !w.y.approx_eq(&xs.scale(&k)) || !k.is_real() {
        return Err(Error::SolveFailure("Y is not a real multiple of X*".into()));
    }
    let positive = k.re_f64() > 0.0;
    let ka = if positive { k } else { -k };
    let (x, k) = match F::norm_root(&ka) {
        Some(s) => (w.x.scale(&s), F::one()),
        None => (w.x, ka),
    };
    Ok(if positive {
        HermiteanEquivalence::Plus { x, k }
    } else {
        HermiteanEquivalence::Minus { x, k }
    })
}

/// Decides whether `U2 = X·U1·X*` or `−U2 = X·U1·X*`, using the lines of
/// `cfg` to match base points.
pub fn hermitean_equivalent_in<F: Field>(
    cfg: &LineConfiguration<F>,
    u1: &LinearPencil<F>,
    u2: &LinearPencil<F>,
) -> Result<HermiteanEquivalence<F>> {
    match witness_in(cfg, u1, u2)? {
        None => Ok(HermiteanEquivalence::No),
        Some(w) => from_witness(w),
    }
}

/// Same as [`hermitean_equivalent_in`], locating base points directly.
pub fn hermitean_equivalent<F: Field>(u1: &LinearPencil<F>, u2: &LinearPencil<F>) -> Result<HermiteanEquivalence<F>> {
    match witness(u1, u2)? {
        None => Ok(HermiteanEquivalence::No),
        Some(w) => from_witness(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::*;
    use crate::scalars::Eisenstein;

    type E = Eisenstein;

    #[test]
    fn conj_examples() {
        let l = LineH::<E>::from_forms(&[
            vec![E::one(), E::omega(), E::zero(), E::zero()],
            vec![E::zero(), E::zero(), E::one(), E::one()],
        ])
        .unwrap();
        let lc = LineH::<E>::from_forms(&[
            vec![E::one(), E::omega_sq(), E::zero(), E::zero()],
            vec![E::zero(), E::zero(), E::one(), E::one()],
        ])
        .unwrap();
        assert_eq!(conj_line(&l), lc);
        let m = fermat_m();
        assert_eq!(conj_pencil(&conj_pencil(&m)), m);
    }

    #[test]
    fn line_kind_examples() {
        let real = LineH::<E>::from_i64([[1, 1, 0, 0], [0, 0, 1, 1]]);
        assert_eq!(line_kind(&real), LineKind::Real);
        let first = line_eisenstein("z0+w*z1;z2+z3");
        let p = PointP3::from_i64(&[0, 0, 1, -1]);
        assert_eq!(line_kind(&first), LineKind::FirstKind(p));
        let second = line_eisenstein("z0+w*z1;z2+w*z3");
        assert_eq!(line_kind(&second), LineKind::SecondKind);
    }

    #[test]
    fn segre_table_rows_sum_to_27() {
        for t in SegreType::ALL {
            let (a, b, c) = t.counts();
            assert_eq!(a + b + c, 27);
            assert_eq!(SegreType::from_counts(t.counts()), Some(t));
        }
        assert_eq!(SegreType::F5.selfadjoint_count(), 24);
    }

    #[test]
    fn kind_from_tau() {
        let sigma: [usize; 27] = std::array::from_fn(|k| match k {
            0..=5 => k + 6,
            6..=11 => k - 6,
            _ => k,
        });
        let ds = DoubleSix {
            upper: [0, 1, 2, 3, 4, 5],
            lower: [7, 6, 9, 8, 10, 11],
        };
        let k = conj_kind(&ds, &sigma).unwrap();
        assert_eq!(k.kind, ConjKind::III);
        assert_eq!(k.tau, [1, 0, 3, 2, 4, 5]);
    }
}
