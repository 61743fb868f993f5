//! The labeled configuration of 27 lines: incidences, tritangent planes,
//! double-sixes and Steiner sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::{CubicForm, Form};
use crate::projective::{lines_meet, span_plane, LineH, MeetResult, PlaneH};
use crate::scalars::Field;
use crate::surface::{a_index, b_index, c_index, line_label, C_PAIRS};

/// 27×27 incidence matrix.
pub type Incidence = Vec<Vec<bool>>;

/// The 27 lines of a smooth cubic in the order `a1..a6, b1..b6, c12..c56`.
#[derive(Clone, Debug)]
pub struct LineConfiguration<F> {
    lines: Vec<LineH<F>>,
    incidence: Incidence,
    cubic: CubicForm<F>,
}

/// Two rows of six lines; `upper[i]` meets `lower[j]` iff `i != j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleSix {
    pub upper: [usize; 6],
    pub lower: [usize; 6],
}

#[derive(Clone, Debug)]
pub struct TritangentPlane<F> {
    pub plane: PlaneH<F>,
    pub lines: [usize; 3],
    /// The three lines pass through one point.
    pub eckardt: bool,
}

/// A 3×3 array of lines whose rows and columns each span a tritangent plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerSet {
    pub grid: [[usize; 3]; 3],
    /// Indices into the tritangent plane list, for rows and for columns.
    pub rows: [usize; 3],
    pub cols: [usize; 3],
}

/// Pairwise incidences of 27 lines; every line must meet exactly 10 others.
pub fn incidence_graph<F: Field>(lines: &[LineH<F>]) -> Result<Incidence> {
    if lines.len() != 27 {
        return Err(Error::BadConfiguration(format!("expected 27 lines, got {}", lines.len())));
    }
    let mut inc = vec![vec![false; 27]; 27];
    for i in 0..27 {
        for j in i + 1..27 {
            match lines_meet(&lines[i], &lines[j]) {
                MeetResult::Equal => {
                    return Err(Error::BadConfiguration(format!("lines {i} and {j} coincide")))
                }
                MeetResult::Point(_) => {
                    inc[i][j] = true;
                    inc[j][i] = true;
                }
                MeetResult::Skew => {}
            }
        }
    }
    for (i, row) in inc.iter().enumerate() {
        let d = row.iter().filter(|&&b| b).count();
        if d != 10 {
            return Err(Error::BadConfiguration(format!("line {i} meets {d} lines, not 10")));
        }
    }
    Ok(inc)
}

/// The incidence pattern forced by the standard labels.
pub fn standard_incidence() -> Incidence {
    let mut inc = vec![vec![false; 27]; 27];
    let mut set = |x: usize, y: usize| {
        inc[x][y] = true;
        inc[y][x] = true;
    };
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                set(a_index(i), b_index(j));
            }
        }
    }
    for &(i, j) in &C_PAIRS {
        let c = c_index(i, j);
        for k in [i, j] {
            set(c, a_index(k));
            set(c, b_index(k));
        }
        for &(k, l) in &C_PAIRS {
            if k != i && k != j && l != i && l != j {
                set(c, c_index(k, l));
            }
        }
    }
    inc
}

/// Tests whether six lines are pairwise skew.
pub fn is_skew_six(inc: &Incidence, six: &[usize]) -> bool {
    six.len() == 6
        && six.iter().enumerate().all(|(k, &x)| {
            six[k + 1..].iter().all(|&y| x != y && !inc[x][y])
        })
}

/// Permutation `perm` with `perm[new] = old` putting `six` in the `a` slots.
pub fn relabel_permutation(inc: &Incidence, six: &[usize]) -> Result<[usize; 27]> {
    if !is_skew_six(inc, six) {
        return Err(Error::NotSkew);
    }
    let mut perm = [usize::MAX; 27];
    perm[..6].copy_from_slice(six);
    for j in 0..6 {
        let cands: Vec<usize> = (0..27)
            .filter(|x| !six.contains(x))
            .filter(|&x| (0..6).all(|i| inc[x][six[i]] == (i != j)))
            .collect();
        if cands.len() != 1 {
            return Err(Error::BadConfiguration(format!("no unique partner for line {}", six[j])));
        }
        perm[b_index(j)] = cands[0];
    }
    for &(i, j) in &C_PAIRS {
        let (ai, bj) = (perm[a_index(i)], perm[b_index(j)]);
        let cands: Vec<usize> = (0..27).filter(|&x| inc[x][ai] && inc[x][bj]).collect();
        if cands.len() != 1 {
            return Err(Error::BadConfiguration("residual line of a_i, b_j not unique".into()));
        }
        perm[c_index(i, j)] = cands[0];
    }
    let mut seen = [false; 27];
    for &p in &perm {
        if seen[p] {
            return Err(Error::BadConfiguration("relabeling is not a bijection".into()));
        }
        seen[p] = true;
    }
    let std = standard_incidence();
    for x in 0..27 {
        for y in 0..27 {
            if inc[perm[x]][perm[y]] != std[x][y] {
                return Err(Error::BadConfiguration("incidences do not match the labels".into()));
            }
        }
    }
    Ok(perm)
}

/// First six pairwise skew lines in lexicographic order of indices.
pub fn find_skew_six(inc: &Incidence) -> Option<[usize; 6]> {
    fn go(inc: &Incidence, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == 6 {
            return true;
        }
        for x in start..27 {
            if cur.iter().all(|&y| !inc[x][y]) {
                cur.push(x);
                if go(inc, x + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    if go(inc, 0, &mut cur) {
        Some(cur.try_into().unwrap())
    } else {
        None
    }
}

impl<F: Field> LineConfiguration<F> {
    /// From 27 lines already in standard label order.
    pub fn from_labeled(lines: Vec<LineH<F>>, cubic: CubicForm<F>) -> Result<Self> {
        let incidence = incidence_graph(&lines)?;
        if incidence != standard_incidence() {
            return Err(Error::BadConfiguration("incidences do not match the labels".into()));
        }
        Ok(LineConfiguration { lines, incidence, cubic })
    }

    /// From 27 lines in any order; labels are chosen from the first skew six.
    pub fn from_lines(lines: Vec<LineH<F>>, cubic: CubicForm<F>) -> Result<Self> {
        let inc = incidence_graph(&lines)?;
        let six = find_skew_six(&inc)
            .ok_or_else(|| Error::BadConfiguration("no six skew lines".into()))?;
        let perm = relabel_permutation(&inc, &six)?;
        let lines = perm.iter().map(|&p| lines[p].clone()).collect();
        let incidence = standard_incidence();
        Ok(LineConfiguration { lines, incidence, cubic })
    }

    pub fn lines(&self) -> &[LineH<F>] {
        &self.lines
    }

    pub fn line(&self, k: usize) -> &LineH<F> {
        &self.lines[k]
    }

    pub fn incidence(&self) -> &Incidence {
        &self.incidence
    }

    pub fn cubic(&self) -> &CubicForm<F> {
        &self.cubic
    }

    pub fn meets(&self, i: usize, j: usize) -> bool {
        self.incidence[i][j]
    }

    pub fn labels(&self) -> Vec<String> {
        (0..27).map(line_label).collect()
    }

    /// Index of a line equal to `l`, if any.
    pub fn index_of(&self, l: &LineH<F>) -> Option<usize> {
        self.lines.iter().position(|m| m.same_as(l))
    }

    /// A new labeling with `skew_six` as `a1..a6`.
    pub fn relabel(&self, skew_six: &[usize]) -> Result<Self> {
        let perm = relabel_permutation(&self.incidence, skew_six)?;
        Ok(LineConfiguration {
            lines: perm.iter().map(|&p| self.lines[p].clone()).collect(),
            incidence: standard_incidence(),
            cubic: self.cubic.clone(),
        })
    }

    /// The same relabeling as a permutation, `perm[new] = old`.
    pub fn relabel_permutation(&self, skew_six: &[usize]) -> Result<[usize; 27]> {
        relabel_permutation(&self.incidence, skew_six)
    }

    /// The 45 tritangent planes, sorted by line triple.
    pub fn tritangent_planes(&self) -> Result<Vec<TritangentPlane<F>>> {
        let mut out = Vec::with_capacity(45);
        for i in 0..27 {
            for j in i + 1..27 {
                if !self.meets(i, j) {
                    continue;
                }
                for k in j + 1..27 {
                    if !(self.meets(i, k) && self.meets(j, k)) {
                        continue;
                    }
                    let plane = span_plane(&self.lines[i], &self.lines[j])?;
                    if !plane.contains_line(&self.lines[k]) {
                        return Err(Error::BadConfiguration(format!(
                            "{}, {}, {} meet pairwise but are not coplanar",
                            line_label(i),
                            line_label(j),
                            line_label(k)
                        )));
                    }
                    let eckardt = match (
                        lines_meet(&self.lines[i], &self.lines[j]),
                        lines_meet(&self.lines[i], &self.lines[k]),
                    ) {
                        (MeetResult::Point(p), MeetResult::Point(q)) => p == q,
                        _ => false,
                    };
                    out.push(TritangentPlane { plane, lines: [i, j, k], eckardt });
                }
            }
        }
        if out.len() != 45 {
            return Err(Error::BadConfiguration(format!("{} tritangent planes, not 45", out.len())));
        }
        for l in 0..27 {
            let n = out.iter().filter(|t| t.lines.contains(&l)).count();
            if n != 5 {
                return Err(Error::BadConfiguration(format!("{} lies on {n} tritangent planes", line_label(l))));
            }
        }
        Ok(out)
    }

    /// The 36 double-sixes in catalog order: `(a|b)`, then the 15 of shape
    /// `(a_i b_i c..|a_k b_k c..)`, then the 20 of shape `(a_i a_k a_l c..|c.. b..)`.
    pub fn double_sixes(&self) -> Result<Vec<DoubleSix>> {
        let out = double_six_catalog();
        for ds in &out {
            if !ds.check(&self.incidence) {
                return Err(Error::BadConfiguration(format!("double-six {ds:?} fails incidence check")));
            }
        }
        Ok(out)
    }

    /// The double-six containing `six` as a full row or as three columns.
    pub fn complete_half(&self, six: &[usize]) -> Result<DoubleSix> {
        complete_half(&self.double_sixes()?, six)
    }

    /// The 120 Steiner sets.
    pub fn steiner_sets(&self) -> Result<Vec<SteinerSet>> {
        let planes = self.tritangent_planes()?;
        let sets = steiner_sets_from_planes(&planes.iter().map(|p| p.lines).collect::<Vec<_>>());
        if sets.len() != 120 {
            return Err(Error::BadConfiguration(format!("{} Steiner sets, not 120", sets.len())));
        }
        Ok(sets)
    }

    /// Scalars `(s, t)` with `F = s·ρ1ρ2ρ3 + t·σ1σ2σ3`.
    pub fn steiner_identity(
        &self,
        planes: &[TritangentPlane<F>],
        set: &SteinerSet,
    ) -> Result<(F, F)> {
        let prod = |idx: &[usize; 3]| {
            idx.iter().fold(Form::constant(4, F::one()), |acc, &p| {
                acc.mul(&Form::linear(planes[p].plane.coords()))
            })
        };
        fit_two_products(&self.cubic, &prod(&set.rows), &prod(&set.cols))
    }
}

/// Solves `f = s·p + t·q` exactly (or within tolerance for floats).
pub fn fit_two_products<F: Field>(f: &Form<F>, p: &Form<F>, q: &Form<F>) -> Result<(F, F)> {
    let n = f.coeffs().len();
    let a = Mat::from_fn(n, 2, |r, c| if c == 0 { p.coeffs()[r].clone() } else { q.coeffs()[r].clone() });
    let sol = a
        .solve(f.coeffs())
        .map_err(|_| Error::IdentityUnsolvable("cubic is not a combination of the two products".into()))?;
    let fit = p.scale(&sol[0]).add(&q.scale(&sol[1]));
    if !fit.approx_eq(f) {
        return Err(Error::IdentityUnsolvable("residual does not vanish".into()));
    }
    if sol[0].is_zero() || sol[1].is_zero() {
        return Err(Error::IdentityUnsolvable("degenerate fit".into()));
    }
    Ok((sol[0].clone(), sol[1].clone()))
}

impl DoubleSix {
    /// Builds a double-six from its upper row and lower set, ordering the
    /// lower row so that column `i` is the skew pair of `upper[i]`.
    pub fn from_rows(inc: &Incidence, upper: [usize; 6], lower: &[usize]) -> Option<Self> {
        let mut low = [0usize; 6];
        for (i, &u) in upper.iter().enumerate() {
            let skew: Vec<usize> = lower.iter().copied().filter(|&l| !inc[u][l]).collect();
            if skew.len() != 1 {
                return None;
            }
            low[i] = skew[0];
        }
        let ds = DoubleSix { upper, lower: low };
        ds.check(inc).then_some(ds)
    }

    /// The defining incidence pattern.
    pub fn check(&self, inc: &Incidence) -> bool {
        is_skew_six(inc, &self.upper)
            && is_skew_six(inc, &self.lower)
            && (0..6).all(|i| (0..6).all(|j| inc[self.upper[i]][self.lower[j]] == (i != j)))
    }

    pub fn swapped(&self) -> Self {
        DoubleSix {
            upper: self.lower,
            lower: self.upper,
        }
    }

    /// Lexicographically least form under row swap and column permutation.
    pub fn canonical(&self) -> Self {
        let sort = |ds: &DoubleSix| {
            let mut cols: Vec<(usize, usize)> = (0..6).map(|i| (ds.upper[i], ds.lower[i])).collect();
            cols.sort();
            DoubleSix {
                upper: std::array::from_fn(|i| cols[i].0),
                lower: std::array::from_fn(|i| cols[i].1),
            }
        };
        let a = sort(self);
        let b = sort(&self.swapped());
        let key = |d: &DoubleSix| (d.upper, d.lower);
        if key(&a) <= key(&b) {
            a
        } else {
            b
        }
    }

    /// Same double-six up to row swap and column permutation.
    pub fn same_as(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn lines(&self) -> [usize; 12] {
        let mut v = [0; 12];
        v[..6].copy_from_slice(&self.upper);
        v[6..].copy_from_slice(&self.lower);
        v
    }

    /// Catalog shape under the standard labeling: 1, 15 or 20.
    pub fn catalog_shape(&self) -> usize {
        let cs = self.upper.iter().filter(|&&x| x >= 12).count();
        match cs {
            0 => 1,
            4 => 15,
            _ => 20,
        }
    }

    pub fn label(&self) -> String {
        let row = |r: &[usize; 6]| r.iter().map(|&x| line_label(x)).collect::<Vec<_>>().join(" ");
        format!("({} | {})", row(&self.upper), row(&self.lower))
    }
}

/// The 36 double-sixes under the standard labels, canonicalized.
pub fn double_six_catalog() -> Vec<DoubleSix> {
    let inc = standard_incidence();
    let mut out = Vec::with_capacity(36);
    let ab = DoubleSix {
        upper: std::array::from_fn(a_index),
        lower: std::array::from_fn(b_index),
    };
    out.push(ab.canonical());
    for &(i, k) in &C_PAIRS {
        let rest: Vec<usize> = (0..6).filter(|&x| x != i && x != k).collect();
        let mut upper = vec![a_index(i), b_index(i)];
        upper.extend(rest.iter().map(|&l| c_index(k, l)));
        let mut lower = vec![a_index(k), b_index(k)];
        lower.extend(rest.iter().map(|&l| c_index(i, l)));
        let ds = DoubleSix::from_rows(&inc, upper.try_into().unwrap(), &lower).expect("catalog shape 15");
        out.push(ds.canonical());
    }
    for i in 0..6 {
        for k in i + 1..6 {
            for l in k + 1..6 {
                let rest: Vec<usize> = (0..6).filter(|&x| x != i && x != k && x != l).collect();
                let (m, n, p) = (rest[0], rest[1], rest[2]);
                let upper = [
                    a_index(i),
                    a_index(k),
                    a_index(l),
                    c_index(m, n),
                    c_index(m, p),
                    c_index(n, p),
                ];
                let lower = [
                    c_index(k, l),
                    c_index(i, l),
                    c_index(i, k),
                    b_index(p),
                    b_index(n),
                    b_index(m),
                ];
                let ds = DoubleSix::from_rows(&inc, upper, &lower).expect("catalog shape 20");
                out.push(ds.canonical());
            }
        }
    }
    out
}

/// The unique double-six among `all` that contains `six` as a full row or
/// as three full columns.
pub fn complete_half(all: &[DoubleSix], six: &[usize]) -> Result<DoubleSix> {
    let mut s: Vec<usize> = six.to_vec();
    s.sort();
    s.dedup();
    if s.len() != 6 {
        return Err(Error::NotAHalf("need six distinct lines".into()));
    }
    let mut found: Vec<&DoubleSix> = Vec::new();
    for ds in all {
        let row = |r: &[usize; 6]| {
            let mut v = r.to_vec();
            v.sort();
            v == s
        };
        let cols_hit = (0..6)
            .filter(|&c| s.contains(&ds.upper[c]) && s.contains(&ds.lower[c]))
            .count();
        if row(&ds.upper) || row(&ds.lower) || cols_hit == 3 {
            found.push(ds);
        }
    }
    match found.len() {
        1 => Ok(found[0].clone()),
        0 => Err(Error::NotAHalf("no double-six contains these lines as a half".into())),
        n => Err(Error::NotAHalf(format!("{n} double-sixes contain these lines"))),
    }
}

/// Steiner sets from the 45 line triples of the tritangent planes.
pub fn steiner_sets_from_planes(planes: &[[usize; 3]]) -> Vec<SteinerSet> {
    let mask = |t: &[usize; 3]| t.iter().fold(0u32, |m, &x| m | (1 << x));
    let masks: Vec<u32> = planes.iter().map(mask).collect();
    let mut by_union: BTreeMap<u32, Vec<[usize; 3]>> = BTreeMap::new();
    let n = planes.len();
    for p in 0..n {
        for q in p + 1..n {
            if masks[p] & masks[q] != 0 {
                continue;
            }
            for r in q + 1..n {
                if (masks[p] | masks[q]) & masks[r] != 0 {
                    continue;
                }
                by_union.entry(masks[p] | masks[q] | masks[r]).or_default().push([p, q, r]);
            }
        }
    }
    let mut out = Vec::new();
    for triples in by_union.values() {
        for (x, rho) in triples.iter().enumerate() {
            for sigma in &triples[x + 1..] {
                let single = rho.iter().all(|&r| {
                    sigma.iter().all(|&s| (masks[r] & masks[s]).count_ones() == 1)
                });
                if !single {
                    continue;
                }
                let grid = std::array::from_fn(|i| {
                    std::array::from_fn(|j| (masks[rho[i]] & masks[sigma[j]]).trailing_zeros() as usize)
                });
                out.push(SteinerSet {
                    grid,
                    rows: *rho,
                    cols: *sigma,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_pattern_has_degree_ten() {
        let inc = standard_incidence();
        for (i, row) in inc.iter().enumerate() {
            assert!(!row[i]);
            assert_eq!(row.iter().filter(|&&b| b).count(), 10);
            for j in 0..27 {
                assert_eq!(inc[i][j], inc[j][i]);
            }
        }
    }

    #[test]
    fn catalog_is_complete_and_distinct() {
        let cat = double_six_catalog();
        assert_eq!(cat.len(), 36);
        let mut sorted = cat.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 36);
        let shapes: Vec<usize> = cat.iter().map(|d| d.catalog_shape()).collect();
        assert_eq!(shapes.iter().filter(|&&s| s == 1).count(), 1);
        assert_eq!(shapes.iter().filter(|&&s| s == 15).count(), 15);
        assert_eq!(shapes.iter().filter(|&&s| s == 20).count(), 20);
    }

    #[test]
    fn every_skew_six_is_a_row_of_exactly_one_double_six() {
        // 72 skew sixes in total
        let inc = standard_incidence();
        let cat = double_six_catalog();
        let mut count = 0;
        let mut stack = vec![(0usize, Vec::<usize>::new())];
        while let Some((start, cur)) = stack.pop() {
            if cur.len() == 6 {
                count += 1;
                assert!(complete_half(&cat, &cur).is_ok());
                continue;
            }
            for x in start..27 {
                if cur.iter().all(|&y| !inc[x][y]) {
                    let mut n = cur.clone();
                    n.push(x);
                    stack.push((x + 1, n));
                }
            }
        }
        assert_eq!(count, 72);
    }

    #[test]
    fn halves_complete_uniquely() {
        let cat = double_six_catalog();
        for ds in &cat {
            let half = [ds.upper[0], ds.upper[2], ds.upper[5], ds.lower[0], ds.lower[2], ds.lower[5]];
            assert_eq!(complete_half(&cat, &half).unwrap(), *ds);
        }
        // six lines mixing rows without forming columns
        let bad = [0, 1, 2, 6, 7, 8];
        assert!(complete_half(&cat, &[0, 1, 2, 3, 4, 5]).is_ok());
        assert!(matches!(complete_half(&cat, &[0, 1, 12, 13, 14, 26]), Err(Error::NotAHalf(_))));
        assert!(matches!(complete_half(&cat, &bad[..5]), Err(Error::NotAHalf(_))));
    }

    #[test]
    fn steiner_count_from_combinatorics() {
        let inc = standard_incidence();
        let mut triples = Vec::new();
        for i in 0..27 {
            for j in i + 1..27 {
                for k in j + 1..27 {
                    if inc[i][j] && inc[i][k] && inc[j][k] {
                        triples.push([i, j, k]);
                    }
                }
            }
        }
        assert_eq!(triples.len(), 45);
        assert_eq!(steiner_sets_from_planes(&triples).len(), 120);
    }

    #[test]
    fn relabel_with_b_row_swaps_letters() {
        let inc = standard_incidence();
        let b: Vec<usize> = (6..12).collect();
        let perm = relabel_permutation(&inc, &b).unwrap();
        assert_eq!(&perm[..6], &[6, 7, 8, 9, 10, 11]);
        assert_eq!(&perm[6..12], &[0, 1, 2, 3, 4, 5]);
        let mut cs: Vec<usize> = perm[12..].to_vec();
        cs.sort();
        assert_eq!(cs, (12..27).collect::<Vec<_>>());
        let id = relabel_permutation(&inc, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(id.to_vec(), (0..27).collect::<Vec<_>>());
        assert!(matches!(relabel_permutation(&inc, &[0, 1, 2, 3, 4, 7]), Err(Error::NotSkew)));
    }
}
