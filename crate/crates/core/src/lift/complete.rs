//! Extending a rank-3 lift of five rows to all six rows for shapes i, ii
//! and v.
//!
//! Each shape fixes a relabelling of rows (and for ii a row and column
//! rescaling) under which the construction is stated. [`Frame`] carries
//! that relabelling so the caller only deals with the rows of `W`.

use num_traits::Zero;
use rayon::prelude::*;

use super::lemmas::{single_search, theta_sets, three_search, two_search};
use super::pattern::{matches_case, supports};
use super::{build_lambda, coefficient_vectors, ctp, degree_mismatch, finish, normalize_columns, tp, verify_lift};
use super::{CaseLabel, LiftMatrix, MAX_SEARCH};
use crate::error::{Error, Result};
use crate::puiseux::{dot, left_kernel_vector, KElement, KMatrix};
use crate::rank::{combinations, dependence_free_row, dependence_with_offsets, tropical_rank};
use crate::trop::{TropMatrix, Q};

/// Working coordinates: working row `k` is row `perm[k]` of `W`, and
/// `v = W0[perm] + row_shift + col_shift` where `W0` is column-normalized.
struct Frame {
    perm: Vec<usize>,
    mins: Vec<Q>,
    row_shift: Vec<Q>,
    col_shift: Vec<Q>,
    v: TropMatrix,
    /// Working rows covered by the five-row lift.
    prows: Vec<usize>,
}

impl Frame {
    fn new(w0: &TropMatrix, mins: Vec<Q>, perm: Vec<usize>, row_shift: Vec<Q>, col_shift: Vec<Q>, prows: Vec<usize>) -> Frame {
        let rows = (0..6)
            .map(|k| {
                (0..w0.cols())
                    .map(|j| &(w0.fin(perm[k], j) + &row_shift[k]) + &col_shift[j])
                    .collect()
            })
            .collect();
        Frame {
            v: TropMatrix::from_q_rows(rows).expect("same shape"),
            perm,
            mins,
            row_shift,
            col_shift,
            prows,
        }
    }

    fn plain(w0: &TropMatrix, mins: Vec<Q>, perm: Vec<usize>, prows: Vec<usize>) -> Frame {
        let n = w0.cols();
        Frame::new(w0, mins, perm, vec![Q::zero(); 6], vec![Q::zero(); n], prows)
    }

    fn designated(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.prows.iter().map(|&k| self.perm[k]).collect();
        d.sort_unstable();
        d
    }

    fn col(&self, j: usize) -> Vec<Q> {
        (0..6).map(|k| self.v.fin(k, j).clone()).collect()
    }

    /// Checks `f5` against the designated rows of `w` and moves it to
    /// working coordinates, rows in `prows` order.
    fn import(&self, w: &TropMatrix, f5: &KMatrix) -> Result<KMatrix> {
        let d = self.designated();
        let sub = w.select_rows(&d);
        let lift = verify_lift(f5, &sub)
            .map_err(|e| Error::Precondition(format!("F5 is not a lift of rows {d:?}: {e}")))?;
        match lift.verified_rank_bound() {
            Some(r) if r <= 3 => {}
            Some(r) => return Err(Error::Precondition(format!("F5 has rank {r} > 3"))),
            None => return Err(Error::Precondition("rank of F5 was not computed".into())),
        }
        let idx: Vec<usize> = self
            .prows
            .iter()
            .map(|&k| d.iter().position(|&r| r == self.perm[k]).expect("designated"))
            .collect();
        Ok(KMatrix::from_fn(self.prows.len(), w.cols(), |r, j| {
            let k = self.prows[r];
            let s = &(&self.row_shift[k] + &self.col_shift[j]) - &self.mins[j];
            f5.get(idx[r], j).shift(&s)
        }))
    }

    /// Columns in working coordinates back to a matrix for `W`.
    fn export(&self, cols: &[Vec<KElement>]) -> KMatrix {
        let mut at = vec![0; 6];
        for (k, &r) in self.perm.iter().enumerate() {
            at[r] = k;
        }
        KMatrix::from_fn(6, cols.len(), |i, j| {
            let k = at[i];
            let s = &(&self.mins[j] - &self.row_shift[k]) - &self.col_shift[j];
            cols[j][k].shift(&s)
        })
    }
}

enum Detail {
    V,
    II,
    /// Two equal rows; the lift of the others is copied.
    IEqual { copy: usize, from: usize },
    IA { lam: KMatrix },
    IB { mu3: Q, y3: Q },
}

struct Plan {
    frame: Frame,
    detail: Detail,
}

fn not_automated(step: &str, what: &str) -> Error {
    Error::construction(step, format!("{what}; this configuration is not automated"))
}

fn plan(w: &TropMatrix, case: CaseLabel) -> Result<Plan> {
    if w.rows() != 6 {
        return Err(Error::Shape(format!("expected 6 rows, got {}", w.rows())));
    }
    w.require_finite("complete_lift_with_submatrix")?;
    if !matches!(case, CaseLabel::I | CaseLabel::II | CaseLabel::V) {
        return Err(Error::Precondition(format!("row completion covers cases i, ii and v, not {case}")));
    }
    if !matches_case(w, case) {
        return Err(Error::Precondition(format!("matrix is not in the shape of case {case}")));
    }
    let r = tropical_rank(w)?.rank;
    if r > 3 {
        return Err(Error::Precondition(format!("tropical rank is {r}, expected at most 3")));
    }
    let (w0, mins) = normalize_columns(w);
    match case {
        CaseLabel::V => Ok(Plan {
            frame: Frame::plain(&w0, mins, vec![3, 4, 5, 2, 0, 1], vec![0, 1, 2, 3, 4]),
            detail: Detail::V,
        }),
        CaseLabel::II => plan_ii(&w0, mins),
        _ => plan_i(&w0, mins),
    }
}

/// Rows of `W` whose lift must be supplied to
/// [`complete_lift_with_submatrix`], in increasing order. Row `k` of `F5`
/// lifts row `designated_rows(..)[k]` of `W`.
pub fn designated_rows(w: &TropMatrix, case: CaseLabel) -> Result<Vec<usize>> {
    Ok(plan(w, case)?.frame.designated())
}

/// Extends a rank-at-most-3 lift `f5` of the designated five rows of `w`
/// (see [`designated_rows`]) to a lift of `w` of rank at most 3.
pub fn complete_lift_with_submatrix(w: &TropMatrix, case: CaseLabel, f5: &KMatrix) -> Result<LiftMatrix> {
    let p = plan(w, case)?;
    let fp = p.frame.import(w, f5)?;
    let (cols, step) = match &p.detail {
        Detail::V => (complete_v(&p.frame, &fp)?, "case v"),
        Detail::II => (complete_ii(&p.frame, &fp)?, "case ii"),
        Detail::IEqual { copy, from } => {
            let n = fp.cols();
            let cols = (0..n)
                .map(|j| {
                    let mut x: Vec<KElement> = (0..6).map(|_| KElement::zero()).collect();
                    for (r, &k) in p.frame.prows.iter().enumerate() {
                        x[k] = fp.get(r, j).clone();
                    }
                    x[*copy] = x[*from].clone();
                    x
                })
                .collect();
            (cols, "case i")
        }
        Detail::IA { lam } => (complete_ia(&p.frame, lam)?, "case i"),
        Detail::IB { mu3, y3 } => (complete_ib(&p.frame, &fp, mu3, y3)?, "case i"),
    };
    finish(p.frame.export(&cols), w, step)
}

/// Left kernel vector of the given rows, scaled to minimum degree 0.
fn kernel(f: &KMatrix, rows: &[usize], step: &str) -> Result<Vec<KElement>> {
    let y = left_kernel_vector(&f.select_rows(rows))
        .ok_or_else(|| Error::construction(step, format!("rows {rows:?} of the five-row lift are independent")))?;
    let lo = y
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.deg())
        .min()
        .expect("nonzero kernel vector");
    Ok(y.iter().map(|x| x.shift(&-lo.clone())).collect())
}

/// `-(sum_k c_k x_k) / d`, or `None` when `d = 0`.
fn solve_for(c: &[&KElement], x: &[&KElement], d: &KElement) -> Option<KElement> {
    let s = c.iter().zip(x).fold(KElement::zero(), |acc, (a, b)| &acc + &(*a * *b));
    (-s).checked_div(d).ok()
}

fn no_cancel(a: &KElement, b: &KElement) -> bool {
    (a - b).degree() == a.degree().oplus(&b.degree())
}

fn satisfies(lam: &KMatrix, x: &[KElement]) -> bool {
    (0..lam.cols()).all(|i| dot(&lam.column(i), x).is_zero())
}

// ---- case v ----

fn complete_v(fr: &Frame, fp: &KMatrix) -> Result<Vec<Vec<KElement>>> {
    const STEP: &str = "case v";
    let lam = kernel(fp, &[0, 1, 3, 4], STEP)?;
    let mu = kernel(fp, &[0, 2, 3, 4], STEP)?;
    if lam[1].is_zero() || mu[1].is_zero() {
        return Err(Error::construction(STEP, "kernel vector vanishes at the row it must solve for"));
    }
    let h = dependence_with_offsets(&fr.v.select_rows(&[0, 3, 4, 5]), &[(2, 3, Q::zero())])?
        .ok_or_else(|| Error::construction(STEP, "rows 0, 3, 4, 5 admit no dependence with equal last entries"))?;
    if !(h[2].is_zero() && h[3].is_zero() && h[0] > Q::zero() && h[1] >= Q::zero()) {
        return Err(not_automated(STEP, &format!("dependence tuple {h:?} is not of the form (+, >=0, 0, 0)")));
    }
    let sup = supports(&fr.v);
    let n = fr.v.cols();
    let mut last = String::new();
    for xi in 1..=MAX_SEARCH {
        let nu = [tp(&h[0]), tp(&h[1]), ctp(xi, &h[2]), tp(&h[3])];
        let col = |j: usize| -> std::result::Result<Vec<KElement>, String> {
            let w = fr.col(j);
            if sup[j][..] == [0, 1, 2] {
                let complete = |y: &[KElement]| -> Option<Vec<KElement>> {
                    let f1 = solve_for(&[&lam[0], &lam[2], &lam[3]], &[&y[0], &y[1], &y[2]], &lam[1])?;
                    let f2 = solve_for(&[&mu[0], &mu[2], &mu[3]], &[&y[0], &y[1], &y[2]], &mu[1])?;
                    Some(vec![y[0].clone(), f1, f2, y[1].clone(), y[2].clone(), y[3].clone()])
                };
                let a = [w[0].clone(), w[3].clone(), w[4].clone(), w[5].clone()];
                let accept = |y: &[KElement]| complete(y).map_or(false, |x| degree_mismatch(&x, &w).is_none());
                let y = single_search(&nu, &a, &accept)
                    .map_err(|e| format!("column {j}: {e}"))?
                    .ok_or_else(|| format!("column {j}: single equation search exhausted"))?;
                return Ok(complete(&y).expect("accepted"));
            }
            let mut x: Vec<KElement> = (0..5).map(|k| fp.get(k, j).clone()).collect();
            let f6 = solve_for(&[&nu[0], &nu[1], &nu[2]], &[&x[0], &x[3], &x[4]], &nu[3]).expect("nu_6 != 0");
            x.push(f6);
            match degree_mismatch(&x, &w) {
                None => Ok(x),
                Some(k) => Err(format!("column {j}: completed row has degree {} at row {k}", x[k].degree())),
            }
        };
        match (0..n).into_par_iter().map(col).collect::<std::result::Result<Vec<_>, String>>() {
            Ok(cols) => return Ok(cols),
            Err(e) => last = e,
        }
    }
    Err(Error::construction(STEP, format!("no xi completed every column ({last})")))
}

// ---- case ii ----

const II_TRIPLES: [[usize; 3]; 4] = [[2, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]];

fn plan_ii(w0: &TropMatrix, mins: Vec<Q>) -> Result<Plan> {
    const STEP: &str = "case ii";
    let sup = supports(w0);
    let n = w0.cols();
    let s0: Vec<bool> = sup.iter().map(|s| s[..] == [0, 1]).collect();
    let m = (0..n)
        .filter(|&j| !s0[j])
        .flat_map(|j| [w0.fin(0, j), w0.fin(1, j)])
        .min()
        .expect("case ii has a triple column")
        .clone();
    // Columns positive on rows 0 and 1 after the shift, by their support.
    let mut blocks: Vec<&Vec<usize>> = (0..n)
        .filter(|&j| !s0[j] && w0.fin(0, j) > &m && w0.fin(1, j) > &m)
        .map(|j| &sup[j])
        .collect();
    blocks.sort();
    blocks.dedup();
    if blocks.len() > 1 {
        return Err(not_automated(STEP, "columns positive on rows 0 and 1 occur in more than one support"));
    }
    let triple = match blocks.first() {
        Some(s) if s.len() == 3 => (*s).clone(),
        _ => sup.iter().find(|s| II_TRIPLES.iter().any(|t| s[..] == t[..])).expect("case ii").clone(),
    };
    // Move the row of 2..6 missing from `triple` to position 5.
    let missing = (2..6).find(|r| !triple.contains(r)).expect("triple");
    let mut perm: Vec<usize> = (0..6).collect();
    perm.swap(missing, 5);
    let mut row_shift = vec![Q::zero(); 6];
    row_shift[0] = -m.clone();
    row_shift[1] = -m.clone();
    let col_shift: Vec<Q> = (0..n).map(|j| if s0[j] { m.clone() } else { Q::zero() }).collect();
    Ok(Plan {
        frame: Frame::new(w0, mins, perm, row_shift, col_shift, vec![1, 2, 3, 4, 5]),
        detail: Detail::II,
    })
}

fn complete_ii(fr: &Frame, fp: &KMatrix) -> Result<Vec<Vec<KElement>>> {
    const STEP: &str = "case ii";
    // fp row r is working row r + 1.
    let c0 = kernel(fp, &[0, 2, 3, 4], STEP)?;
    let c1 = kernel(fp, &[0, 1, 2, 4], STEP)?;
    let h = dependence_with_offsets(&fr.v.select_rows(&[0, 1, 4, 5]), &[(0, 1, Q::zero())])?
        .ok_or_else(|| Error::construction(STEP, "rows 0, 1, 4, 5 admit no dependence with equal first entries"))?;
    if !(h[0].is_zero() && h[1].is_zero()) {
        return Err(not_automated(STEP, &format!("dependence tuple {h:?} does not start with (0, 0)")));
    }
    let z = KElement::zero;
    let base = |xi: i64| {
        KMatrix::from_rows(vec![
            vec![z(), z(), KElement::one()],
            vec![c0[0].clone(), c1[0].clone(), KElement::one()],
            vec![z(), c1[1].clone(), z()],
            vec![c0[1].clone(), c1[2].clone(), z()],
            vec![c0[2].clone(), z(), tp(&h[2])],
            vec![c0[3].clone(), c1[3].clone(), ctp(xi, &h[3])],
        ])
        .expect("6x3")
    };
    let generic = |l: &KMatrix| {
        let g = |i: usize, c: usize| l.get(i, c);
        let r1 = g(5, 0) * g(4, 2);
        let r2 = g(4, 0) * g(5, 2);
        let r3 = &(&(g(3, 1) * g(5, 0)) - &(g(5, 1) * g(3, 0))) * g(4, 2);
        let r4 = &(g(3, 1) * g(4, 0)) * g(5, 2);
        no_cancel(&r1, &r2) && no_cancel(&r3, &r4)
    };
    let n = fr.v.cols();
    let mut last = String::new();
    for xi in (1..=MAX_SEARCH).filter(|&xi| generic(&base(xi))) {
        let lam = base(xi);
        let res = (0..n)
            .into_par_iter()
            .map(|j| ii_column(fr, fp, &lam, j))
            .collect::<std::result::Result<Vec<_>, String>>();
        match res {
            Ok(cols) => return Ok(cols),
            Err(e) => last = e,
        }
    }
    Err(Error::construction(STEP, format!("no xi completed every column ({last})")))
}

fn ii_column(fr: &Frame, fp: &KMatrix, lam: &KMatrix, j: usize) -> std::result::Result<Vec<KElement>, String> {
    let w = fr.col(j);
    let ok = |x: &[KElement]| degree_mismatch(x, &w).is_none() && satisfies(lam, x);
    let th = theta_sets(lam, &w).swap_remove(2);
    if th[..] == [0, 1] {
        let mut x = vec![KElement::zero()];
        x.extend((0..5).map(|r| fp.get(r, j).clone()));
        x[0] = solve_for(&[lam.get(1, 2), lam.get(4, 2), lam.get(5, 2)], &[&x[1], &x[4], &x[5]], lam.get(0, 2))
            .expect("lambda_13 = 1");
        return if ok(&x) { Ok(x) } else { Err(format!("column {j}: first row has the wrong degree")) };
    }
    let tail: Vec<usize> = (2..6).filter(|&k| w[k].is_zero()).collect();
    let low: Vec<usize> = th.iter().copied().filter(|&k| k < 2).collect();
    let mut sets: Vec<[usize; 4]> = Vec::new();
    match tail[..] {
        [2, 3, 4] | [2, 3, 4, 5] => {
            if th.contains(&4) && th.contains(&5) {
                sets.push([2, 3, 4, 5]);
            } else if let Some(x) = ii_pair_column(lam, &w, &low, &ok) {
                return Ok(x);
            }
        }
        [2, 3, 5] => {
            if let Some(g) = (0..2).find(|&k| w[k].is_zero()) {
                sets.push([g, 2, 3, 5]);
            }
        }
        [2, 4, 5] => sets.extend(low.iter().map(|&t| [t, 2, 4, 5])),
        [3, 4, 5] => sets.extend(low.iter().map(|&t| [t, 3, 4, 5])),
        _ => {}
    }
    for s in combinations(6, 4) {
        sets.push([s[0], s[1], s[2], s[3]]);
    }
    for base in sets {
        for rot in 0..4 {
            let u = [base[rot], base[(rot + 1) % 4], base[(rot + 2) % 4], base[(rot + 3) % 4]];
            if let Some(x) = three_search(lam, &w, u, &|x| ok(x)) {
                return Ok(x);
            }
        }
    }
    Err(format!("column {j}: no three-equation solution with the required degrees"))
}

/// Rows 4 and 5 fixed as monomials; rows 0 and 1 from the third equation,
/// then rows 3 and 2 from the first two.
fn ii_pair_column(lam: &KMatrix, w: &[Q], low: &[usize], ok: &dyn Fn(&[KElement]) -> bool) -> Option<Vec<KElement>> {
    let p = *low.last()?;
    let q = 1 - p;
    let g = |i: usize, c: usize| lam.get(i, c);
    for xi in 1..=MAX_SEARCH {
        for c in 1..=4 {
            let mut x = vec![KElement::zero(); 6];
            x[5] = tp(&w[5]);
            x[4] = ctp(xi, &w[4]);
            x[q] = ctp(c, &w[q]);
            x[p] = solve_for(&[g(q, 2), g(4, 2), g(5, 2)], &[&x[q], &x[4], &x[5]], g(p, 2))?;
            x[3] = solve_for(&[g(1, 0), g(4, 0), g(5, 0)], &[&x[1], &x[4], &x[5]], g(3, 0))?;
            x[2] = solve_for(&[g(1, 1), g(3, 1), g(5, 1)], &[&x[1], &x[3], &x[5]], g(2, 1))?;
            if ok(&x) {
                return Some(x);
            }
        }
    }
    None
}

// ---- case i ----

fn plan_i(w0: &TropMatrix, mins: Vec<Q>) -> Result<Plan> {
    const STEP: &str = "case i";
    let n = w0.cols();
    let sup = supports(w0);
    let blk: Vec<usize> = sup.iter().map(|s| s[0] / 2).collect();
    let mut mu = Vec::new();
    let mut g = Vec::new();
    for p in 0..3 {
        let diff = (0..n).filter(|&j| w0.fin(2 * p, j) != w0.fin(2 * p + 1, j));
        let best = diff.map(|j| (w0.fin(2 * p, j).min(w0.fin(2 * p + 1, j)).clone(), j)).min();
        match best {
            Some((m, j)) => {
                mu.push(m);
                g.push(j);
            }
            None => {
                let keep: Vec<usize> = (0..6).filter(|&k| k != 2 * p + 1).collect();
                return Ok(Plan {
                    frame: Frame::plain(w0, mins, (0..6).collect(), keep),
                    detail: Detail::IEqual { copy: 2 * p + 1, from: 2 * p },
                });
            }
        }
    }
    // Relabel the pairs so that g(0) lies in block 1 and g(2) in block 0.
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let pi = orders
        .iter()
        .find(|pi| {
            let at = |b: usize| pi.iter().position(|&x| x == b).expect("perm");
            at(blk[g[pi[0]]]) == 1 && at(blk[g[pi[2]]]) == 0
        })
        .ok_or_else(|| not_automated(STEP, "no relabelling of the row pairs fits the minimal columns"))?;
    let mu: Vec<Q> = pi.iter().map(|&p| mu[p].clone()).collect();
    let mut perm: Vec<usize> = pi.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
    let at = |b: usize| pi.iter().position(|&x| x == b).expect("perm");
    let nblk: Vec<usize> = blk.iter().map(|&b| at(b)).collect();
    let g2 = nblk[g[pi[1]]];
    let v = Frame::plain(w0, mins.clone(), perm.clone(), Vec::new()).v;
    let colv = |j: usize| -> Vec<Q> { (0..6).map(|k| v.fin(k, j).clone()).collect() };
    let has = |b: usize, r: usize, m: &Q| (0..n).any(|j| nblk[j] == b && v.fin(r, j).min(v.fin(r + 1, j)) >= m);
    if !has(1, 4, &mu[2]) || !has(2, 0, &mu[0]) {
        return Err(not_automated(STEP, "a pair has no column bounded below by its minimum"));
    }
    let required_aux = if g2 == 2 { (0, 2) } else { (2, 2) };
    if !has(required_aux.0, required_aux.1, &mu[1]) {
        return Err(not_automated(STEP, "pair 1 has no column bounded below by its minimum"));
    }
    // Columns of the form (m, >m, 0, 0, big, big) up to swapping a pair;
    // at most one orientation may occur.
    let form = |x: &[Q], p: usize, lo: usize, hi: usize, z: usize, m: &Q, big: &Q| {
        x[z].is_zero() && x[z + 1].is_zero() && &x[lo] == m && &x[hi] > m && x[p] > *big && x[p + 1] > *big
    };
    let mut swaps = vec![(0usize, 4usize, 2usize, &mu[0], &mu[0] + &mu[2])];
    if g2 == 2 {
        swaps.push((4, 2, 0, &mu[2], &mu[1] + &mu[2]));
        swaps.push((2, 0, 4, &mu[1], &mu[0] + &mu[1]));
    }
    for (r, far, z, m, big) in swaps {
        let a = (0..n).any(|j| form(&colv(j), far, r, r + 1, z, m, &big));
        let b = (0..n).any(|j| form(&colv(j), far, r + 1, r, z, m, &big));
        if a && b {
            return Err(Error::construction(
                STEP,
                format!("both orientations of the pair at rows {r}, {} occur; the rank exceeds 3", r + 1),
            ));
        }
        if a {
            perm.swap(r, r + 1);
        }
    }
    let frame = Frame::plain(w0, mins, perm, vec![0, 1, 2, 3, 4]);
    let zero = Q::zero;
    let y = |rows: [usize; 4], fixed: [Q; 4], free: usize, m: &Q| -> Result<Q> {
        let val = dependence_free_row(&frame.v.select_rows(&rows), &fixed, free)?
            .ok_or_else(|| Error::construction(STEP, format!("rows {rows:?} admit no dependence of the required form")))?;
        if &val < m {
            return Err(Error::construction(STEP, format!("dependence value {val} is below {m}")));
        }
        Ok(val)
    };
    let y1 = y([0, 1, 2, 4], [zero(), zero(), mu[0].clone(), zero()], 3, &mu[0])?;
    let y3 = y([0, 2, 4, 5], [mu[2].clone(), zero(), zero(), zero()], 1, &mu[2])?;
    let detail = if g2 == 2 {
        let y2 = y([0, 2, 3, 4], [zero(), zero(), zero(), mu[1].clone()], 0, &mu[1])?;
        let lam = build_lambda(CaseLabel::I, &[mu[0].clone(), mu[1].clone(), mu[2].clone(), y1, y2, y3])?;
        Detail::IA { lam }
    } else {
        Detail::IB { mu3: mu[2].clone(), y3 }
    };
    Ok(Plan { frame, detail })
}

/// Columns supported on pair `b` via two equations on the other columns of
/// `lam`; row `2b + 1` then follows from column `b`.
fn pair_column(lam: &KMatrix, w: &[Q], b: usize) -> Option<Vec<KElement>> {
    let r = 2 * b + 1;
    let rows: Vec<usize> = (0..6).filter(|&k| k != r).collect();
    let cols: Vec<usize> = (0..3).filter(|&c| c != b).collect();
    let a = lam.submatrix(&rows, &cols);
    let h: Vec<Q> = rows.iter().map(|&k| w[k].clone()).collect();
    let complete = |y: &[KElement]| -> Option<Vec<KElement>> {
        let mut x = vec![KElement::zero(); 6];
        for (i, &k) in rows.iter().enumerate() {
            x[k] = y[i].clone();
        }
        let c: Vec<&KElement> = rows.iter().map(|&k| lam.get(k, b)).collect();
        let xs: Vec<&KElement> = rows.iter().map(|&k| &x[k]).collect();
        x[r] = solve_for(&c, &xs, lam.get(r, b))?;
        Some(x)
    };
    let ok = |x: &[KElement]| degree_mismatch(x, w).is_none() && satisfies(lam, x);
    let y = two_search(&a, &h, &|y| complete(y).map_or(false, |x| ok(&x)))?;
    complete(&y)
}

fn complete_ia(fr: &Frame, lam: &KMatrix) -> Result<Vec<Vec<KElement>>> {
    let sup = supports(&fr.v);
    (0..fr.v.cols())
        .into_par_iter()
        .map(|j| {
            pair_column(lam, &fr.col(j), sup[j][0] / 2)
                .ok_or_else(|| Error::construction("case i", format!("column {j}: two-equation search exhausted")))
        })
        .collect()
}

fn complete_ib(fr: &Frame, fp: &KMatrix, mu3: &Q, y3: &Q) -> Result<Vec<Vec<KElement>>> {
    const STEP: &str = "case i";
    let c0 = kernel(fp, &[0, 1, 2, 4], STEP)?;
    let c1 = kernel(fp, &[0, 2, 3, 4], STEP)?;
    let z = KElement::zero;
    let sup = supports(&fr.v);
    let n = fr.v.cols();
    let mut last = String::new();
    for xi in coefficient_vectors(4, 4) {
        let lam = KMatrix::from_rows(vec![
            vec![c0[0].clone(), c1[0].clone(), ctp(xi[0], mu3)],
            vec![c0[1].clone(), z(), z()],
            vec![c0[2].clone(), c1[1].clone(), ctp(xi[1], y3)],
            vec![z(), c1[2].clone(), z()],
            vec![c0[3].clone(), c1[3].clone(), KElement::int(xi[2])],
            vec![z(), z(), KElement::int(xi[3])],
        ])
        .expect("6x3");
        let generic = (0..2).all(|c| {
            combinations(6, 2).iter().all(|pq| {
                let (p, q) = (pq[0], pq[1]);
                no_cancel(&(lam.get(p, c) * lam.get(q, 2)), &(lam.get(q, c) * lam.get(p, 2)))
            })
        });
        if !generic {
            continue;
        }
        let res = (0..n)
            .into_par_iter()
            .map(|j| {
                let w = fr.col(j);
                let b = sup[j][0] / 2;
                if b < 2 {
                    return pair_column(&lam, &w, b).ok_or_else(|| format!("column {j}: two-equation search exhausted"));
                }
                let mut x: Vec<KElement> = (0..5).map(|k| fp.get(k, j).clone()).collect();
                let f6 = solve_for(&[lam.get(0, 2), lam.get(2, 2), lam.get(4, 2)], &[&x[0], &x[2], &x[4]], lam.get(5, 2))
                    .expect("nonzero");
                x.push(f6);
                if degree_mismatch(&x, &w).is_none() {
                    Ok(x)
                } else {
                    Err(format!("column {j}: completed last row has the wrong degree"))
                }
            })
            .collect::<std::result::Result<Vec<_>, String>>();
        match res {
            Ok(cols) => return Ok(cols),
            Err(e) => last = e,
        }
    }
    Err(Error::construction(STEP, format!("no coefficients completed every column ({last})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{heuristic_lift_rank3, HeuristicBudget};
    use crate::puiseux::rank_over_k;
    use crate::trop::TropValue;

    fn complete(w: &TropMatrix, case: CaseLabel) -> LiftMatrix {
        let d = designated_rows(w, case).unwrap();
        let f5 = heuristic_lift_rank3(&w.select_rows(&d), &HeuristicBudget::default()).unwrap();
        let lift = complete_lift_with_submatrix(w, case, f5.matrix()).unwrap();
        assert_eq!(lift.matrix().degrees(), *w);
        assert!(lift.verified_rank_bound().unwrap() <= 3);
        lift
    }

    fn case_v() -> TropMatrix {
        TropMatrix::from_ints(&[[0, 0, 3, 2], [0, 0, 3, 1], [1, 0, 1, 3], [2, 2, 0, 0], [1, 2, 0, 0], [2, 1, 0, 0]])
    }

    #[test]
    fn case_v_completion() {
        let w = case_v();
        assert_eq!(designated_rows(&w, CaseLabel::V).unwrap(), [0, 2, 3, 4, 5]);
        let lift = complete(&w, CaseLabel::V);
        // Row 1 is the completed row; it has degree 0 on the columns
        // supported in rows 0 and 1.
        for j in 0..2 {
            assert_eq!(lift.matrix().get(1, j).degree(), TropValue::int(0));
        }
    }

    #[test]
    fn wrong_submatrix_is_rejected() {
        let w = case_v();
        let sub = w.select_rows(&[0, 2, 3, 4, 5]);
        let mono = KMatrix::monomial_lift(&sub);
        assert_eq!(rank_over_k(&mono).unwrap(), 4);
        let err = complete_lift_with_submatrix(&w, CaseLabel::V, &mono).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
    }

    #[test]
    fn case_ii_completion() {
        let w = TropMatrix::from_ints(&[
            [0, 1, 2, 3, 1],
            [0, 1, 2, 3, 2],
            [1, 3, 0, 0, 3],
            [3, 0, 1, 1, 0],
            [1, 0, 0, 0, 0],
            [3, 0, 0, 0, 0],
        ]);
        assert_eq!(designated_rows(&w, CaseLabel::II).unwrap(), [1, 2, 3, 4, 5]);
        complete(&w, CaseLabel::II);
    }

    #[test]
    fn case_i_completions() {
        let a = TropMatrix::from_ints(&[[0, 3, 2, 0], [0, 1, 1, 0], [1, 0, 2, 1], [1, 0, 3, 2], [2, 1, 0, 2], [1, 2, 0, 1]]);
        complete(&a, CaseLabel::I);
        let b = TropMatrix::from_ints(&[[0, 2, 2, 1], [0, 2, 3, 1], [2, 0, 2, 0], [1, 0, 1, 0], [1, 3, 0, 2], [2, 2, 0, 3]]);
        complete(&b, CaseLabel::I);
    }

    #[test]
    fn equal_rows_are_copied() {
        let w = TropMatrix::from_ints(&[[0, 1, 2], [0, 1, 2], [1, 0, 1], [2, 0, 2], [1, 1, 0], [1, 2, 0]]);
        assert_eq!(designated_rows(&w, CaseLabel::I).unwrap(), [0, 2, 3, 4, 5]);
        let lift = complete(&w, CaseLabel::I);
        assert_eq!(lift.matrix().row(0), lift.matrix().row(1));
    }

    #[test]
    fn shape_is_checked() {
        let w = case_v();
        assert!(matches!(designated_rows(&w, CaseLabel::I), Err(Error::Precondition(_))));
        assert!(matches!(designated_rows(&w, CaseLabel::IV), Err(Error::Precondition(_))));
    }
}
