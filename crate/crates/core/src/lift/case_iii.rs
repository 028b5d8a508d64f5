//! Lifts of rank 3 when every zero support is one of four fixed triples or
//! has at least four elements.

use num_traits::Zero;
use rayon::prelude::*;

use super::lambda::{cofactor_matrix, III_SPECIAL};
use super::lemmas::{check_three, single_search, three_search};
use super::pattern::supports;
use super::{build_lambda, ctp, degree_mismatch, finish, from_columns, normalize_columns, shift_columns, tp};
use super::{CaseLabel, LiftMatrix, MAX_SEARCH};
use crate::error::{Error, Result};
use crate::puiseux::{determinant, dot, KElement, KMatrix};
use crate::rank::{combinations, dependence_free_row};
use crate::trop::{TropMatrix, Q};

const STEP: &str = "case iii";

/// For triple `III_SPECIAL[p]`, the rows and free position of the
/// dependence tuple defining its parameter.
const PARAM_ROWS: [([usize; 4], usize); 4] = [([2, 3, 4, 5], 0), ([0, 1, 2, 5], 0), ([0, 1, 2, 4], 1), ([0, 1, 2, 3], 2)];

/// `(a, b, c, d)`: zero when no column has the matching triple support.
pub(crate) fn case_iii_parameters(w0: &TropMatrix) -> Result<[Q; 4]> {
    let sup = supports(w0);
    let mut out: [Q; 4] = Default::default();
    for (p, (rows, free)) in PARAM_ROWS.iter().enumerate() {
        if !sup.iter().any(|s| s[..] == III_SPECIAL[p][..]) {
            continue;
        }
        let fixed = vec![Q::zero(); 4];
        out[p] = dependence_free_row(&w0.select_rows(rows), &fixed, *free)?.ok_or_else(|| {
            Error::construction(STEP, format!("rows {rows:?} admit no dependence tuple with a free entry at {free}"))
        })?;
    }
    Ok(out)
}

struct System {
    lam: KMatrix,
    cof: KMatrix,
    det: KElement,
    a: Q,
    sup: Vec<Vec<usize>>,
}

impl System {
    fn satisfied(&self, x: &[KElement]) -> bool {
        (0..3).all(|i| dot(&self.lam.column(i), x).is_zero())
    }

    fn accept(&self, x: Vec<KElement>, w: &[Q]) -> Option<Vec<KElement>> {
        (degree_mismatch(&x, w).is_none() && self.satisfied(&x)).then_some(x)
    }

    /// `f_i = sum_k f_{k+3} C_{ik} / det L`.
    fn top_from_bottom(&self, bottom: Vec<KElement>) -> Vec<KElement> {
        let mut x: Vec<KElement> = (0..3)
            .map(|i| {
                let s = (0..3).fold(KElement::zero(), |acc, k| &acc + &(&bottom[k] * self.cof.get(i, k)));
                &s / &self.det
            })
            .collect();
        x.extend(bottom);
        x
    }

    fn column(&self, j: usize, w: &[Q]) -> Result<Vec<KElement>> {
        let fail = |what: &str| Error::construction(STEP, format!("column {j}: {what}"));
        let s = &self.sup[j];
        if s[..] == [0, 1, 2] {
            let lo = w[3..].iter().min().expect("three entries").clone();
            let ties: Vec<usize> = (0..3).filter(|&k| w[3 + k] == lo).collect();
            if ties.len() == 1 {
                let x = self.top_from_bottom(w[3..].iter().map(tp).collect());
                return self.accept(x, w).ok_or_else(|| fail("unique bottom minimum"));
            }
            let (al, be) = (ties[0], ties[1]);
            let de = (0..3).find(|&k| k != al && k != be).expect("three entries");
            for g in 1..=MAX_SEARCH {
                let mut bottom = vec![KElement::zero(); 3];
                bottom[al] = ctp(g, &lo);
                bottom[de] = tp(&w[3 + de]);
                let num = &(&bottom[al] * self.cof.get(0, al)) + &(&bottom[de] * self.cof.get(0, de));
                bottom[be] = &(-(&num / self.cof.get(0, be))) + &tp(&self.a);
                if let Some(x) = self.accept(self.top_from_bottom(bottom), w) {
                    return Ok(x);
                }
            }
            return Err(fail("no gamma for a tied bottom minimum"));
        }
        // One equation fixes the three top entries and one bottom entry,
        // the other two equations then define the remaining bottom entries.
        let single = |col: usize, extra: usize| -> Result<Vec<KElement>> {
            let rows = [0, 1, 2, extra];
            let l: Vec<KElement> = rows.iter().map(|&r| self.lam.get(r, col).clone()).collect();
            let a: Vec<Q> = rows.iter().map(|&r| w[r].clone()).collect();
            let complete = |y: &[KElement]| {
                let mut x = vec![KElement::zero(); 6];
                for (k, &r) in rows.iter().enumerate() {
                    x[r] = y[k].clone();
                }
                for i in (0..3).filter(|&i| i != col) {
                    x[3 + i] = (0..3).fold(KElement::zero(), |acc, k| &acc + &(self.lam.get(k, i) * &x[k]));
                }
                x
            };
            let found = single_search(&l, &a, &|y| self.accept(complete(y), w).is_some())
                .map_err(|e| fail(&e.to_string()))?;
            found.map(|y| complete(&y)).ok_or_else(|| fail("single equation search exhausted"))
        };
        match s[..] {
            [0, 3, 4] => return single(2, 5),
            [1, 3, 5] => return single(1, 4),
            [2, 4, 5] => return single(0, 3),
            _ => {}
        }
        if s.len() < 4 {
            return Err(fail("support is not one of the admissible shapes"));
        }
        let mut tried = Vec::new();
        for four in combinations(s.len(), 4) {
            let uvyz: Vec<usize> = four.iter().map(|&k| s[k]).collect();
            let contains_support = self.sup.iter().any(|t| t.len() < 4 && t.iter().all(|r| uvyz.contains(r)));
            if contains_support {
                continue;
            }
            let base = [uvyz[0], uvyz[1], uvyz[2], uvyz[3]];
            if let Err(e) = check_three(&self.lam, w, base) {
                tried.push(e.to_string());
                continue;
            }
            for rot in 0..4 {
                let u = [base[rot], base[(rot + 1) % 4], base[(rot + 2) % 4], base[(rot + 3) % 4]];
                if let Some(x) = three_search(&self.lam, w, u, &|_| true) {
                    return Ok(x);
                }
            }
            tried.push(format!("{uvyz:?}: search exhausted"));
        }
        Err(fail(&format!("no four-element subset of the support works ({})", tried.join("; "))))
    }
}

/// A lift of rank at most 3 for a 6-row matrix whose column supports
/// (after column normalization) are `{0,1,2}`, `{0,3,4}`, `{1,3,5}`,
/// `{2,4,5}`, or have at least four elements.
pub fn construct_lift_case_iii(w: &TropMatrix) -> Result<LiftMatrix> {
    if w.rows() != 6 {
        return Err(Error::Shape(format!("expected 6 rows, got {}", w.rows())));
    }
    w.require_finite("construct_lift_case_iii")?;
    let (w0, mins) = normalize_columns(w);
    let sup = supports(&w0);
    if let Some(j) = (0..sup.len()).find(|&j| sup[j].len() < 4 && !III_SPECIAL.iter().any(|t| t[..] == sup[j][..])) {
        return Err(Error::Precondition(format!("column {j} has support {:?}", sup[j])));
    }
    let params = case_iii_parameters(&w0)?;
    let lam = build_lambda(CaseLabel::III, &params)?;
    let top = lam.select_rows(&[0, 1, 2]);
    let [a, ..] = params;
    let sys = System {
        cof: cofactor_matrix(&top)?,
        det: determinant(&top)?,
        lam,
        a,
        sup,
    };
    let cols: Vec<Vec<KElement>> = (0..w0.cols())
        .into_par_iter()
        .map(|j| {
            let col: Vec<Q> = (0..6).map(|i| w0.fin(i, j).clone()).collect();
            sys.column(j, &col)
        })
        .collect::<Result<_>>()?;
    let f = shift_columns(&from_columns(6, &cols), &mins);
    finish(f, w, STEP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_for_all_column_kinds() {
        let w = TropMatrix::from_ints(&[
            [0, 0, 3, 2, 3],
            [0, 2, 0, 2, 0],
            [0, 1, 1, 0, 0],
            [2, 0, 0, 1, 0],
            [3, 0, 2, 0, 0],
            [3, 2, 0, 0, 1],
        ]);
        let lift = construct_lift_case_iii(&w).unwrap();
        assert_eq!(lift.verified_rank_bound(), Some(3));
        assert_eq!(lift.matrix().degrees(), w);
    }

    #[test]
    fn rejects_other_supports() {
        let w = TropMatrix::from_ints(&[[0], [0], [1], [1], [1], [1]]);
        assert!(matches!(construct_lift_case_iii(&w), Err(Error::Precondition(_))));
    }
}
