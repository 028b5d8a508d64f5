//! Lifts of rank 3 for the two-block shape: rows 0..3 and 3..6 each carry
//! a block of zero columns, and every other column has at least two zeros
//! in each block.

use rayon::prelude::*;

use super::lambda::cofactor_matrix;
use super::{build_lambda, ctp, degree_mismatch, finish, from_columns, normalize_columns, shift_columns, tp};
use super::{CaseLabel, LiftMatrix, MAX_SEARCH};
use crate::error::{Error, Result};
use crate::puiseux::{determinant, KElement, KMatrix};
use crate::rank::dependence_free_row;
use crate::trop::{TropMatrix, Q};

const STEP: &str = "case iv";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Block {
    /// Zero on rows 0..3, positive on rows 3..6.
    Top,
    /// Zero on rows 3..6, positive on rows 0..3.
    Bottom,
    /// At least two zeros in each half.
    Mixed,
}

/// Column kinds of a column-normalized 6-row matrix, or the first column
/// that fits none of them.
pub(crate) fn column_blocks(w0: &TropMatrix) -> std::result::Result<Vec<Block>, usize> {
    (0..w0.cols())
        .map(|j| {
            let zeros = |r: std::ops::Range<usize>| r.filter(|&i| w0.fin(i, j) == &Q::from_integer(0.into())).count();
            match (zeros(0..3), zeros(3..6)) {
                (3, 0) => Ok(Block::Top),
                (0, 3) => Ok(Block::Bottom),
                (t, b) if t >= 2 && b >= 2 => Ok(Block::Mixed),
                _ => Err(j),
            }
        })
        .collect()
}

struct System {
    lam: KMatrix,
    cof: KMatrix,
    det: KElement,
    ta: KElement,
    a: Q,
    b: Q,
}

impl System {
    /// `f_i = t^a sum_k f_{k+3} C_{ki} / det`.
    fn top_from_bottom(&self, bottom: &[KElement]) -> Vec<KElement> {
        (0..3)
            .map(|i| {
                let s = (0..3).fold(KElement::zero(), |acc, k| &acc + &(&bottom[k] * self.cof.get(k, i)));
                &(&self.ta * &s) / &self.det
            })
            .collect()
    }

    /// `f_{i+3} = t^{-a} sum_k lambda_{ik} f_k`.
    fn bottom_from_top(&self, top: &[KElement]) -> Vec<KElement> {
        let inv = tp(&-self.a.clone());
        (0..3)
            .map(|i| {
                let s = (0..3).fold(KElement::zero(), |acc, k| &acc + &(self.lam.get(i, k) * &top[k]));
                &inv * &s
            })
            .collect()
    }

    fn accept(&self, x: Vec<KElement>, w: &[Q]) -> Option<Vec<KElement>> {
        if degree_mismatch(&x, w).is_some() {
            return None;
        }
        let lhs = self.lam.mul_vec(&x[..3]).ok()?;
        (0..3).all(|i| lhs[i] == &self.ta * &x[i + 3]).then_some(x)
    }

    fn column(&self, j: usize, w: &[Q], kind: Block) -> Result<Vec<KElement>> {
        let fail = |what: &str| Error::construction(STEP, format!("column {j}: {what}"));
        let concat = |mut top: Vec<KElement>, bottom: Vec<KElement>| {
            top.extend(bottom);
            top
        };
        match kind {
            Block::Top => {
                let (lo, ties, rest) = ties(&w[3..]);
                if ties.len() == 1 {
                    let bottom: Vec<KElement> = w[3..].iter().map(tp).collect();
                    let x = concat(self.top_from_bottom(&bottom), bottom);
                    return self.accept(x, w).ok_or_else(|| fail("unique bottom minimum"));
                }
                let (al, be, de) = (ties[0], ties[1], rest);
                for g in 1..=MAX_SEARCH {
                    let mut bottom = vec![KElement::zero(); 3];
                    bottom[al] = ctp(g, &lo);
                    bottom[de] = tp(&w[3 + de]);
                    let s = &(&bottom[al] * self.cof.get(al, 0)) + &(&bottom[de] * self.cof.get(de, 0));
                    bottom[be] = &(-(&s / self.cof.get(be, 0))) + &tp(&self.b);
                    let x = concat(self.top_from_bottom(&bottom), bottom);
                    if let Some(x) = self.accept(x, w) {
                        return Ok(x);
                    }
                }
                Err(fail("no gamma for a tied bottom minimum"))
            }
            Block::Bottom => {
                let (lo, ties, rest) = ties(&w[..3]);
                if ties.len() == 1 {
                    let top: Vec<KElement> = w[..3].iter().map(tp).collect();
                    let bottom = self.bottom_from_top(&top);
                    return self.accept(concat(top, bottom), w).ok_or_else(|| fail("unique top minimum"));
                }
                let (al, be, de) = (ties[0], ties[1], rest);
                for g in 1..=MAX_SEARCH {
                    let mut top = vec![KElement::zero(); 3];
                    top[al] = ctp(g, &lo);
                    top[de] = tp(&w[de]);
                    let s = &(&top[al] * self.lam.get(0, al)) + &(&top[de] * self.lam.get(0, de));
                    top[be] = &(-(&s / self.lam.get(0, be))) + &tp(&self.a);
                    let bottom = self.bottom_from_top(&top);
                    if let Some(x) = self.accept(concat(top, bottom), w) {
                        return Ok(x);
                    }
                }
                Err(fail("no gamma for a tied top minimum"))
            }
            Block::Mixed => {
                let r3 = argmax(&w[..3]);
                let s3 = argmax(&w[3..]);
                let alpha = &w[r3];
                let beta = &w[3 + s3];
                let others: Vec<usize> = (0..3).filter(|&k| k != s3).collect();
                for (s1, s2) in [(others[0], others[1]), (others[1], others[0])] {
                    for z in 1..=MAX_SEARCH {
                        let mut bottom = vec![KElement::zero(); 3];
                        bottom[s2] = KElement::int(z);
                        bottom[s3] = tp(beta);
                        let s = &(&bottom[s2] * self.cof.get(s2, r3)) + &(&bottom[s3] * self.cof.get(s3, r3));
                        bottom[s1] = &(-(&s / self.cof.get(s1, r3))) + &tp(&(&self.b + alpha));
                        let x = concat(self.top_from_bottom(&bottom), bottom);
                        if let Some(x) = self.accept(x, w) {
                            return Ok(x);
                        }
                    }
                }
                Err(fail("no zeta for a mixed column"))
            }
        }
    }
}

/// Minimum, its positions (at least one), and the smallest index outside
/// the first two positions.
fn ties(v: &[Q]) -> (Q, Vec<usize>, usize) {
    let lo = v.iter().min().expect("three entries").clone();
    let t: Vec<usize> = (0..3).filter(|&k| v[k] == lo).collect();
    let rest = if t.len() >= 2 {
        (0..3).find(|k| *k != t[0] && *k != t[1]).expect("three entries")
    } else {
        0
    };
    (lo, t, rest)
}

/// Last position of the maximum.
fn argmax(v: &[Q]) -> usize {
    (0..v.len()).rev().max_by(|&x, &y| v[x].cmp(&v[y])).expect("nonempty")
}

/// The parameters `(a, b)`: `(0, 0, 0, a)` realizes the dependence of rows
/// 0..4 and `(b, 0, 0, 0)` that of rows 2..6.
pub(crate) fn case_iv_parameters(w0: &TropMatrix) -> Result<(Q, Q)> {
    let z = || Q::from_integer(0.into());
    let a = dependence_free_row(&w0.select_rows(&[0, 1, 2, 3]), &[z(), z(), z(), z()], 3)?;
    let b = dependence_free_row(&w0.select_rows(&[2, 3, 4, 5]), &[z(), z(), z(), z()], 0)?;
    match (a, b) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::construction(
            STEP,
            "rows 0..4 or 2..6 admit no dependence tuple with three zero coordinates",
        )),
    }
}

/// A lift of rank at most 3 for a 6-row matrix in the two-block shape.
///
/// Columns are normalized internally. Rows 0..3 and 3..6 must be the two
/// blocks; each column is zero on one block and positive on the other, or
/// has at least two zeros in each block.
pub fn construct_lift_case_iv(w: &TropMatrix) -> Result<LiftMatrix> {
    if w.rows() != 6 {
        return Err(Error::Shape(format!("expected 6 rows, got {}", w.rows())));
    }
    w.require_finite("construct_lift_case_iv")?;
    let (w0, mins) = normalize_columns(w);
    let kinds = column_blocks(&w0)
        .map_err(|j| Error::Precondition(format!("column {j} does not fit the two-block shape")))?;
    let (a, b) = case_iv_parameters(&w0)?;
    let lam = build_lambda(CaseLabel::IV, &[a.clone(), b.clone()])?;
    let sys = System {
        cof: cofactor_matrix(&lam)?,
        det: determinant(&lam)?,
        ta: tp(&a),
        lam,
        a,
        b,
    };
    let cols: Vec<Vec<KElement>> = (0..w0.cols())
        .into_par_iter()
        .map(|j| {
            let col: Vec<Q> = (0..6).map(|i| w0.fin(i, j).clone()).collect();
            sys.column(j, &col, kinds[j])
        })
        .collect::<Result<_>>()?;
    let f = shift_columns(&from_columns(6, &cols), &mins);
    finish(f, w, STEP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> TropMatrix {
        TropMatrix::from_ints(&[
            [0, 0, 2, 1, 0, 0],
            [0, 0, 1, 2, 0, 1],
            [0, 0, 1, 1, 1, 0],
            [1, 2, 0, 0, 0, 0],
            [2, 1, 0, 0, 0, 2],
            [1, 1, 0, 0, 3, 0],
        ])
    }

    #[test]
    fn lift_has_rank_three() {
        let w = example();
        let lift = construct_lift_case_iv(&w).unwrap();
        assert_eq!(lift.verified_rank_bound(), Some(3));
        assert_eq!(lift.matrix().degrees(), w);
    }

    #[test]
    fn column_shifts_are_undone() {
        let mut rows: Vec<Vec<i64>> = vec![
            vec![0, 0, 2, 1, 0, 0],
            vec![0, 0, 1, 2, 0, 1],
            vec![0, 0, 1, 1, 1, 0],
            vec![1, 2, 0, 0, 0, 0],
            vec![2, 1, 0, 0, 0, 2],
            vec![1, 1, 0, 0, 3, 0],
        ];
        for r in rows.iter_mut() {
            r[2] += 5;
            r[4] -= 3;
        }
        let w = TropMatrix::from_ints(&rows);
        let lift = construct_lift_case_iv(&w).unwrap();
        assert_eq!(lift.matrix().degrees(), w);
    }

    #[test]
    fn rejects_other_shapes() {
        let w = TropMatrix::from_ints(&[[0, 0], [0, 1], [0, 1], [1, 0], [1, 1], [1, 1]]);
        assert!(matches!(construct_lift_case_iv(&w), Err(Error::Precondition(_))));
    }
}
