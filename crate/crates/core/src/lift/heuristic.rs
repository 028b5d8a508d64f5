//! Bounded search for rank-3 lifts of 5-row matrices.
//!
//! Two 4-row subsets give dependence tuples; their monomials (with small
//! integer coefficients) form a 5x2 matrix `L`, and every column `x` of the
//! lift is solved from `L^T x = 0` with the prescribed degrees. Two
//! independent relations among five rows leave rank at most 3.

use rayon::prelude::*;

use super::lemmas::two_search;
use super::{coefficient_vectors, ctp, finish, LiftMatrix};
use crate::error::{Error, Result};
use crate::puiseux::{KElement, KMatrix};
use crate::rank::{combinations, dependence_with_offsets, find_dependence};
use crate::trop::{TropMatrix, TropValue, Q};

/// Limits for [`heuristic_lift_rank3`].
#[derive(Clone, Debug)]
pub struct HeuristicBudget {
    /// Coefficient vectors tried per pair of row subsets.
    pub coefficient_tries: usize,
    /// Largest coefficient magnitude in the ansatz.
    pub max_coefficient: i64,
}

impl Default for HeuristicBudget {
    fn default() -> Self {
        HeuristicBudget {
            coefficient_tries: 64,
            max_coefficient: 3,
        }
    }
}

/// Dependence tuple over 5 rows, infinite outside `rows`.
fn tuple(w: &TropMatrix, rows: &[usize]) -> Result<Option<Vec<TropValue>>> {
    let sub = w.select_rows(rows);
    let found: Option<Vec<TropValue>> = match dependence_with_offsets(&sub, &[])? {
        Some(x) => Some(x.into_iter().map(TropValue::Finite).collect()),
        None => find_dependence(&sub)?.map(|c| c.lambdas),
    };
    Ok(found.map(|l| {
        let mut out = vec![TropValue::Inf; w.rows()];
        for (k, &r) in rows.iter().enumerate() {
            out[r] = l[k].clone();
        }
        out
    }))
}

fn signed(c: i64, max: i64) -> i64 {
    // 1, -1, 2, -2, ...
    let k = (c - 1) % (2 * max);
    if k % 2 == 0 {
        k / 2 + 1
    } else {
        -(k / 2 + 1)
    }
}

/// A lift of the 5-row finite matrix `w` with rank at most 3, or a
/// `Budget` error when the search gives up.
pub fn heuristic_lift_rank3(w: &TropMatrix, budget: &HeuristicBudget) -> Result<LiftMatrix> {
    if w.rows() != 5 {
        return Err(Error::Shape(format!("expected 5 rows, got {}", w.rows())));
    }
    w.require_finite("heuristic_lift_rank3")?;
    let n = w.cols();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| (0..5).map(|i| w.fin(i, j).clone()).collect()).collect();
    let subsets = combinations(5, 4);
    let mut tuples = Vec::new();
    for s in &subsets {
        if let Some(t) = tuple(w, s)? {
            tuples.push(t);
        }
    }
    let base = 2 * budget.max_coefficient.max(1);
    for p in 0..tuples.len() {
        for q in p + 1..tuples.len() {
            let (l1, l2) = (&tuples[p], &tuples[q]);
            let entries: Vec<(usize, usize)> = (0..5)
                .flat_map(|k| [(k, 0), (k, 1)])
                .filter(|&(k, c)| ![l1, l2][c][k].is_inf())
                .collect();
            for coeffs in coefficient_vectors(entries.len(), base).take(budget.coefficient_tries) {
                let mut a = KMatrix::from_fn(5, 2, |_, _| KElement::zero());
                for (&(k, c), &x) in entries.iter().zip(&coeffs) {
                    let e = [l1, l2][c][k].finite().expect("finite").clone();
                    a.set(k, c, ctp(signed(x, budget.max_coefficient), &e));
                }
                let solved: Option<Vec<Vec<KElement>>> =
                    cols.par_iter().map(|h| two_search(&a, h, &|_| true)).collect();
                if let Some(solved) = solved {
                    let f = KMatrix::from_fn(5, n, |i, j| solved[j][i].clone());
                    if let Ok(lift) = finish(f, w, "heuristic") {
                        return Ok(lift);
                    }
                }
            }
        }
    }
    Err(Error::Budget("heuristic rank-3 lift search exhausted".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_a_generic_rank_three_matrix() {
        let w = TropMatrix::from_ints(&[[0, 0, 3, 2, 3], [0, 2, 0, 2, 0], [0, 1, 1, 0, 0], [2, 0, 0, 1, 0], [3, 0, 2, 0, 0]]);
        assert!(crate::rank::tropical_rank(&w).unwrap().rank <= 3);
        let lift = heuristic_lift_rank3(&w, &HeuristicBudget::default()).unwrap();
        assert!(lift.verified_rank_bound().unwrap() <= 3);
        assert_eq!(lift.matrix().degrees(), w);
    }

    #[test]
    fn signs_alternate() {
        let v: Vec<i64> = (1..=6).map(|c| signed(c, 3)).collect();
        assert_eq!(v, [1, -1, 2, -2, 3, -3]);
    }
}
