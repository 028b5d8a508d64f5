//! Lifts to the Puiseux field and the constructions bounding Kapranov rank.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::puiseux::{rank_over_k_with, KElement, KMatrix, MAX_DET};
use crate::trop::{TropMatrix, TropValue, Q};

mod case_iii;
mod case_iv;
mod classify;
mod complete;
mod heuristic;
mod lambda;
mod lemmas;
mod pattern;

pub use case_iii::construct_lift_case_iii;
pub use case_iv::construct_lift_case_iv;
pub use classify::{classify_pattern_case, Classification};
pub use complete::{complete_lift_with_submatrix, designated_rows};
pub use heuristic::{heuristic_lift_rank3, HeuristicBudget};
pub use lambda::build_lambda;
pub use pattern::matches_case;
pub use lemmas::{solve_single_equation, solve_three_equations, solve_two_equations, theta_sets};

/// Upper bound on the generic-constant searches (`xi`, `gamma`, `zeta`).
pub const MAX_SEARCH: i64 = 64;

/// A matrix over K whose entrywise degrees equal `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftMatrix {
    f: KMatrix,
    target: TropMatrix,
    verified_rank_bound: Option<usize>,
}

impl LiftMatrix {
    pub fn matrix(&self) -> &KMatrix {
        &self.f
    }

    pub fn target(&self) -> &TropMatrix {
        &self.target
    }

    /// Rank over K when it was computed.
    pub fn verified_rank_bound(&self) -> Option<usize> {
        self.verified_rank_bound
    }

    pub fn into_matrix(self) -> KMatrix {
        self.f
    }
}

/// Pattern shapes of 6-row matrices with tropical rank 3 that need a
/// dedicated lift construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    Unclassified,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 5] = [CaseLabel::I, CaseLabel::II, CaseLabel::III, CaseLabel::IV, CaseLabel::V];
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
            CaseLabel::IV => "iv",
            CaseLabel::V => "v",
            CaseLabel::Unclassified => "unclassified",
        })
    }
}

impl FromStr for CaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "i" => CaseLabel::I,
            "ii" => CaseLabel::II,
            "iii" => CaseLabel::III,
            "iv" => CaseLabel::IV,
            "v" => CaseLabel::V,
            "unclassified" => CaseLabel::Unclassified,
            _ => return Err(Error::Precondition(format!("unknown case label {s:?}"))),
        })
    }
}

/// Checks `deg F = A` entrywise and records the rank of `F` when
/// `min(d, n) <= 6`.
pub fn verify_lift(f: &KMatrix, a: &TropMatrix) -> Result<LiftMatrix> {
    verify_lift_with(f, a, MAX_DET)
}

/// As [`verify_lift`], computing the rank when `min(d, n) <= max_dim`.
pub fn verify_lift_with(f: &KMatrix, a: &TropMatrix, max_dim: usize) -> Result<LiftMatrix> {
    if f.rows() != a.rows() || f.cols() != a.cols() {
        return Err(Error::Shape(format!(
            "lift is {}x{}, target is {}x{}",
            f.rows(),
            f.cols(),
            a.rows(),
            a.cols()
        )));
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let found = f.get(i, j).degree();
            if &found != a.get(i, j) {
                return Err(Error::DegreeMismatch {
                    row: i,
                    col: j,
                    expected: a.get(i, j).to_string(),
                    found: found.to_string(),
                });
            }
        }
    }
    let verified_rank_bound = if a.rows().min(a.cols()) <= max_dim {
        Some(rank_over_k_with(f, max_dim)?)
    } else {
        None
    };
    Ok(LiftMatrix {
        f: f.clone(),
        target: a.clone(),
        verified_rank_bound,
    })
}

pub(crate) fn tp(e: &Q) -> KElement {
    KElement::t_pow(e.clone())
}

pub(crate) fn ctp(c: i64, e: &Q) -> KElement {
    KElement::ct(c, e.clone())
}

/// First index where `deg x_k != want_k`.
pub(crate) fn degree_mismatch(x: &[KElement], want: &[Q]) -> Option<usize> {
    (0..x.len()).find(|&k| x[k].degree() != TropValue::Finite(want[k].clone()))
}

/// Shifts every column to minimum 0; returns the shifted matrix and the
/// removed minima.
pub(crate) fn normalize_columns(w: &TropMatrix) -> (TropMatrix, Vec<Q>) {
    let mins: Vec<Q> = (0..w.cols())
        .map(|j| (0..w.rows()).map(|i| w.fin(i, j)).min().expect("rows").clone())
        .collect();
    let rows = (0..w.rows())
        .map(|i| (0..w.cols()).map(|j| w.fin(i, j) - &mins[j]).collect())
        .collect();
    (TropMatrix::from_q_rows(rows).expect("same shape"), mins)
}

/// Multiplies column `j` by `t^{s_j}`.
pub(crate) fn shift_columns(f: &KMatrix, s: &[Q]) -> KMatrix {
    KMatrix::from_fn(f.rows(), f.cols(), |i, j| f.get(i, j).shift(&s[j]))
}

/// Assembles columns into a matrix.
pub(crate) fn from_columns(rows: usize, cols: &[Vec<KElement>]) -> KMatrix {
    KMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Odometer over coefficient vectors with entries in `1..=base`, all ones
/// first.
pub(crate) fn coefficient_vectors(len: usize, base: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (base as u64).saturating_pow(len as u32);
    (0..total).map(move |mut k| {
        (0..len)
            .map(|_| {
                let d = (k % base as u64) as i64;
                k /= base as u64;
                d + 1
            })
            .collect()
    })
}

/// Final check shared by the constructors: degrees, then `rank <= 3`.
pub(crate) fn finish(f: KMatrix, w: &TropMatrix, step: &str) -> Result<LiftMatrix> {
    let lift = verify_lift(&f, w).map_err(|e| Error::construction(step, e.to_string()))?;
    match lift.verified_rank_bound {
        Some(r) if r <= 3 => Ok(lift),
        Some(r) => Err(Error::construction(step, format!("assembled lift has rank {r} > 3"))),
        None => Err(Error::construction(step, "rank of the assembled lift was not computed")),
    }
}

pub(crate) fn pos(x: &Q) -> bool {
    x > &Q::from_integer(0.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::t_int;
    use crate::trop::q;

    #[test]
    fn monomial_and_rank_one_lifts() {
        let a = TropMatrix::from_ints(&[[0, 1, 3], [2, 0, 1]]);
        let f = KMatrix::monomial_lift(&a);
        assert!(verify_lift(&f, &a).is_ok());
        let r = [0i64, 2, 5];
        let c = [1i64, 0, 3];
        let a1 = TropMatrix::from_ints(&r.iter().map(|x| c.iter().map(|y| x + y).collect::<Vec<_>>()).collect::<Vec<_>>());
        let f1 = KMatrix::from_fn(3, 3, |i, j| &t_int(r[i]) * &t_int(c[j]));
        assert_eq!(verify_lift(&f1, &a1).unwrap().verified_rank_bound(), Some(1));
    }

    #[test]
    fn located_mismatch() {
        let a = TropMatrix::from_ints(&[[0, 1], [2, 0]]);
        let mut f = KMatrix::monomial_lift(&a);
        f.set(1, 0, t_int(3));
        match verify_lift(&f, &a) {
            Err(Error::DegreeMismatch { row, col, expected, found }) => {
                assert_eq!((row, col), (1, 0));
                assert_eq!(expected, "2");
                assert_eq!(found, "3");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(degree_mismatch(&[t_int(1)], &[q(1)]), None);
    }

    #[test]
    fn odometer_starts_with_ones() {
        let v: Vec<Vec<i64>> = coefficient_vectors(2, 3).collect();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], vec![1, 1]);
        assert_eq!(v[1], vec![2, 1]);
    }

    #[test]
    fn labels_round_trip() {
        for c in CaseLabel::ALL {
            assert_eq!(c.to_string().parse::<CaseLabel>().unwrap(), c);
        }
    }
}
