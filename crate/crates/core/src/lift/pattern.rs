//! Support predicates for the five shapes of 6-row matrices.

use super::lambda::III_SPECIAL;
use super::CaseLabel;
use crate::trop::{pattern, TropMatrix};

/// Zero rows of each column of the pattern (finite matrices only).
pub(crate) fn supports(w: &TropMatrix) -> Vec<Vec<usize>> {
    match pattern(w) {
        Ok(p) => (0..p.cols()).map(|j| p.support(j)).collect(),
        Err(_) => Vec::new(),
    }
}

const II_TRIPLES: [[usize; 3]; 4] = [[3, 4, 5], [2, 3, 5], [2, 4, 5], [2, 3, 4]];

pub(crate) fn shape_holds(sup: &[Vec<usize>], case: CaseLabel) -> bool {
    let is = |s: &Vec<usize>, t: &[usize]| s[..] == t[..];
    match case {
        CaseLabel::I => sup.iter().all(|s| [[0, 1], [2, 3], [4, 5]].iter().any(|t| is(s, t))),
        CaseLabel::II => {
            sup.iter().any(|s| is(s, &[0, 1]))
                && sup.iter().any(|s| II_TRIPLES.iter().any(|t| is(s, t)))
                && sup
                    .iter()
                    .all(|s| is(s, &[0, 1]) || is(s, &[2, 3, 4, 5]) || II_TRIPLES.iter().any(|t| is(s, t)))
        }
        CaseLabel::III => sup.iter().all(|s| {
            if III_SPECIAL.iter().any(|t| is(s, t)) {
                return true;
            }
            match s.len() {
                0..=3 => false,
                4 => !sup
                    .iter()
                    .any(|o| o.len() < s.len() && o.iter().all(|r| s.contains(r))),
                _ => true,
            }
        }),
        CaseLabel::IV => {
            sup.iter().any(|s| is(s, &[0, 1, 2]))
                && sup.iter().any(|s| is(s, &[3, 4, 5]))
                && sup.iter().all(|s| {
                    is(s, &[0, 1, 2])
                        || is(s, &[3, 4, 5])
                        || (s.iter().filter(|&&r| r < 3).count() >= 2 && s.iter().filter(|&&r| r >= 3).count() >= 2)
                })
        }
        CaseLabel::V => {
            let want: [&[usize]; 3] = [&[0, 1], &[0, 1, 2], &[3, 4, 5]];
            want.iter().all(|t| sup.iter().any(|s| is(s, t))) && sup.iter().all(|s| want.iter().any(|t| is(s, t)))
        }
        CaseLabel::Unclassified => false,
    }
}

pub(crate) fn every_row_has_zero(sup: &[Vec<usize>]) -> bool {
    (0..6).all(|r| sup.iter().any(|s| s.contains(&r)))
}

/// Whether a finite 6-row matrix has the pattern of `case`: every row of
/// the pattern has a zero and the column supports fit the case.
pub fn matches_case(w: &TropMatrix, case: CaseLabel) -> bool {
    if w.rows() != 6 || !w.finite_only() {
        return false;
    }
    let sup = supports(w);
    every_row_has_zero(&sup) && shape_holds(&sup, case)
}
