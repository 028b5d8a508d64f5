//! Searching the equivalence class of a 6-row matrix for one of the five
//! case shapes.

use rayon::prelude::*;

use super::pattern::{every_row_has_zero, matches_case, shape_holds, supports};
use super::CaseLabel;
use crate::error::{Error, Result};
use crate::rank::{dependence_with_offsets, tropical_rank};
use crate::trop::{apply_trace, normalize_columns, perturb_levels, Transform, TropMatrix};

/// Result of [`classify_pattern_case`]. `apply_trace(M, &trace) == w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub label: CaseLabel,
    pub w: TropMatrix,
    pub trace: Vec<Transform>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// Perturbation levels in `{-1, 0, 1}^6`, fewest nonzero entries first.
fn level_vectors() -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..729)
        .map(|mut k| {
            (0..6)
                .map(|_| {
                    let d = k % 3;
                    k /= 3;
                    [0, 1, -1][d as usize]
                })
                .collect()
        })
        .collect();
    out.sort_by_key(|v| v.iter().filter(|&&x| x != 0).count());
    out
}

/// First `(case, perm)` such that rows reordered by `perm` give `case`.
/// New row `k` is old row `perm[k]`.
fn match_supports(sup: &[Vec<usize>], perms: &[Vec<usize>]) -> Option<(CaseLabel, Vec<usize>)> {
    if !every_row_has_zero(sup) {
        return None;
    }
    for p in perms {
        let mut inv = [0usize; 6];
        for (k, &r) in p.iter().enumerate() {
            inv[r] = k;
        }
        let moved: Vec<Vec<usize>> = sup
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&r| inv[r]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        if let Some(c) = CaseLabel::ALL.into_iter().find(|&c| shape_holds(&moved, c)) {
            return Some((c, p.clone()));
        }
    }
    None
}

/// Starting points: the column-normalized matrix, and the matrix with rows
/// scaled by a finite dependence tuple (so each column minimum is attained
/// at least twice), each with its trace.
fn starts(m: &TropMatrix) -> Result<Vec<(TropMatrix, Vec<Transform>)>> {
    let mut out = vec![normalize_columns(m)?];
    if let Some(l) = dependence_with_offsets(m, &[])? {
        let trace: Vec<Transform> = l
            .iter()
            .enumerate()
            .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
            .map(|(i, x)| Transform::RowScale(i, x.clone()))
            .collect();
        let scaled = apply_trace(m, &trace)?;
        let (w, t2) = normalize_columns(&scaled)?;
        out.push((w, [trace, t2].concat()));
    }
    Ok(out)
}

/// Labels a 6-row matrix of tropical rank 3 with a case whose shape some
/// equivalent matrix has, searching row scalings by a dependence tuple,
/// small perturbations of rows, and row permutations. Returns
/// `Unclassified` (with `w = M` and an empty trace) when nothing matches.
pub fn classify_pattern_case(m: &TropMatrix) -> Result<Classification> {
    if m.rows() != 6 {
        return Err(Error::Shape(format!("expected 6 rows, got {}", m.rows())));
    }
    m.require_finite("classify_pattern_case")?;
    let r = tropical_rank(m)?.rank;
    if r != 3 {
        return Err(Error::Precondition(format!("tropical rank is {r}, expected 3")));
    }
    let perms = permutations(6);
    let levels = level_vectors();
    for (s, t0) in starts(m)? {
        let found = levels.par_iter().find_map_first(|lv| {
            let shifts: Vec<(usize, i64)> = lv.iter().copied().enumerate().collect();
            let (p, t1) = match perturb_levels(&s, &shifts) {
                Ok(x) => x,
                Err(_) => (s.clone(), Vec::new()),
            };
            let (w, t2) = normalize_columns(&p).ok()?;
            let (case, perm) = match_supports(&supports(&w), &perms)?;
            Some((case, [t1, t2, vec![Transform::RowPerm(perm)]].concat()))
        });
        if let Some((label, rest)) = found {
            let trace = [t0, rest].concat();
            let w = apply_trace(m, &trace)?;
            if matches_case(&w, label) {
                return Ok(Classification { label, w, trace });
            }
        }
    }
    Ok(Classification {
        label: CaseLabel::Unclassified,
        w: m.clone(),
        trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_diagonal_is_case_i() {
        let m = TropMatrix::from_ints(&[[0, 1, 2], [0, 2, 1], [1, 0, 1], [2, 0, 2], [1, 1, 0], [1, 2, 0]]);
        let c = classify_pattern_case(&m).unwrap();
        assert_eq!(c.label, CaseLabel::I);
        assert_eq!(apply_trace(&m, &c.trace).unwrap(), c.w);
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(6).len(), 720);
        assert_eq!(level_vectors()[0], vec![0; 6]);
    }
}
