//! Random 6-row matrices in the shapes handled by [`crate::lift`], filtered
//! to tropical rank 3. Used by tests and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lift::{matches_case, CaseLabel};
use crate::rank::tropical_rank;
use crate::trop::{pattern, TropMatrix};

fn from_columns(cols: &[Vec<i64>]) -> TropMatrix {
    let rows: Vec<Vec<i64>> = (0..6).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    TropMatrix::from_ints(&rows)
}

/// Column with zeros on `support` and entries in `1..=3` elsewhere.
fn column<R: Rng>(rng: &mut R, support: &[usize]) -> Vec<i64> {
    (0..6)
        .map(|i| if support.contains(&i) { 0 } else { rng.gen_range(1..=3) })
        .collect()
}

fn distinct_rows(w: &TropMatrix) -> bool {
    (0..6).all(|a| (a + 1..6).all(|b| w.row(a) != w.row(b)))
}

/// Case iv: within rows 0..3 and within rows 3..6 the zero patterns are
/// pairwise different. Without this the dependence tuples used by the
/// case iv construction need not exist.
fn distinct_block_patterns(w: &TropMatrix) -> bool {
    let Ok(p) = pattern(w) else { return false };
    let zeros = |i: usize| -> Vec<bool> { (0..p.cols()).map(|j| p.is_zero(i, j)).collect() };
    [[0, 1, 2], [3, 4, 5]].iter().all(|b| zeros(b[0]) != zeros(b[1]) && zeros(b[0]) != zeros(b[2]) && zeros(b[1]) != zeros(b[2]))
}

/// One draw of a case shape with `n` columns; not filtered.
pub fn draw<R: Rng>(rng: &mut R, case: CaseLabel, n: usize) -> TropMatrix {
    let mut cols = Vec::with_capacity(n);
    match case {
        CaseLabel::IV => {
            for j in 0..n {
                let kind = if j < 2 { j } else { rng.gen_range(0..3) };
                let s: Vec<usize> = match kind {
                    0 => vec![0, 1, 2],
                    1 => vec![3, 4, 5],
                    _ => {
                        let mut s = Vec::new();
                        for block in [[0, 1, 2], [3, 4, 5]] {
                            let skip = rng.gen_range(0..4);
                            s.extend(block.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &r)| r));
                        }
                        s
                    }
                };
                cols.push(column(rng, &s));
            }
        }
        CaseLabel::III => {
            const SPECIAL: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];
            for j in 0..n {
                if j < 4 {
                    cols.push(column(rng, &SPECIAL[j]));
                } else {
                    let mut s: Vec<usize> = (0..6).collect();
                    s.shuffle(rng);
                    let m = rng.gen_range(4..=5);
                    cols.push(column(rng, &s[..m]));
                }
            }
        }
        CaseLabel::V => {
            let shapes: [&[usize]; 3] = [&[0, 1], &[0, 1, 2], &[3, 4, 5]];
            for j in 0..n {
                let s = shapes[if j < 3 { j } else { rng.gen_range(0..3) }];
                cols.push(column(rng, s));
            }
        }
        CaseLabel::II => {
            let shapes: [&[usize]; 6] = [&[0, 1], &[3, 4, 5], &[2, 3, 5], &[2, 4, 5], &[2, 3, 4], &[2, 3, 4, 5]];
            for j in 0..n {
                let s = shapes[if j < 2 { j } else { rng.gen_range(0..6) }];
                cols.push(column(rng, s));
            }
        }
        CaseLabel::I | CaseLabel::Unclassified => {
            let shapes: [&[usize]; 3] = [&[0, 1], &[2, 3], &[4, 5]];
            for j in 0..n {
                let s = shapes[if j < 3 { j } else { rng.gen_range(0..3) }];
                cols.push(column(rng, s));
            }
        }
    }
    from_columns(&cols)
}

/// A matrix in the shape of `case` with at most `n_max` columns,
/// pairwise distinct rows and tropical rank exactly 3, or `None` after
/// `tries` draws.
pub fn rank3_instance<R: Rng>(rng: &mut R, case: CaseLabel, n_max: usize, tries: usize) -> Option<TropMatrix> {
    let lo = if case == CaseLabel::III { 5 } else { 3 };
    for _ in 0..tries {
        let n = rng.gen_range(lo..=n_max.max(lo));
        let w = draw(rng, case, n);
        if case == CaseLabel::IV && !distinct_block_patterns(&w) {
            continue;
        }
        if matches_case(&w, case) && distinct_rows(&w) && tropical_rank(&w).map(|r| r.rank == 3).unwrap_or(false) {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_have_the_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in CaseLabel::ALL {
            let w = rank3_instance(&mut rng, case, 8, 500).unwrap_or_else(|| panic!("no instance for {case}"));
            assert!(matches_case(&w, case));
            assert_eq!(tropical_rank(&w).unwrap().rank, 3);
            if case == CaseLabel::IV {
                assert!(distinct_block_patterns(&w));
            }
        }
    }
}
