//! Matrices whose tropical rank is below their Kapranov rank, and the
//! classification of `(d, n, r)` for which the `r x r` minors of a `d x n`
//! matrix form a tropical basis.

use rayon::prelude::*;

use crate::assignment::trop_permanent;
use crate::error::{Error, Result};
use crate::puiseux::{rank_over_k, KMatrix};
use crate::rank::{combinations, tropical_rank_with, Budget};
use crate::trop::{normalize_columns, normalize_rows, q, TropMatrix, TropValue};

/// The 6x6 matrix of tropical rank 4 and Kapranov rank 5.
pub fn a6() -> TropMatrix {
    TropMatrix::from_ints(&[
        [0, 0, 4, 4, 4, 4],
        [0, 0, 2, 4, 1, 4],
        [4, 4, 0, 0, 4, 4],
        [2, 4, 0, 0, 2, 4],
        [4, 4, 4, 4, 0, 0],
        [2, 4, 1, 4, 0, 0],
    ])
}

/// The 7x7 0/1 matrix of tropical rank 3 and Kapranov rank 4.
pub fn c7() -> TropMatrix {
    TropMatrix::from_ints(&[
        [1, 1, 0, 1, 0, 0, 0],
        [0, 1, 1, 0, 1, 0, 0],
        [0, 0, 1, 1, 0, 1, 0],
        [0, 0, 0, 1, 1, 0, 1],
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 0, 1, 1],
        [1, 0, 1, 0, 0, 0, 1],
    ])
}

/// `"A6"` or `"C7"`.
pub fn example_matrix(name: &str) -> Result<TropMatrix> {
    match name {
        "A6" => Ok(a6()),
        "C7" => Ok(c7()),
        _ => Err(Error::Precondition(format!("unknown example {name:?}; expected A6 or C7"))),
    }
}

/// Repeats the last row, then the last column, until the matrix is `d x n`.
pub fn pad(m: &TropMatrix, d: usize, n: usize) -> Result<TropMatrix> {
    if d < m.rows() || n < m.cols() {
        return Err(Error::Shape(format!(
            "cannot pad a {}x{} matrix to {d}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    let rows: Vec<usize> = (0..d).map(|i| i.min(m.rows() - 1)).collect();
    let cols: Vec<usize> = (0..n).map(|j| j.min(m.cols() - 1)).collect();
    Ok(m.submatrix(&rows, &cols))
}

/// Largest tropical permanent over the `r x r` submatrices.
pub fn max_permanent(m: &TropMatrix, r: usize) -> Result<TropValue> {
    let rs = combinations(m.rows(), r);
    let cs = combinations(m.cols(), r);
    let vals: Vec<TropValue> = rs
        .par_iter()
        .flat_map_iter(|rows| cs.iter().map(move |cols| (rows, cols)))
        .map(|(rows, cols)| trop_permanent(&m.submatrix(rows, cols)).map(|p| p.value))
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().max().unwrap_or(TropValue::Inf))
}

/// The `(d+1) x (n+1)` bordered matrix raising tropical rank from `r` to
/// `r + 1`.
///
/// Rows and columns are first shifted to minimum 0 (this leaves an already
/// normalized `M` unchanged). With `P` the largest `r x r` permanent, the new
/// column is `P + 1 + a_{i,n-1}`, the new row `P + 1 + a_{d-1,j}`, and the
/// corner is 0.
pub fn border(m: &TropMatrix, r: usize) -> Result<TropMatrix> {
    border_with(m, r, &Budget::default())
}

pub fn border_with(m: &TropMatrix, r: usize, budget: &Budget) -> Result<TropMatrix> {
    m.require_finite("border")?;
    let found = tropical_rank_with(m, budget)?.rank;
    if found != r {
        return Err(Error::Precondition(format!("tropical rank is {found}, not {r}")));
    }
    let (a, _) = normalize_rows(&normalize_columns(m)?.0)?;
    let (d, n) = (a.rows(), a.cols());
    let p = match max_permanent(&a, r)? {
        TropValue::Finite(p) => p,
        TropValue::Inf => return Err(Error::Precondition("no finite permanent of the given size".into())),
    };
    let base = &p + &q(1);
    let rows = (0..=d)
        .map(|i| {
            (0..=n)
                .map(|j| match (i < d, j < n) {
                    (true, true) => a.fin(i, j).clone(),
                    (true, false) => &base + a.fin(i, n - 1),
                    (false, true) => &base + a.fin(d - 1, j),
                    (false, false) => q(0),
                })
                .collect()
        })
        .collect();
    TropMatrix::from_q_rows(rows)
}

/// Ranks seen when eliminating the last column of a lift of a bordered
/// matrix: `D F` clears the column above the corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderLiftCheck {
    pub rank_f: usize,
    pub rank_df: usize,
    /// Rank of the top-left block of `D F`, a lift of the original matrix.
    pub rank_inner: usize,
    pub inner: KMatrix,
}

/// For a lift `f` of `border(M, r)`, forms `D F` with
/// `D = I - sum_k f_{k,n} / f_{d,n} U_{k,d}` and checks that the last column
/// above the corner vanishes and that `deg` of the top-left block is `M`
/// (normalized).
pub fn check_border_lift(bordered: &TropMatrix, f: &KMatrix) -> Result<BorderLiftCheck> {
    if f.rows() != bordered.rows() || f.cols() != bordered.cols() {
        return Err(Error::Shape("lift and bordered matrix differ in shape".into()));
    }
    if f.degrees() != *bordered {
        return Err(Error::Precondition("F is not a lift of the bordered matrix".into()));
    }
    let (d, n) = (f.rows() - 1, f.cols() - 1);
    let corner = f.get(d, n);
    let mut df = f.clone();
    for k in 0..d {
        let c = f.get(k, n).checked_div(corner)?;
        for j in 0..=n {
            df.set(k, j, f.get(k, j) - &(&c * f.get(d, j)));
        }
    }
    if (0..d).any(|k| !df.get(k, n).is_zero()) {
        return Err(Error::construction("border elimination", "last column was not cleared"));
    }
    let inner = KMatrix::from_fn(d, n, |i, j| df.get(i, j).clone());
    let want = bordered.submatrix(&(0..d).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    if inner.degrees() != want {
        return Err(Error::construction("border elimination", "inner block is not a lift of the original matrix"));
    }
    Ok(BorderLiftCheck {
        rank_f: rank_over_k(f)?,
        rank_df: rank_over_k(&df)?,
        rank_inner: rank_over_k(&inner)?,
        inner,
    })
}

fn check_range(d: usize, n: usize, r: usize) -> Result<()> {
    if r == 0 || d == 0 || n == 0 || r > d.min(n) {
        return Err(Error::Precondition(format!("need 1 <= r <= min(d, n), got d={d}, n={n}, r={r}")));
    }
    Ok(())
}

/// Whether the `r x r` minors of a `d x n` matrix form a tropical basis:
/// `r <= 3`, or `r = min(d, n)`, or `r = 4` and `min(d, n) <= 6`.
pub fn is_tropical_basis(d: usize, n: usize, r: usize) -> Result<bool> {
    check_range(d, n, r)?;
    let m = d.min(n);
    Ok(r <= 3 || r == m || (r == 4 && m <= 6))
}

/// A matrix of tropical rank `r - 1` whose Kapranov rank is claimed to be
/// at least `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub matrix: TropMatrix,
    pub claimed_trop_rank: usize,
    /// Imported from the known examples; never machine-checked.
    pub claimed_kapranov_lower: usize,
    pub trop_rank_verified: bool,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    BasisHolds,
    Witness(WitnessReport),
}

/// Largest `min(d, n)` for which [`witness`] recomputes the tropical rank.
pub const VERIFY_MAX_DIM: usize = 8;

/// Builds the counterexample for `(d, n, r)` when the minors do not form a
/// tropical basis.
pub fn witness(d: usize, n: usize, r: usize) -> Result<WitnessOutcome> {
    witness_with(d, n, r, &Budget::default())
}

pub fn witness_with(d: usize, n: usize, r: usize, budget: &Budget) -> Result<WitnessOutcome> {
    if is_tropical_basis(d, n, r)? {
        return Ok(WitnessOutcome::BasisHolds);
    }
    let mut provenance = Vec::new();
    let base = if r == 4 {
        provenance.push("C7".to_string());
        c7()
    } else {
        provenance.push("A6".to_string());
        let mut m = a6();
        // The precondition check of each border step only needs the top
        // nonsingular minor, which is cheap at these sizes.
        let wide = Budget {
            max_dim: budget.max_dim.max(10),
            ..budget.clone()
        };
        for rank in 4..r - 1 {
            m = border_with(&m, rank, &wide)?;
            provenance.push(format!("border(r={rank}) -> {}x{}", m.rows(), m.cols()));
        }
        m
    };
    let matrix = pad(&base, d, n)?;
    provenance.push(format!("pad -> {d}x{n}"));
    let trop_rank_verified = if d.min(n) <= VERIFY_MAX_DIM {
        let found = tropical_rank_with(&matrix, budget)?.rank;
        if found != r - 1 {
            return Err(Error::construction("witness", format!("tropical rank {found}, expected {}", r - 1)));
        }
        true
    } else {
        false
    };
    Ok(WitnessOutcome::Witness(WitnessReport {
        matrix,
        claimed_trop_rank: r - 1,
        claimed_kapranov_lower: r,
        trop_rank_verified,
        provenance,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::tropical_rank;

    #[test]
    fn classification_examples() {
        assert!(is_tropical_basis(6, 9, 4).unwrap());
        assert!(!is_tropical_basis(7, 7, 4).unwrap());
        assert!(is_tropical_basis(5, 8, 5).unwrap());
        assert!(is_tropical_basis(3, 3, 0).is_err());
        assert!(is_tropical_basis(3, 3, 4).is_err());
    }

    #[test]
    fn pad_repeats_last_lines() {
        let m = TropMatrix::from_ints(&[[0, 1], [2, 3]]);
        assert_eq!(pad(&m, 2, 2).unwrap(), m);
        assert_eq!(pad(&m, 3, 3).unwrap(), TropMatrix::from_ints(&[[0, 1, 1], [2, 3, 3], [2, 3, 3]]));
        assert!(pad(&m, 1, 2).is_err());
    }

    #[test]
    fn border_of_small_matrix() {
        let m = TropMatrix::from_ints(&[[0, 0, 1], [0, 0, 2], [1, 0, 0]]);
        let r = tropical_rank(&m).unwrap().rank;
        let b = border(&m, r).unwrap();
        assert_eq!(b.get(3, 3), &TropValue::int(0));
        assert_eq!(tropical_rank(&b).unwrap().rank, r + 1);
    }

    #[test]
    fn border_elimination_on_a_monomial_lift() {
        let m = TropMatrix::from_ints(&[[0, 0, 1], [0, 0, 2], [1, 0, 0]]);
        let r = tropical_rank(&m).unwrap().rank;
        let b = border(&m, r).unwrap();
        let f = KMatrix::monomial_lift(&b);
        let c = check_border_lift(&b, &f).unwrap();
        assert_eq!(c.rank_f, c.rank_df);
        assert_eq!(c.rank_df, c.rank_inner + 1);
    }

    #[test]
    fn basis_holds_gives_no_witness() {
        assert_eq!(witness(6, 6, 4).unwrap(), WitnessOutcome::BasisHolds);
    }

    #[test]
    fn seven_by_seven_rank_four() {
        let WitnessOutcome::Witness(w) = witness(7, 7, 4).unwrap() else { panic!() };
        assert_eq!(w.matrix, c7());
        assert!(w.trop_rank_verified);
        assert_eq!(w.claimed_kapranov_lower, 4);
    }
}
