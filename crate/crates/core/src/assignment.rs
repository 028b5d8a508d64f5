//! Tropical permanents as optimal assignments, and singularity tests.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::trop::{common_denominator, Pattern, TropMatrix, TropValue, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermanentResult {
    pub value: TropValue,
    /// `witness[i]` is the column assigned to row `i`.
    pub witness: Option<Vec<usize>>,
    pub unique: bool,
}

trait Cost: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}
impl Cost for i64 {}
impl Cost for Q {}

/// Min-cost perfect matching on an `n x n` cost grid; `None` entries are
/// missing edges. Returns the column of each row, or `None` when no perfect
/// matching exists.
fn hungarian<T: Cost>(n: usize, a: &[Option<T>]) -> Option<Vec<usize>> {
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = &a[(i0 - 1) * n + (j - 1)] {
                    let cur = c.clone() - u[i0].clone() - v[j].clone();
                    if minv[j].as_ref().map_or(true, |m| &cur < m) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(m) = &minv[j] {
                    if delta.as_ref().map_or(true, |d| m < d) {
                        delta = Some(m.clone());
                        j1 = j;
                    }
                }
            }
            let delta = delta?;
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = &mut minv[j] {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut sigma = vec![0; n];
    for j in 1..=n {
        sigma[p[j] - 1] = j - 1;
    }
    Some(sigma)
}

fn assignment_value<T: Cost>(n: usize, a: &[Option<T>], sigma: &[usize]) -> T {
    sigma
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &j)| acc + a[i * n + j].clone().expect("finite edge"))
}

/// Optimal assignment plus the edge-forbidding uniqueness test.
fn solve_unique<T: Cost>(n: usize, a: &[Option<T>]) -> Option<(T, Vec<usize>, bool)> {
    let sigma = hungarian(n, a)?;
    let value = assignment_value(n, a, &sigma);
    let mut unique = true;
    let mut b = a.to_vec();
    for i in 0..n {
        let saved = b[i * n + sigma[i]].take();
        if let Some(tau) = hungarian(n, &b) {
            if assignment_value(n, &b, &tau) == value {
                unique = false;
            }
        }
        b[i * n + sigma[i]] = saved;
        if !unique {
            break;
        }
    }
    Some((value, sigma, unique))
}

/// Costs of a matrix converted once, to integers when that is lossless and
/// small enough, so that many submatrices can be solved cheaply.
#[derive(Clone, Debug)]
pub(crate) enum Costs {
    Int { cols: usize, a: Vec<Option<i64>> },
    Big { cols: usize, a: Vec<Option<Q>> },
}

const INT_LIMIT: i64 = 1 << 40;

impl Costs {
    pub(crate) fn new(m: &TropMatrix) -> Costs {
        let den = common_denominator(m);
        let scaled: Option<Vec<Option<i64>>> = m
            .entries()
            .iter()
            .map(|v| match v.finite() {
                None => Some(None),
                Some(x) => {
                    let s: BigInt = (x * Q::from_integer(den.clone())).to_integer();
                    s.to_i64().filter(|s| s.abs() < INT_LIMIT).map(Some)
                }
            })
            .collect();
        match scaled {
            Some(a) => Costs::Int { cols: m.cols(), a },
            None => Costs::Big {
                cols: m.cols(),
                a: m.entries().iter().map(|v| v.finite().cloned()).collect(),
            },
        }
    }

    /// Whether the submatrix has a unique optimal finite assignment.
    pub(crate) fn nonsingular(&self, rows: &[usize], cols: &[usize]) -> bool {
        fn go<T: Cost>(c: usize, a: &[Option<T>], rows: &[usize], cols: &[usize]) -> bool {
            let sub: Vec<Option<T>> = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| a[i * c + j].clone()))
                .collect();
            matches!(solve_unique(rows.len(), &sub), Some((_, _, true)))
        }
        match self {
            Costs::Int { cols: c, a } => go(*c, a, rows, cols),
            Costs::Big { cols: c, a } => go(*c, a, rows, cols),
        }
    }
}

fn require_square(s: &TropMatrix) -> Result<usize> {
    if s.rows() != s.cols() {
        return Err(Error::Shape(format!(
            "square matrix required, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    Ok(s.rows())
}

pub fn trop_permanent(s: &TropMatrix) -> Result<PermanentResult> {
    let n = require_square(s)?;
    let a: Vec<Option<Q>> = s.entries().iter().map(|v| v.finite().cloned()).collect();
    Ok(match solve_unique(n, &a) {
        None => PermanentResult {
            value: TropValue::Inf,
            witness: None,
            unique: false,
        },
        Some((value, sigma, unique)) => PermanentResult {
            value: TropValue::Finite(value),
            witness: Some(sigma),
            unique,
        },
    })
}

/// Enumerates all of `S_n`; the witness is the lexicographically first
/// optimal permutation.
pub fn permanent_bruteforce(s: &TropMatrix) -> Result<PermanentResult> {
    let n = require_square(s)?;
    if n > 9 {
        return Err(Error::Budget(format!("brute-force permanent limited to n <= 9, got {n}")));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Q, Vec<usize>)> = None;
    let mut count = 0;
    loop {
        let mut sum = Some(Q::zero());
        for (i, &j) in perm.iter().enumerate() {
            sum = match (sum, s.get(i, j).finite()) {
                (Some(acc), Some(x)) => Some(acc + x),
                _ => None,
            };
        }
        if let Some(v) = sum {
            match &best {
                Some((b, _)) if &v > b => {}
                Some((b, _)) if &v == b => count += 1,
                _ => {
                    best = Some((v, perm.clone()));
                    count = 1;
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(match best {
        None => PermanentResult {
            value: TropValue::Inf,
            witness: None,
            unique: false,
        },
        Some((v, w)) => PermanentResult {
            value: TropValue::Finite(v),
            witness: Some(w),
            unique: count == 1,
        },
    })
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn is_trop_singular(s: &TropMatrix) -> Result<bool> {
    Ok(!trop_permanent(s)?.unique)
}

/// Singular iff the number of all-zero permutations differs from 1.
pub fn is_b_singular(p: &Pattern) -> Result<bool> {
    if p.rows() != p.cols() {
        return Err(Error::Shape("square pattern required".into()));
    }
    if p.rows() < 2 {
        return Err(Error::Precondition("B-singularity is defined for n > 1 only".into()));
    }
    is_trop_singular(&p.to_matrix())
}
