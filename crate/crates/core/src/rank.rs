//! Tropical rank, dependence certificates and their B-semiring shadows.

use num_traits::Zero;
use rayon::prelude::*;

use crate::assignment::Costs;
use crate::error::{Error, Result};
use crate::trop::{common_denominator, fmt_rational, Pattern, TropMatrix, TropValue, Q};

/// A tuple `lambda` realizing tropical dependence of the rows of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceCertificate {
    pub lambdas: Vec<TropValue>,
    pub normalized: bool,
}

impl DependenceCertificate {
    pub fn new(lambdas: Vec<TropValue>) -> Result<Self> {
        let min = lambdas.iter().min().cloned().unwrap_or(TropValue::Inf);
        if min.is_inf() {
            return Err(Error::InvalidCertificate("all entries are inf".into()));
        }
        let normalized = min == TropValue::int(0);
        Ok(DependenceCertificate {
            lambdas,
            normalized,
        })
    }

    /// Shifts so the minimum finite entry is 0.
    pub fn normalize(&self) -> Self {
        let min = self
            .lambdas
            .iter()
            .filter_map(|v| v.finite())
            .min()
            .expect("some finite entry")
            .clone();
        let lambdas = self
            .lambdas
            .iter()
            .map(|v| match v {
                TropValue::Finite(x) => TropValue::Finite(x - &min),
                TropValue::Inf => TropValue::Inf,
            })
            .collect();
        DependenceCertificate {
            lambdas,
            normalized: true,
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.lambdas.iter().map(|v| v.to_string()).collect()
    }
}

/// A nonempty row index set realizing B-dependence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSupportCertificate {
    pub index_set: Vec<usize>,
}

pub fn check_dependence(m: &TropMatrix, cert: &DependenceCertificate) -> Result<bool> {
    m.require_finite("check_dependence")?;
    if cert.lambdas.len() != m.rows() {
        return Err(Error::Shape(format!(
            "certificate of length {} for {} rows",
            cert.lambdas.len(),
            m.rows()
        )));
    }
    if cert.lambdas.iter().all(|v| v.is_inf()) {
        return Err(Error::InvalidCertificate("all entries are inf".into()));
    }
    for k in 0..m.cols() {
        let vals: Vec<Q> = cert
            .lambdas
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.finite().map(|l| l + m.fin(i, k)))
            .collect();
        let min = vals.iter().min().expect("some finite lambda");
        if vals.iter().filter(|v| *v == min).count() < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn b_dependence_from(m: &TropMatrix, cert: &DependenceCertificate) -> Result<BSupportCertificate> {
    if !check_dependence(m, cert)? {
        return Err(Error::InvalidCertificate("certificate does not realize dependence".into()));
    }
    let min = cert.lambdas.iter().min().expect("nonempty");
    let index_set = (0..cert.lambdas.len()).filter(|&i| &cert.lambdas[i] == min).collect();
    Ok(BSupportCertificate { index_set })
}

pub fn check_b_dependence(p: &Pattern, set: &BSupportCertificate) -> Result<bool> {
    if set.index_set.is_empty() {
        return Err(Error::InvalidCertificate("empty index set".into()));
    }
    if let Some(&i) = set.index_set.iter().find(|&&i| i >= p.rows()) {
        return Err(Error::IndexOutOfRange { index: i, size: p.rows() });
    }
    Ok((0..p.cols()).all(|k| {
        let c = set.index_set.iter().filter(|&&i| p.is_zero(i, k)).count();
        c != 1
    }))
}

pub fn min_combine(c1: &DependenceCertificate, c2: &DependenceCertificate) -> Result<DependenceCertificate> {
    if c1.lambdas.len() != c2.lambdas.len() {
        return Err(Error::Shape("certificates of different lengths".into()));
    }
    let l = c1.lambdas.iter().zip(&c2.lambdas).map(|(a, b)| a.oplus(b)).collect();
    DependenceCertificate::new(l)
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for t in i..k {
            c[t] = c[t - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Limits on exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `min(d, n)` accepted by the exhaustive rank search.
    pub max_dim: usize,
    /// Cap on square submatrices examined by one rank computation.
    pub max_submatrices: u64,
    /// Cap on search nodes explored by one dependence search.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: 8,
            max_submatrices: 5_000_000,
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub witness_rows: Vec<usize>,
    pub witness_cols: Vec<usize>,
}

pub fn tropical_rank(m: &TropMatrix) -> Result<RankResult> {
    tropical_rank_with(m, &Budget::default())
}

fn has_repeated_line(m: &TropMatrix, rows: &[usize], cols: &[usize]) -> bool {
    let same_rows = |a: usize, b: usize| cols.iter().all(|&j| m.get(a, j) == m.get(b, j));
    let same_cols = |a: usize, b: usize| rows.iter().all(|&i| m.get(i, a) == m.get(i, b));
    for x in 0..rows.len() {
        for y in x + 1..rows.len() {
            if same_rows(rows[x], rows[y]) {
                return true;
            }
        }
    }
    for x in 0..cols.len() {
        for y in x + 1..cols.len() {
            if same_cols(cols[x], cols[y]) {
                return true;
            }
        }
    }
    false
}

/// Largest `r` with a tropically nonsingular `r x r` submatrix. The witness
/// is the lexicographically first such submatrix of maximal size.
pub fn tropical_rank_with(m: &TropMatrix, budget: &Budget) -> Result<RankResult> {
    m.require_finite("tropical_rank")?;
    let (d, n) = (m.rows(), m.cols());
    let top = d.min(n);
    if top > budget.max_dim {
        return Err(Error::Budget(format!(
            "min(d, n) = {top} exceeds the exhaustive rank limit {}",
            budget.max_dim
        )));
    }
    let costs = Costs::new(m);
    let mut examined = 0u64;
    for r in (1..=top).rev() {
        examined += binomial(d, r) * binomial(n, r);
        if examined > budget.max_submatrices {
            return Err(Error::Budget(format!(
                "more than {} submatrices to examine",
                budget.max_submatrices
            )));
        }
        let row_sets = combinations(d, r);
        let col_sets = combinations(n, r);
        let found = row_sets.par_iter().find_map_first(|rows| {
            col_sets
                .iter()
                .find(|cols| !has_repeated_line(m, rows, cols) && costs.nonsingular(rows, cols))
                .map(|cols| (rows.clone(), cols.clone()))
        });
        if let Some((rows, cols)) = found {
            return Ok(RankResult {
                rank: r,
                witness_rows: rows,
                witness_cols: cols,
            });
        }
    }
    unreachable!("every 1x1 submatrix of a finite matrix is nonsingular")
}

pub(crate) trait Num:
    Clone + Ord + Zero + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> + Send + Sync
{
}
impl Num for i64 {}
impl Num for Q {}

/// All-pairs shortest path closure of a difference-constraint system
/// `x_v - x_u <= w(u, v)`, kept closed under edge insertion.
#[derive(Clone)]
struct Closure<T> {
    k: usize,
    d: Vec<Option<T>>,
}

impl<T: Num> Closure<T> {
    fn new(k: usize) -> Self {
        let mut d = vec![None; k * k];
        for i in 0..k {
            d[i * k + i] = Some(T::zero());
        }
        Closure { k, d }
    }

    fn at(&self, u: usize, v: usize) -> Option<&T> {
        self.d[u * self.k + v].as_ref()
    }

    /// Adds `x_v - x_u <= w`; false when this closes a negative cycle.
    fn add(&mut self, u: usize, v: usize, w: &T) -> bool {
        if let Some(back) = self.at(v, u) {
            if back.clone() + w.clone() < T::zero() {
                return false;
            }
        }
        if self.at(u, v).map_or(false, |cur| cur <= w) {
            return true;
        }
        let k = self.k;
        let into_u: Vec<Option<T>> = (0..k).map(|x| self.at(x, u).cloned()).collect();
        let from_v: Vec<Option<T>> = (0..k).map(|y| self.at(v, y).cloned()).collect();
        for x in 0..k {
            let Some(a) = &into_u[x] else { continue };
            let base = a.clone() + w.clone();
            for y in 0..k {
                let Some(b) = &from_v[y] else { continue };
                let cand = base.clone() + b.clone();
                let slot = &mut self.d[x * k + y];
                if slot.as_ref().map_or(true, |cur| &cand < cur) {
                    *slot = Some(cand);
                }
            }
        }
        true
    }

    /// A feasible point: shortest distances from a virtual source.
    fn point(&self) -> Vec<T> {
        (0..self.k)
            .map(|v| {
                (0..self.k)
                    .filter_map(|u| self.at(u, v).cloned())
                    .fold(T::zero(), |acc, x| if x < acc { x } else { acc })
            })
            .collect()
    }
}

struct Search<'a, T> {
    /// `a[s][col]` for the rows of the current support.
    a: &'a [Vec<T>],
    ncols: usize,
    nodes: u64,
    max_nodes: u64,
}

impl<T: Num> Search<'_, T> {
    fn with_column(&self, c: &Closure<T>, col: usize, i: usize, j: usize) -> Option<Closure<T>> {
        let mut next = c.clone();
        let k = self.a.len();
        for &p in &[i, j] {
            for l in 0..k {
                if l == p {
                    continue;
                }
                let w = self.a[l][col].clone() - self.a[p][col].clone();
                if !next.add(l, p, &w) {
                    return None;
                }
            }
        }
        Some(next)
    }

    fn satisfied(&self, x: &[T], col: usize) -> bool {
        let vals: Vec<T> = (0..x.len()).map(|s| x[s].clone() + self.a[s][col].clone()).collect();
        let min = vals.iter().min().expect("nonempty support");
        vals.iter().filter(|v| *v == min).count() >= 2
    }

    fn dfs(&mut self, c: Closure<T>, open: Vec<usize>) -> Result<Option<Vec<T>>> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::Budget(format!(
                "dependence search exceeded {} nodes",
                self.max_nodes
            )));
        }
        let x = c.point();
        if open.iter().all(|&col| self.satisfied(&x, col)) {
            return Ok(Some(x));
        }
        let k = self.a.len();
        let mut best: Option<(usize, Vec<Closure<T>>)> = None;
        for &col in &open {
            let mut opts = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    if let Some(nc) = self.with_column(&c, col, i, j) {
                        opts.push(nc);
                    }
                }
            }
            if opts.is_empty() {
                return Ok(None);
            }
            if best.as_ref().map_or(true, |(_, b)| opts.len() < b.len()) {
                best = Some((col, opts));
            }
        }
        let (col, opts) = best.expect("open is nonempty");
        let rest: Vec<usize> = open.into_iter().filter(|&o| o != col).collect();
        for nc in opts {
            if let Some(sol) = self.dfs(nc, rest.clone())? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}

fn scaled_rows(m: &TropMatrix) -> Option<Vec<Vec<i64>>> {
    use num_traits::ToPrimitive;
    let den = Q::from_integer(common_denominator(m));
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    (m.fin(i, j) * &den)
                        .to_integer()
                        .to_i64()
                        .filter(|v| v.abs() < 1 << 40)
                })
                .collect()
        })
        .collect()
}

/// Tries to realize dependence with every row of `support` finite.
fn dependence_on_support<T: Num>(a: &[Vec<T>], support: &[usize], budget: &Budget) -> Result<Option<Vec<T>>> {
    let rows: Vec<Vec<T>> = support.iter().map(|&s| a[s].clone()).collect();
    let ncols = rows[0].len();
    let mut search = Search {
        a: &rows,
        ncols,
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let open: Vec<usize> = (0..search.ncols).collect();
    search.dfs(Closure::new(support.len()), open)
}

fn find_generic<T: Num>(a: &[Vec<T>], m: usize, budget: &Budget) -> Result<Option<(Vec<usize>, Vec<T>)>> {
    for size in (2..=m).rev() {
        for support in combinations(m, size) {
            if let Some(x) = dependence_on_support(a, &support, budget)? {
                return Ok(Some((support, x)));
            }
        }
    }
    Ok(None)
}

pub fn find_dependence(m: &TropMatrix) -> Result<Option<DependenceCertificate>> {
    find_dependence_with(m, &Budget::default())
}

/// Returns a normalized certificate, or `None` when the rows are independent.
pub fn find_dependence_with(m: &TropMatrix, budget: &Budget) -> Result<Option<DependenceCertificate>> {
    m.require_finite("find_dependence")?;
    let rows = m.rows();
    let build = |support: Vec<usize>, x: Vec<Q>| {
        let mut l = vec![TropValue::Inf; rows];
        for (s, v) in support.into_iter().zip(x) {
            l[s] = TropValue::Finite(v);
        }
        DependenceCertificate::new(l).map(|c| c.normalize())
    };
    let found = match scaled_rows(m) {
        Some(a) => {
            let den = Q::from_integer(common_denominator(m));
            find_generic(&a, rows, budget)?.map(|(s, x)| {
                let x = x.into_iter().map(|v| Q::from_integer(v.into()) / &den).collect();
                (s, x)
            })
        }
        None => {
            let a: Vec<Vec<Q>> = (0..rows)
                .map(|i| (0..m.cols()).map(|j| m.fin(i, j).clone()).collect())
                .collect();
            find_generic(&a, rows, budget)?
        }
    };
    let cert = match found {
        Some((s, x)) => Some(build(s, x)?),
        None => None,
    };
    if let Some(c) = &cert {
        debug_assert!(check_dependence(m, c)?);
    }
    Ok(cert)
}

/// Size of the largest tropically independent family of rows.
pub fn max_independent_rows(m: &TropMatrix) -> Result<usize> {
    max_independent_rows_with(m, &Budget::default())
}

pub fn max_independent_rows_with(m: &TropMatrix, budget: &Budget) -> Result<usize> {
    m.require_finite("max_independent_rows")?;
    if m.rows() > 7 {
        return Err(Error::Budget(format!(
            "max_independent_rows limited to 7 rows, got {}",
            m.rows()
        )));
    }
    for k in (2..=m.rows()).rev() {
        for rows in combinations(m.rows(), k) {
            if find_dependence_with(&m.select_rows(&rows), budget)?.is_none() {
                return Ok(k);
            }
        }
    }
    Ok(1)
}

/// Value `x` for row `free` such that the tuple with the other rows fixed to
/// `fixed` and row `free` set to `x` realizes dependence, with `x > 0`.
/// Prefers a forced value, then the least admissible value, then 1.
pub fn dependence_free_row(m: &TropMatrix, fixed: &[Q], free: usize) -> Result<Option<Q>> {
    m.require_finite("dependence_free_row")?;
    if fixed.len() != m.rows() || free >= m.rows() {
        return Err(Error::Shape("fixed tuple must have one entry per row".into()));
    }
    let mut lower: Option<Q> = None;
    let mut forced: Option<Q> = None;
    for k in 0..m.cols() {
        let vals: Vec<Q> = (0..m.rows())
            .filter(|&i| i != free)
            .map(|i| &fixed[i] + m.fin(i, k))
            .collect();
        let min = vals.iter().min().expect("at least one fixed row").clone();
        let count = vals.iter().filter(|v| **v == min).count();
        let bound = &min - m.fin(free, k);
        if count >= 2 {
            if lower.as_ref().map_or(true, |l| &bound > l) {
                lower = Some(bound);
            }
        } else {
            match &forced {
                Some(f) if f != &bound => return Ok(None),
                _ => forced = Some(bound),
            }
        }
    }
    let zero = Q::zero();
    let ok = |x: &Q| x > &zero && lower.as_ref().map_or(true, |l| x >= l);
    let x = match forced {
        Some(f) => f,
        None => match &lower {
            Some(l) if l > &zero => l.clone(),
            _ => Q::from_integer(1.into()),
        },
    };
    if !ok(&x) {
        return Ok(None);
    }
    let mut l: Vec<TropValue> = fixed.iter().cloned().map(TropValue::Finite).collect();
    l[free] = TropValue::Finite(x.clone());
    debug_assert!(check_dependence(m, &DependenceCertificate::new(l)?)?);
    Ok(Some(x))
}

/// Dependence tuple with every row finite and prescribed differences
/// `x_v - x_u = c` for each `(u, v, c)`, shifted to minimum 0.
pub fn dependence_with_offsets(m: &TropMatrix, offsets: &[(usize, usize, Q)]) -> Result<Option<Vec<Q>>> {
    m.require_finite("dependence_with_offsets")?;
    let k = m.rows();
    let mut start = Closure::<Q>::new(k);
    for (u, v, c) in offsets {
        if *u >= k || *v >= k {
            return Err(Error::IndexOutOfRange {
                index: (*u).max(*v),
                size: k,
            });
        }
        if !start.add(*u, *v, c) || !start.add(*v, *u, &-c.clone()) {
            return Ok(None);
        }
    }
    let a: Vec<Vec<Q>> = (0..k).map(|i| (0..m.cols()).map(|j| m.fin(i, j).clone()).collect()).collect();
    let budget = Budget::default();
    let mut search = Search {
        a: &a,
        ncols: m.cols(),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let open: Vec<usize> = (0..search.ncols).collect();
    let Some(x) = search.dfs(start, open)? else {
        return Ok(None);
    };
    let min = x.iter().min().expect("nonempty").clone();
    let x: Vec<Q> = x.into_iter().map(|v| v - &min).collect();
    debug_assert!(check_dependence(
        m,
        &DependenceCertificate::new(x.iter().cloned().map(TropValue::Finite).collect())?
    )?);
    Ok(Some(x))
}

pub fn fmt_lambdas(l: &[TropValue]) -> String {
    let parts: Vec<String> = l
        .iter()
        .map(|v| v.finite().map_or("inf".to_string(), fmt_rational))
        .collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(4, 2)[0], vec![0, 1]);
        assert_eq!(combinations(4, 2)[5], vec![2, 3]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(6, 4), 15);
    }

    #[test]
    fn closure_detects_negative_cycle() {
        let mut c = Closure::<i64>::new(2);
        assert!(c.add(0, 1, &3));
        assert!(c.add(1, 0, &-3));
        assert!(!c.add(1, 0, &-4));
        let x = c.point();
        assert!(x[1] - x[0] <= 3);
    }

    #[test]
    fn single_row_independent() {
        let m = TropMatrix::from_ints(&[[0, 1, 2]]);
        assert!(find_dependence(&m).unwrap().is_none());
    }

    #[test]
    fn equal_rows() {
        let m = TropMatrix::from_ints(&[[0, 1], [0, 1]]);
        let c = find_dependence(&m).unwrap().unwrap();
        assert_eq!(c.lambdas, vec![TropValue::int(0), TropValue::int(0)]);
    }

    #[test]
    fn check_examples() {
        let c = DependenceCertificate::new(vec![TropValue::int(0), TropValue::int(0)]).unwrap();
        assert!(check_dependence(&TropMatrix::from_ints(&[[0, 1], [0, 1]]), &c).unwrap());
        assert!(!check_dependence(&TropMatrix::from_ints(&[[0, 1], [0, 2]]), &c).unwrap());
    }

    #[test]
    fn free_row_forced_and_lower() {
        // column 1 forces x = 2 (row 0 alone attains min 0 among fixed rows)
        let m = TropMatrix::from_ints(&[[0, 0], [1, 0], [-2, 5]]);
        let x = dependence_free_row(&m, &[q0(), q0(), q0()], 2).unwrap();
        assert_eq!(x, Some(Q::from_integer(2.into())));
    }

    fn q0() -> Q {
        Q::zero()
    }
}
