//! Min-plus scalars, matrices, patterns and equivalence transforms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `-n` or `p/q` exactly. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    let bad = || format!("bad rational {s:?}");
    let (p, d) = match s.split_once('/') {
        Some((p, d)) => (p, Some(d)),
        None => (s, None),
    };
    let ok = |t: &str| {
        let t = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(p) {
        return Err(bad());
    }
    let num: BigInt = p.parse().map_err(|_| bad())?;
    let den: BigInt = match d {
        Some(d) if ok(d) && !d.starts_with('-') && !d.starts_with('+') => {
            d.parse().map_err(|_| bad())?
        }
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(num, den))
}

pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// An element of the completed tropical semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropValue {
    Finite(Q),
    Inf,
}

impl TropValue {
    pub fn int(n: i64) -> Self {
        TropValue::Finite(q(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropValue::Inf)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            TropValue::Finite(x) => Some(x),
            TropValue::Inf => None,
        }
    }

    /// Tropical sum: minimum.
    pub fn oplus(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product: ordinary sum, with inf absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => TropValue::Finite(a + b),
            _ => TropValue::Inf,
        }
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
            (TropValue::Finite(_), TropValue::Inf) => Ordering::Less,
            (TropValue::Inf, TropValue::Finite(_)) => Ordering::Greater,
            (TropValue::Inf, TropValue::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Q> for TropValue {
    fn from(x: Q) -> Self {
        TropValue::Finite(x)
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Finite(x) => f.write_str(&fmt_rational(x)),
            TropValue::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for TropValue {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "inf" {
            Ok(TropValue::Inf)
        } else {
            parse_rational(s).map(TropValue::Finite)
        }
    }
}

/// A dense `rows x cols` matrix over the completed tropical semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TropValue>,
    finite_only: bool,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TropValue>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let finite_only = entries.iter().all(|e| !e.is_inf());
        Ok(TropMatrix {
            rows,
            cols,
            entries,
            finite_only,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TropValue>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_q_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(TropValue::Finite).collect())
                .collect(),
        )
    }

    /// Integer matrix; panics on ragged input, intended for literals.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| TropValue::int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn finite_only(&self) -> bool {
        self.finite_only
    }

    pub fn require_finite(&self, what: &'static str) -> Result<()> {
        if self.finite_only {
            Ok(())
        } else {
            Err(Error::InfiniteEntry(what))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &TropValue {
        &self.entries[i * self.cols + j]
    }

    /// Entry of a finite matrix; panics on inf.
    pub fn fin(&self, i: usize, j: usize) -> &Q {
        self.get(i, j).finite().expect("finite entry")
    }

    pub fn entries(&self) -> &[TropValue] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[TropValue] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> TropMatrix {
        let mut e = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                e.push(self.get(i, j).clone());
            }
        }
        TropMatrix::new(rows.len(), cols.len(), e).expect("nonempty index sets")
    }

    pub fn select_rows(&self, rows: &[usize]) -> TropMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn transpose(&self) -> TropMatrix {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.get(i, j).clone());
            }
        }
        TropMatrix::new(self.cols, self.rows, e).expect("same size")
    }

    pub fn column_min(&self, j: usize) -> &TropValue {
        (0..self.rows).map(|i| self.get(i, j)).min().expect("rows >= 1")
    }

    /// Parses the text format: header `d n`, then `d` lines of `n` entries.
    pub fn parse_text(text: &str) -> Result<TropMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
        let toks = tokens(header);
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: hl + 1,
                col: 1,
                msg: "header must be `d n`".into(),
            });
        }
        let mut dims = [0usize; 2];
        for (k, (c, t)) in toks.iter().enumerate() {
            dims[k] = t.parse().ok().filter(|&v: &usize| v > 0).ok_or(Error::Parse {
                line: hl + 1,
                col: c + 1,
                msg: format!("bad dimension {t:?}"),
            })?;
        }
        let (d, n) = (dims[0], dims[1]);
        let mut entries = Vec::with_capacity(d * n);
        let mut seen = 0;
        for (ln, line) in lines {
            if seen == d {
                return Err(Error::Parse {
                    line: ln + 1,
                    col: 1,
                    msg: format!("more than {d} rows"),
                });
            }
            let toks = tokens(line);
            if toks.len() != n {
                return Err(Error::Parse {
                    line: ln + 1,
                    col: toks.get(n).map_or(line.len() + 1, |t| t.0 + 1),
                    msg: format!("expected {n} entries, found {}", toks.len()),
                });
            }
            for (c, t) in toks {
                let v: TropValue = t.parse().map_err(|msg| Error::Parse {
                    line: ln + 1,
                    col: c + 1,
                    msg,
                })?;
                entries.push(v);
            }
            seen += 1;
        }
        if seen != d {
            return Err(Error::Parse {
                line: text.lines().count() + 1,
                col: 1,
                msg: format!("expected {d} rows, found {seen}"),
            });
        }
        TropMatrix::new(d, n, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A matrix over the two-element semiring {0, inf}; `true` marks a 0.
///
/// Patterns computed from a matrix have a 0 in every column. Arbitrary
/// B-matrices built with [`Pattern::new`] need not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    zero: Vec<bool>,
}

impl Pattern {
    pub fn new(rows: usize, cols: usize, zero: Vec<bool>) -> Result<Self> {
        if rows == 0 || cols == 0 || zero.len() != rows * cols {
            return Err(Error::Shape("bad pattern dimensions".into()));
        }
        Ok(Pattern { rows, cols, zero })
    }

    /// Builds from strings like `"0i"` where `0` is zero and `i` is inf.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows[0].len();
        let zero = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.bytes().map(|b| b == b'0')
            })
            .collect();
        Pattern::new(rows.len(), cols, zero).expect("nonempty literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.zero[i * self.cols + j]
    }

    /// Zero rows of column `j`.
    pub fn support(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.is_zero(i, j)).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Pattern {
        let zero = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.is_zero(i, j))
            .collect();
        Pattern::new(rows.len(), cols.len(), zero).expect("nonempty index sets")
    }

    pub fn to_matrix(&self) -> TropMatrix {
        let e = self
            .zero
            .iter()
            .map(|&z| if z { TropValue::int(0) } else { TropValue::Inf })
            .collect();
        TropMatrix::new(self.rows, self.cols, e).expect("same shape")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|j| if self.is_zero(i, j) { "0" } else { "inf" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn pattern(m: &TropMatrix) -> Result<Pattern> {
    m.require_finite("pattern")?;
    let mut zero = vec![false; m.rows * m.cols];
    for j in 0..m.cols {
        let min = m.column_min(j);
        for i in 0..m.rows {
            zero[i * m.cols + j] = m.get(i, j) == min;
        }
    }
    Pattern::new(m.rows, m.cols, zero)
}

/// An equivalence transformation. Permutations map new position `k` to old
/// index `perm[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    RowPerm(Vec<usize>),
    ColPerm(Vec<usize>),
    RowScale(usize, Q),
    ColScale(usize, Q),
}

impl Transform {
    pub fn inverse(&self) -> Transform {
        match self {
            Transform::RowPerm(p) => Transform::RowPerm(invert_perm(p)),
            Transform::ColPerm(p) => Transform::ColPerm(invert_perm(p)),
            Transform::RowScale(i, u) => Transform::RowScale(*i, -u),
            Transform::ColScale(j, u) => Transform::ColScale(*j, -u),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::RowPerm(p) => write!(f, "row-perm {p:?}"),
            Transform::ColPerm(p) => write!(f, "col-perm {p:?}"),
            Transform::RowScale(i, u) => write!(f, "row-scale {i} {}", fmt_rational(u)),
            Transform::ColScale(j, u) => write!(f, "col-scale {j} {}", fmt_rational(u)),
        }
    }
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &old) in p.iter().enumerate() {
        inv[old] = k;
    }
    inv
}

fn check_perm(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::Shape(format!("permutation of length {} for size {n}", p.len())));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, size: n });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::Shape(format!("index {x} repeated in permutation")));
        }
    }
    Ok(())
}

pub fn apply_transform(m: &TropMatrix, t: &Transform) -> Result<TropMatrix> {
    let (r, c) = (m.rows, m.cols);
    let shift = |v: &TropValue, u: &Q| v.otimes(&TropValue::Finite(u.clone()));
    match t {
        Transform::RowPerm(p) => {
            check_perm(p, r)?;
            Ok(m.select_rows(p))
        }
        Transform::ColPerm(p) => {
            check_perm(p, c)?;
            Ok(m.submatrix(&(0..r).collect::<Vec<_>>(), p))
        }
        Transform::RowScale(i, u) => {
            if *i >= r {
                return Err(Error::IndexOutOfRange { index: *i, size: r });
            }
            let mut out = m.clone();
            for j in 0..c {
                out.entries[i * c + j] = shift(m.get(*i, j), u);
            }
            Ok(out)
        }
        Transform::ColScale(j, u) => {
            if *j >= c {
                return Err(Error::IndexOutOfRange { index: *j, size: c });
            }
            let mut out = m.clone();
            for i in 0..r {
                out.entries[i * c + j] = shift(m.get(i, *j), u);
            }
            Ok(out)
        }
    }
}

pub fn apply_trace(m: &TropMatrix, trace: &[Transform]) -> Result<TropMatrix> {
    trace.iter().try_fold(m.clone(), |acc, t| apply_transform(&acc, t))
}

pub fn invert_trace(trace: &[Transform]) -> Vec<Transform> {
    trace.iter().rev().map(Transform::inverse).collect()
}

/// Subtracts each column minimum, so every column has minimum 0.
pub fn normalize_columns(m: &TropMatrix) -> Result<(TropMatrix, Vec<Transform>)> {
    m.require_finite("normalize_columns")?;
    let mut trace = Vec::new();
    let mut out = m.clone();
    for j in 0..m.cols {
        let min = m.column_min(j).finite().expect("finite").clone();
        if !min.is_zero() {
            let t = Transform::ColScale(j, -min);
            out = apply_transform(&out, &t)?;
            trace.push(t);
        }
    }
    Ok((out, trace))
}

/// Subtracts each row minimum.
pub fn normalize_rows(m: &TropMatrix) -> Result<(TropMatrix, Vec<Transform>)> {
    let (t, trace) = normalize_columns(&m.transpose())?;
    let trace = trace
        .into_iter()
        .map(|t| match t {
            Transform::ColScale(j, u) => Transform::RowScale(j, u),
            _ => unreachable!(),
        })
        .collect();
    Ok((t.transpose(), trace))
}

/// Smallest positive difference between two values in one column.
pub fn min_column_gap(m: &TropMatrix) -> Result<Q> {
    m.require_finite("min_column_gap")?;
    let mut best: Option<Q> = None;
    for j in 0..m.cols {
        let mut col: Vec<&Q> = (0..m.rows).map(|i| m.fin(i, j)).collect();
        col.sort();
        col.dedup();
        for w in col.windows(2) {
            let g = w[1] - w[0];
            if best.as_ref().map_or(true, |b| &g < b) {
                best = Some(g);
            }
        }
    }
    best.ok_or(Error::NoPositiveGap)
}

/// Adds `direction * g/2` to the listed rows, `g` the minimum column gap.
pub fn perturb_rows(m: &TropMatrix, rows: &[usize], direction: i32) -> Result<TropMatrix> {
    if rows.is_empty() {
        return Err(Error::Precondition("perturb_rows needs a nonempty row set".into()));
    }
    let levels: Vec<(usize, i64)> = rows.iter().map(|&r| (r, direction.signum() as i64)).collect();
    perturb_levels(m, &levels).map(|(m, _)| m)
}

/// Adds `k * eps` to each listed row, with `eps = g / (2 max|k|)` so no
/// two entries of a column can cross or meet unless they were tied.
pub fn perturb_levels(m: &TropMatrix, levels: &[(usize, i64)]) -> Result<(TropMatrix, Vec<Transform>)> {
    let g = min_column_gap(m)?;
    let kmax = levels.iter().map(|(_, k)| k.abs()).max().unwrap_or(0);
    if kmax == 0 {
        return Ok((m.clone(), Vec::new()));
    }
    let eps = g / q(2 * kmax);
    let mut out = m.clone();
    let mut trace = Vec::new();
    for &(r, k) in levels {
        if k == 0 {
            continue;
        }
        let t = Transform::RowScale(r, &eps * q(k));
        out = apply_transform(&out, &t)?;
        trace.push(t);
    }
    Ok((out, trace))
}

/// Least common multiple of the denominators of the finite entries.
pub fn common_denominator(m: &TropMatrix) -> BigInt {
    m.entries
        .iter()
        .filter_map(|v| v.finite())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}
