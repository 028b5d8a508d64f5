//! Exact linear algebra over the Puiseux field.

use std::fmt;

use super::element::KElement;
use super::parse::parse_k_element;
use super::poly::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::rank::DependenceCertificate;
use crate::trop::{TropMatrix, TropValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<KElement>,
}

/// Largest size handled by [`determinant`] and the default rank budget.
pub const MAX_DET: usize = 6;

impl KMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<KElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(KMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<KElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> KElement) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        KMatrix::new(rows, cols, entries).expect("positive dimensions")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { KElement::one() } else { KElement::zero() })
    }

    /// Monomial lift `(t^{a_ij})`; inf entries become 0.
    pub fn monomial_lift(a: &TropMatrix) -> Self {
        Self::from_fn(a.rows(), a.cols(), |i, j| match a.get(i, j) {
            TropValue::Finite(x) => KElement::t_pow(x.clone()),
            TropValue::Inf => KElement::zero(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &KElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: KElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[KElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<KElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> KMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> KMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn transpose(&self) -> KMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &KMatrix) -> Result<KMatrix> {
        if self.cols != o.rows {
            return Err(Error::Shape("inner dimensions differ".into()));
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(KElement::zero(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        }))
    }

    pub fn mul_vec(&self, x: &[KElement]) -> Result<Vec<KElement>> {
        if x.len() != self.cols {
            return Err(Error::Shape("vector length differs from column count".into()));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// Entrywise degrees.
    pub fn degrees(&self) -> TropMatrix {
        TropMatrix::new(self.rows, self.cols, self.entries.iter().map(|e| e.degree()).collect())
            .expect("same shape")
    }

    /// Parses `;`-separated entries, one row per nonblank line.
    pub fn parse_text(text: &str) -> Result<KMatrix> {
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            let mut offset = 0;
            for field in line.split(';') {
                let x = parse_k_element(field).map_err(|e| match e {
                    Error::Parse { col, msg, .. } => Error::Parse {
                        line: ln + 1,
                        col: offset + col,
                        msg,
                    },
                    other => other,
                })?;
                row.push(x);
                offset += field.len() + 1;
            }
            if let Some(first) = rows.first() {
                let first: &Vec<KElement> = first;
                if first.len() != row.len() {
                    return Err(Error::Parse {
                        line: ln + 1,
                        col: 1,
                        msg: format!("expected {} entries, found {}", first.len(), row.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "empty lift".into(),
            });
        }
        KMatrix::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join("; "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn dot(a: &[KElement], b: &[KElement]) -> KElement {
    a.iter()
        .zip(b)
        .fold(KElement::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Laplace expansion over column subsets, `O(n 2^n)` products.
pub fn determinant(a: &KMatrix) -> Result<KElement> {
    if a.rows != a.cols {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let n = a.rows;
    if n > MAX_DET {
        return Err(Error::Budget(format!("determinant limited to n <= {MAX_DET}, got {n}")));
    }
    // Clear denominators row by row so the expansion runs over polynomials
    // and only the final quotient needs a gcd.
    let mut scale = PuiseuxPoly::one();
    let mut rows: Vec<Vec<PuiseuxPoly>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut dens: Vec<&PuiseuxPoly> = Vec::new();
        for e in a.row(r) {
            if !e.is_zero() && !e.den().is_one() && !dens.contains(&e.den()) {
                dens.push(e.den());
            }
        }
        let d = dens.iter().fold(PuiseuxPoly::one(), |acc, x| &acc * *x);
        rows.push(a.row(r).iter().map(|e| if e.is_zero() { PuiseuxPoly::zero() } else { e.num() * &d.div_exact(e.den()) }).collect());
        scale = &scale * &d;
    }
    let mut f = vec![PuiseuxPoly::zero(); 1 << n];
    f[0] = PuiseuxPoly::one();
    for mask in 1usize..(1 << n) {
        let r = mask.count_ones() as usize - 1;
        let mut acc = PuiseuxPoly::zero();
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let rest = &f[mask ^ (1 << j)];
            if rest.is_zero() || rows[r][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let term = &rows[r][j] * rest;
            acc = if above % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        f[mask] = acc;
    }
    KElement::from_fraction(f[(1 << n) - 1].clone(), scale)
}

/// Signed cofactor `(-1)^{i+j} det A[without row i, column j]`.
pub fn cofactor(a: &KMatrix, i: usize, j: usize) -> Result<KElement> {
    if a.rows != a.cols || a.rows < 2 {
        return Err(Error::Shape("cofactor needs a square matrix of size >= 2".into()));
    }
    let rows: Vec<usize> = (0..a.rows).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..a.cols).filter(|&c| c != j).collect();
    let m = determinant(&a.submatrix(&rows, &cols))?;
    Ok(if (i + j) % 2 == 0 { m } else { -m })
}

/// Solves `A x = rhs` by Cramer's rule.
pub fn cramer_solve(a: &KMatrix, rhs: &[KElement]) -> Result<Vec<KElement>> {
    if a.rows != a.cols || rhs.len() != a.rows {
        return Err(Error::Shape("Cramer's rule needs a square system".into()));
    }
    let det = determinant(a)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    (0..a.cols)
        .map(|j| {
            let mut aj = a.clone();
            for (i, r) in rhs.iter().enumerate() {
                aj.set(i, j, r.clone());
            }
            Ok(determinant(&aj)?.checked_div(&det)?)
        })
        .collect()
}

/// Row echelon form by elimination with the first nonzero pivot in column
/// order. Returns the reduced rows and pivot columns.
fn echelon(a: &KMatrix) -> (Vec<Vec<KElement>>, Vec<usize>) {
    let mut m: Vec<Vec<KElement>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..a.cols {
                if m[r][k].is_zero() {
                    continue;
                }
                let t = &f * &m[r][k];
                m[i][k] = &m[i][k] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank_over_k(a: &KMatrix) -> Result<usize> {
    rank_over_k_with(a, MAX_DET)
}

pub fn rank_over_k_with(a: &KMatrix, max_dim: usize) -> Result<usize> {
    let small = a.rows.min(a.cols);
    if small > max_dim {
        return Err(Error::Budget(format!(
            "rank over K limited to min(rows, cols) <= {max_dim}, got {small}"
        )));
    }
    Ok(bareiss_rank(a))
}

/// Rank by fraction-free elimination. Each column is first multiplied by
/// the product of its distinct denominators, which leaves the rank alone
/// and keeps every later division exact.
fn bareiss_rank(a: &KMatrix) -> usize {
    let mut m: Vec<Vec<PuiseuxPoly>> = vec![Vec::with_capacity(a.cols); a.rows];
    for j in 0..a.cols {
        let mut dens: Vec<&PuiseuxPoly> = Vec::new();
        for i in 0..a.rows {
            let d = a.get(i, j).den();
            if !d.is_one() && !dens.contains(&d) {
                dens.push(d);
            }
        }
        let prod = dens.iter().fold(PuiseuxPoly::one(), |acc, d| &acc * *d);
        for (i, row) in m.iter_mut().enumerate() {
            let x = a.get(i, j);
            row.push((x.num() * &prod).div_exact(x.den()));
        }
    }
    let mut prev = PuiseuxPoly::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].len()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..a.rows {
            for k in c + 1..a.cols {
                let x = &(&m[r][c] * &m[i][k]) - &(&m[i][c] * &m[r][k]);
                m[i][k] = x.div_exact(&prev);
            }
            m[i][c] = PuiseuxPoly::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// A nonzero `x` with `A x = 0`, if one exists.
pub fn kernel_vector(a: &KMatrix) -> Option<Vec<KElement>> {
    let (m, pivots) = echelon(a);
    let free = (0..a.cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![KElement::zero(); a.cols];
    x[free] = KElement::one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -&m[r][free];
    }
    Some(x)
}

/// A nonzero `y` with `y^T A = 0`, if one exists.
pub fn left_kernel_vector(a: &KMatrix) -> Option<Vec<KElement>> {
    kernel_vector(&a.transpose())
}

/// Degrees of a left kernel vector of a lift `f` of `target`.
pub fn deg_dependence_from_kernel(
    lambda: &[KElement],
    f: &KMatrix,
    target: &TropMatrix,
) -> Result<DependenceCertificate> {
    if lambda.len() != f.rows || f.rows != target.rows() || f.cols != target.cols() {
        return Err(Error::Shape("kernel vector, lift and target must agree".into()));
    }
    if f.degrees() != *target {
        return Err(Error::Precondition("F is not a lift of the target".into()));
    }
    if lambda.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidCertificate("zero kernel vector".into()));
    }
    for k in 0..f.cols {
        if !dot(lambda, &f.column(k)).is_zero() {
            return Err(Error::InvalidCertificate(format!(
                "lambda is not in the left kernel (column {k})"
            )));
        }
    }
    DependenceCertificate::new(lambda.iter().map(|x| x.degree()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::element::t_int;

    fn k(n: i64) -> KElement {
        KElement::int(n)
    }

    #[test]
    fn small_determinants() {
        let a = KMatrix::from_rows(vec![vec![k(1), t_int(1)], vec![t_int(1), k(1)]]).unwrap();
        assert_eq!(determinant(&a).unwrap(), &k(1) - &t_int(2));
        assert_eq!(determinant(&KMatrix::identity(5)).unwrap(), k(1));
        let b = KMatrix::from_rows(vec![
            vec![k(2), k(0), k(1)],
            vec![k(1), k(3), k(2)],
            vec![k(1), k(1), k(2)],
        ])
        .unwrap();
        assert_eq!(determinant(&b).unwrap(), k(6));
        assert_eq!(cofactor(&b, 0, 0).unwrap(), k(4));
        assert_eq!(cofactor(&b, 0, 1).unwrap(), k(0));
    }

    #[test]
    fn cramer_two_by_two() {
        let a = KMatrix::from_rows(vec![vec![k(1), k(0)], vec![k(1), k(1)]]).unwrap();
        assert_eq!(cramer_solve(&a, &[k(1), k(2)]).unwrap(), vec![k(1), k(1)]);
        let s = KMatrix::from_rows(vec![vec![k(1), k(1)], vec![k(1), k(1)]]).unwrap();
        assert_eq!(cramer_solve(&s, &[k(1), k(2)]), Err(Error::Singular));
    }

    #[test]
    fn rank_and_kernel() {
        let r0 = vec![k(1), t_int(1), k(2)];
        let r1 = vec![t_int(2), k(3), k(1)];
        let r2: Vec<KElement> = r0.iter().zip(&r1).map(|(a, b)| &(a * &t_int(1)) - b).collect();
        let a = KMatrix::from_rows(vec![r0, r1, r2]).unwrap();
        assert_eq!(rank_over_k(&a).unwrap(), 2);
        let y = left_kernel_vector(&a).unwrap();
        for c in 0..3 {
            assert!(dot(&y, &a.column(c)).is_zero());
        }
        assert_eq!(rank_over_k(&KMatrix::identity(4)).unwrap(), 4);
    }

    #[test]
    fn fraction_free_rank_matches_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let entry = |rng: &mut rand_chacha::ChaCha8Rng| -> KElement {
            match rng.gen_range(0..4) {
                0 => KElement::zero(),
                1 => KElement::ct(rng.gen_range(-2..=2), crate::trop::qr(rng.gen_range(0..4), 2)),
                _ => {
                    let n = &k(rng.gen_range(1..3)) + &t_int(rng.gen_range(0..3));
                    let d = &k(1) + &KElement::ct(rng.gen_range(1..3), crate::trop::q(rng.gen_range(1..3)));
                    &n / &d
                }
            }
        };
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let mut a = KMatrix::from_fn(r, c, |_, _| KElement::zero());
            for i in 0..r {
                for j in 0..c {
                    a.set(i, j, entry(&mut rng));
                }
            }
            if r >= 2 && rng.gen_bool(0.5) {
                let sum: Vec<KElement> = (0..c).map(|j| &(a.get(0, j) * &t_int(1)) + a.get(1, j)).collect();
                for (j, x) in sum.into_iter().enumerate() {
                    a.set(r - 1, j, x);
                }
            }
            assert_eq!(bareiss_rank(&a), echelon(&a).1.len(), "{}", a.to_text());
        }
    }

    #[test]
    fn parse_lift_rows() {
        let m = KMatrix::parse_text("1; t^{1}\n(1+t^{1})/(2+t^{1}); 0\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(KMatrix::parse_text(&m.to_text()).unwrap(), m);
        match KMatrix::parse_text("1; t^{1}\n1; t^\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
