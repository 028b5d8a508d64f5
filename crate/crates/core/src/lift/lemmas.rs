//! Small linear systems over K whose solutions have prescribed degrees.

use super::{coefficient_vectors, ctp, degree_mismatch, tp, MAX_SEARCH};
use crate::error::{Error, Result};
use crate::puiseux::{cramer_solve, determinant, KElement, KMatrix};
use crate::trop::{TropValue, Q};

fn deg_plus(x: &KElement, h: &Q) -> TropValue {
    x.degree().otimes(&TropValue::Finite(h.clone()))
}

/// Indices attaining `min_k deg(v_k) + h_k`.
fn argmin(v: &[KElement], h: &[Q]) -> (TropValue, Vec<usize>) {
    let vals: Vec<TropValue> = v.iter().zip(h).map(|(x, e)| deg_plus(x, e)).collect();
    let min = vals.iter().min().cloned().unwrap_or(TropValue::Inf);
    let idx = (0..vals.len()).filter(|&k| vals[k] == min && !min.is_inf()).collect();
    (min, idx)
}

/// For each column `i` of `a`, the indices `eta` attaining
/// `min_eta deg a_{eta i} + h_eta`.
pub fn theta_sets(a: &KMatrix, h: &[Q]) -> Vec<Vec<usize>> {
    (0..a.cols()).map(|i| argmin(&a.column(i), h).1).collect()
}

/// Pivot `j1` (last minimizer) and the first other minimizer.
fn single_pivots(l: &[KElement], a: &[Q]) -> Result<(usize, usize)> {
    if l.len() != a.len() {
        return Err(Error::Shape("l and a must have the same length".into()));
    }
    let (_, idx) = argmin(l, a);
    if idx.len() < 2 {
        return Err(Error::Hypothesis(
            "the minimum of deg l_j + a_j must be finite and attained at least twice".into(),
        ));
    }
    Ok((idx[idx.len() - 1], idx[0]))
}

fn single_with(l: &[KElement], a: &[Q], j1: usize, coeffs: &[i64]) -> Option<Vec<KElement>> {
    let mut x: Vec<KElement> = (0..l.len()).map(|j| ctp(coeffs[j], &a[j])).collect();
    let s = (0..l.len())
        .filter(|&j| j != j1)
        .fold(KElement::zero(), |acc, j| &acc + &(&l[j] * &x[j]));
    x[j1] = -(&s / &l[j1]);
    (degree_mismatch(&x, a).is_none()).then_some(x)
}

/// One equation `sum_j l_j x_j = 0` with `deg x_j = a_j`. Every `x_j` is a
/// monomial except the last minimizing index, which absorbs the sum.
pub fn solve_single_equation(l: &[KElement], a: &[Q]) -> Result<Vec<KElement>> {
    let (j1, j0) = single_pivots(l, a)?;
    let mut coeffs = vec![1; l.len()];
    for xi in 1..=MAX_SEARCH {
        coeffs[j0] = xi;
        if let Some(x) = single_with(l, a, j1, &coeffs) {
            return Ok(x);
        }
    }
    Err(Error::construction("single equation", "no coefficient avoided cancellation"))
}

/// Like [`solve_single_equation`], searching coefficient vectors until
/// `accept` holds for the solution.
pub(crate) fn single_search(
    l: &[KElement],
    a: &[Q],
    accept: &dyn Fn(&[KElement]) -> bool,
) -> Result<Option<Vec<KElement>>> {
    let (j1, _) = single_pivots(l, a)?;
    for coeffs in coefficient_vectors(l.len(), 4) {
        if coeffs[j1] != 1 {
            continue;
        }
        if let Some(x) = single_with(l, a, j1, &coeffs) {
            if accept(&x) {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

fn check_two(a: &KMatrix, h: &[Q]) -> Result<()> {
    if a.rows() != 5 || a.cols() != 2 || h.len() != 5 {
        return Err(Error::Shape("two-equation solver needs a 5x2 matrix and 5 degrees".into()));
    }
    let mut violated = Vec::new();
    let mut zero_col = false;
    for i in 0..2 {
        if (0..5).all(|k| a.get(k, i).is_zero()) {
            violated.push(format!("column {i} has no nonzero entry"));
            zero_col = true;
        }
    }
    for p in 0..5 {
        for q in p + 1..5 {
            let minor = &(a.get(p, 0) * a.get(q, 1)) - &(a.get(q, 0) * a.get(p, 1));
            let d1 = a.get(p, 0).degree().otimes(&a.get(q, 1).degree());
            let d2 = a.get(q, 0).degree().otimes(&a.get(p, 1).degree());
            if minor.degree() != d1.oplus(&d2) {
                violated.push(format!("2x2 minor degree condition fails for rows {p}, {q}"));
            }
        }
    }
    if !zero_col {
        let th = theta_sets(a, h);
        for (i, t) in th.iter().enumerate() {
            if t.len() < 2 {
                violated.push(format!("|Theta_{}| = {} < 2", i + 1, t.len()));
            }
        }
        let mut union: Vec<usize> = th.concat();
        union.sort_unstable();
        union.dedup();
        if union.len() < 3 {
            violated.push(format!("|Theta_1 u Theta_2| = {} < 3", union.len()));
        }
    }
    if violated.is_empty() {
        Ok(())
    } else {
        Err(Error::Hypothesis(violated.join("; ")))
    }
}

/// Candidate pivot pairs `(p1, p2)`: `p1` in `Theta_1`, `p2` in `Theta_2`,
/// and the remaining three indices meet both sets.
fn two_pivots(th: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &p1 in &th[0] {
        for &p2 in &th[1] {
            if p1 == p2 {
                continue;
            }
            let rest = |t: &Vec<usize>| t.iter().any(|&k| k != p1 && k != p2);
            if rest(&th[0]) && rest(&th[1]) {
                out.push((p1, p2));
            }
        }
    }
    out
}

pub(crate) fn two_search(a: &KMatrix, h: &[Q], accept: &dyn Fn(&[KElement]) -> bool) -> Option<Vec<KElement>> {
    let th = theta_sets(a, h);
    for (p1, p2) in two_pivots(&th) {
        let rest: Vec<usize> = (0..5).filter(|&k| k != p1 && k != p2).collect();
        let det = &(a.get(p1, 0) * a.get(p2, 1)) - &(a.get(p2, 0) * a.get(p1, 1));
        if det.is_zero() {
            continue;
        }
        for xi in coefficient_vectors(3, 6) {
            let mut x = vec![KElement::zero(); 5];
            for (c, &k) in xi.iter().zip(&rest) {
                x[k] = ctp(*c, &h[k]);
            }
            let rhs: Vec<KElement> = (0..2)
                .map(|i| -rest.iter().fold(KElement::zero(), |acc, &k| &acc + &(a.get(k, i) * &x[k])))
                .collect();
            let n1 = &(&rhs[0] * a.get(p2, 1)) - &(a.get(p2, 0) * &rhs[1]);
            let n2 = &(a.get(p1, 0) * &rhs[1]) - &(&rhs[0] * a.get(p1, 1));
            x[p1] = &n1 / &det;
            x[p2] = &n2 / &det;
            if degree_mismatch(&x, h).is_none() && accept(&x) {
                return Some(x);
            }
        }
    }
    None
}

/// Two equations `sum_j a_{ji} x_j = 0` (`i = 1, 2`) over a 5x2 matrix with
/// `deg x_j = h_j`. Three coordinates are chosen as generic monomials and
/// the other two solved by Cramer's rule.
pub fn solve_two_equations(a: &KMatrix, h: &[Q]) -> Result<Vec<KElement>> {
    check_two(a, h)?;
    two_search(a, h, &|_| true)
        .ok_or_else(|| Error::construction("two equations", "no generic coefficients found"))
}

pub(crate) fn check_three(a: &KMatrix, h: &[Q], uvyz: [usize; 4]) -> Result<()> {
    if a.rows() != 6 || a.cols() != 3 || h.len() != 6 {
        return Err(Error::Shape("three-equation solver needs a 6x3 matrix and 6 degrees".into()));
    }
    for (k, &u) in uvyz.iter().enumerate() {
        if u >= 6 {
            return Err(Error::IndexOutOfRange { index: u, size: 6 });
        }
        if uvyz[..k].contains(&u) {
            return Err(Error::Precondition("the four indices must be distinct".into()));
        }
    }
    let mut d = TropValue::int(0);
    for i in 0..3 {
        d = d.otimes(&argmin(&a.column(i), h).0);
    }
    let TropValue::Finite(d) = d else {
        return Err(Error::Hypothesis("D is infinite".into()));
    };
    for skip in (0..4).rev() {
        let t: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| uvyz[k]).collect();
        let det = determinant(&a.select_rows(&t))?;
        let want = &d - &h[t[0]] - &h[t[1]] - &h[t[2]];
        if det.degree() != TropValue::Finite(want.clone()) {
            return Err(Error::Hypothesis(format!(
                "deg det A[{}, {}, {}] = {} but D - (h_p + h_q + h_r) = {}",
                t[0],
                t[1],
                t[2],
                det.degree(),
                TropValue::Finite(want)
            )));
        }
    }
    Ok(())
}

pub(crate) fn three_search(
    a: &KMatrix,
    h: &[Q],
    uvyz: [usize; 4],
    accept: &dyn Fn(&[KElement]) -> bool,
) -> Option<Vec<KElement>> {
    let solved = &uvyz[..3];
    let z = uvyz[3];
    let m = KMatrix::from_fn(3, 3, |i, c| a.get(solved[c], i).clone());
    for xi in 1..=MAX_SEARCH {
        let mut x: Vec<KElement> = (0..6).map(|k| tp(&h[k])).collect();
        x[z] = ctp(xi, &h[z]);
        let rhs: Vec<KElement> = (0..3)
            .map(|i| {
                -(0..6)
                    .filter(|k| !solved.contains(k))
                    .fold(KElement::zero(), |acc, k| &acc + &(a.get(k, i) * &x[k]))
            })
            .collect();
        let Ok(sol) = cramer_solve(&m, &rhs) else {
            return None;
        };
        for (c, v) in sol.into_iter().enumerate() {
            x[solved[c]] = v;
        }
        if degree_mismatch(&x, h).is_none() && accept(&x) {
            return Some(x);
        }
    }
    None
}

/// Three equations `sum_j a_{ji} x_j = 0` over a 6x3 matrix with
/// `deg x_j = h_j`. `uvyz[3]` receives `xi t^{h}`, the two indices outside
/// `uvyz` receive `t^{h}`, and `uvyz[..3]` are solved by Cramer's rule.
pub fn solve_three_equations(a: &KMatrix, h: &[Q], uvyz: [usize; 4]) -> Result<Vec<KElement>> {
    check_three(a, h, uvyz)?;
    three_search(a, h, uvyz, &|_| true)
        .ok_or_else(|| Error::construction("three equations", "no admissible xi found"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::{dot, t_int};
    use crate::trop::q;

    fn ints(v: &[i64]) -> Vec<KElement> {
        v.iter().map(|&x| KElement::int(x)).collect()
    }

    #[test]
    fn single_two_equal_terms() {
        let x = solve_single_equation(&ints(&[1, 1]), &[q(0), q(0)]).unwrap();
        assert_eq!(x, ints(&[1, -1]));
    }

    #[test]
    fn single_with_tie() {
        let l = vec![KElement::one(), t_int(1), KElement::one()];
        let a = [q(0), q(-1), q(0)];
        let x = solve_single_equation(&l, &a).unwrap();
        assert!(dot(&l, &x).is_zero());
        assert_eq!(degree_mismatch(&x, &a), None);
    }

    #[test]
    fn single_avoids_cancellation() {
        let l = ints(&[1, -1, 1]);
        let a = [q(0), q(0), q(0)];
        let x = solve_single_equation(&l, &a).unwrap();
        assert!(dot(&l, &x).is_zero());
        assert_eq!(degree_mismatch(&x, &a), None);
    }

    #[test]
    fn single_rejects_unique_minimum() {
        assert!(matches!(
            solve_single_equation(&ints(&[1, 1]), &[q(0), q(1)]),
            Err(Error::Hypothesis(_))
        ));
    }

    fn cols(c1: &[i64], c2: &[i64]) -> KMatrix {
        KMatrix::from_fn(5, 2, |i, j| KElement::int(if j == 0 { c1[i] } else { c2[i] }))
    }

    #[test]
    fn two_equations_constants() {
        let a = cols(&[1, 1, 1, 0, 0], &[0, 1, 2, 1, 1]);
        let h = vec![q(0); 5];
        let x = solve_two_equations(&a, &h).unwrap();
        assert!(dot(&a.column(0), &x).is_zero());
        assert!(dot(&a.column(1), &x).is_zero());
        assert_eq!(degree_mismatch(&x, &h), None);
        assert_eq!(theta_sets(&a, &h), vec![vec![0, 1, 2], vec![1, 2, 3, 4]]);
    }

    #[test]
    fn two_equations_reject_degenerate_minor() {
        let a = cols(&[1, 1, 1, 0, 0], &[0, 1, 1, 1, 1]);
        let err = solve_two_equations(&a, &vec![q(0); 5]).unwrap_err().to_string();
        assert!(err.contains("rows 1, 2"), "{err}");
    }

    #[test]
    fn two_equations_reject_small_theta() {
        let a = cols(&[1, 1, 1, 0, 0], &[0, 1, 2, 1, 1]);
        let h = [q(0), q(1), q(1), q(0), q(0)];
        let err = solve_two_equations(&a, &h).unwrap_err().to_string();
        assert!(err.contains("|Theta_1| = 1"), "{err}");
    }

    #[test]
    fn three_equations_generic() {
        let a = KMatrix::from_fn(6, 3, |i, j| KElement::int(((i * 7 + j * 3 + i * j) % 5) as i64 + 1));
        let h = vec![q(0); 6];
        for uvyz in [[0, 1, 2, 3], [3, 2, 1, 0], [1, 3, 4, 5]] {
            if check_three(&a, &h, uvyz).is_err() {
                continue;
            }
            let x = solve_three_equations(&a, &h, uvyz).unwrap();
            for i in 0..3 {
                assert!(dot(&a.column(i), &x).is_zero());
            }
            assert_eq!(degree_mismatch(&x, &h), None);
        }
    }

    #[test]
    fn three_equations_name_the_triple() {
        let mut a = KMatrix::from_fn(6, 3, |i, j| KElement::int(if i == j { 1 } else { 0 }));
        for j in 0..3 {
            a.set(3, j, KElement::one());
        }
        let err = solve_three_equations(&a, &vec![q(0); 6], [0, 1, 2, 4]).unwrap_err();
        assert!(err.to_string().contains("A[0, 1, 4]"), "{err}");
    }
}
