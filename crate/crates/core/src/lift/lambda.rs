//! The fixed coefficient matrices used by the case constructions.

use num_traits::Zero;

use super::{ctp, pos, tp, CaseLabel};
use crate::error::{Error, Result};
use crate::puiseux::{cofactor, determinant, KElement, KMatrix};
use crate::rank::combinations;
use crate::trop::{TropValue, Q};

/// Signed cofactors, `c[k][i]` for entry `(k, i)`.
pub(crate) fn cofactor_matrix(l: &KMatrix) -> Result<KMatrix> {
    let n = l.rows();
    let mut out = KMatrix::identity(n);
    for k in 0..n {
        for i in 0..n {
            out.set(k, i, cofactor(l, k, i)?);
        }
    }
    Ok(out)
}

fn int(n: i64) -> KElement {
    KElement::int(n)
}

fn self_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::construction("lambda self-check", what()))
    }
}

fn lambda_iv(a: &Q, b: &Q) -> Result<KMatrix> {
    let ta = tp(a);
    let one = int(1);
    let l33 = &(&int(2) / &(&int(2) + &ta)) + &tp(&(a + b));
    let l = KMatrix::from_rows(vec![
        vec![&one + &ta, one.clone(), one.clone()],
        vec![one.clone(), &one + &ta, one.clone()],
        vec![one.clone(), one.clone(), l33],
    ])?;
    let zero = TropValue::Finite(Q::zero());
    for k in 0..3 {
        for i in 0..3 {
            self_check(l.get(k, i).degree() == zero, || format!("entry ({k}, {i}) has nonzero degree"))?;
        }
    }
    let c = cofactor_matrix(&l)?;
    for k in 0..3 {
        for i in 0..3 {
            self_check(c.get(k, i).degree() == TropValue::Finite(a.clone()), || {
                format!("cofactor ({k}, {i}) has degree {}", c.get(k, i).degree())
            })?;
        }
    }
    let det = determinant(&l)?;
    let want = a + a + b;
    self_check(det.degree() == TropValue::Finite(want), || {
        format!("determinant has degree {}", det.degree())
    })?;
    Ok(l)
}

/// Row triples of the 6x3 case-(iii) matrix whose minors carry the
/// parameters `a, b, c, d`; every other triple has a degree-0 minor.
pub(crate) const III_SPECIAL: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];

fn lambda_iii(a: &Q, b: &Q, c: &Q, d: &Q) -> Result<KMatrix> {
    let num = &(&(&int(2) + &tp(b)) - &ctp(10, &(b + c + d))) - &ctp(5, d);
    let den = &(&int(-1) + &ctp(4, c)) + &ctp(2, &(a + c));
    let l33 = num.checked_div(&den)?;
    let z = KElement::zero;
    let l = KMatrix::from_rows(vec![
        vec![&int(2) + &tp(a), int(1), -tp(b)],
        vec![int(1), ctp(2, c), int(1)],
        vec![ctp(5, d), int(1), l33],
        vec![int(-1), z(), z()],
        vec![z(), int(-1), z()],
        vec![z(), z(), int(-1)],
    ])?;
    let top = l.select_rows(&[0, 1, 2]);
    let det = determinant(&top)?;
    self_check(det.degree() == TropValue::Finite(a.clone()), || {
        format!("deg det L = {}", det.degree())
    })?;
    let cf = cofactor_matrix(&top)?;
    for k in 0..3 {
        for i in 0..3 {
            self_check(cf.get(k, i).degree() == TropValue::int(0), || {
                format!("cofactor ({k}, {i}) of L has degree {}", cf.get(k, i).degree())
            })?;
        }
    }
    let params = [a, b, c, d];
    for t in combinations(6, 3) {
        let det = determinant(&l.select_rows(&t))?;
        let want = match III_SPECIAL.iter().position(|s| s[..] == t[..]) {
            Some(p) => params[p].clone(),
            None => Q::zero(),
        };
        self_check(det.degree() == TropValue::Finite(want.clone()), || {
            format!("deg det Lambda[{t:?}] = {}, expected {want}", det.degree())
        })?;
    }
    Ok(l)
}

fn lambda_i(mu: &[Q], y: &[Q]) -> Result<KMatrix> {
    let z = KElement::zero;
    let l = KMatrix::from_rows(vec![
        vec![int(1), tp(&y[1]), ctp(2, &mu[2])],
        vec![int(1), z(), z()],
        vec![ctp(2, &mu[0]), int(1), tp(&y[2])],
        vec![z(), int(1), z()],
        vec![tp(&y[0]), ctp(2, &mu[1]), int(1)],
        vec![z(), z(), int(1)],
    ])?;
    Ok(l)
}

/// The matrix of the requested case.
///
/// * `iv`: `params = [a, b]`, both positive; 3x3.
/// * `iii`: `params = [a, b, c, d]`, all nonnegative; 6x3.
/// * `i`: `params = [mu1, mu2, mu3, y1, y2, y3]` with `mu_i > 0` and
///   `y_i >= mu_i`; 6x3.
///
/// The degree facts the constructions rely on are re-checked on every call.
pub fn build_lambda(case: CaseLabel, params: &[Q]) -> Result<KMatrix> {
    let need = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "case {case} takes {n} parameters, got {}",
                params.len()
            )))
        }
    };
    match case {
        CaseLabel::IV => {
            need(2)?;
            if !params.iter().all(pos) {
                return Err(Error::Precondition("case iv needs a, b > 0".into()));
            }
            lambda_iv(&params[0], &params[1])
        }
        CaseLabel::III => {
            need(4)?;
            if params.iter().any(|p| p < &Q::zero()) {
                return Err(Error::Precondition("case iii needs a, b, c, d >= 0".into()));
            }
            lambda_iii(&params[0], &params[1], &params[2], &params[3])
        }
        CaseLabel::I => {
            need(6)?;
            let (mu, y) = params.split_at(3);
            if !mu.iter().all(pos) || (0..3).any(|k| y[k] < mu[k]) {
                return Err(Error::Precondition("case i needs mu_i > 0 and y_i >= mu_i".into()));
            }
            lambda_i(mu, y)
        }
        _ => Err(Error::Precondition(format!("no coefficient matrix for case {case}"))),
    }
}
