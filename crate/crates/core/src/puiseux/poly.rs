//! Finite Puiseux polynomials: finite sums `sum c_e t^e`, `e` rational.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::gauss::GaussRat;
use crate::trop::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Q, GaussRat>,
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly::default()
    }

    pub fn one() -> Self {
        PuiseuxPoly::monomial(GaussRat::one(), Q::zero())
    }

    pub fn monomial(c: GaussRat, e: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PuiseuxPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Q, GaussRat)>) -> Self {
        let mut p = PuiseuxPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Q, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(cur) => {
                *cur = &*cur + c;
                if cur.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.leading().map_or(false, |(e, c)| e.is_zero() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lowest-exponent term.
    pub fn leading(&self) -> Option<(&Q, &GaussRat)> {
        self.terms.iter().next()
    }

    pub fn degree(&self) -> Option<&Q> {
        self.leading().map(|(e, _)| e)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return PuiseuxPoly::zero();
        }
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: &Q) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, x)| (e + s, x.clone())).collect(),
        }
    }

    fn exponent_lcm(&self, acc: BigInt) -> BigInt {
        self.terms.keys().fold(acc, |a, e| a.lcm(e.denom()))
    }

    /// Coefficients of `P(s)` where `self = t^{e0} P(t^{1/n})`, lowest first.
    fn dense(&self, n: &BigInt) -> (Q, Vec<GaussRat>) {
        let e0 = self.degree().expect("nonzero").clone();
        let nq = Q::from_integer(n.clone());
        let idx = |e: &Q| -> usize {
            ((e - &e0) * &nq)
                .to_integer()
                .to_usize()
                .expect("exponent span fits in memory")
        };
        let top = idx(self.terms.keys().next_back().expect("nonzero"));
        let mut v = vec![GaussRat::zero(); top + 1];
        for (e, c) in &self.terms {
            v[idx(e)] = c.clone();
        }
        (e0, v)
    }

    fn from_dense(e0: &Q, n: &BigInt, v: &[GaussRat]) -> Self {
        let nq = Q::from_integer(n.clone());
        PuiseuxPoly {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (e0 + Q::from_integer(BigInt::from(k)) / &nq, c.clone()))
                .collect(),
        }
    }

    /// Greatest common divisor up to units `c t^e`, normalized to lowest
    /// term `1 t^0`. Either argument may be zero but not both.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.unit_normalized();
        }
        if other.is_zero() {
            return self.unit_normalized();
        }
        if self.is_monomial() || other.is_monomial() {
            return PuiseuxPoly::one();
        }
        let n = other.exponent_lcm(self.exponent_lcm(BigInt::one()));
        let (_, mut a) = self.dense(&n);
        let (_, mut b) = other.dense(&n);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !(b.len() == 1) {
            let mut r = dense_rem(&a, &b);
            if r.is_empty() {
                break;
            }
            // monic remainders keep coefficient growth in check
            let inv = r[r.len() - 1].inv().expect("trimmed remainder");
            for c in r.iter_mut() {
                *c = &*c * &inv;
            }
            a = b;
            b = r;
        }
        if b.len() == 1 {
            return PuiseuxPoly::one();
        }
        PuiseuxPoly::from_dense(&Q::zero(), &n, &b).unit_normalized()
    }

    /// Divides by the lowest term so it becomes `1 t^0`.
    pub fn unit_normalized(&self) -> Self {
        match self.leading() {
            None => PuiseuxPoly::zero(),
            Some((e, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.shift(&-e.clone()).scale(&inv)
            }
        }
    }

    /// Exact quotient `self / g`; `g` must divide `self`.
    pub fn div_exact(&self, g: &Self) -> Self {
        if g.is_monomial() {
            let (e, c) = g.leading().expect("nonzero");
            return self.shift(&-e.clone()).scale(&c.inv().expect("nonzero"));
        }
        if self.is_zero() {
            return PuiseuxPoly::zero();
        }
        let n = g.exponent_lcm(self.exponent_lcm(BigInt::one()));
        let (e0, a) = self.dense(&n);
        let (g0, b) = g.dense(&n);
        let (quot, rem) = dense_divmod(&a, &b);
        debug_assert!(rem.is_empty(), "inexact polynomial division");
        PuiseuxPoly::from_dense(&(e0 - g0), &n, &quot)
    }
}

fn trim(v: &mut Vec<GaussRat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn dense_divmod(a: &[GaussRat], b: &[GaussRat]) -> (Vec<GaussRat>, Vec<GaussRat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("trimmed divisor");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![GaussRat::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let t = &f * bc;
            r[k + i] = &r[k + i] - &t;
        }
        quot[k] = f;
        r.pop();
        trim(&mut r);
    }
    (quot, r)
}

fn dense_rem(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    dense_divmod(a, b).1
}

impl<'a> Add<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, o: &PuiseuxPoly) -> PuiseuxPoly {
        let mut out = PuiseuxPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::{q, qr};

    fn p(terms: &[(i64, i64, i64)]) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(terms.iter().map(|&(c, n, d)| (qr(n, d), GaussRat::int(c))))
    }

    #[test]
    fn gcd_finds_common_factor() {
        // (1 + t)(2 + t) and (1 + t)(3 - t)
        let a = &p(&[(1, 0, 1), (1, 1, 1)]) * &p(&[(2, 0, 1), (1, 1, 1)]);
        let b = &p(&[(1, 0, 1), (1, 1, 1)]) * &p(&[(3, 0, 1), (-1, 1, 1)]);
        assert_eq!(a.gcd(&b), p(&[(1, 0, 1), (1, 1, 1)]));
        assert_eq!(a.div_exact(&a.gcd(&b)), p(&[(2, 0, 1), (1, 1, 1)]));
    }

    #[test]
    fn gcd_with_fractional_exponents() {
        // t - 1 = (t^{1/2} - 1)(t^{1/2} + 1)
        let a = p(&[(-1, 0, 1), (1, 1, 1)]);
        let b = &p(&[(-1, 0, 1), (1, 1, 2)]) * &p(&[(5, 0, 1), (1, 3, 2)]);
        assert_eq!(a.gcd(&b), p(&[(1, 0, 1), (-1, 1, 2)]));
    }

    #[test]
    fn shifted_inputs() {
        let a = p(&[(1, 3, 1), (1, 4, 1)]);
        let b = p(&[(2, -1, 1), (2, 0, 1)]);
        assert_eq!(a.gcd(&b), p(&[(1, 0, 1), (1, 1, 1)]));
        assert_eq!(a.div_exact(&b), p(&[(1, 4, 1)]).scale(&GaussRat::real(qr(1, 2))));
        assert_eq!(p(&[(1, 0, 1)]).degree(), Some(&q(0)));
    }
}
