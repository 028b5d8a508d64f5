//! Elements of the Puiseux field as reduced fractions of Puiseux polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRat;
use super::poly::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::trop::{q, TropValue, Q};

/// `num / den` in lowest terms, with the lowest term of `den` equal to `1`.
#[derive(Clone, Debug)]
pub struct KElement {
    num: PuiseuxPoly,
    den: PuiseuxPoly,
}

impl KElement {
    pub fn zero() -> Self {
        KElement {
            num: PuiseuxPoly::zero(),
            den: PuiseuxPoly::one(),
        }
    }

    pub fn one() -> Self {
        KElement::from_poly(PuiseuxPoly::one())
    }

    pub fn int(n: i64) -> Self {
        KElement::constant(GaussRat::int(n))
    }

    pub fn constant(c: GaussRat) -> Self {
        KElement::from_poly(PuiseuxPoly::monomial(c, Q::zero()))
    }

    pub fn monomial(c: GaussRat, e: Q) -> Self {
        KElement::from_poly(PuiseuxPoly::monomial(c, e))
    }

    /// `t^e`.
    pub fn t_pow(e: Q) -> Self {
        KElement::monomial(GaussRat::one(), e)
    }

    /// `c t^e` with integer `c`.
    pub fn ct(c: i64, e: Q) -> Self {
        KElement::monomial(GaussRat::int(c), e)
    }

    pub fn from_poly(num: PuiseuxPoly) -> Self {
        KElement {
            num,
            den: PuiseuxPoly::one(),
        }
    }

    pub fn from_fraction(num: PuiseuxPoly, den: PuiseuxPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KElement::reduced(num, den))
    }

    fn reduced(num: PuiseuxPoly, den: PuiseuxPoly) -> Self {
        if num.is_zero() {
            return KElement::zero();
        }
        let (num, den) = if den.is_monomial() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let (e, c) = den.leading().expect("nonzero denominator");
        let inv = c.inv().expect("nonzero");
        let shift = -e.clone();
        KElement {
            num: num.shift(&shift).scale(&inv),
            den: den.shift(&shift).scale(&inv),
        }
    }

    pub fn num(&self) -> &PuiseuxPoly {
        &self.num
    }

    pub fn den(&self) -> &PuiseuxPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Exponent of the leading term; `Inf` for zero.
    pub fn degree(&self) -> TropValue {
        match self.num.degree() {
            None => TropValue::Inf,
            Some(e) => TropValue::Finite(e.clone()),
        }
    }

    /// Finite degree; panics on zero.
    pub fn deg(&self) -> Q {
        self.num.degree().expect("nonzero element").clone()
    }

    /// Coefficient of the leading term.
    pub fn leading_coeff(&self) -> Option<GaussRat> {
        self.num.leading().map(|(_, c)| c.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KElement::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(KElement::reduced(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return KElement::zero();
        }
        KElement {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: &Q) -> Self {
        KElement {
            num: self.num.shift(s),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(KElement::one(), |acc, _| &acc * self)
    }
}

impl PartialEq for KElement {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for KElement {}

impl<'a> Add<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn add(self, o: &KElement) -> KElement {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return KElement::from_poly(&self.num + &o.num);
            }
            return KElement::reduced(&self.num + &o.num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        KElement::reduced(num, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn sub(self, o: &KElement) -> KElement {
        self + &(-o)
    }
}

impl<'a> Mul<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn mul(self, o: &KElement) -> KElement {
        if self.is_zero() || o.is_zero() {
            return KElement::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return KElement::from_poly(&self.num * &o.num);
        }
        KElement::reduced(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by zero; use [`KElement::checked_div`] otherwise.
impl<'a> Div<&'a KElement> for &'a KElement {
    type Output = KElement;
    fn div(self, o: &KElement) -> KElement {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for KElement {
            type Output = KElement;
            fn $m(self, o: KElement) -> KElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a KElement> for KElement {
            type Output = KElement;
            fn $m(self, o: &KElement) -> KElement {
                (&self).$m(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Zero for KElement {
    fn zero() -> Self {
        KElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for KElement {
    fn one() -> Self {
        KElement::one()
    }
}

impl From<i64> for KElement {
    fn from(n: i64) -> Self {
        KElement::int(n)
    }
}

pub(crate) fn fmt_poly(p: &PuiseuxPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let neg_real = c.is_real() && c.re < Q::zero();
        let abs = if neg_real { -c } else { c.clone() };
        if k > 0 || neg_real {
            s.push(if neg_real { '-' } else { '+' });
        }
        let unit = abs.is_one();
        let mono = if e.is_zero() {
            None
        } else {
            Some(format!("t^{{{}}}", crate::trop::fmt_rational(e)))
        };
        match (unit, mono) {
            (true, Some(m)) => s.push_str(&m),
            (_, None) => s.push_str(&abs.to_string()),
            (false, Some(m)) => {
                s.push_str(&abs.to_string());
                s.push('*');
                s.push_str(&m);
            }
        }
    }
    s
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

/// Integer `c` times `t^e` with `e = n/d`; handy in constructions.
pub fn mono(c: i64, n: i64, d: i64) -> KElement {
    KElement::ct(c, crate::trop::qr(n, d))
}

pub fn t_int(e: i64) -> KElement {
    KElement::t_pow(q(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::qr;

    #[test]
    fn field_basics() {
        let h = KElement::t_pow(qr(1, 2));
        assert_eq!(&h * &h, t_int(1));
        let two_t = &KElement::int(2) + &t_int(1);
        let r = KElement::one().checked_div(&two_t).unwrap();
        assert_eq!(r.degree(), TropValue::int(0));
        assert_eq!(r.to_string(), "(1/2)/(1+1/2*t^{1})");
        let x = &KElement::int(1) + &t_int(1);
        assert!((&x - &x).is_zero());
        assert!(KElement::zero().checked_div(&KElement::zero()).is_err());
    }

    #[test]
    fn reduction_cancels() {
        let a = &KElement::int(1) + &t_int(1);
        let b = &KElement::int(2) + &t_int(1);
        let f = &(&a * &b).checked_div(&b).unwrap() - &a;
        assert!(f.is_zero());
        let g = (&a * &b).checked_div(&(&a * &t_int(3))).unwrap();
        assert!(g.is_polynomial() || g.den().len() == 1);
        assert_eq!(g.degree(), TropValue::int(-3));
    }
}
