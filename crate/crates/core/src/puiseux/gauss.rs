//! Gaussian rationals `a + b i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::trop::{fmt_rational, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Q,
    pub im: Q,
}

impl GaussRat {
    pub fn new(re: Q, im: Q) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Q) -> Self {
        GaussRat { re, im: Q::zero() }
    }

    pub fn int(n: i64) -> Self {
        GaussRat::real(q(n))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::real(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(Q::one())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        if self.is_real() && o.is_real() {
            return GaussRat::real(&self.re + &o.re);
        }
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.is_real() && o.is_real() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            f.write_str(&fmt_rational(&self.re))
        } else {
            let sign = if self.im < Q::zero() { "-" } else { "+" };
            write!(
                f,
                "({}{}{} i)",
                fmt_rational(&self.re),
                sign,
                fmt_rational(&self.im.abs())
            )
        }
    }
}
