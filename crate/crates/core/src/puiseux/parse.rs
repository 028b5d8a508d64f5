//! Text syntax for field elements, e.g. `(1+t^{1})/(2+t^{1})` or
//! `3/2*t^{1/2}-(1/2+3/4 i)*t^{2}`.

use num_traits::{One, Zero};

use super::element::KElement;
use super::gauss::GaussRat;
use super::poly::PuiseuxPoly;
use crate::error::{Error, Result};
use crate::trop::{parse_rational, Q};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> PResult<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err((self.pos, format!("expected {:?}", b as char)))
        }
    }

    fn err<T>(&self, msg: &str) -> PResult<T> {
        Err((self.pos, msg.to_string()))
    }

    /// Unsigned `digits` or `digits/digits`.
    fn rational(&mut self) -> PResult<Q> {
        self.ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.s.len() && p.s[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos > s
        };
        if !digits(self) {
            return self.err("expected a number");
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'/' {
            let save = self.pos;
            self.pos += 1;
            if !digits(self) {
                // a fraction bar between polynomials, not a rational
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        parse_rational(text).map_err(|m| (start, m))
    }

    fn signed_rational(&mut self) -> PResult<Q> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    fn starts_number(&mut self) -> bool {
        self.peek().map_or(false, |b| b.is_ascii_digit())
    }

    /// Inside parentheses: `a`, `a+b i`, `b i`, `i`, with optional signs.
    fn gauss(&mut self) -> PResult<GaussRat> {
        let mut re = Q::zero();
        let mut im = Q::zero();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let mag = if self.starts_number() { Some(self.rational()?) } else { None };
            let v = mag.clone().unwrap_or_else(Q::one);
            let v = if neg { -v } else { v };
            if self.eat(b'i') {
                im += v;
            } else if mag.is_some() {
                re += v;
            } else {
                return self.err("expected a number or i");
            }
            if self.peek() == Some(b')') {
                break;
            }
        }
        Ok(GaussRat::new(re, im))
    }

    fn exponent(&mut self) -> PResult<Q> {
        if !self.eat(b'^') {
            return Ok(Q::one());
        }
        if self.eat(b'{') {
            let e = self.signed_rational()?;
            self.expect(b'}')?;
            Ok(e)
        } else {
            self.signed_rational()
        }
    }

    /// One term without its sign.
    fn term(&mut self) -> PResult<(Q, GaussRat)> {
        let coef = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let g = self.gauss()?;
                self.expect(b')')?;
                Some(g)
            }
            Some(b) if b.is_ascii_digit() => Some(GaussRat::real(self.rational()?)),
            Some(b't') => None,
            _ => return self.err("expected a term"),
        };
        let has_t = match coef {
            None => true,
            Some(_) => self.eat(b'*'),
        };
        let e = if has_t {
            if !self.eat(b't') {
                return self.err("expected t");
            }
            self.exponent()?
        } else {
            Q::zero()
        };
        Ok((e, coef.unwrap_or_else(GaussRat::one)))
    }

    fn poly(&mut self) -> PResult<PuiseuxPoly> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, if neg { -&c } else { c }));
        }
        Ok(PuiseuxPoly::from_terms(terms))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a field element; errors carry the 1-based column.
pub fn parse_k_element(text: &str) -> Result<KElement> {
    let err = |(pos, msg): (usize, String)| Error::Parse {
        line: 1,
        col: pos + 1,
        msg,
    };
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    if p.peek() == Some(b'(') {
        let save = p.pos;
        p.pos += 1;
        let frac = (|| -> PResult<KElement> {
            let num = p.poly()?;
            p.expect(b')')?;
            if p.at_end() {
                return Ok(KElement::from_poly(num));
            }
            p.expect(b'/')?;
            p.expect(b'(')?;
            let den = p.poly()?;
            p.expect(b')')?;
            if !p.at_end() {
                return p.err("trailing input");
            }
            if den.is_zero() {
                return p.err("zero denominator");
            }
            Ok(KElement::from_fraction(num, den).expect("nonzero denominator"))
        })();
        match frac {
            Ok(x) => return Ok(x),
            Err(e) => {
                p.pos = save;
                let alt = p.poly().and_then(|x| {
                    if p.at_end() {
                        Ok(x)
                    } else {
                        p.err("trailing input")
                    }
                });
                return alt.map(KElement::from_poly).map_err(|_| err(e));
            }
        }
    }
    let x = p.poly().map_err(err)?;
    if !p.at_end() {
        return Err(err((p.pos, "trailing input".into())));
    }
    Ok(KElement::from_poly(x))
}
