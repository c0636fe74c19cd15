//! Polynomial input grammar:
//!
//! ```text
//! poly   := sign? term (('+'|'-') term)*
//! term   := coeff ('*'? factor ('*' factor)*)? | factor ('*' factor)*
//! coeff  := digits ('/' digits)?
//! factor := var ('^' digits)?
//! var    := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Positions in errors are 1-based character columns.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::{Coefficient, Monomial, Polynomial, Ring};

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        cols: text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, _)| i + 1)
            .collect(),
        pos: 0,
        ring,
        len: text.chars().count(),
    };
    p.poly()
}

struct Parser<'a> {
    chars: Vec<char>,
    cols: Vec<usize>,
    pos: usize,
    ring: &'a Ring,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.cols.get(self.pos).copied().unwrap_or(self.len + 1)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.column(),
            message: message.into(),
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = c.neg();
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(ch) => return Err(self.error(format!("unexpected `{ch}`"))),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, Coefficient)> {
        let field = self.ring.field();
        let mut exps = vec![0u16; self.ring.nvars()];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.digits()?
                } else {
                    BigInt::one()
                };
                let start = self.column();
                let c = field.from_fraction(&num, &den).map_err(|_| Error::Parse {
                    position: start,
                    message: format!("coefficient {num}/{den} is not representable in {field}"),
                })?;
                match self.peek() {
                    Some('*') => {
                        self.pos += 1;
                        self.factor(&mut exps)?;
                    }
                    Some(ch) if ch.is_ascii_alphabetic() => self.factor(&mut exps)?,
                    _ => return Ok((Monomial::new(exps), c)),
                }
                c
            }
            Some(ch) if ch.is_ascii_alphabetic() => {
                self.factor(&mut exps)?;
                field.one()
            }
            Some(ch) => return Err(self.error(format!("unexpected `{ch}`"))),
            None => return Err(self.error("unexpected end of input")),
        };
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self, exps: &mut [u16]) -> Result<()> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(self.error(format!("expected a variable, found `{c}`"))),
            None => return Err(self.error("expected a variable")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let index = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        let e = if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.column();
            let e = self.digits()?;
            let e: u16 = e
                .try_into()
                .ok()
                .filter(|&e: &u16| e > 0)
                .ok_or(Error::Parse {
                    position: at,
                    message: "exponent must be a positive integer below 65536".into(),
                })?;
            e
        } else {
            1
        };
        exps[index] = exps[index]
            .checked_add(e)
            .ok_or_else(|| self.error("exponent overflow"))?;
        Ok(())
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, RingContext};
    use proptest::prelude::*;

    fn ring() -> Ring {
        RingContext::standard(&["x", "y", "z", "w"], Field::Rational)
    }

    #[test]
    fn grammar_examples() {
        let r = ring();
        let f = parse_polynomial("x^2+y*w", &r).unwrap();
        assert_eq!(f.to_string(), "x^2+y*w");
        assert_eq!(parse_polynomial("3", &r).unwrap().to_string(), "3");
        assert_eq!(parse_polynomial("x^2 + y*w - y*w", &r).unwrap().to_string(), "x^2");
        assert!(parse_polynomial(" -2x y", &r).is_err());
        assert_eq!(parse_polynomial("-2x*y", &r).unwrap().to_string(), "-2*x*y");
        assert_eq!(parse_polynomial("1/2*x - 3/6 x", &r).unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial("x^2 + + y", &r),
            Err(Error::Parse { position: 7, message: "unexpected `+`".into() })
        );
        assert_eq!(parse_polynomial("x*v", &r), Err(Error::UnknownVariable("v".into())));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x^0", &r), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_polynomial("1/0*x", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn mod_p_parsing() {
        let r = RingContext::standard(&["x"], Field::prime(199).unwrap());
        assert_eq!(parse_polynomial("200*x", &r).unwrap().to_string(), "x");
        assert!(parse_polynomial("1/199*x", &r).is_err());
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(terms in prop::collection::vec(
            ((-20i64..20), (1i64..5), prop::collection::vec(0u16..4, 4)), 0..8)) {
            let r = ring();
            let f = Polynomial::from_terms(&r, terms.into_iter().map(|(n, d, e)| {
                (Monomial::new(e), r.field().from_fraction(&n.into(), &d.into()).unwrap())
            }));
            let back = parse_polynomial(&f.to_string(), &r).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
