//! Infix polynomial parser: `+ - * ^`, parentheses, integer literals and
//! division by nonzero constants over fields (so `3/4*x` reads back).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::domain::CoefficientDomain;
use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.factor()?;
                acc = self.divide(acc, d, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, num: Polynomial, den: Polynomial, at: usize) -> Result<Polynomial> {
        let domain = self.ring.domain();
        let bad = |msg: &str| Err(Error::Parse { pos: at, msg: msg.to_string() });
        if domain == CoefficientDomain::Integer {
            return bad("division is not available over ZZ");
        }
        if !den.is_constant() || den.is_zero() {
            return bad("can only divide by a nonzero constant");
        }
        let c = den.terms().next().unwrap().1.clone();
        let inv = domain.inv(&c).expect("nonzero constant in a field");
        Ok(num.scale(&inv))
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let d = self.ring.domain();
                let c = d
                    .from_rational(&BigRational::from_integer(n))
                    .expect("integers embed in every domain");
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                self.ring.var(&name).map_err(|_| Error::Parse {
                    pos: at,
                    msg: format!("unknown variable `{name}`"),
                })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

pub(crate) fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { ring, toks, pos: 0, end: text.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scenario_relation() {
        let r = Ring::new(
            &["s", "t", "u", "v", "w", "x", "y", "z"],
            CoefficientDomain::Rational,
        )
        .unwrap();
        let text = "s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + t*w^2*z^2";
        let f = r.parse(text).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rational_literals_over_fields_only() {
        let q = Ring::new(&["x"], CoefficientDomain::Rational).unwrap();
        let f = q.parse("3/4*x - 1/2").unwrap();
        assert_eq!(f.to_string(), "3/4*x - 1/2");
        let z = Ring::new(&["x"], CoefficientDomain::Integer).unwrap();
        assert!(z.parse("x/2").is_err());
        let f5 = Ring::new(&["x"], CoefficientDomain::PrimeField(5)).unwrap();
        assert_eq!(f5.parse("x/2").unwrap().to_string(), "3*x");
    }

    #[test]
    fn reports_errors_with_position() {
        let q = Ring::new(&["x", "y"], CoefficientDomain::Rational).unwrap();
        match q.parse("x + q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(q.parse("x +").is_err());
        assert!(q.parse("(x").is_err());
        assert!(q.parse("x^y").is_err());
        assert!(q.parse("").is_err());
    }
}
