//! Infix parser for polynomials, e.g. `4*x^2 + 1/4*xi^2 - i*eta`.
//!
//! Grammar: sums of products of powers; atoms are integers, `i`, the
//! variables `x y xi eta` (or `ξ η`) and parenthesized expressions.
//! Division is allowed by constants only.

use std::str::FromStr;

use num_traits::Zero;

use super::poly::{MultiPoly, Var};
use super::rational::{GaussianRational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Int(text.parse().expect("digits")));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Malformed(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let c = constant_of(&d).ok_or_else(|| Error::Malformed("division by a non-constant".into()))?;
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Malformed("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Malformed("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok =
            self.toks.get(self.pos).cloned().ok_or_else(|| Error::Malformed("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(MultiPoly::constant(GaussianRational::real(Rational::from_integer(n)))),
            Tok::Ident(name) if name == "i" => Ok(MultiPoly::constant(GaussianRational::i())),
            Tok::Ident(name) => Ok(MultiPoly::var(Var::from_name(&name)?)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Malformed("missing ')'".into()));
                }
                Ok(e)
            }
            Tok::Sym('-') => Ok(-self.power()?),
            Tok::Sym(c) => Err(Error::Malformed(format!("unexpected {c:?}"))),
        }
    }
}

fn constant_of(p: &MultiPoly) -> Option<GaussianRational> {
    match p.degree() {
        None => Some(GaussianRational::zero()),
        Some(0) => p.terms().next().map(|(_, c)| c.clone()),
        _ => None,
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Malformed("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Malformed(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use num_traits::One;

    #[test]
    fn parses_fractions_and_unit() {
        let p: MultiPoly = "1/4*xi^2 - i*x".parse().unwrap();
        let expected = &MultiPoly::var(Var::Xi).pow(2).scale(&GaussianRational::real(rat(1, 4)))
            - &MultiPoly::var(Var::X).scale(&GaussianRational::i());
        assert_eq!(p, expected);
    }

    #[test]
    fn unicode_names_and_parens() {
        let a: MultiPoly = "(η - x/2)^2".parse().unwrap();
        let b: MultiPoly = "eta^2 - x*eta + 1/4*x^2".parse().unwrap();
        assert_eq!(a, b);
        let one: MultiPoly = "-(-1)".parse().unwrap();
        assert!(one.terms().next().unwrap().1.is_one());
    }

    #[test]
    fn rejects_garbage() {
        assert!("x +".parse::<MultiPoly>().is_err());
        assert!("x / y".parse::<MultiPoly>().is_err());
        assert!("z".parse::<MultiPoly>().is_err());
        assert!("x $ 2".parse::<MultiPoly>().is_err());
        assert!("".parse::<MultiPoly>().is_err());
    }
}
