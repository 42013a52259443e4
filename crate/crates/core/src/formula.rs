//! Exact rational expressions in the variables `t` and `r`.
//!
//! Grammar: `+ - * / ^`, parentheses, unary minus, integer literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EngineError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
}

/// A parsed formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    source: String,
    expr: Expr,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
}

fn err(src: &str, reason: impl Into<String>) -> EngineError {
    EngineError::Formula {
        formula: src.to_string(),
        reason: reason.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c == 't' || c == 'r' {
            out.push(Tok::Var(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(src, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin('^', Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(err(self.src, "missing ')'"));
                }
                Ok(e)
            }
            Some(tok) => Err(err(self.src, format!("unexpected token {tok:?}"))),
            None => Err(err(self.src, "unexpected end of input")),
        }
    }
}

impl Formula {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser {
            src,
            toks: lex(src)?,
            pos: 0,
        };
        let expr = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(err(src, "trailing input"));
        }
        Ok(Self {
            source: src.to_string(),
            expr,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Exact value at the given `t` and `r`.
    pub fn eval(&self, t: i64, r: Option<i64>) -> Result<BigRational> {
        eval(&self.expr, t, r, &self.source)
    }
}

fn eval(e: &Expr, t: i64, r: Option<i64>, src: &str) -> Result<BigRational> {
    Ok(match e {
        Expr::Num(n) => BigRational::from_integer(n.clone()),
        Expr::Var('t') => BigRational::from_integer(t.into()),
        Expr::Var(_) => BigRational::from_integer(
            r.ok_or_else(|| err(src, "formula uses r but no r is given"))?
                .into(),
        ),
        Expr::Neg(a) => -eval(a, t, r, src)?,
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, t, r, src)?, eval(b, t, r, src)?);
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                '/' => {
                    if y.is_zero() {
                        return Err(err(src, "division by zero"));
                    }
                    x / y
                }
                _ => {
                    if !y.is_integer() || y.is_negative() {
                        return Err(err(src, "exponent must be a non-negative integer"));
                    }
                    let n = y
                        .to_integer()
                        .to_u32()
                        .ok_or_else(|| err(src, "exponent too large"))?;
                    (0..n).fold(BigRational::one(), |acc, _| acc * &x)
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str, t: i64, r: i64) -> BigRational {
        Formula::parse(s).unwrap().eval(t, Some(r)).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic() {
        assert_eq!(v("8*t - 3", 5, 0), int(37));
        assert_eq!(v("(r^2 - 1)/4*(8*t - 4)", 1, 3), int(8));
        assert_eq!(v("-r*t", 3, 4), int(-12));
        assert_eq!(v("2^3^2", 0, 0), int(512));
        assert_eq!(v("-2^2", 0, 0), int(-4));
        assert_eq!(v("7/2", 0, 0), BigRational::new(7.into(), 2.into()));
    }

    #[test]
    fn errors() {
        assert!(Formula::parse("t +").is_err());
        assert!(Formula::parse("(t").is_err());
        assert!(Formula::parse("x").is_err());
        assert!(Formula::parse("t)").is_err());
        assert!(Formula::parse("1/(t-t)").unwrap().eval(1, None).is_err());
        assert!(Formula::parse("r").unwrap().eval(1, None).is_err());
    }
}
