//! Plain-text ideal syntax.
//!
//! ```text
//! ideal  := poly ("," poly)*
//! poly   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ("^" uint)?
//! atom   := uint | ident | "(" poly ")"
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored. Integer literals are reduced modulo the
//! characteristic. Variables are ordered alphabetically unless an explicit
//! order is supplied.

use std::collections::BTreeSet;

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::linalg::Fp;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<u64>().map_err(|_| err(start, "integer literal too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Num(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn ideal(&mut self) -> Result<Vec<Expr>> {
        let mut polys = vec![self.poly()?];
        while self.peek() == Some(&Tok::Comma) {
            self.bump();
            polys.push(self.poly()?);
        }
        if self.peek().is_some() {
            return Err(err(self.offset(), "expected `,` or end of input"));
        }
        Ok(polys)
    }

    fn poly(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let at = self.offset();
            return match self.bump() {
                Some(Tok::Num(e)) => {
                    let e = u32::try_from(e).map_err(|_| err(at, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(err(at, "expected a non-negative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s)),
            Some(Tok::LParen) => {
                let inner = self.poly()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(close, "expected `)`")),
                }
            }
            Some(_) => Err(err(at, "expected a number, variable or `(`")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

fn collect_vars(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(s) => {
            out.insert(s.clone());
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect_vars(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn eval(e: &Expr, field: Fp, vars: &[String]) -> Result<MultiPoly> {
    let n = vars.len();
    Ok(match e {
        Expr::Num(c) => MultiPoly::constant(field, n, (c % field.characteristic() as u64) as u32),
        Expr::Var(s) => {
            let i = vars
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| err(0, format!("variable `{s}` is not in the declared list")))?;
            MultiPoly::monomial(field, Monomial::var(n, i), 1)
        }
        Expr::Neg(a) => eval(a, field, vars)?.neg(),
        Expr::Add(a, b) => eval(a, field, vars)?.add(&eval(b, field, vars)?),
        Expr::Sub(a, b) => eval(a, field, vars)?.sub(&eval(b, field, vars)?),
        Expr::Mul(a, b) => eval(a, field, vars)?.mul(&eval(b, field, vars)?),
        Expr::Pow(a, k) => eval(a, field, vars)?.pow(*k),
    })
}

/// Generators together with the variable names they use.
#[derive(Clone, Debug)]
pub struct ParsedIdeal {
    pub variables: Vec<String>,
    pub generators: Vec<MultiPoly>,
}

fn parse_exprs(text: &str) -> Result<Vec<Expr>> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    p.ideal()
}

/// Parses with variables sorted alphabetically.
pub fn parse_ideal(field: Fp, text: &str) -> Result<ParsedIdeal> {
    let exprs = parse_exprs(text)?;
    let mut names = BTreeSet::new();
    exprs.iter().for_each(|e| collect_vars(e, &mut names));
    let variables: Vec<String> = names.into_iter().collect();
    let generators = exprs.iter().map(|e| eval(e, field, &variables)).collect::<Result<_>>()?;
    Ok(ParsedIdeal { variables, generators })
}

/// Parses against an explicit variable order.
pub fn parse_ideal_with_vars(field: Fp, text: &str, vars: &[String]) -> Result<ParsedIdeal> {
    let exprs = parse_exprs(text)?;
    let generators = exprs.iter().map(|e| eval(e, field, vars)).collect::<Result<_>>()?;
    Ok(ParsedIdeal { variables: vars.to_vec(), generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orders_variables() {
        let f = Fp::new(7).unwrap();
        let p = parse_ideal(f, " y^2 - 3*x*y , (x+y)^2 ").unwrap();
        assert_eq!(p.variables, vec!["x", "y"]);
        assert_eq!(p.generators[0].format(&p.variables), "-3*x*y + y^2");
        assert_eq!(p.generators[1].format(&p.variables), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn leading_sign_and_constants() {
        let f = Fp::new(5).unwrap();
        let p = parse_ideal(f, "-x + 6").unwrap();
        assert_eq!(p.generators[0].format(&p.variables), "-x + 1");
    }

    #[test]
    fn error_positions() {
        let f = Fp::new(2).unwrap();
        match parse_ideal(f, "x^2 + * y") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ideal(f, "(x"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_ideal(f, "x^y"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_ideal(f, "x $"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_ideal(f, ""), Err(Error::Parse { .. })));
    }
}
