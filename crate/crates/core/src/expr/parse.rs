//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' signed-integer)?
//! base   := identifier | integer | '(' expr ')'
//! ```
//!
//! A leading sign is accepted so rendered output always reparses. Implicit
//! multiplication is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GradedExpr, Namespace, RatFunc, Symbol};
use crate::error::{Error, ParseError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '/' => out.push((Tok::Slash, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return Err(ParseError::new(0, col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ns: &'a Namespace,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(0, self.col(), msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<GradedExpr, Error> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedExpr, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|_| {
                        Error::Parse(ParseError::new(0, col, "division by an expression that is zero at classical order"))
                    })?;
                }
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    return Err(self.err("implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GradedExpr, Error> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let col = self.col();
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(Error::Parse(ParseError::new(0, col, "expected an integer exponent")));
        };
        let n: i32 = i32::try_from(n).map_err(|_| Error::Parse(ParseError::new(0, col, "exponent too large")))?;
        let e = if negative { -n } else { n };
        base.pow(e).map_err(|_| Error::Parse(ParseError::new(0, col, "negative power of an expression that is zero at classical order")))
    }

    fn base(&mut self) -> Result<GradedExpr, Error> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(RatFunc::constant(BigRational::from_integer(n)).into()),
            Some(Tok::Ident(name)) => self.resolve(&name, col),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse(ParseError::new(0, col, "unclosed parenthesis"))),
                }
            }
            Some(_) => Err(Error::Parse(ParseError::new(0, col, "expected an identifier, integer or `(`"))),
            None => Err(Error::Parse(ParseError::new(0, col, "unexpected end of expression"))),
        }
    }

    fn resolve(&self, name: &str, col: usize) -> Result<GradedExpr, Error> {
        if let Some(i) = self.ns.coords().index_of(name) {
            return Ok(RatFunc::symbol(Symbol::Coord(i)).into());
        }
        if self.ns.params().contains(name) {
            return Ok(RatFunc::symbol(Symbol::param(name)).into());
        }
        if name == self.ns.params().deformation_symbol() {
            return Ok(GradedExpr::lambda());
        }
        Err(Error::Parse(ParseError::new(0, col, format!("unknown identifier `{name}`"))))
    }
}

pub(super) fn parse_expr(ns: &Namespace, text: &str) -> Result<GradedExpr, Error> {
    let toks = lex(text).map_err(Error::Parse)?;
    let mut p = Parser { ns, toks, pos: 0, end_col: text.chars().count() + 1 };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{CoordinateSystem, ParameterTable};

    fn ns() -> Namespace {
        Namespace::new(
            CoordinateSystem::new(&["t", "x"]).unwrap(),
            ParameterTable::new(&["b"], "lambda").unwrap(),
        )
        .unwrap()
    }

    fn col_of(e: Error) -> usize {
        match e {
            Error::Parse(p) => p.column,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let ns = ns();
        assert_eq!(ns.parse("1/2*x").unwrap(), ns.parse("x/2").unwrap());
        assert_eq!(ns.parse("2^3").unwrap(), GradedExpr::integer(8));
        assert_eq!(ns.parse("-x^2").unwrap(), -(&GradedExpr::coord(1) * &GradedExpr::coord(1)));
        assert_eq!(ns.parse("x^-1*x").unwrap(), GradedExpr::one());
        assert_eq!(ns.parse(" 1 - 2 - 3 ").unwrap(), GradedExpr::integer(-4));
    }

    #[test]
    fn errors_are_located() {
        let ns = ns();
        assert_eq!(col_of(ns.parse("2 x").unwrap_err()), 3);
        assert_eq!(col_of(ns.parse("t + y").unwrap_err()), 5);
        assert_eq!(col_of(ns.parse("x/(t-t)").unwrap_err()), 3);
        assert!(ns.parse("(t + x").is_err());
        assert!(ns.parse("t^x").is_err());
        assert!(ns.parse("").is_err());
        assert!(ns.parse("t $ x").is_err());
        assert!(ns.parse("1/lambda").is_err());
    }

    #[test]
    fn deformation_symbol_truncates() {
        let ns = ns();
        assert!(ns.parse("lambda^2").unwrap().is_zero());
        assert_eq!(ns.parse("(1+lambda)^2").unwrap(), ns.parse("1 + 2*lambda").unwrap());
    }
}
