//! A small expression language for writing `g(x)` and `f(x)`.
//!
//! ```text
//! expr     := term (('+'|'-') term)* ;
//! term     := factor (('*'|'/') factor)* ;
//! factor   := '-' factor | atom ('^' nat)? ;
//! atom     := rational | 'x' | '(' expr ')' | 'sqrt' '(' expr ')' | ident '(' expr ')' ;
//! ident    := 'c' | 'M' | 'S' ;
//! rational := int ('/' posint)? ;
//! ```
//!
//! `c`, `M` and `S` are the Catalan, Motzkin and large Schröder generating
//! functions. Their argument may be any series with zero constant term.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{format_rational, ratio, Rational};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `c(x) = (1 - sqrt(1 - 4x)) / (2x)`
    Catalan,
    /// `M(x) = (1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2)`
    Motzkin,
    /// `S(x) = (1 - x - sqrt(1 - 6x + x^2)) / (2x)`
    Schroder,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Catalan => "c",
            Builtin::Motzkin => "M",
            Builtin::Schroder => "S",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "c" => Some(Builtin::Catalan),
            "M" => Some(Builtin::Motzkin),
            "S" => Some(Builtin::Schroder),
            _ => None,
        }
    }

    /// Expansion of the generating function itself to `order`.
    pub fn series(self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        // (linear, quadratic) coefficients of the radicand, and the power of x in the denominator.
        let (radicand, shift) = match self {
            Builtin::Catalan => ([1, -4, 0], 1),
            Builtin::Motzkin => ([1, -2, -3], 2),
            Builtin::Schroder => ([1, -6, 1], 1),
        };
        let work = order + shift;
        let root = TruncatedSeries::from_ints(&radicand, work).sqrt()?;
        let lead = match self {
            Builtin::Catalan => TruncatedSeries::one(work),
            Builtin::Motzkin | Builtin::Schroder => TruncatedSeries::from_ints(&[1, -1], work),
        };
        let numerator = &lead - &root;
        Ok(numerator.div_x_power(shift)?.scale(&ratio(1, 2)).truncate(order))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(Rational),
    X,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Sqrt(Box<Expr>),
    Call(Builtin, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("ascii digits"))));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    position: start,
                    expected: "a number, 'x', a function call, an operator or a parenthesis".into(),
                    found: format!("character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (position, tok) = &self.toks[self.pos];
        ParseError { position: *position, expected: expected.to_string(), found: tok.to_string() }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = match self.peek() {
                Tok::Int(n) => u32::try_from(n.clone()).ok(),
                _ => None,
            };
            match exp {
                Some(e) => {
                    self.bump();
                    Ok(Expr::Pow(Box::new(base), e))
                }
                None => Err(self.error("a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                // `p/q` is a single literal only when q is a positive integer.
                if *self.peek() == Tok::Slash {
                    if let Tok::Int(d) = self.peek_at(1) {
                        if !d.is_zero() {
                            let d = d.clone();
                            self.bump();
                            self.bump();
                            return Ok(Expr::Literal(Rational::new(n, d)));
                        }
                    }
                }
                Ok(Expr::Literal(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                if name == "x" {
                    self.bump();
                    return Ok(Expr::X);
                }
                let builtin = Builtin::from_name(&name);
                if name != "sqrt" && builtin.is_none() {
                    return Err(self.error("'x', 'sqrt', 'c', 'M' or 'S'"));
                }
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(match builtin {
                    Some(b) => Expr::Call(b, Box::new(arg)),
                    None => Expr::Sqrt(Box::new(arg)),
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("an expression")),
        }
    }
}

/// Parses an expression in `x`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

impl Expr {
    /// Expands the expression as a power series to `order`.
    pub fn eval(&self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        Ok(match self {
            Expr::Literal(q) => TruncatedSeries::constant(q.clone(), order),
            Expr::X => TruncatedSeries::x(order),
            Expr::Add(a, b) => a.eval(order)?.add(&b.eval(order)?),
            Expr::Sub(a, b) => a.eval(order)?.sub(&b.eval(order)?),
            Expr::Mul(a, b) => a.eval(order)?.mul(&b.eval(order)?),
            Expr::Div(a, b) => a.eval(order)?.div(&b.eval(order)?)?,
            Expr::Pow(a, e) => a.eval(order)?.pow(*e),
            Expr::Neg(a) => a.eval(order)?.neg(),
            Expr::Sqrt(a) => a.eval(order)?.sqrt()?,
            Expr::Call(b, arg) => {
                let inner = arg.eval(order)?;
                if !inner.coeff(0).is_zero() {
                    return Err(SeriesError::CompositionNonComposable(format_rational(&inner.coeff(0))));
                }
                b.series(inner.order())?.compose(&inner)?
            }
        })
    }
}

/// Parses and expands in one step.
pub fn eval_str(text: &str, order: usize) -> Result<TruncatedSeries, crate::Error> {
    Ok(parse(text)?.eval(order)?)
}

fn write_literal(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q < &Rational::zero() {
        write!(f, "(-{})", format_rational(&-q))
    } else {
        write!(f, "({})", format_rational(q))
    }
}

/// Fully parenthesized rendering; `parse(e.to_string()) == e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(q) => write_literal(f, q),
            Expr::X => f.write_str("x"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Call(b, a) => write!(f, "{}({a})", b.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn lit(n: i64) -> Box<Expr> {
        Box::new(Expr::Literal(int(n)))
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("1/(1-x)").unwrap(),
            Expr::Div(lit(1), Box::new(Expr::Sub(lit(1), Box::new(Expr::X))))
        );
        assert!(parse("x*(1-2*x)/(1+x+x^2)").is_ok());
        let err = parse("sqrt(").unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-x^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::X), 2))));
        assert_eq!(
            parse("1-x-x").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(lit(1), Box::new(Expr::X))), Box::new(Expr::X))
        );
        assert_eq!(parse("1/2").unwrap(), Expr::Literal(ratio(1, 2)));
        assert_eq!(parse(" 1 / 2 * x ").unwrap(), Expr::Mul(Box::new(Expr::Literal(ratio(1, 2))), Box::new(Expr::X)));
        assert_eq!(parse("x/2").unwrap(), Expr::Div(Box::new(Expr::X), lit(2)));
        assert_eq!(parse("1/0").unwrap(), Expr::Div(lit(1), lit(0)));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("").unwrap_err().position, 0);
        assert_eq!(parse("x^y").unwrap_err().position, 2);
        assert_eq!(parse("foo(x)").unwrap_err().position, 0);
        assert_eq!(parse("(1+x").unwrap_err().position, 4);
        assert_eq!(parse("1 $ 2").unwrap_err().position, 2);
        assert_eq!(parse("x x").unwrap_err().position, 2);
        assert_eq!(parse("c x").unwrap_err().expected, "'('");
    }

    #[test]
    fn builtins() {
        assert_eq!(ints(&eval_str("c(x)", 5).unwrap()), [1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&eval_str("M(x)", 5).unwrap()), [1, 1, 2, 4, 9, 21]);
        assert_eq!(ints(&eval_str("S(x)", 5).unwrap()), [1, 2, 6, 22, 90, 394]);
    }

    #[test]
    fn builtin_functional_equations() {
        let n = 20;
        let x = TruncatedSeries::x(n);
        let one = TruncatedSeries::one(n);
        let c = eval_str("c(x)", n).unwrap();
        assert_eq!(c, &one + &(&x * &c.square()));
        let m = eval_str("M(x)", n).unwrap();
        assert_eq!(m, &(&one + &(&x * &m)) + &(&x.square() * &m.square()));
        let s = eval_str("S(x)", n).unwrap();
        let lhs = &(&(&x * &s.square()) + &(&(&x - &one) * &s)) + &one;
        assert!(lhs.is_zero());
    }

    #[test]
    fn builtin_argument_must_be_composable() {
        assert!(matches!(eval_str("c(1+x)", 6), Err(crate::Error::Series(SeriesError::CompositionNonComposable(_)))));
        let composed = eval_str("c(x*(1+x))", 6).unwrap();
        assert_eq!(composed.order(), 6);
        let direct = Builtin::Catalan.series(6).unwrap().compose(&eval_str("x+x^2", 6).unwrap()).unwrap();
        assert_eq!(composed, direct);
    }

    #[test]
    fn eval_propagates_errors() {
        assert!(matches!(eval_str("1/x", 4), Err(crate::Error::Series(SeriesError::DivisionByNonUnit { .. }))));
        assert!(matches!(eval_str("sqrt(2+x)", 4), Err(crate::Error::Series(SeriesError::NoRationalSqrt(_)))));
        assert!(matches!(eval_str("x^", 4), Err(crate::Error::Parse(_))));
    }

    #[test]
    fn eval_order_zero() {
        assert_eq!(ints(&eval_str("1/(1-x) + c(x)", 0).unwrap()), [2]);
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Literal(ratio(n, d))),
            Just(Expr::X),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner.clone(), 0u32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                inner.clone().prop_map(|a| Expr::Sqrt(Box::new(a))),
                (inner, prop_oneof![Just(Builtin::Catalan), Just(Builtin::Motzkin), Just(Builtin::Schroder)])
                    .prop_map(|(a, b)| Expr::Call(b, Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e);
        }
    }
}
