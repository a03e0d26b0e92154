//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!   Expr   := ['-'] Term (('+'|'-') Term)*
//!   Term   := Factor ('*' Factor)*
//!   Factor := Base ('^' UInt)?
//!   Base   := Rational | Identifier | '(' Expr ')'
//!   Rational := UInt ('/' UInt)?
//!
//! Implicit multiplication is not allowed; precedence ^ > * > binary
//! plus/minus; unary minus binds to a whole Term.

use std::fmt;

use harrison::poly::Polynomial;
use harrison::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character offset of the offending token (input length + 1
    /// at end of input).
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(s) => format!("number {s:?}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

/// Tokens with their 1-based start offsets, plus the end-of-input offset.
fn tokenize(text: &str) -> Result<(Vec<(Tok, usize)>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let start = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '0'..='9' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    i += 1;
                }
                toks.push((Tok::Number(s), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    s.push(chars[i]);
                    i += 1;
                }
                toks.push((Tok::Ident(s), start));
            }
            other => {
                return Err(ParseError {
                    offset: start,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok((toks, chars.len() + 1))
}

/// Canonical variable order: shorter names first, then lexicographic, so
/// `x2` precedes `x10`.
pub fn canonical_variable_order(a: &str, b: &str) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    eof_offset: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.eof_offset, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expect_uint(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                let v = s
                    .parse::<u32>()
                    .map_err(|_| self.err("exponent out of range"))?;
                self.bump();
                Ok(v)
            }
            other => Err(self.err(match other {
                Some(t) => format!("expected unsigned integer, found {}", t.describe()),
                None => "expected unsigned integer, found end of input".to_string(),
            })),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = self.expect_uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Number(num)) => {
                self.bump();
                let mut den = String::from("1");
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    match self.peek() {
                        Some(Tok::Number(s)) => {
                            if s.chars().all(|c| c == '0') {
                                return Err(self.err("zero denominator"));
                            }
                            den = s.clone();
                            self.bump();
                        }
                        _ => return Err(self.err("expected denominator after '/'")),
                    }
                }
                let n: num_bigint::BigInt = num.parse().expect("digits");
                let d: num_bigint::BigInt = den.parse().expect("digits");
                Ok(Polynomial::constant(nvars, Rational::new(n, d)))
            }
            Some(Tok::Ident(name)) => {
                // the variable table always contains every identifier when
                // it was collected from this input; a miss means the caller
                // supplied a declared list
                let Some(i) = self.vars.iter().position(|v| v == &name) else {
                    return Err(self.err(format!("undeclared variable {name:?}")));
                };
                self.bump();
                Ok(Polynomial::var(nvars, i))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if matches!(self.peek(), Some(Tok::RParen)) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.err("expected ')'"))
                }
            }
            Some(t) => Err(self.err(format!(
                "expected number, variable, or '(', found {}",
                t.describe()
            ))),
            None => Err(self.err("expected number, variable, or '(', found end of input")),
        }
    }
}

/// Parse an expression into a polynomial, returning the variable table in
/// canonical order. When `declared` is supplied, identifiers outside it
/// are rejected; otherwise variables are collected from the input and
/// sorted canonically.
pub fn parse_polynomial(
    text: &str,
    declared: Option<&[String]>,
) -> Result<(Polynomial, Vec<String>), ParseError> {
    let (toks, eof_offset) = tokenize(text)?;
    let vars: Vec<String> = match declared {
        Some(list) => list.to_vec(),
        None => {
            let mut names: Vec<String> = Vec::new();
            for (t, _) in &toks {
                if let Tok::Ident(name) = t {
                    if !names.contains(name) {
                        names.push(name.clone());
                    }
                }
            }
            names.sort_by(|a, b| canonical_variable_order(a, b));
            names
        }
    };
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        eof_offset,
        vars: &vars,
    };
    let poly = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(parser.err(format!(
            "unexpected {}",
            toks[parser.pos].0.describe()
        )));
    }
    Ok((poly, vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use harrison::rat;

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, None).unwrap().0
    }

    #[test]
    fn basic_forms() {
        let cubic = Polynomial::var(2, 0)
            .pow(3)
            .add(&Polynomial::var(2, 1).pow(3))
            .unwrap();
        assert_eq!(p("x1^3 + x2^3"), cubic);
        let expanded = Polynomial::var(2, 0)
            .add(&Polynomial::var(2, 1).scale(&rat(2)))
            .unwrap()
            .pow(3);
        assert_eq!(p("(x1 + 2*x2)^3"), expanded);
    }

    #[test]
    fn precedence_and_unary_minus() {
        // -x1*x2 + x1: unary minus takes the whole first term
        let expect = Polynomial::var(2, 0)
            .sub(&Polynomial::var(2, 0).mul(&Polynomial::var(2, 1)).unwrap())
            .unwrap();
        assert_eq!(p("-x1*x2 + x1"), expect);
        // caret binds tighter than star
        assert_eq!(p("2*x1^2"), Polynomial::var(1, 0).pow(2).scale(&rat(2)));
    }

    #[test]
    fn rationals() {
        assert_eq!(
            p("1/2*x1"),
            Polynomial::var(1, 0).scale(&Rational::new(1.into(), 2.into()))
        );
        assert_eq!(p("3/6"), Polynomial::constant(0, Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn error_offsets() {
        let e = parse_polynomial("x1^", None).unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_polynomial("(x1+x2", None).unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse_polynomial("x1 + * x2", None).unwrap_err();
        assert_eq!(e.offset, 6);
        // implicit multiplication rejected
        let e = parse_polynomial("2 x1", None).unwrap_err();
        assert_eq!(e.offset, 3);
    }

    #[test]
    fn canonical_variable_sorting() {
        let (_, vars) = parse_polynomial("x10^3 + x2^3 + x1^3", None).unwrap();
        assert_eq!(vars, vec!["x1", "x2", "x10"]);
    }

    #[test]
    fn declared_variables() {
        let declared: Vec<String> = vec!["x1".into(), "x2".into(), "x3".into()];
        let (poly, vars) = parse_polynomial("x2^3", Some(&declared)).unwrap();
        assert_eq!(vars, declared);
        assert_eq!(poly, Polynomial::var(3, 1).pow(3));
        assert!(parse_polynomial("y^3", Some(&declared)).is_err());
    }
}
