//! Text form of polynomials.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nonneg-int)?
//! base     := rational | variable | '(' expr ')'
//! rational := int ('/' pos-int)?
//! variable := ('T'|'S') pos-int        (S0 allowed)
//! ```
//!
//! Whitespace is ignored. Parameter spaces additionally accept `U` variables.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{MultiPoly, VarSpace};
use super::rational::{format_rational, Rational};
use crate::error::{ParseError, ParseErrorKind};

pub fn parse_poly(text: &str, space: VarSpace) -> Result<MultiPoly, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, space, end: text.len() };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser
            .error_here(ParseErrorKind::Syntax(format!("unexpected {}", parser.tokens[parser.pos].tok.describe()))));
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(c, i) => format!("variable {c}{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    at: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let at = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, at });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Spanned { tok: Tok::Int(n), at });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i].is_ascii_alphabetic() || digits_start == i {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnknownVariable(text[start..i].to_string()),
                });
            }
            let idx: usize = text[digits_start..i].parse().map_err(|_| ParseError {
                position: start,
                kind: ParseErrorKind::UnknownVariable(text[start..i].to_string()),
            })?;
            out.push(Spanned { tok: Tok::Var(c, idx), at });
            continue;
        }
        return Err(ParseError { position: at, kind: ParseErrorKind::Syntax(format!("unexpected character {c:?}")) });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    space: VarSpace,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |s| s.at)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.here(), kind }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let negate_first = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    return Err(self.error_here(ParseErrorKind::DivisionByNonConstant));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error_here(ParseErrorKind::Syntax("exponent too large".into())))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.error_here(ParseErrorKind::Syntax("expected a nonnegative integer exponent".into()))),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<MultiPoly, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(self.error_here(ParseErrorKind::ZeroDenominator));
                            }
                            self.pos += 1;
                            Ok(MultiPoly::constant(self.space, Rational::new(n, d)))
                        }
                        Some(_) => Err(self.error_here(ParseErrorKind::DivisionByNonConstant)),
                        None => Err(self.error_here(ParseErrorKind::Syntax("expected a denominator".into()))),
                    }
                } else {
                    Ok(MultiPoly::constant(self.space, Rational::from_integer(n)))
                }
            }
            Some(Tok::Var(c, idx)) => {
                self.pos += 1;
                let allowed = matches!(c, 'T' | 'S')
                    || (c == 'U' && matches!(self.space, VarSpace::Param(_) | VarSpace::ParamAffine(_)));
                match self.space.resolve(c, idx).filter(|_| allowed) {
                    Some(i) => Ok(MultiPoly::var(self.space, i)),
                    None => {
                        Err(ParseError { position: at, kind: ParseErrorKind::UnknownVariable(format!("{c}{idx}")) })
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error_here(ParseErrorKind::Syntax("expected ')'".into())));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(self.error_here(ParseErrorKind::Syntax(format!("unexpected {}", t.describe())))),
            None => Err(self.error_here(ParseErrorKind::Syntax("unexpected end of input".into()))),
        }
    }
}

/// Graded-lex order from the leading term down, explicit `*`, no unary `+`.
pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let space = p.space();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.degree() == 0 {
            factors.push(format_rational(&abs));
        }
        for (v, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(space.var_name(v)),
                _ => factors.push(format!("{}^{}", space.var_name(v), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
