//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ('^' uint)*
//! atom     := rational | var | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! Positions in errors are character offsets into the input.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AlgebraError, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
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
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("name `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn syntax(position: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
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
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
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

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                acc = acc * self.factor()?;
            } else if self.starts_factor() {
                acc = acc * self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| syntax(at, "exponent out of range"))?;
                    base = base.pow(k);
                }
                Some(t) => {
                    return Err(syntax(
                        at,
                        format!("expected exponent, found {}", describe(&t)),
                    ))
                }
                None => return Err(syntax(at, "expected exponent, found end of input")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut value = Rational::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return Err(syntax(dat, "zero denominator")),
                        _ => return Err(syntax(dat, "expected positive integer denominator")),
                    }
                }
                Ok(MultiPoly::constant(self.vars, value))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(_) => MultiPoly::var(self.vars, &name),
                None => Err(AlgebraError::UnknownVariable { name, position: at }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected `)`")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected {}", describe(&t)))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` over the ordered variable list `vars`.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<MultiPoly, AlgebraError> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
        vars: &vars,
    };
    let poly = parser.expr()?;
    if let Some(t) = parser.peek().cloned() {
        return Err(syntax(
            parser.offset(),
            format!("unexpected {}", describe(&t)),
        ));
    }
    Ok(poly)
}
