//! Recursive descent parser for the set DSL.
//!
//! ```text
//! expr  := union
//! union := diff { "|" diff }
//! diff  := inter { ("\" | "^") inter }
//! inter := atom { "&" atom }
//! atom  := "N" | "O" | "P" | "Q" | "comp" "(" expr ")" | "AP" "(" int "," int ")"
//!        | "{" int { "," int } "}" | "(" expr ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::{SetExpr, ValueError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// 1-based character offset of the offending token.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{0}")]
    Syntax(SyntaxError),
    #[error("invalid value at offset {offset}: {source}")]
    Value { offset: usize, source: ValueError },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax(e) => e.offset,
            ParseError::Value { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(Option<u64>),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(Some(v)) => write!(f, "`{v}`"),
            Tok::Int(None) => write!(f, "integer literal"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let offset = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((offset, Tok::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let mut value: Option<u64> = Some(0);
            while i < chars.len() && chars[i].is_ascii_digit() {
                let digit = u64::from(chars[i].to_digit(10).unwrap());
                value = value.and_then(|v| v.checked_mul(10)).and_then(|v| v.checked_add(digit));
                i += 1;
            }
            out.push((offset, Tok::Int(value)));
        } else if "|\\^&(),{}".contains(c) {
            out.push((offset, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax(SyntaxError {
                offset,
                expected: vec!["set expression token".into()],
                found: format!("`{c}`"),
            }));
        }
    }
    out.push((chars.len() + 1, Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["`N`", "`O`", "`P`", "`Q`", "`comp`", "`AP`", "`{`", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax(SyntaxError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ParseError> {
        let offset = self.offset();
        match self.peek() {
            Tok::Int(Some(v)) => {
                let v = *v;
                self.bump();
                Ok((offset, v))
            }
            Tok::Int(None) => Err(ParseError::Value {
                offset,
                source: ValueError::Overflow,
            }),
            _ => Err(self.error(&["integer"])),
        }
    }

    fn union(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.diff()?;
        while *self.peek() == Tok::Sym('|') {
            self.bump();
            lhs = lhs.union(self.diff()?);
        }
        Ok(lhs)
    }

    fn diff(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.inter()?;
        loop {
            match self.peek() {
                Tok::Sym('\\') => {
                    self.bump();
                    lhs = lhs.diff(self.inter()?);
                }
                Tok::Sym('^') => {
                    self.bump();
                    lhs = lhs.sym_diff(self.inter()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn inter(&mut self) -> Result<SetExpr, ParseError> {
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::Sym('&') {
            self.bump();
            lhs = lhs.intersect(self.atom()?);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => match name.as_str() {
                "N" => {
                    self.bump();
                    Ok(SetExpr::Universe)
                }
                "O" => {
                    self.bump();
                    Ok(SetExpr::Empty)
                }
                "P" => {
                    self.bump();
                    Ok(SetExpr::primes())
                }
                "Q" => {
                    self.bump();
                    Ok(SetExpr::squares())
                }
                "comp" => {
                    self.bump();
                    self.expect_sym('(')?;
                    let inner = self.union()?;
                    self.expect_sym(')')?;
                    Ok(inner.complement())
                }
                "AP" => {
                    let offset = self.offset();
                    self.bump();
                    self.expect_sym('(')?;
                    let (_, modulus) = self.int()?;
                    self.expect_sym(',')?;
                    let (_, residue) = self.int()?;
                    self.expect_sym(')')?;
                    SetExpr::ap(modulus, residue).map_err(|source| ParseError::Value { offset, source })
                }
                _ => Err(self.error(ATOM_START)),
            },
            Tok::Sym('{') => {
                let offset = self.offset();
                self.bump();
                let mut elems = vec![self.int()?.1];
                loop {
                    match self.peek() {
                        Tok::Sym(',') => {
                            self.bump();
                            elems.push(self.int()?.1);
                        }
                        Tok::Sym('}') => {
                            self.bump();
                            break;
                        }
                        _ => return Err(self.error(&["`,`", "`}`"])),
                    }
                }
                SetExpr::finite(elems).map_err(|source| ParseError::Value { offset, source })
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.union()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parses DSL text into a [`SetExpr`].
pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let expr = p.union()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`|`", "`\\`", "`^`", "`&`", "end of input"]));
    }
    Ok(expr)
}
