//! Tokenizer and parser for ring-element expressions.
//!
//! ```text
//! element := ['-'] term (('+' | '-') term)*
//! term    := integer ['*' factor ('*' factor)*] | factor ('*' factor)*
//! factor  := generator ['^' positive-integer]
//! ```
//!
//! Generators are identifiers: a run of ASCII letters followed by an
//! optional run of digits (`vb`, `U`, `y3`, `yb12`). Whitespace is ignored.
//! The parser is ring-agnostic; each ring resolves generator names itself.

use num_bigint::BigInt;

use crate::error::RingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub exp: u32,
    /// Byte offset of the generator in the input.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, RingError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i]
                    .parse()
                    .map_err(|_| RingError::parse(start, "malformed integer"))?;
                out.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(RingError::parse(i, format!("unexpected character '{ch}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn element(&mut self) -> Result<Vec<Term>, RingError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            negate = true;
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.next() {
                None => return Ok(terms),
                Some((_, Tok::Plus)) => negate = false,
                Some((_, Tok::Minus)) => negate = true,
                Some((o, _)) => return Err(RingError::parse(o, "expected '+' or '-'")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, RingError> {
        let mut coeff = BigInt::from(1);
        let mut factors = Vec::new();
        if let Some(Tok::Int(_)) = self.peek() {
            if let Some((_, Tok::Int(n))) = self.next() {
                coeff = n;
            }
            if self.peek() != Some(&Tok::Star) {
                return Ok(Term { coeff, factors });
            }
            self.next();
        }
        loop {
            factors.push(self.factor()?);
            if self.peek() == Some(&Tok::Star) {
                self.next();
            } else {
                return Ok(Term { coeff, factors });
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, RingError> {
        let at = self.offset();
        let name = match self.next() {
            Some((_, Tok::Ident(name))) => name,
            Some((o, _)) => return Err(RingError::parse(o, "expected a generator")),
            None => return Err(RingError::parse(at, "unexpected end of input")),
        };
        let mut exp = 1;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let eo = self.offset();
            match self.next() {
                Some((o, Tok::Int(n))) => {
                    exp = u32::try_from(&n)
                        .ok()
                        .filter(|&e| e > 0)
                        .ok_or_else(|| RingError::parse(o, "exponent must be a positive integer"))?;
                }
                _ => return Err(RingError::parse(eo, "expected an exponent")),
            }
        }
        Ok(Factor {
            name,
            exp,
            position: at,
        })
    }
}

/// Parses an expression into its terms without interpreting generators.
pub fn parse_terms(input: &str) -> Result<Vec<Term>, RingError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(RingError::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    p.element()
}

/// Splits an identifier such as `yb12` into its letter prefix and numeric
/// suffix.
pub fn split_indexed(name: &str) -> (&str, Option<u32>) {
    let cut = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (head, tail) = name.split_at(cut);
    if tail.is_empty() {
        (head, None)
    } else {
        (head, tail.parse().ok())
    }
}
