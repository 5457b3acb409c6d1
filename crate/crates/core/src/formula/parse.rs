//! Recursive-descent parser.
//!
//! Precedence, tightest first: `!`, `*`, `(+)`, `&`, `|`, `->`. Implication
//! associates to the right, every other binary connective to the left. The
//! Unicode symbols `¬ ⋆ ⊙ ⊕ ∧ ∨ →` are accepted as synonyms.

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input where parsing failed.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        match &self.found {
            Some(tok) => write!(f, ", found `{tok}`"),
            None => write!(f, ", found end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Zero,
    One,
    Not,
    Star,
    OPlus,
    And,
    Or,
    Impl,
    LParen,
    RParen,
}

const ATOM_START: &[&str] = &["variable", "`0`", "`1`", "`!`", "`(`"];

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token with its start offset; `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok, usize)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let fixed: &[(&str, Tok)] = &[
            ("(+)", Tok::OPlus),
            ("->", Tok::Impl),
            ("!", Tok::Not),
            ("*", Tok::Star),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("¬", Tok::Not),
            ("⋆", Tok::Star),
            ("⊙", Tok::Star),
            ("⊕", Tok::OPlus),
            ("∧", Tok::And),
            ("∨", Tok::Or),
            ("→", Tok::Impl),
        ];
        for (lit, tok) in fixed {
            if rest.starts_with(lit) {
                self.pos += lit.len();
                return Ok(Some((start, tok.clone(), self.pos)));
            }
        }
        if c == 'x' {
            let digits: String = rest[1..].chars().take_while(|d| d.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(ParseError {
                    offset: start + 1,
                    expected: vec!["variable index"],
                    found: rest[1..].chars().next().map(String::from),
                });
            }
            let index = digits.parse().map_err(|_| ParseError {
                offset: start + 1,
                expected: vec!["variable index that fits in a machine word"],
                found: Some(digits.clone()),
            })?;
            self.pos += 1 + digits.len();
            return Ok(Some((start, Tok::Var(index), self.pos)));
        }
        if c == '0' || c == '1' {
            self.pos += 1;
            let tok = if c == '0' { Tok::Zero } else { Tok::One };
            return Ok(Some((start, tok, self.pos)));
        }
        Err(ParseError {
            offset: start,
            expected: vec!["variable", "constant", "connective", "parenthesis"],
            found: Some(c.to_string()),
        })
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok, usize)>,
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        match self.toks.get(self.i) {
            Some((s, _, e)) => ParseError {
                offset: *s,
                expected: expected.to_vec(),
                found: Some(self.src[*s..*e].to_string()),
            },
            None => ParseError { offset: self.src.len(), expected: expected.to_vec(), found: None },
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Impl) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        tok: Tok,
        next: fn(&mut Self) -> Result<Formula, ParseError>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, ParseError> {
        let mut lhs = next(self)?;
        while self.eat(&tok) {
            let rhs = next(self)?;
            lhs = build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(Tok::Or, Self::conjunction, Formula::or)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(Tok::And, Self::sum, Formula::and)
    }

    fn sum(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(Tok::OPlus, Self::product, Formula::oplus)
    }

    fn product(&mut self) -> Result<Formula, ParseError> {
        self.left_assoc(Tok::Star, Self::unary, Formula::star)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::neg(self.unary()?));
        }
        let f = match self.peek() {
            Some(Tok::Var(i)) => Formula::var(*i),
            Some(Tok::Zero) => Formula::zero(),
            Some(Tok::One) => Formula::one(),
            Some(Tok::LParen) => {
                self.i += 1;
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(&["`)`", "binary connective"]));
                }
                return Ok(inner);
            }
            _ => return Err(self.error(ATOM_START)),
        };
        self.i += 1;
        Ok(f)
    }
}

/// Parses a formula in the ASCII (or Unicode) grammar.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let mut p = Parser { src: text, toks, i: 0 };
    let f = p.implication()?;
    if p.i < p.toks.len() {
        return Err(p.error(&["binary connective", "end of input"]));
    }
    Ok(f)
}
