//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "[]" unary | "<>" unary | "(" formula ")"
//!          | "true" | "false" | atom
//! atom    := [a-z][A-Za-z0-9_]*
//! ```

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: found {}, expected one of: {}",
            self.position,
            self.found,
            self.expected.join(" ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Not,
    Box,
    Diamond,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    True,
    False,
    Ident(&'a str),
    Invalid(char),
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Not => f.write_str("`~`"),
            Tok::Box => f.write_str("`[]`"),
            Tok::Diamond => f.write_str("`<>`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::True => f.write_str("`true`"),
            Tok::False => f.write_str("`false`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Invalid(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const UNARY_START: &[&str] = &["~", "[]", "<>", "(", "true", "false", "atom"];

pub fn is_keyword(s: &str) -> bool {
    s == "true" || s == "false"
}

/// Atom names: a lowercase ASCII letter, then letters, digits or `_`.
pub fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !is_keyword(s)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Returns the next token, its start offset and its length.
    fn peek(&mut self) -> (Tok<'a>, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let fixed = [
            ("<->", Tok::Iff),
            ("->", Tok::Implies),
            ("<>", Tok::Diamond),
            ("[]", Tok::Box),
            ("~", Tok::Not),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
        ];
        for (text, tok) in fixed {
            if rest.starts_with(text) {
                return (tok, start, text.len());
            }
        }
        let Some(c) = rest.chars().next() else {
            return (Tok::End, start, 0);
        };
        if c.is_ascii_lowercase() {
            let len = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..len];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            };
            return (tok, start, len);
        }
        (Tok::Invalid(c), start, c.len_utf8())
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        let (tok, start, _) = self.peek();
        ParseError {
            position: start,
            found: tok.to_string(),
            expected: expected.to_vec(),
        }
    }

    fn eat(&mut self, want: Tok<'_>) -> bool {
        let (tok, _, len) = self.peek();
        if tok == want {
            self.pos += len;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(Tok::Implies) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let (tok, _, len) = self.peek();
        match tok {
            Tok::Not | Tok::Box | Tok::Diamond => {
                self.pos += len;
                let inner = self.unary()?;
                Ok(match tok {
                    Tok::Not => Formula::not(inner),
                    Tok::Box => Formula::nec(inner),
                    _ => Formula::pos(inner),
                })
            }
            Tok::LParen => {
                self.pos += len;
                let inner = self.formula()?;
                if !self.eat(Tok::RParen) {
                    return Err(self.error(&["&", "|", "->", "<->", ")"]));
                }
                Ok(inner)
            }
            Tok::True => {
                self.pos += len;
                Ok(Formula::Top)
            }
            Tok::False => {
                self.pos += len;
                Ok(Formula::Bottom)
            }
            Tok::Ident(name) => {
                self.pos += len;
                Ok(Formula::atom(name))
            }
            _ => Err(self.error(UNARY_START)),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let f = p.formula()?;
    if p.peek().0 != Tok::End {
        return Err(p.error(&["&", "|", "->", "<->", "end of input"]));
    }
    Ok(f)
}
