//! The graph expression language:
//!
//! ```text
//! expr   := "corona" "(" expr "," expr ")"
//!         | family [ "(" [ int { "," int } ] ")" ]
//! family := path | cycle | complete | star | paw | petersen | k1
//! ```
//!
//! Whitespace is ignored between tokens.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{corona, generate, Family, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphExpr {
    Family { family: Family, args: Vec<usize> },
    Corona(Box<GraphExpr>, Box<GraphExpr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl GraphExpr {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphExpr::Family { family, args } => generate(*family, args),
            GraphExpr::Corona(g, h) => corona(&g.build()?, &h.build()?),
        }
    }

    /// The second factor's family and parameters, when this is a corona of a
    /// plain family.
    pub fn fiber_family(&self) -> Option<(Family, &[usize])> {
        match self {
            GraphExpr::Corona(_, h) => match h.as_ref() {
                GraphExpr::Family { family, args } => Some((*family, args)),
                GraphExpr::Corona(..) => None,
            },
            GraphExpr::Family { .. } => None,
        }
    }

    pub fn family(&self) -> Option<(Family, &[usize])> {
        match self {
            GraphExpr::Family { family, args } => Some((*family, args)),
            GraphExpr::Corona(..) => None,
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Family { family, args } if args.is_empty() => write!(f, "{family}"),
            GraphExpr::Family { family, args } => {
                write!(f, "{family}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            GraphExpr::Corona(g, h) => write!(f, "corona({g},{h})"),
        }
    }
}

/// Parses and builds a graph expression such as `corona(path(2),cycle(4))`.
pub fn parse_graph_expr(text: &str) -> Result<Graph, GraphError> {
    let expr = Parser::new(text).parse()?;
    expr.build()
}

impl std::str::FromStr for GraphExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<GraphExpr, ParseError> {
        let expr = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).is_some_and(u8::is_ascii_alphabetic) {
            return Err(self.error("expected a graph family or `corona`"));
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok((start, word))
    }

    fn integer(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| ParseError {
                position: start,
                message: "integer too large".into(),
            })
    }

    fn expr(&mut self) -> Result<GraphExpr, ParseError> {
        let (start, word) = self.ident()?;
        let word = word.to_ascii_lowercase();
        if word == "corona" {
            self.expect(b'(')?;
            let g = self.expr()?;
            self.expect(b',')?;
            let h = self.expr()?;
            self.expect(b')')?;
            return Ok(GraphExpr::Corona(Box::new(g), Box::new(h)));
        }
        let family: Family = word.parse().map_err(|_| ParseError {
            position: start,
            message: format!("unknown graph family `{word}`"),
        })?;
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                args.push(self.integer()?);
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    args.push(self.integer()?);
                }
            }
            self.expect(b')')?;
        }
        Ok(GraphExpr::Family { family, args })
    }
}
