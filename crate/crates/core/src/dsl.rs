//! Recursive-descent parser for the ring-spec language.
//!
//! ```text
//! ring := "Z" INT | "M(" INT "," ring ")" | "prod(" ring ("," ring)* ")"
//!       | "corner(" ring "," elem ")" | "quot(" ring "," elem ("," elem)* ")"
//!       | "center(" ring ")"
//! elem := INT | "[" row (";" row)* "]" | "(" elem ("," elem)* ")"
//! row  := elem ("," elem)*
//! ```
//!
//! Whitespace is ignored between tokens. Family templates used by the
//! scanner may put a variable name wherever an `INT` is expected, so
//! `M(n,Zm)` instantiates with `n` and `m` bound.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::spec::{ElementLiteral, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let vars = BTreeMap::new();
    let mut p = Parser::new(text, &vars);
    let spec = p.ring()?;
    p.finish()?;
    Ok(spec)
}

pub fn parse_element(text: &str) -> Result<ElementLiteral, ParseError> {
    let vars = BTreeMap::new();
    let mut p = Parser::new(text, &vars);
    let elem = p.elem()?;
    p.finish()?;
    Ok(elem)
}

/// Parses a family template, substituting bound variables.
pub fn parse_ring_template(
    text: &str,
    vars: &BTreeMap<String, u64>,
) -> Result<RingSpec, ParseError> {
    let mut p = Parser::new(text, vars);
    let spec = p.ring()?;
    p.finish()?;
    Ok(spec)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a BTreeMap<String, u64>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a BTreeMap<String, u64>) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            vars,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error_at(self.pos, format!("expected `{c}`, found `{got}`"))),
            None => Err(self.error_at(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected trailing `{c}`"))),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphabetic() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> Result<Option<u64>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<u64>()
            .map(Some)
            .map_err(|_| self.error_at(start, format!("integer `{text}` is out of range")))
    }

    fn variable(&self, name: &str, at: usize) -> Result<u64, ParseError> {
        self.vars
            .get(name)
            .copied()
            .ok_or_else(|| self.error_at(at, format!("unknown identifier `{name}`")))
    }

    /// An integer literal or a bound template variable.
    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let at = self.pos;
        if let Some(v) = self.digits()? {
            return Ok(v);
        }
        let name = self.word();
        if name.is_empty() {
            let found = self
                .chars
                .get(at)
                .map(|c| format!("`{c}`"))
                .unwrap_or_else(|| "end of input".into());
            return Err(self.error_at(at, format!("expected an integer, found {found}")));
        }
        self.variable(&name, at)
    }

    fn ring(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let word = self.word();
        match word.as_str() {
            "Z" => Ok(RingSpec::Zm(self.int()?)),
            w if w.len() > 1 && w.starts_with('Z') && self.vars.contains_key(&w[1..]) => {
                Ok(RingSpec::Zm(self.variable(&w[1..], at + 1)?))
            }
            "M" => {
                self.expect('(')?;
                let n = self.int()?;
                self.expect(',')?;
                let base = self.ring()?;
                self.expect(')')?;
                let n = usize::try_from(n)
                    .map_err(|_| self.error_at(at, "matrix dimension out of range"))?;
                Ok(RingSpec::matrix(n, base))
            }
            "prod" => {
                self.expect('(')?;
                let mut parts = vec![self.ring()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.ring()?);
                }
                self.expect(')')?;
                Ok(RingSpec::Product(parts))
            }
            "corner" => {
                self.expect('(')?;
                let base = self.ring()?;
                self.expect(',')?;
                let e = self.elem()?;
                self.expect(')')?;
                Ok(RingSpec::corner(base, e))
            }
            "quot" => {
                self.expect('(')?;
                let base = self.ring()?;
                self.expect(',')?;
                let mut gens = vec![self.elem()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    gens.push(self.elem()?);
                }
                self.expect(')')?;
                Ok(RingSpec::quotient(base, gens))
            }
            "center" => {
                self.expect('(')?;
                let base = self.ring()?;
                self.expect(')')?;
                Ok(RingSpec::center(base))
            }
            "" => {
                let found = self
                    .chars
                    .get(at)
                    .map(|c| format!("`{c}`"))
                    .unwrap_or_else(|| "end of input".into());
                Err(self.error_at(at, format!("expected a ring, found {found}")))
            }
            other => Err(self.error_at(at, format!("unknown ring construct `{other}`"))),
        }
    }

    fn elem(&mut self) -> Result<ElementLiteral, ParseError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut rows = vec![self.row()?];
                while self.peek() == Some(';') {
                    self.pos += 1;
                    rows.push(self.row()?);
                }
                self.expect(']')?;
                Ok(ElementLiteral::Matrix(rows))
            }
            Some('(') => {
                self.pos += 1;
                let mut parts = vec![self.elem()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    parts.push(self.elem()?);
                }
                self.expect(')')?;
                Ok(ElementLiteral::Tuple(parts))
            }
            _ => Ok(ElementLiteral::Int(self.int()?)),
        }
    }

    fn row(&mut self) -> Result<Vec<ElementLiteral>, ParseError> {
        let mut row = vec![self.elem()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            row.push(self.elem()?);
        }
        Ok(row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrix_over_zm() {
        assert_eq!(
            parse_ring_spec("M(2,Z4)").unwrap(),
            RingSpec::matrix(2, RingSpec::Zm(4))
        );
    }

    #[test]
    fn parses_product() {
        assert_eq!(
            parse_ring_spec("prod(M(1,Z2),M(2,Z2))").unwrap(),
            RingSpec::Product(vec![
                RingSpec::matrix(1, RingSpec::Zm(2)),
                RingSpec::matrix(2, RingSpec::Zm(2)),
            ])
        );
    }

    #[test]
    fn parses_corner() {
        let spec = parse_ring_spec("corner(M(2,Z2),[1,0;0,0])").unwrap();
        let e = ElementLiteral::Matrix(vec![
            vec![ElementLiteral::Int(1), ElementLiteral::Int(0)],
            vec![ElementLiteral::Int(0), ElementLiteral::Int(0)],
        ]);
        assert_eq!(spec, RingSpec::corner(RingSpec::matrix(2, RingSpec::Zm(2)), e));
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse_ring_spec(" quot ( Z 4 , 2 ) ").unwrap();
        assert_eq!(a, parse_ring_spec("quot(Z4,2)").unwrap());
        assert_eq!(a.to_string(), "quot(Z4,2)");
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "Z6",
            "M(3,Z2)",
            "prod(Z2,Z4)",
            "corner(prod(Z2,Z4),(1,0))",
            "quot(M(2,Z4),[2,0;0,0],[0,2;0,0])",
            "center(M(2,Z4))",
        ] {
            assert_eq!(parse_ring_spec(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_ring_spec("M(2,\n  Q4)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(err.message.contains("unknown ring construct"));

        let err = parse_ring_spec("M(2,Z4").unwrap_err();
        assert_eq!((err.line, err.column), (1, 7));

        let err = parse_ring_spec("Z4 Z5").unwrap_err();
        assert!(err.message.contains("trailing"));
    }

    #[test]
    fn templates_bind_variables() {
        let mut vars = BTreeMap::new();
        vars.insert("n".to_string(), 3);
        vars.insert("m".to_string(), 4);
        assert_eq!(
            parse_ring_template("M(n,Zm)", &vars).unwrap(),
            RingSpec::matrix(3, RingSpec::Zm(4))
        );
        assert_eq!(
            parse_ring_template("Z m", &vars).unwrap(),
            RingSpec::Zm(4)
        );
        assert!(parse_ring_template("M(k,Z2)", &vars).is_err());
    }

    #[test]
    fn nested_element_literals() {
        let e = parse_element("((1,2),[1,0;0,1])").unwrap();
        assert_eq!(e.to_string(), "((1,2),[1,0;0,1])");
    }
}
