//! Parser for field scalars: rational-coefficient polynomial expressions in
//! `q`, plus `inf` for the infinite band parameter.
//!
//! Grammar: sums/differences of products of factors, where a factor is a
//! rational number, `q` with an optional integer exponent, or a
//! parenthesized subexpression. Everything the canonical printer emits
//! parses back to the same value.

use greenring::exactfield::{ExtScalar, FieldCtx, FieldElem};
use greenring::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

pub struct ScalarParser<'a> {
    input: &'a str,
    pos: usize,
    ctx: &'a FieldCtx,
}

impl<'a> ScalarParser<'a> {
    pub fn new(input: &'a str, ctx: &'a FieldCtx) -> Self {
        ScalarParser { input, pos: 0, ctx }
    }

    fn err(&self, message: impl Into<String>) -> ScalarParseError {
        ScalarParseError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn parse_ext(&mut self) -> Result<ExtScalar, ScalarParseError> {
        self.skip_ws();
        if self.input[self.pos..].starts_with("inf") {
            self.pos += 3;
            return Ok(ExtScalar::Infinity);
        }
        Ok(ExtScalar::Fin(self.parse_sum()?))
    }

    pub fn parse_sum(&mut self) -> Result<FieldElem, ScalarParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            let _ = self.eat('+');
        }
        let mut acc = self.parse_product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            let neg = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            let term = self.parse_product()?;
            acc = if neg { acc.sub(&term) } else { acc.add(&term) };
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<FieldElem, ScalarParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.eat('*') {
                let rhs = self.parse_factor()?;
                acc = self.ctx.mul(&acc, &rhs);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<FieldElem, ScalarParseError> {
        self.skip_ws();
        if self.eat('-') {
            return Ok(self.parse_factor()?.neg());
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('q') => {
                self.pos += 1;
                let e = if self.eat('^') { self.parse_int()? } else { 1 };
                Ok(self.ctx.pow_q(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.parse_rational()?;
                Ok(self.ctx.from_rat(r))
            }
            _ => Err(self.err("expected a scalar factor")),
        }
    }

    pub fn parse_int(&mut self) -> Result<i64, ScalarParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('-') || self.eat('+') {}
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| ScalarParseError { offset: start, message: "expected an integer".into() })
    }

    fn parse_rational(&mut self) -> Result<Rat, ScalarParseError> {
        let num = self.parse_int()?;
        if self.eat('/') {
            let start = self.pos;
            let den = self.parse_int()?;
            if den == 0 {
                return Err(ScalarParseError { offset: start, message: "zero denominator".into() });
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_int(num))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.input.len()
    }

    pub fn pos(&self) -> usize {
        self.pos
    }
}

/// Parses a complete scalar string.
pub fn parse_scalar(input: &str, ctx: &FieldCtx) -> Result<ExtScalar, ScalarParseError> {
    let mut p = ScalarParser::new(input, ctx);
    let v = p.parse_ext()?;
    if !p.at_end() {
        return Err(ScalarParseError { offset: p.pos(), message: "trailing input".into() });
    }
    Ok(v)
}
