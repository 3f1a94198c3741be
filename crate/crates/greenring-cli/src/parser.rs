//! The label-expression grammar:
//!
//! ```text
//! expr    := term (("(x)" | "⊗") term)*
//! term    := label | label "^*" | "(" expr ")"
//! label   := "V(" int "," int ")" | "P(" int "," int ")"
//!          | "Om(" int ")V(" int "," int ")"
//!          | "M(" int "," int "," int ";" scalar ")"
//! scalar  := "inf" | rational-polynomial in q
//! ```

use crate::scalar::ScalarParser;
use greenring::algebra::HopfContext;
use greenring::decompose::ModuleLabel;
use greenring::exactfield::ExtScalar;
use std::fmt;

/// Abstract syntax for a module expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelExpr {
    Label(ModuleLabel),
    Tensor(Box<LabelExpr>, Box<LabelExpr>),
    Dual(Box<LabelExpr>),
}

impl LabelExpr {
    /// Canonical text: labels printed canonically, `(x)` for the tensor.
    pub fn print(&self) -> String {
        match self {
            LabelExpr::Label(l) => l.to_string(),
            LabelExpr::Dual(e) => match **e {
                LabelExpr::Label(_) => format!("{}^*", e.print()),
                _ => format!("({})^*", e.print()),
            },
            LabelExpr::Tensor(a, b) => {
                let left = a.print();
                let right = match **b {
                    LabelExpr::Tensor(..) => format!("({})", b.print()),
                    _ => b.print(),
                };
                format!("{} (x) {}", left, right)
            }
        }
    }

    pub fn leaf_labels(&self) -> Vec<&ModuleLabel> {
        match self {
            LabelExpr::Label(l) => vec![l],
            LabelExpr::Dual(e) => e.leaf_labels(),
            LabelExpr::Tensor(a, b) => {
                let mut v = a.leaf_labels();
                v.extend(b.leaf_labels());
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

pub struct ExprParser<'a> {
    input: &'a str,
    pos: usize,
    ctx: &'a HopfContext,
}

impl<'a> ExprParser<'a> {
    pub fn new(input: &'a str, ctx: &'a HopfContext) -> Self {
        ExprParser { input, pos: 0, ctx }
    }

    fn err(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.input[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_str(s) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected '{}'", s)))
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.input[self.pos..].starts_with('-') || self.input[self.pos..].starts_with('+') {
            self.pos += 1;
        }
        while self.input[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err(start, "expected an integer"))
    }

    fn check_l(&self, start: usize, l: i64, upper: usize) -> Result<usize, ParseError> {
        if l < 1 || l > upper as i64 {
            return Err(self.err(start, format!("index l={} outside 1..={} for n={}", l, upper, self.ctx.n)));
        }
        Ok(l as usize)
    }

    fn parse_label(&mut self) -> Result<ModuleLabel, ParseError> {
        self.skip_ws();
        let n = self.ctx.n;
        let start = self.pos;
        if self.eat_str("V(") {
            let l = self.parse_int()?;
            self.expect(",")?;
            let r = self.parse_int()?;
            self.skip_ws();
            self.expect(")")?;
            let l = self.check_l(start, l, n)?;
            Ok(ModuleLabel::simple(n, l, r))
        } else if self.eat_str("P(") {
            let l = self.parse_int()?;
            self.expect(",")?;
            let r = self.parse_int()?;
            self.skip_ws();
            self.expect(")")?;
            let l = self.check_l(start, l, n)?;
            Ok(ModuleLabel::proj(n, l, r))
        } else if self.eat_str("Om(") {
            let m = self.parse_int()?;
            self.skip_ws();
            self.expect(")")?;
            self.expect("V(")?;
            let l = self.parse_int()?;
            self.expect(",")?;
            let r = self.parse_int()?;
            self.skip_ws();
            self.expect(")")?;
            let l = self.check_l(start, l, n - usize::from(m != 0))?;
            Ok(ModuleLabel::string(n, m, l, r))
        } else if self.eat_str("M(") {
            let s = self.parse_int()?;
            self.expect(",")?;
            let l = self.parse_int()?;
            self.expect(",")?;
            let r = self.parse_int()?;
            self.skip_ws();
            self.expect(";")?;
            let scalar_start = self.pos;
            let mut sp = ScalarParser::new(&self.input[self.pos..], &self.ctx.field);
            let eta: ExtScalar = sp
                .parse_ext()
                .map_err(|e| self.err(scalar_start + e.offset, e.message))?;
            self.pos += sp.pos();
            self.skip_ws();
            self.expect(")")?;
            if s < 1 {
                return Err(self.err(start, format!("band length s={} must be positive", s)));
            }
            let l = self.check_l(start, l, n - 1)?;
            Ok(ModuleLabel::band(n, s as usize, l, r, eta))
        } else {
            Err(self.err(self.pos, "expected a label: V(..), P(..), Om(..)V(..), or M(..)"))
        }
    }

    fn parse_term(&mut self) -> Result<LabelExpr, ParseError> {
        self.skip_ws();
        if self.input[self.pos..].starts_with('(') && !self.input[self.pos..].starts_with("(x)") {
            self.pos += 1;
            let inner = self.parse_expr()?;
            self.skip_ws();
            self.expect(")")?;
            return Ok(inner);
        }
        let label = self.parse_label()?;
        if self.eat_str("^*") {
            Ok(LabelExpr::Dual(Box::new(LabelExpr::Label(label))))
        } else {
            Ok(LabelExpr::Label(label))
        }
    }

    pub fn parse_expr(&mut self) -> Result<LabelExpr, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            if self.eat_str("(x)") || self.eat_str("⊗") {
                let rhs = self.parse_term()?;
                acc = LabelExpr::Tensor(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }
}

/// Parses a complete expression.
pub fn parse_expr(input: &str, ctx: &HopfContext) -> Result<LabelExpr, ParseError> {
    let mut p = ExprParser::new(input, ctx);
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(ParseError { offset: p.pos, message: "trailing input".into() });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use greenring::algebra::HopfContext;

    fn hopf(n: usize) -> std::sync::Arc<HopfContext> {
        HopfContext::new(n).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let h = hopf(3);
        let e = parse_expr("V(2,0) (x) P(2,0)", &h).unwrap();
        assert_eq!(
            e,
            LabelExpr::Tensor(
                Box::new(LabelExpr::Label(ModuleLabel::simple(3, 2, 0))),
                Box::new(LabelExpr::Label(ModuleLabel::proj(3, 2, 0))),
            )
        );
        let e = parse_expr("M(1,1,0;inf)^*", &h).unwrap();
        assert_eq!(
            e,
            LabelExpr::Dual(Box::new(LabelExpr::Label(ModuleLabel::band(
                3,
                1,
                1,
                0,
                greenring::exactfield::ExtScalar::Infinity
            ))))
        );
        let e = parse_expr("Om(-2)V(1,2)", &h).unwrap();
        assert_eq!(e, LabelExpr::Label(ModuleLabel::string(3, -2, 1, 2)));
        // Unicode tensor sign and parentheses.
        let e = parse_expr("(V(1,0) ⊗ V(1,1)) (x) V(2,0)", &h).unwrap();
        assert!(matches!(e, LabelExpr::Tensor(..)));
    }

    #[test]
    fn roundtrip_on_canonical_labels() {
        let h = hopf(3);
        for text in [
            "V(2,0)",
            "P(1,2)",
            "Om(-2)V(1,2)",
            "M(2,1,0;-q)",
            "M(1,2,1;inf)",
            "M(1,1,0;1/2 + q)",
            "V(1,0) (x) M(1,1,0;0)",
        ] {
            let e = parse_expr(text, &h).unwrap();
            assert_eq!(e.print(), text, "canonical roundtrip for {}", text);
            let again = parse_expr(&e.print(), &h).unwrap();
            assert_eq!(e, again);
        }
    }

    #[test]
    fn roundtrip_on_sweep_families() {
        for n in [3usize, 4] {
            let h = hopf(n);
            let etas = vec![
                greenring::exactfield::ExtScalar::Fin(h.field.zero()),
                greenring::exactfield::ExtScalar::Fin(h.field.one()),
                greenring::exactfield::ExtScalar::Infinity,
            ];
            for label in greenring::decompose::label_family(&h, 2, 2, &etas) {
                let text = label.to_string();
                let parsed = parse_expr(&text, &h).unwrap();
                assert_eq!(parsed, LabelExpr::Label(label), "roundtrip of {}", text);
                assert_eq!(parsed.print(), text);
            }
        }
    }

    #[test]
    fn errors_are_positioned() {
        let h = hopf(3);
        let err = parse_expr("V(2,0) (x) X(1,0)", &h).unwrap_err();
        assert_eq!(err.offset, 11);
        // Semantic range errors.
        assert!(parse_expr("V(4,0)", &h).is_err());
        assert!(parse_expr("Om(1)V(3,0)", &h).is_err());
        assert!(parse_expr("M(0,1,0;1)", &h).is_err());
        assert!(parse_expr("V(2,0) trailing", &h).is_err());
        // Om(0)V(l,r) aliases the simple, so l = n is allowed there.
        assert_eq!(
            parse_expr("Om(0)V(3,1)", &h).unwrap(),
            LabelExpr::Label(ModuleLabel::simple(3, 3, 1))
        );
    }
}
