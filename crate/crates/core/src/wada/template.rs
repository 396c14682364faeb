//! Symbolic templates over the tokens `u, v, u1, u2, v1, v2`.
//!
//! A word template is `x`, `y`, `z`, or `u(A,B)` / `v(A,B)` for word templates
//! `A, B`. A coefficient template is a sum (`+`) of products (juxtaposition)
//! of factors `u1(A,B)`, `u2(A,B)`, `v1(A,B)`, `v2(A,B)`. Products keep their
//! written left-to-right order.

use std::fmt;

use thiserror::Error;

use crate::freegroup::{Alphabet, FreeWord};
use crate::groupring::GroupRingElement;

use super::{DerivedCoefficients, WadaPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("template error at byte {offset} of {text:?}: {message}")]
pub struct TemplateError {
    pub text: String,
    pub offset: usize,
    pub message: &'static str,
}

/// A word built from the variables and the pair's two words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordTemplate {
    Var(usize),
    U(Box<WordTemplate>, Box<WordTemplate>),
    V(Box<WordTemplate>, Box<WordTemplate>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    U1,
    U2,
    V1,
    V2,
}

impl Coefficient {
    fn name(self) -> &'static str {
        match self {
            Coefficient::U1 => "u1",
            Coefficient::U2 => "u2",
            Coefficient::V1 => "v1",
            Coefficient::V2 => "v2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub coefficient: Coefficient,
    pub args: (WordTemplate, WordTemplate),
}

/// Sum of ordered products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTemplate(pub Vec<Vec<Factor>>);

const VARIABLES: [&str; 3] = ["x", "y", "z"];

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err(&self, message: &'static str) -> TemplateError {
        TemplateError {
            text: self.text.to_string(),
            offset: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn expect(&mut self, c: char) -> Result<(), TemplateError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(match c {
                '(' => "expected '('",
                ')' => "expected ')'",
                _ => "expected ','",
            }))
        }
    }

    fn args(&mut self) -> Result<(WordTemplate, WordTemplate), TemplateError> {
        self.expect('(')?;
        let a = self.word()?;
        self.expect(',')?;
        let b = self.word()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn word(&mut self) -> Result<WordTemplate, TemplateError> {
        let start = self.pos;
        let name = self.ident();
        if let Some(i) = VARIABLES.iter().position(|&v| v == name) {
            return Ok(WordTemplate::Var(i));
        }
        match name {
            "u" | "v" => {
                let (a, b) = self.args()?;
                Ok(if name == "u" {
                    WordTemplate::U(Box::new(a), Box::new(b))
                } else {
                    WordTemplate::V(Box::new(a), Box::new(b))
                })
            }
            _ => {
                self.pos = start;
                Err(self.err("expected x, y, z, u(..) or v(..)"))
            }
        }
    }

    fn factor(&mut self) -> Result<Factor, TemplateError> {
        let start = self.pos;
        let coefficient = match self.ident() {
            "u1" => Coefficient::U1,
            "u2" => Coefficient::U2,
            "v1" => Coefficient::V1,
            "v2" => Coefficient::V2,
            _ => {
                self.pos = start;
                return Err(self.err("expected u1, u2, v1 or v2"));
            }
        };
        let args = self.args()?;
        Ok(Factor { coefficient, args })
    }

    fn sum(&mut self) -> Result<SumTemplate, TemplateError> {
        let mut terms = Vec::new();
        loop {
            let mut product = vec![self.factor()?];
            loop {
                self.skip_ws();
                if self.pos == self.text.len() || self.text[self.pos..].starts_with('+') {
                    break;
                }
                product.push(self.factor()?);
            }
            terms.push(product);
            if self.pos == self.text.len() {
                return Ok(SumTemplate(terms));
            }
            self.pos += 1; // '+'
        }
    }

    fn finish(&mut self) -> Result<(), TemplateError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

impl WordTemplate {
    pub fn parse(text: &str) -> Result<Self, TemplateError> {
        let mut p = Parser::new(text);
        let w = p.word()?;
        p.finish()?;
        Ok(w)
    }

    /// Evaluates to a word over `(x, y, z)`.
    pub fn eval(&self, pair: &WadaPair) -> FreeWord {
        let xyz = Alphabet::rank3();
        match self {
            WordTemplate::Var(i) => FreeWord::generator(&xyz, *i).expect("variable in range"),
            WordTemplate::U(a, b) => pair
                .u
                .substitute(&[a.eval(pair), b.eval(pair)])
                .expect("rank-2 word"),
            WordTemplate::V(a, b) => pair
                .v
                .substitute(&[a.eval(pair), b.eval(pair)])
                .expect("rank-2 word"),
        }
    }
}

impl fmt::Display for WordTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordTemplate::Var(i) => f.write_str(VARIABLES[*i]),
            WordTemplate::U(a, b) => write!(f, "u({a},{b})"),
            WordTemplate::V(a, b) => write!(f, "v({a},{b})"),
        }
    }
}

impl SumTemplate {
    pub fn parse(text: &str) -> Result<Self, TemplateError> {
        let mut p = Parser::new(text);
        let s = p.sum()?;
        p.finish()?;
        Ok(s)
    }

    /// Evaluates in `ℤF(x,y,z)`: each `c(A,B)` is the rank-2 coefficient with
    /// `x ↦ A, y ↦ B`, and products are taken in written order.
    pub fn eval(&self, pair: &WadaPair, coeffs: &DerivedCoefficients) -> GroupRingElement {
        let xyz = Alphabet::rank3();
        let mut total = GroupRingElement::zero(&xyz);
        for product in &self.0 {
            let mut acc = GroupRingElement::one(&xyz);
            for factor in product {
                let images = [factor.args.0.eval(pair), factor.args.1.eval(pair)];
                let c = coeffs
                    .get(factor.coefficient)
                    .substitute_ring(&images)
                    .expect("rank-2 coefficient");
                acc = &acc * &c;
            }
            total = &total + &acc;
        }
        total
    }
}

impl fmt::Display for SumTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, product) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            for (j, factor) in product.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(
                    f,
                    "{}({},{})",
                    factor.coefficient.name(),
                    factor.args.0,
                    factor.args.1
                )?;
            }
        }
        Ok(())
    }
}
