//! A small reader for polynomial expressions such as `3M1^2 + N1^2 + 12c2`.

use std::sync::Arc;

use crate::exact::{ExactError, MultiPoly, Rational, VarSet};

const MAX_DEPTH: usize = 32;
const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: i64 = 256;
const MAX_TERM_PRODUCTS: usize = 1 << 18;

/// Parses a polynomial expression over the given variables.
///
/// Variable names are a letter followed by digits or underscores; factors may be
/// juxtaposed or joined by `*`, grouped with parentheses and raised to integer
/// powers. Coefficients may be integers or `p/q`.
pub fn parse_poly(text: &str, vars: &Arc<VarSet>) -> Result<MultiPoly, ExactError> {
    if text.len() > 1 << 16 {
        return Err(ExactError::Parse("expression too long".into()));
    }
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(ExactError::Parse("empty expression at offset 0".into()));
    }
    let mut p = Parser {
        chars,
        pos: 0,
        vars,
    };
    let out = p.sum(0)?;
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a Arc<VarSet>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self, depth: usize) -> Result<MultiPoly, ExactError> {
        if depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let mut out = MultiPoly::zero(self.vars);
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            let mut signed = false;
            while let Some(c @ ('+' | '-')) = self.peek() {
                if c == '-' {
                    sign = -sign;
                }
                signed = true;
                self.pos += 1;
            }
            if !first && !signed {
                return Ok(out);
            }
            first = false;
            let t = self.product(depth)?;
            out.add_scaled(&t, &sign);
            if self.peek().is_none() || self.peek() == Some(')') {
                return Ok(out);
            }
        }
    }

    fn product(&mut self, depth: usize) -> Result<MultiPoly, ExactError> {
        let mut acc: Option<MultiPoly> = None;
        loop {
            if self.peek() == Some('*') && acc.is_some() {
                self.pos += 1;
            }
            let f = match self.peek() {
                Some(c) if c.is_ascii_digit() => self.number()?,
                Some(c) if c.is_ascii_alphabetic() => self.variable()?,
                Some('(') => {
                    self.pos += 1;
                    let inner = self.sum(depth + 1)?;
                    if self.peek() != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    inner
                }
                _ => break,
            };
            let f = if self.peek() == Some('^') {
                self.pos += 1;
                let e = self.exponent()?;
                let mut p = MultiPoly::one(self.vars);
                for _ in 0..e {
                    p = self.bounded_mul(&p, &f)?;
                }
                p
            } else {
                f
            };
            acc = Some(match acc {
                None => f,
                Some(a) => self.bounded_mul(&a, &f)?,
            });
        }
        acc.ok_or_else(|| self.err("expected a term"))
    }

    fn bounded_mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ExactError> {
        if a.len().saturating_mul(b.len()) > MAX_TERM_PRODUCTS {
            return Err(self.err("expression too large"));
        }
        let p = a.try_mul(b)?;
        if p.total_degree().unwrap_or(0) > MAX_DEGREE {
            return Err(self.err("degree too large"));
        }
        Ok(p)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<MultiPoly, ExactError> {
        let mut s = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.digits();
            if d.is_empty() {
                return Err(self.err("expected denominator"));
            }
            s = format!("{s}/{d}");
        }
        Ok(MultiPoly::constant(self.vars, s.parse::<Rational>()?))
    }

    fn variable(&mut self) -> Result<MultiPoly, ExactError> {
        let start = self.pos;
        self.pos += 1;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        MultiPoly::var_named(self.vars, &name)
    }

    fn exponent(&mut self) -> Result<u32, ExactError> {
        let s = self.digits();
        let e: u32 = s.parse().map_err(|_| self.err("bad exponent"))?;
        if e > MAX_EXPONENT {
            return Err(self.err("exponent too large"));
        }
        Ok(e)
    }
}
