//! Reader for the canonical polynomial text form.
//!
//! Accepts sums and differences of products, `^` with a natural exponent,
//! parentheses, integer literals, division by nonzero constants, and
//! juxtaposition as multiplication (`3x`, `2 x^2`).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::poly::Polynomial;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let mut p = Parser::new(ring, text);
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input", &["+", "-", "*", "end of input"]));
    }
    Ok(f)
}

/// Comma separated list; an empty list or the single literal `0` gives no
/// polynomials.
pub fn parse_polynomial_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    if text.trim().is_empty() {
        return Ok(out);
    }
    for piece in text.split(',') {
        let f = parse_polynomial(ring, piece).map_err(|e| shift_column(e, offset))?;
        if !f.is_zero() {
            out.push(f);
        }
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

/// Adds `offset` to the column of a parse error.
pub fn shift_column(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse {
            column,
            message,
            expected,
        } => Error::Parse {
            column: column + offset,
            message,
            expected,
        },
        other => other,
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<Ring>, text: &str) -> Self {
        Parser {
            ring,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str, expected: &[&str]) -> Error {
        Error::Parse {
            column: self.pos + 1,
            message: msg.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let start = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = start;
                        return Err(self.error("division by a non-constant or zero", &["nonzero constant"]));
                    }
                    acc = acc.div_scalar(d.leading_coeff().expect("nonzero"))?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("missing exponent", &["natural number"]));
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = s.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent too large", &["natural number"])
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("unbalanced parenthesis", &[")"]));
                }
                self.pos += 1;
                Ok(f)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = s.parse().expect("digits");
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(Error::Parse {
                            column: start + 1,
                            message: format!("unknown variable `{name}`"),
                            expected: self.ring.vars().to_vec(),
                        })
                    }
                }
            }
            _ => Err(self.error(
                "expected a number, variable or parenthesis",
                &["number", "variable", "("],
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::Field;
    use proptest::prelude::*;

    fn ring() -> Arc<Ring> {
        Ring::degrevlex(Field::Rationals, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn forms() {
        let r = ring();
        let a = parse_polynomial(&r, "3x^2 - 2 x*y + (y+z)^2/2").unwrap();
        assert_eq!(a.to_string(), "3*x^2 - 2*x*y + 1/2*y^2 + y*z + 1/2*z^2");
        assert!(parse_polynomial(&r, "0").unwrap().is_zero());
        assert_eq!(parse_polynomial(&r, "-(x)").unwrap().to_string(), "-x");
    }

    #[test]
    fn errors_carry_columns() {
        let r = ring();
        match parse_polynomial(&r, "x + w") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_polynomial(&r, "x + (y") {
            Err(Error::Parse { expected, .. }) => assert_eq!(expected, vec![")"]),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&r, "x / y").is_err());
        assert!(parse_polynomial(&r, "x^").is_err());
        match parse_polynomial_list(&r, "x, y + q") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 8),
            other => panic!("{other:?}"),
        }
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
        proptest::collection::vec((-5i64..5, [0u32..3, 0u32..3, 0u32..3]), 0..6)
    }

    fn build(r: &Arc<Ring>, t: &[(i64, [u32; 3])]) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.iter().map(|(c, e)| {
                (
                    crate::algebra::Monomial::new(e.iter().copied()),
                    r.field().from_i64(*c),
                )
            }),
        )
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(t in poly_strategy(), p in prop_oneof![Just(0u32), Just(7u32)]) {
            let field = if p == 0 { Field::Rationals } else { Field::Prime(p) };
            let r = Ring::degrevlex(field, &["x", "y", "z"]).unwrap();
            let f = build(&r, &t);
            let g = parse_polynomial(&r, &f.to_string()).unwrap();
            prop_assert_eq!(f, g);
        }

        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let r = ring();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
