//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := [int '*'] factor ('*' factor)* | int
//! factor := 'T' index ['^' posint]
//! ```
//!
//! Whitespace is insignificant. A single leading sign is accepted. Integer
//! coefficients are embedded into the target field.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Monomial, PolyError, Polynomial};
use crate::exactfield::FieldSpec;

pub fn parse_poly(text: &str, n: usize, field: FieldSpec) -> Result<Polynomial, PolyError> {
    let mut parser = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        end: text.len(),
        n,
        field,
    };
    parser.poly()
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    n: usize,
    field: FieldSpec,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        let found = self.peek();
        let message = message.into();
        let message = match found {
            Some('/') => "division is not supported".to_string(),
            Some('.') => "non-integer coefficients are not supported".to_string(),
            Some(c) => format!("{message}, found `{c}`"),
            None => format!("{message}, found end of input"),
        };
        PolyError::Syntax {
            position: self.offset(),
            message,
        }
    }

    fn poly(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.n, self.field);
        let mut negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                None => return Ok(acc),
                _ => return Err(self.error("expected `+`, `-` or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut coeff = self.field.one();
        let mut exps = vec![0u32; self.n + 1];
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let literal = self.integer()?;
            coeff = self.field.from_bigint(&literal);
            if self.peek() != Some('*') {
                return Ok(Polynomial::constant(self.n, coeff));
            }
            self.pos += 1;
        }
        loop {
            self.factor(&mut exps)?;
            if self.peek() != Some('*') {
                break;
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.n, self.field, [(Monomial::new(exps), coeff)]))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        if self.peek() != Some('T') {
            return Err(self.error("expected a variable `T<index>`"));
        }
        let var_pos = self.offset();
        self.pos += 1;
        let index = self.small_integer("variable index")?;
        if index > self.n as u64 {
            return Err(PolyError::VariableOutOfRange {
                index: index as usize,
                n: self.n,
                position: var_pos,
            });
        }
        let mut power = 1u64;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.offset();
            power = self.small_integer("exponent")?;
            if power == 0 {
                return Err(PolyError::Syntax {
                    position: at,
                    message: "exponent must be positive".into(),
                });
            }
        }
        let total = u32::try_from(power)
            .ok()
            .and_then(|p| exps[index as usize].checked_add(p))
            .ok_or_else(|| self.error("exponent too large"))?;
        exps[index as usize] = total;
        Ok(())
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let s = self.digits();
        if s.is_empty() {
            return Err(self.error("expected an integer"));
        }
        if matches!(self.peek(), Some('.') | Some('/')) {
            return Err(self.error("expected an integer"));
        }
        Ok(BigInt::from_str(&s).expect("digits parse"))
    }

    fn small_integer(&mut self, what: &str) -> Result<u64, PolyError> {
        let at = self.offset();
        let s = self.digits();
        if s.is_empty() {
            return Err(self.error(format!("expected {what}")));
        }
        s.parse().map_err(|_| PolyError::Syntax {
            position: at,
            message: format!("{what} too large"),
        })
    }
}
