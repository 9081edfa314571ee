//! Exact rational-function expressions in `x`, e.g. `"(x-2)/x"`,
//! `"3/2*x^-2 + 1"`, `"2x(x+1)"`.
//!
//! Grammar (implicit multiplication binds like `*`):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/')? unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'x' | '(' sum ')'
//! ```

use std::fmt;

use lconn::algebra::Poly;
use lconn::{RatFunc, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// Byte offset into the source.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.offset + 1, self.message)
    }
}

impl std::error::Error for ExprError {}

pub fn parse_expr(src: &str) -> Result<RatFunc, ExprError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let value = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    if rhs.is_zero() {
                        return Err(ExprError { offset: at, message: "division by zero".into() });
                    }
                    acc = acc / rhs;
                }
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let k = self
            .digits()
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| self.error("expected an integer exponent"))?;
        let raised = (0..k).fold(RatFunc::one(), |acc, _| acc * base.clone());
        if negative {
            if raised.is_zero() {
                return Err(ExprError { offset: at, message: "zero raised to a negative power".into() });
            }
            Ok(RatFunc::one() / raised)
        } else {
            Ok(raised)
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFunc::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let whole = self.digits().expect("peeked a digit");
                // Decimals are read exactly: "0.25" is 1/4.
                let (mut num, mut den) = (whole, String::from("1"));
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let frac = self.digits().unwrap_or_default();
                    den.push_str(&"0".repeat(frac.len()));
                    num.push_str(&frac);
                }
                let num: BigInt = num.parse().expect("digits");
                let den: BigInt = den.parse().expect("digits");
                Ok(RatFunc::from_poly(Poly::constant(Rational::new(num, den))))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lconn::{int, rat};

    fn c(q: Rational) -> RatFunc {
        RatFunc::constant(q)
    }

    #[test]
    fn parses_rational_functions() {
        let x = RatFunc::x();
        assert_eq!(parse_expr("(x-2)/x").unwrap(), (x.clone() - c(int(2))) / x.clone());
        assert_eq!(parse_expr("3/2*x^-2 + 1").unwrap(), c(rat(3, 2)) / (x.clone() * x.clone()) + c(int(1)));
        assert_eq!(parse_expr("2x(x+1)").unwrap(), c(int(2)) * x.clone() * (x.clone() + c(int(1))));
        assert_eq!(parse_expr("-0.25").unwrap(), c(rat(-1, 4)));
        assert_eq!(parse_expr(" 1 / x ").unwrap().display(), "1/x");
    }

    #[test]
    fn reports_locations() {
        let e = parse_expr("1/0").unwrap_err();
        assert_eq!(e.offset, 2);
        assert_eq!(e.to_string(), "column 3: division by zero");
        assert_eq!(parse_expr("x + ").unwrap_err().message, "unexpected end of expression");
        assert_eq!(parse_expr("(x").unwrap_err().message, "expected ')'");
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("y").is_err());
    }
}
