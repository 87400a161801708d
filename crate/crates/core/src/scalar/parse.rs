//! Parser for the textual scalar form: integer literals, named
//! indeterminates, `+ - * / ^` and parentheses. `Display` output of a
//! [`Scalar`] parses back to the identical value.

use num::BigInt;

use super::rational::Scalar;
use crate::error::{Error, Result};

pub fn parse(input: &str) -> Result<Scalar> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        input,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.input))
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

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                '/' => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let parenthesized = self.peek() == Some('(');
        if parenthesized {
            self.bump();
        }
        let mut neg = false;
        if self.peek() == Some('-') {
            self.bump();
            neg = true;
        }
        let digits = self.digits()?;
        let value: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        if parenthesized {
            if self.peek() != Some(')') {
                return Err(self.error("expected ')' after exponent"));
            }
            self.bump();
        }
        Ok(if neg { -value } else { value })
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let n = BigInt::parse_bytes(digits.as_bytes(), 10)
                    .ok_or_else(|| self.error("bad integer"))?;
                Ok(Scalar::from_rational(num::BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.name();
                Ok(Scalar::var(&name))
            }
            _ => Err(self.error("expected integer, name or '('")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn name(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_arithmetic() {
        assert_eq!(parse("1/2 + 1/3").unwrap(), Scalar::ratio(5, 6));
        assert_eq!(parse("2^10").unwrap(), Scalar::from_int(1024));
        assert_eq!(parse("2^-2").unwrap(), Scalar::ratio(1, 4));
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("(x+1)*(x-1)").unwrap(), parse("x^2 - 1").unwrap());
        assert!(parse("1 +").is_err());
        assert!(parse("(1").is_err());
    }

    #[test]
    fn display_round_trips() {
        for expr in [
            "0",
            "-7/3",
            "x",
            "(x^2 - 1) / (x - 1) + 1/(y+1)",
            "p_1_1 * q_2_2^-3 + lambda^5 / 2",
            "(a + b)^4 / (a - b)",
        ] {
            let v = parse(expr).unwrap();
            let reparsed = parse(&v.to_string()).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {expr}");
        }
    }
}
