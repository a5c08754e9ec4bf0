//! Tiny recursive-descent parser for field elements written as rational
//! expressions in one formal symbol `z`, e.g. `(1 - z)^-2 + 1/3*z^4`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub trait Field {
    type Elem: Clone;

    fn constant(&self, c: Rational) -> Self::Elem;
    fn symbol(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

struct Parser<'s, 'f, F: Field> {
    src: &'s [u8],
    pos: usize,
    field: &'f F,
}

pub fn evaluate<F: Field>(src: &str, field: &F) -> Result<F::Elem> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(v)
}

impl<F: Field> Parser<'_, '_, F> {
    fn error(&self, msg: &str) -> Error {
        Error::Expression(format!("{msg} at column {}", self.pos))
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

    fn expr(&mut self) -> Result<F::Elem> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if c == b'-' { self.field.neg(&rhs) } else { rhs };
            acc = self.field.add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<F::Elem> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                self.field.mul(&acc, &rhs)
            } else {
                let inv = self
                    .field
                    .inv(&rhs)
                    .ok_or_else(|| self.error("division by zero"))?;
                self.field.mul(&acc, &inv)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<F::Elem> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.field.neg(&v))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<F::Elem> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        let base = if e < 0 {
            self.field
                .inv(&base)
                .ok_or_else(|| self.error("zero raised to a negative power"))?
        } else {
            base
        };
        let mut acc = self.field.constant(Rational::from_integer(BigInt::from(1)));
        for _ in 0..e.unsigned_abs() {
            acc = self.field.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.digits().ok_or_else(|| self.error("expected exponent"))?;
        let mut e: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        if neg {
            e = -e;
        }
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(e)
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<F::Elem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(self.field.symbol())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let n: BigInt = d.parse().expect("digits");
                Ok(self.field.constant(Rational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Field of rationals with `z` unsupported; used in tests of the grammar.
#[cfg(test)]
struct RationalsWithSymbol(Rational);

#[cfg(test)]
impl Field for RationalsWithSymbol {
    type Elem = Rational;

    fn constant(&self, c: Rational) -> Rational {
        c
    }
    fn symbol(&self) -> Rational {
        self.0.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!num_traits::Zero::is_zero(a)).then(|| Rational::from_integer(BigInt::from(1)) / a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    fn eval(s: &str) -> Result<Rational> {
        evaluate(s, &RationalsWithSymbol(int(2)))
    }

    #[test]
    fn grammar() {
        assert_eq!(eval("1 + 2*3").unwrap(), int(7));
        assert_eq!(eval("(1 - z)^-2").unwrap(), int(1));
        assert_eq!(eval("z^(-1) - 1/4").unwrap(), frac(1, 4));
        assert_eq!(eval("-z^2").unwrap(), int(-4));
        assert_eq!(eval("2/3/2").unwrap(), frac(1, 3));
    }

    #[test]
    fn errors_carry_columns() {
        let e = eval("1 + * 2").unwrap_err();
        assert_eq!(e, Error::Expression("unexpected character at column 4".into()));
        assert!(eval("(1 + z").is_err());
        assert!(eval("1/(z-2)").is_err());
        assert!(eval("z^").is_err());
    }
}
