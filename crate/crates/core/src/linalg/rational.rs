use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `max(|numerator|, denominator)`.
pub fn height(r: &Rational) -> BigInt {
    let n = r.numer().abs();
    let d = r.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_square(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

/// Nearest integer, ties rounded up.
pub fn round(r: &Rational) -> BigInt {
    (r + frac(1, 2)).floor().to_integer()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse failure with the zero-based column of the offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid rational {:?} at column {}: {}",
            self.input, self.position, self.message
        )
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p`, `-p`, `+p` or `p/q` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |position, message| ParseRationalError {
        input: s.to_string(),
        position,
        message,
    };
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut negative = false;
    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
        negative = bytes[pos] == b'-';
        pos += 1;
    }
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(err(pos, "expected a digit"));
    }
    let mut numer: BigInt = s[start..pos].parse().expect("digits");
    if negative {
        numer = -numer;
    }
    if pos == bytes.len() {
        return Ok(Rational::from_integer(numer));
    }
    if bytes[pos] != b'/' {
        return Err(err(pos, "expected '/' or end of input"));
    }
    pos += 1;
    let dstart = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == dstart {
        return Err(err(pos, "expected a digit in the denominator"));
    }
    if pos != bytes.len() {
        return Err(err(pos, "unexpected trailing character"));
    }
    let denom: BigInt = s[dstart..pos].parse().expect("digits");
    if denom.is_zero() {
        return Err(err(dstart, "zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}
