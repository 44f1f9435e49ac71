//! Exact scalar arithmetic.
//!
//! Every core computation runs over arbitrary-precision rationals
//! ([`num_rational::BigRational`]), which are always reduced and carry a
//! positive denominator. This module adds the parsing and power helpers the
//! rest of the crate needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The sole scalar type of the crate: an exact, reduced fraction.
pub type Rational = BigRational;

/// Why a token failed to parse as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    /// Token is not a number in any accepted syntax.
    Invalid(String),
    /// Token denotes an infinite or NaN value, which has no exact rational
    /// representation.
    NonFinite(String),
}

impl std::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseRationalError::Invalid(tok) => write!(f, "invalid rational literal `{tok}`"),
            ParseRationalError::NonFinite(tok) => {
                write!(f, "`{tok}` is not a finite rational value")
            }
        }
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"-3"`, `"2/5"`, `"0.25"` or `"2.5e-3"` as an exact rational.
///
/// Decimal and scientific notation are converted exactly (`0.1` becomes
/// `1/10`); `inf`/`nan` spellings are reported as [`ParseRationalError::NonFinite`].
pub fn parse_rational(token: &str) -> Result<Rational, ParseRationalError> {
    let tok = token.trim();
    if tok.is_empty() {
        return Err(ParseRationalError::Invalid(token.to_string()));
    }
    let lower = tok.trim_start_matches(['+', '-']).to_ascii_lowercase();
    if lower == "inf" || lower == "infinity" || lower == "nan" {
        return Err(ParseRationalError::NonFinite(token.to_string()));
    }
    if let Some((num, den)) = tok.split_once('/') {
        let n: BigInt = num
            .parse()
            .map_err(|_| ParseRationalError::Invalid(token.to_string()))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| ParseRationalError::Invalid(token.to_string()))?;
        if d.is_zero() {
            return Err(ParseRationalError::Invalid(token.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(tok).ok_or_else(|| ParseRationalError::Invalid(token.to_string()))
}

/// `[sign] digits [. digits] [e [sign] digits]`, converted exactly.
fn parse_decimal(tok: &str) -> Option<Rational> {
    let (mantissa, exp) = match tok.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (tok, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().ok()?
    };
    if sign < 0 {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if scale >= 0 {
        Some(Rational::from_integer(numer * ten.pow(scale as u32)))
    } else {
        Some(Rational::new(numer, ten.pow((-scale) as u32)))
    }
}

/// `base^exp` for integer exponents; negative exponents invert the base.
///
/// `0^0 = 1` (empty product); `0` raised to a negative power panics.
pub fn rat_pow(base: &Rational, exp: &BigInt) -> Rational {
    if exp.is_zero() {
        return Rational::one();
    }
    let mag = exp
        .abs()
        .to_u32()
        .expect("exponent magnitude exceeds u32 range");
    let powered = Rational::new_raw(base.numer().pow(mag), base.denom().pow(mag));
    let powered = powered.reduced();
    if exp.is_negative() {
        assert!(!base.is_zero(), "zero base with negative exponent");
        powered.recip()
    } else {
        powered
    }
}

/// Exact rational from an `f64`; fails on NaN and infinities.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Scales a rational vector to coprime integers, preserving orientation.
/// The zero vector maps to the zero vector.
pub fn to_primitive_integers(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .map(|x| x.denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &gcd).collect()
    }
}

/// Nearest `f64` (used only in the flagged float mode).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
