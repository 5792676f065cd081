//! Exact rational scalars.
//!
//! Every mass, value and integral in this crate is a [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. The type itself is `num_rational::BigRational`; this module
//! adds the parsing, rendering and dyadic helpers the rest of the crate uses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `numer/denom`. Panics when `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^n` as a rational.
pub fn pow2(n: u32) -> Rational {
    Rational::from_integer(BigInt::one() << n as usize)
}

/// `2^-n` as a rational.
pub fn inv_pow2(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}

pub fn max_of(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min_of(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// The exponent `k` when the reduced denominator of `x` is `2^k`, `None`
/// when the denominator has an odd factor.
pub fn dyadic_exponent(x: &Rational) -> Option<u32> {
    let denom = x.denom();
    if (denom & (denom - BigInt::one())).is_zero() {
        Some(denom.trailing_zeros().unwrap_or(0) as u32)
    } else {
        None
    }
}

/// Smallest integer `>= x`.
pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Error returned when a string is not of the form `p` or `p/q` with `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{input}` is not a rational of the form \"p\" or \"p/q\" with q > 0")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p"` or `"p/q"`. The denominator must be a positive integer;
/// whitespace is not accepted.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: s.to_string(),
    };
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(err());
    }
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if denom.starts_with(['+', '-']) {
        return Err(err());
    }
    let numer = BigInt::from_str(numer).map_err(|_| err())?;
    let denom = BigInt::from_str(denom).map_err(|_| err())?;
    if !denom.is_positive() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders `x` as `"p/q"`, or `"p"` when `x` is an integer.
pub fn to_ratio_string(x: &Rational) -> String {
    x.to_string()
}

/// Renders `x` as a decimal rounded (half away from zero) to `digits`
/// significant digits, trailing zeros trimmed. Magnitudes outside
/// `[1e-6, 1e12)` use exponent notation, e.g. `9.31322574615e-10`.
pub fn to_decimal_string(x: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let a = x.abs();
    let ten = BigInt::from(10);

    // 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }

    let scaled = &a * pow10(digits as i64 - 1 - e);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = if r * 2 >= *scaled.denom() { q + 1 } else { q };
    if mantissa == num_traits::pow(ten.clone(), digits) {
        mantissa /= &ten;
        e += 1;
    }
    let mant = mantissa.to_string();
    debug_assert_eq!(mant.len(), digits);

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..12).contains(&e) {
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= mant.len() {
                out.push_str(&mant);
                out.extend(std::iter::repeat_n('0', int_len - mant.len()));
            } else {
                out.push_str(&mant[..int_len]);
                out.push('.');
                out.push_str(&mant[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e - 1) as usize));
            out.push_str(&mant);
        }
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
    } else {
        let mut frac = mant[1..].to_string();
        while frac.ends_with('0') {
            frac.pop();
        }
        out.push_str(&mant[..1]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(&frac);
        }
        out.push_str(&format!("e{e}"));
    }
    out
}

/// Display adapter printing a rational with 12 significant decimal digits.
pub struct Decimal<'a>(pub &'a Rational);

impl fmt::Display for Decimal<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_decimal_string(self.0, 12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0/7").unwrap(), int(0));
    }

    #[test]
    fn rejects_malformed_rationals() {
        for bad in ["", "1/0", "1/-2", "1.5", " 1", "a/b", "1/", "/2", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn ratio_strings_round_trip() {
        for x in [rat(5, 2), rat(-7, 3), int(0), int(-4), rat(1, 524288)] {
            assert_eq!(parse_rational(&to_ratio_string(&x)).unwrap(), x);
        }
        assert_eq!(to_ratio_string(&rat(10, 4)), "5/2");
        assert_eq!(to_ratio_string(&int(2)), "2");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&rat(5, 2), 12), "2.5");
        assert_eq!(to_decimal_string(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal_string(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal_string(&rat(-1, 8), 12), "-0.125");
        assert_eq!(to_decimal_string(&int(1000), 12), "1000");
        assert_eq!(to_decimal_string(&rat(1, 524288), 12), "0.00000190734863281");
        assert_eq!(to_decimal_string(&inv_pow2(30), 12), "9.31322574615e-10");
        assert_eq!(to_decimal_string(&rat(9_999_999_999_999, 10), 12), "1e12");
        assert_eq!(to_decimal_string(&rat(1, 1000), 12), "0.001");
        assert_eq!(to_decimal_string(&int(0), 12), "0");
    }

    #[test]
    fn dyadic_exponents() {
        assert_eq!(dyadic_exponent(&rat(3, 8)), Some(3));
        assert_eq!(dyadic_exponent(&int(5)), Some(0));
        assert_eq!(dyadic_exponent(&rat(1, 3)), None);
        assert_eq!(dyadic_exponent(&rat(1, 12)), None);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(inv_pow2(20), rat(1, 1 << 20));
        assert_eq!(&pow2(7) * &inv_pow2(7), int(1));
    }
}
