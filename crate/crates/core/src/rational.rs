//! Exact rational coefficients.
//!
//! All arithmetic in the crate is exact: coefficients are arbitrary-precision
//! rationals kept in lowest terms with a positive denominator. The wire format
//! is the string `"p/q"`, with `/q` omitted when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{CoreError, Result};

/// Arbitrary-precision rational, always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 1/n! as a rational.
pub fn inv_factorial(n: u32) -> Rational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Rational::new(BigInt::one(), f)
}

/// Splits a rational into its sign and the formatted absolute value, for
/// sign-aware term joining in tables.
pub fn signed_parts(r: &Rational) -> (bool, String) {
    use num_traits::Signed;
    (r.is_negative(), format_rational(&r.abs()))
}

/// Formats a rational as `p/q`, omitting the denominator when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`; the result is reduced with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad rational numerator in {s:?}")))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| CoreError::Parse(format!("bad rational denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(CoreError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn reduced_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert!(r.denom().is_positive());
    }

    #[test]
    fn format_omits_unit_denominator() {
        assert_eq!(format_rational(&rat(7, 1)), "7");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "3", "-7", "1/3", "-5/8"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // non-canonical input is normalized
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn inv_factorial_values() {
        assert_eq!(inv_factorial(0), rat(1, 1));
        assert_eq!(inv_factorial(1), rat(1, 1));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
