//! Exact rational helpers shared by every module.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, `-p/q`, `+p` or `p`. Decimal notation is rejected so that
/// every weight entering a certificate is exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = |why: &str| Error::InvalidArgument(format!("'{text}' is not an exact rational: {why}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let parse_int = |part: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed {
            part.strip_prefix(['-', '+']).unwrap_or(part)
        } else {
            part
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected integer numerator and denominator"));
        }
        part.trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|_| bad("integer overflow"))
    };
    let n = parse_int(num, true)?;
    let d = parse_int(den, false)?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `num/den` in lowest terms, always with an explicit denominator.
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Compact human form: `p` for integers, `p/q` otherwise.
pub fn fmt_rational_short(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        fmt_rational(q)
    }
}

/// Largest `e` with `2^e | m`.
pub fn two_adic(m: &BigInt) -> Result<u64> {
    if m.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(m.trailing_zeros().unwrap_or(0))
}

/// `m / 2^{|m|_2}`, the odd part of a nonzero integer (sign kept).
pub fn odd_part(m: &BigInt) -> Result<BigInt> {
    let e = two_adic(m)?;
    Ok(m >> e as usize)
}

pub fn is_odd(m: &BigInt) -> bool {
    m.is_odd()
}

/// Integer square root when `m` is a perfect square.
pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    if &r * &r == *m {
        Some(r)
    } else {
        None
    }
}

/// Square root of a rational when it is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn floor_to_bigint(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // ToPrimitive can fail on very large operands; fall back to scaled division.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn mod4(m: &BigInt) -> u8 {
    m.mod_floor(&BigInt::from(4)).to_u8().expect("residue fits")
}

pub fn sign_of(q: &Rational) -> Sign {
    if q.is_zero() {
        Sign::NoSign
    } else if q.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

pub fn is_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

pub fn is_prime(n: u64) -> bool {
    matches!(is_prime_power(n), Some((_, 1)))
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for sequences of rationals.
pub mod serde_rational_vec {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        qs.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for optional rationals (`null` when absent).
pub mod serde_rational_opt {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(fmt_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(D::Error::custom))
            .transpose()
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod serde_int {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub mod serde_int_opt {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        m.as_ref().map(|m| m.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("+3/6").unwrap(), frac(1, 2));
        assert!(parse_rational(" 4/-1 ").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn formats_with_denominator() {
        assert_eq!(fmt_rational(&int(-2)), "-2/1");
        assert_eq!(fmt_rational(&frac(6, -4)), "-3/2");
        assert_eq!(fmt_rational_short(&int(5)), "5");
    }

    #[test]
    fn valuations() {
        assert_eq!(two_adic(&BigInt::from(12)).unwrap(), 2);
        assert_eq!(two_adic(&BigInt::from(-7)).unwrap(), 0);
        assert_eq!(two_adic(&BigInt::from(1024)).unwrap(), 10);
        assert_eq!(two_adic(&BigInt::from(0)), Err(Error::ZeroInput));
        assert_eq!(odd_part(&BigInt::from(-12)).unwrap(), BigInt::from(-3));
        assert_eq!(mod4(&BigInt::from(-1)), 3);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(8), Some((2, 3)));
        assert_eq!(is_prime_power(9), Some((3, 2)));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(1), None);
        assert!(is_prime(7));
        assert!(!is_prime(9));
    }
}
