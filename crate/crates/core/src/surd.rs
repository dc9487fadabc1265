//! Real numbers of the form `x + y√d` with rational `x, y` and square-free
//! `d > 1`, plus plain rationals.
//!
//! Arithmetic is exact within one quadratic field. Mixing two different
//! fields is refused rather than approximated.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{fmt_rational, fmt_rational_short, parse_rational, to_f64, Rational};
use crate::error::{Error, Result};
use crate::spectra::poly::RatPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Algebraic {
    Rational(Rational),
    /// `x + y√d`, `y ≠ 0`, `d > 1` square-free.
    Surd { x: Rational, y: Rational, d: BigInt },
}

/// Splits `m > 0` as `s² · f` with `f` square-free.
fn square_free_split(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.clone();
    let mut outside = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            outside *= &p;
        }
        p += 1;
    }
    (outside, rest)
}

impl Algebraic {
    pub fn rational(q: Rational) -> Self {
        Algebraic::Rational(q)
    }

    pub fn from_int(n: i64) -> Self {
        Algebraic::Rational(Rational::from_integer(n.into()))
    }

    /// `x + y√r` for any rational radicand `r ≥ 0`, normalised.
    pub fn new(x: Rational, y: Rational, radicand: &Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::InvalidArgument(format!(
                "negative radicand {}",
                fmt_rational(radicand)
            )));
        }
        if y.is_zero() || radicand.is_zero() {
            return Ok(Algebraic::Rational(x));
        }
        // √(a/b) = √(ab) / b
        let ab = radicand.numer() * radicand.denom();
        let (s, f) = square_free_split(&ab);
        let y = y * Rational::new(s, radicand.denom().clone());
        if f.is_one() {
            Ok(Algebraic::Rational(x + y))
        } else {
            Ok(Algebraic::Surd { x, y, d: f })
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Algebraic::Rational(q) => Some(q),
            Algebraic::Surd { .. } => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Algebraic::Rational(_))
    }

    fn parts(&self) -> (Rational, Rational, Option<&BigInt>) {
        match self {
            Algebraic::Rational(q) => (q.clone(), Rational::zero(), None),
            Algebraic::Surd { x, y, d } => (x.clone(), y.clone(), Some(d)),
        }
    }

    fn common_field<'a>(&'a self, other: &'a Self) -> Result<Option<&'a BigInt>> {
        match (self.parts().2, other.parts().2) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidArgument(format!(
                "cannot combine elements of Q(√{a}) and Q(√{b})"
            ))),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    fn build(x: Rational, y: Rational, d: Option<&BigInt>) -> Self {
        match d {
            Some(d) if !y.is_zero() => Algebraic::Surd { x, y, d: d.clone() },
            _ => Algebraic::Rational(x),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let (a, b, _) = self.parts();
        let (c, e, _) = other.parts();
        Ok(Self::build(a + c, b + e, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let (a, b, _) = self.parts();
        let (c, e, _) = other.parts();
        let dd = d.map(|d| Rational::from_integer(d.clone())).unwrap_or_else(Rational::zero);
        Ok(Self::build(&a * &c + &b * &e * dd, a * e + b * c, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let inv = match other {
            Algebraic::Rational(q) => Algebraic::Rational(q.recip()),
            Algebraic::Surd { x, y, d } => {
                // 1/(x + y√d) = (x − y√d)/(x² − d y²)
                let norm = x * x - y * y * Rational::from_integer(d.clone());
                Algebraic::Surd {
                    x: x / &norm,
                    y: -y / &norm,
                    d: d.clone(),
                }
            }
        };
        self.checked_mul(&inv)
    }

    pub fn neg(&self) -> Self {
        match self {
            Algebraic::Rational(q) => Algebraic::Rational(-q),
            Algebraic::Surd { x, y, d } => Algebraic::Surd {
                x: -x,
                y: -y,
                d: d.clone(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Algebraic::Rational(q) if q.is_zero())
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        match self {
            Algebraic::Rational(q) => q.cmp(&Rational::zero()),
            Algebraic::Surd { x, y, d } => {
                let ys = y.cmp(&Rational::zero());
                let xs = x.cmp(&Rational::zero());
                if xs == ys || xs == Ordering::Equal {
                    return ys;
                }
                // opposite signs: compare x² with d y²
                let lhs = x * x;
                let rhs = y * y * Rational::from_integer(d.clone());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => xs,
                    _ => ys,
                }
            }
        }
    }

    /// Exact comparison within one field; falls back to floating point for
    /// elements of different quadratic fields (never equal there).
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(diff) => diff.signum(),
            Err(_) => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Algebraic::Rational(q) => to_f64(q),
            Algebraic::Surd { x, y, d } => {
                to_f64(x) + to_f64(y) * d.to_f64().unwrap_or(f64::NAN).sqrt()
            }
        }
    }

    /// Monic minimal polynomial over the rationals.
    pub fn minimal_polynomial(&self) -> RatPoly {
        match self {
            Algebraic::Rational(q) => RatPoly::linear_root(q),
            Algebraic::Surd { x, y, d } => {
                let norm = x * x - y * y * Rational::from_integer(d.clone());
                RatPoly::new(vec![norm, -(x + x), Rational::one()])
            }
        }
    }
}

/// Both roots of a monic-izable quadratic, larger first (the `+√disc` branch).
///
/// Returns `None` when the discriminant is negative.
pub fn quadratic_roots(poly: &RatPoly) -> Result<Option<[Algebraic; 2]>> {
    if poly.degree() != Some(2) {
        return Err(Error::UnsupportedDegree(poly.degree().unwrap_or(0)));
    }
    let m = poly.monic();
    let b = m.coeff(1);
    let c = m.coeff(0);
    let disc = &b * &b - Rational::from_integer(4.into()) * c;
    if disc.is_negative() {
        return Ok(None);
    }
    let half = Rational::new(1.into(), 2.into());
    let x = -&b * &half;
    let hi = Algebraic::new(x.clone(), half.clone(), &disc)?;
    let lo = Algebraic::new(x, -half, &disc)?;
    Ok(Some([hi, lo]))
}

impl fmt::Display for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebraic::Rational(q) => write!(f, "{}", fmt_rational_short(q)),
            Algebraic::Surd { x, y, d } => {
                let sign = if y.is_negative() { '-' } else { '+' };
                let ya = y.abs();
                let yt = if ya.is_one() {
                    String::new()
                } else {
                    format!("{}·", fmt_rational_short(&ya))
                };
                if x.is_zero() {
                    let lead = if y.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{yt}√{d}")
                } else {
                    write!(f, "{} {sign} {yt}√{d}", fmt_rational_short(x))
                }
            }
        }
    }
}

impl fmt::Debug for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AlgebraicJson {
    Rational(String),
    Surd { x: String, y: String, d: String },
}

impl Serialize for Algebraic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Algebraic::Rational(q) => AlgebraicJson::Rational(fmt_rational(q)),
            Algebraic::Surd { x, y, d } => AlgebraicJson::Surd {
                x: fmt_rational(x),
                y: fmt_rational(y),
                d: d.to_string(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebraic {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        match AlgebraicJson::deserialize(de)? {
            AlgebraicJson::Rational(q) => Ok(Algebraic::Rational(
                parse_rational(&q).map_err(D::Error::custom)?,
            )),
            AlgebraicJson::Surd { x, y, d } => {
                let x = parse_rational(&x).map_err(D::Error::custom)?;
                let y = parse_rational(&y).map_err(D::Error::custom)?;
                let d = parse_rational(&d).map_err(D::Error::custom)?;
                Algebraic::new(x, y, &d).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    #[test]
    fn normalises_radicand() {
        let a = Algebraic::new(int(1), int(1), &int(12)).unwrap();
        assert_eq!(
            a,
            Algebraic::Surd { x: int(1), y: int(2), d: BigInt::from(3) }
        );
        assert_eq!(Algebraic::new(int(1), int(3), &int(16)).unwrap(), Algebraic::from_int(13));
        let b = Algebraic::new(int(0), int(1), &frac(1, 2)).unwrap();
        assert_eq!(b, Algebraic::Surd { x: int(0), y: frac(1, 2), d: BigInt::from(2) });
    }

    #[test]
    fn field_arithmetic() {
        let s = Algebraic::new(int(1), int(1), &int(5)).unwrap();
        let t = Algebraic::new(int(1), int(-1), &int(5)).unwrap();
        assert_eq!(s.checked_mul(&t).unwrap(), Algebraic::from_int(-4));
        assert_eq!(s.checked_add(&t).unwrap(), Algebraic::from_int(2));
        let q = s.checked_div(&t).unwrap();
        assert_eq!(q.checked_mul(&t).unwrap(), s);
        let r = Algebraic::new(int(0), int(1), &int(2)).unwrap();
        assert!(s.checked_add(&r).is_err());
    }

    #[test]
    fn exact_sign() {
        let a = Algebraic::new(int(3), int(-1), &int(8)).unwrap(); // 3 - 2√2 > 0
        assert_eq!(a.signum(), Ordering::Greater);
        let b = Algebraic::new(int(2), int(-1), &int(5)).unwrap(); // 2 - √5 < 0
        assert_eq!(b.signum(), Ordering::Less);
    }

    #[test]
    fn quadratic_root_order() {
        // t² + t − 5: (−1 ± √21)/2
        let [hi, lo] = quadratic_roots(&RatPoly::from_ints(&[-5, 1, 1])).unwrap().unwrap();
        assert!(hi.to_f64() > lo.to_f64());
        assert!((hi.to_f64() - (-1.0 + 21f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(hi.minimal_polynomial(), RatPoly::from_ints(&[-5, 1, 1]));
        let [a, b] = quadratic_roots(&RatPoly::from_ints(&[5, 6, 1])).unwrap().unwrap();
        assert_eq!((a, b), (Algebraic::from_int(-1), Algebraic::from_int(-5)));
        assert!(quadratic_roots(&RatPoly::from_ints(&[1, 0, 1])).unwrap().is_none());
    }

    #[test]
    fn json_forms() {
        let a = Algebraic::from_int(-3);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"rational":"-3/1"}"#);
        let s = Algebraic::new(frac(-1, 2), frac(1, 2), &int(21)).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"surd":{"x":"-1/2","y":"1/2","d":"21"}}"#);
        let back: Algebraic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
