//! Gaussian rational scalars: numbers `re + im*i` with `re`, `im` exact
//! rationals of arbitrary precision. All linear algebra in this crate runs
//! over this field, so every comparison below is exact equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Real rational `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn half() -> Self {
        Scalar::rational(1, 2)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `-conj(self)`, the reflection used by Hermitian duality.
    pub fn neg_conj(&self) -> Self {
        Scalar::new(-self.re.clone(), self.im.clone())
    }

    /// Returns `self - other` as a `BigInt` when the difference is a (real)
    /// integer, `None` otherwise.
    pub fn integer_offset_from(&self, other: &Scalar) -> Option<BigInt> {
        if self.im != other.im {
            return None;
        }
        let d = &self.re - &other.re;
        if d.is_integer() {
            Some(d.to_integer())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let norm = &self.re * &self.re + &self.im * &self.im;
        Scalar::new(&self.re / &norm, -&self.im / &norm)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{} i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -&self.im)
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let t = s.trim().strip_prefix('+').unwrap_or(s.trim());
    BigRational::from_str(t).ok()
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts the textual form produced by `Display`: `p/q`, `p/q+r/s i`,
    /// `p/q-r/s i`, with integer shorthand for either part and optional
    /// whitespace before the trailing `i`. Bare `i`, `-i` and coefficients
    /// glued to `i` (as in `2i`) parse as well.
    fn from_str(s: &str) -> Result<Self> {
        let whole = s.trim();
        if whole.is_empty() {
            return Err(Error::ParseScalar(s.to_string()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (idx, ch) in whole.chars().enumerate() {
            if idx > 0 && (ch == '+' || ch == '-') {
                terms.push(std::mem::take(&mut cur));
                if ch == '-' {
                    cur.push('-');
                }
            } else {
                cur.push(ch);
            }
        }
        terms.push(cur);

        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for term in &terms {
            let t = term.trim();
            if t.is_empty() || t == "+" || t == "-" {
                return Err(Error::ParseScalar(s.to_string()));
            }
            if let Some(coeff) = t.strip_suffix('i') {
                let coeff = coeff.trim_end();
                let value = match coeff {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    other => parse_rational(other).ok_or_else(|| Error::ParseScalar(s.to_string()))?,
                };
                if im.replace(value).is_some() {
                    return Err(Error::ParseScalar(s.to_string()));
                }
            } else {
                let value = parse_rational(t).ok_or_else(|| Error::ParseScalar(s.to_string()))?;
                if re.replace(value).is_some() {
                    return Err(Error::ParseScalar(s.to_string()));
                }
            }
        }
        Ok(Scalar::new(
            re.unwrap_or_else(BigRational::zero),
            im.unwrap_or_else(BigRational::zero),
        ))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trip() {
        for text in [
            "0",
            "1",
            "-3",
            "1/2",
            "-7/3",
            "1 i",
            "-1 i",
            "1/2+1/2 i",
            "1/2-3/4 i",
            "-2+1/3 i",
        ] {
            let v = sc(text);
            assert_eq!(v, sc(&v.to_string()), "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_accepts_loose_forms() {
        assert_eq!(sc("i"), Scalar::i());
        assert_eq!(sc("-i"), -Scalar::i());
        assert_eq!(sc("2i"), Scalar::from_int(2) * Scalar::i());
        assert_eq!(sc("i-1"), Scalar::i() - Scalar::one());
        assert_eq!(sc(" 1/2 + 1/2 i "), Scalar::half() + Scalar::half() * Scalar::i());
        assert_eq!(sc("+3"), Scalar::from_int(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "x", "1/2/3", "1+2", "i+i", "1..2", "+"] {
            assert!(bad.parse::<Scalar>().is_err(), "expected parse failure for {bad:?}");
        }
    }

    #[test]
    fn field_arithmetic() {
        let a = sc("1/2+1/2 i");
        let b = sc("2-3 i");
        assert_eq!(&a + &b, sc("5/2-5/2 i"));
        assert_eq!(&a * &b, sc("5/2-1/2 i"));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a - &a, Scalar::zero());
        assert_eq!(a.conj(), sc("1/2-1/2 i"));
        assert_eq!(a.neg_conj(), sc("-1/2+1/2 i"));
    }

    #[test]
    fn integer_offsets() {
        assert_eq!(
            sc("5/2").integer_offset_from(&sc("1/2")),
            Some(BigInt::from(2))
        );
        assert_eq!(
            sc("1/2+1 i").integer_offset_from(&sc("-3/2+1 i")),
            Some(BigInt::from(2))
        );
        assert_eq!(sc("1/2").integer_offset_from(&sc("0")), None);
        assert_eq!(sc("1+1 i").integer_offset_from(&sc("1")), None);
    }

    #[test]
    fn ordering_is_total_and_deterministic() {
        let mut v = vec![sc("1"), sc("0"), sc("1/2"), sc("1/2+1 i"), sc("-1")];
        v.sort();
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, vec!["-1", "0", "1/2", "1/2+1 i", "1"]);
    }
}
