use std::fmt::{self, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::linalg::Field;

/// `re + im*i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(invalid("zero denominator"));
        }
        Ok(Self::real(BigRational::new(num.into(), den.into())))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `+1` or `-1`, if the value is one of them.
    pub fn sign_unit(&self) -> Option<i64> {
        if !self.is_real() || !self.re.is_integer() {
            return None;
        }
        match self.re.to_integer() {
            v if v == BigInt::one() => Some(1),
            v if v == -BigInt::one() => Some(-1),
            _ => None,
        }
    }

    fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
}

impl From<i64> for GaussRational {
    fn from(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for GaussRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        0.into()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        1.into()
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl Add<&GaussRational> for GaussRational {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        Self::new(self.re + &o.re, self.im + &o.im)
    }
}

impl Sub<&GaussRational> for GaussRational {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        Self::new(self.re - &o.re, self.im - &o.im)
    }
}

impl Mul<&GaussRational> for GaussRational {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div<&GaussRational> for GaussRational {
    type Output = Self;
    /// Panics on division by zero, like the rationals underneath.
    fn div(self, o: &Self) -> Self {
        let n = o.norm();
        let p = self * &o.conj();
        Self::new(p.re / &n, p.im / &n)
    }
}

impl Field for GaussRational {}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if self.im.abs().is_one() {
            String::new()
        } else {
            fmt_rational(&self.im.abs())
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im}i");
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{im}i", fmt_rational(&self.re))
    }
}

#[derive(Serialize, Deserialize)]
struct GaussJson {
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".into()
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| invalid(format!("bad rational {s:?}: {e}")))
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GaussJson {
            re: fmt_rational(&self.re),
            im: fmt_rational(&self.im),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GaussJson::deserialize(d)?;
        let re = parse_rational(&raw.re).map_err(D::Error::custom)?;
        let im = parse_rational(&raw.im).map_err(D::Error::custom)?;
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussRational {
        GaussRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn field_operations() {
        let a = g((1, 2), (3, 1));
        let b = g((-2, 1), (1, 5));
        let prod = a.clone() * &b;
        assert_eq!(prod.clone() / &b, a);
        assert_eq!(prod / &a, b);
        assert_eq!(a.clone() - &a, GaussRational::zero());
        let i = g((0, 1), (1, 1));
        assert_eq!(i.clone() * &i, GaussRational::from(-1));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(g((1, 2), (0, 1)).to_string(), "1/2");
        assert_eq!(g((0, 1), (-1, 1)).to_string(), "-i");
        assert_eq!(g((2, 1), (-3, 4)).to_string(), "2-3/4i");
        let v = g((-7, 3), (1, 1));
        let js = serde_json::to_value(&v).unwrap();
        assert_eq!(js, serde_json::json!({"re": "-7/3", "im": "1"}));
        assert_eq!(serde_json::from_value::<GaussRational>(js).unwrap(), v);
        let plain: GaussRational = serde_json::from_value(serde_json::json!({"re": "5"})).unwrap();
        assert_eq!(plain, 5.into());
        assert!(serde_json::from_value::<GaussRational>(serde_json::json!({"re": "1/0"})).is_err());
        assert!(serde_json::from_value::<GaussRational>(serde_json::json!({"re": "x"})).is_err());
    }

    #[test]
    fn sign_units() {
        assert_eq!(GaussRational::from(1).sign_unit(), Some(1));
        assert_eq!(GaussRational::from(-1).sign_unit(), Some(-1));
        assert_eq!(GaussRational::from(2).sign_unit(), None);
        assert_eq!(g((1, 1), (1, 1)).sign_unit(), None);
    }
}
