//! Exact univariate polynomials in `t` with big-integer coefficients, plus the
//! sparse multivariate generating functions used for weighted counts.

mod weighted;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use weighted::{Monomial, WeightedGF};

/// Polynomial in `t`; `coeffs[i]` multiplies `t^i`.
///
/// The zero polynomial has an empty coefficient list and there is never a
/// trailing zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_counts<T: Into<BigInt> + Copy>(counts: &[T]) -> Self {
        Self::new(counts.iter().map(|&c| c.into()).collect())
    }

    /// Builds `sum_m counts[m] * t^(top - m)`, the shape every forest
    /// generating function takes.
    ///
    /// Panics if `counts` has a nonzero entry past index `top`.
    pub fn from_descending_counts<T: Into<BigInt> + Clone>(counts: &[T], top: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); top + 1];
        for (m, c) in counts.iter().enumerate() {
            let c: BigInt = c.clone().into();
            if c.is_zero() {
                continue;
            }
            assert!(m <= top, "count at m={m} exceeds top degree {top}");
            coeffs[top - m] += c;
        }
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn t_pow(k: usize) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `t + a`
    pub fn linear(a: impl Into<BigInt>) -> Self {
        Self::new(vec![a.into(), BigInt::one()])
    }

    /// Expands `t^tshift * prod_k (t + roots_negated[k])`.
    pub fn from_linear_factors(roots_negated: &[u64], tshift: usize) -> Self {
        roots_negated
            .iter()
            .fold(Self::t_pow(tshift), |acc, &a| &acc * &Self::linear(a))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, v: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * v + c)
    }

    pub fn eval_i64(&self, v: i64) -> BigInt {
        self.eval(&BigInt::from(v))
    }

    /// Sum of coefficients, i.e. the value at `t = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_t_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Exact division by `t^k`; `None` if some dropped coefficient is nonzero.
    pub fn div_t_pow(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Multiplies by `t^k` for a possibly negative `k`.
    pub fn shift_t(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.mul_t_pow(k as usize))
        } else {
            self.div_t_pow(k.unsigned_abs() as usize)
        }
    }

    /// `p(-t)`
    pub fn compose_neg(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `(-1)^n p(-t)`, the sign twist relating forest and chromatic counts.
    pub fn sign_twist(&self, n: usize) -> Self {
        let p = self.compose_neg();
        if n % 2 == 1 {
            -p
        } else {
            p
        }
    }

    /// Divides by `t + a` if it is a factor.
    fn div_linear(&self, a: &BigInt) -> Option<Self> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut quot = vec![BigInt::zero(); d];
        quot[d - 1] = self.coeffs[d].clone();
        for i in (1..d).rev() {
            quot[i - 1] = &self.coeffs[i] - a * &quot[i];
        }
        let rem = &self.coeffs[0] - a * &quot[0];
        rem.is_zero().then(|| Self::new(quot))
    }

    /// Roots of a monic polynomial that splits into factors `t + a` with
    /// `a >= 0`, sorted from 0 downwards. `None` if it does not split that
    /// way (or is the zero polynomial).
    pub fn integer_roots(&self) -> Result<Option<Vec<i64>>> {
        if self.is_zero() {
            return Ok(None);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut roots = Vec::new();
        let mut q = self.clone();
        while q.degree().unwrap_or(0) > 0 && q.coeffs[0].is_zero() {
            q = q.div_t_pow(1).expect("constant term is zero");
            roots.push(0);
        }
        let mut a = BigInt::one();
        while q.degree().unwrap_or(0) > 0 {
            let bound = q.coeffs[0].abs();
            if a > bound {
                return Ok(None);
            }
            match q.div_linear(&a) {
                Some(next) => {
                    let Some(root) = a.to_i64() else {
                        return Ok(None);
                    };
                    roots.push(-root);
                    q = next;
                }
                None => a += 1,
            }
        }
        Ok(Some(roots))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let p = IntPolynomial::new(coeffs);
        if p.coeffs.len() != raw.len() {
            return Err(D::Error::custom("trailing zero coefficient"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn linear_factor_expansion() {
        assert_eq!(
            IntPolynomial::from_linear_factors(&[0, 1, 1, 2], 0),
            p(&[0, 2, 5, 4, 1])
        );
        assert_eq!(IntPolynomial::from_linear_factors(&[], 3), p(&[0, 0, 0, 1]));
        assert_eq!(
            IntPolynomial::from_linear_factors(&[1, 3], 2),
            p(&[0, 0, 3, 4, 1])
        );
    }

    #[test]
    fn integer_roots_examples() {
        assert_eq!(p(&[0, 2, 3, 1]).integer_roots().unwrap(), Some(vec![0, -1, -2]));
        assert_eq!(p(&[1, 1, 1]).integer_roots().unwrap(), None);
        assert_eq!(p(&[4, 8, 5, 1]).integer_roots().unwrap(), Some(vec![-1, -2, -2]));
        assert_eq!(p(&[1]).integer_roots().unwrap(), Some(vec![]));
        assert_eq!(IntPolynomial::zero().integer_roots().unwrap(), None);
        assert_eq!(p(&[1, 2]).integer_roots(), Err(Error::NotMonic));
        // t^2 - 1 has a positive root
        assert_eq!(p(&[-1, 0, 1]).integer_roots().unwrap(), None);
    }

    #[test]
    fn display_and_json() {
        let q = p(&[0, 2, -5, 4, 1]);
        assert_eq!(q.to_string(), "t^4 + 4t^3 - 5t^2 + 2t");
        assert_eq!(p(&[-4, 8, -5, 1]).to_string(), "t^3 - 5t^2 + 8t - 4");
        let js = serde_json::to_string(&p(&[0, 2, 5, 4, 1])).unwrap();
        assert_eq!(js, r#"["0","2","5","4","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p(&[0, 2, 5, 4, 1]));
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1","0"]"#).is_err());
        assert_eq!(serde_json::to_string(&IntPolynomial::zero()).unwrap(), "[]");
    }

    #[test]
    fn shifts_and_twists() {
        let q = p(&[0, 0, 3, 1]);
        assert_eq!(q.shift_t(-2), Some(p(&[3, 1])));
        assert_eq!(q.shift_t(-3), None);
        assert_eq!(q.shift_t(1), Some(p(&[0, 0, 0, 3, 1])));
        // (t+1)(t+2) -> (-1)^2 (−t+1)(−t+2) = (t-1)(t-2)
        assert_eq!(p(&[2, 3, 1]).sign_twist(2), p(&[2, -3, 1]));
        assert_eq!(p(&[0, 1]).sign_twist(1), p(&[0, 1]));
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(a in small_poly(), b in small_poly(),
                                       pts in prop::collection::vec(-50i64..50, 20)) {
            let prod = &a * &b;
            let sum = &a + &b;
            for v in pts {
                prop_assert_eq!(prod.eval_i64(v), a.eval_i64(v) * b.eval_i64(v));
                prop_assert_eq!(sum.eval_i64(v), a.eval_i64(v) + b.eval_i64(v));
            }
        }

        #[test]
        fn roots_invert_factor_expansion(mut roots in prop::collection::vec(0u64..6, 0..7),
                                         shift in 0usize..3) {
            let q = IntPolynomial::from_linear_factors(&roots, shift);
            roots.extend(std::iter::repeat(0).take(shift));
            roots.sort_unstable();
            let expected: Vec<i64> = roots.iter().map(|&a| -(a as i64)).collect();
            prop_assert_eq!(q.integer_roots().unwrap(), Some(expected));
        }
    }
}
