use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::IntPolynomial;

/// A multiset of weight variables, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<String>);

impl Monomial {
    pub fn new<I, S>(vars: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = vars.into_iter().map(Into::into).collect();
        v.sort();
        Self(v)
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Monomial(v)
    }
}

/// Sparse polynomial in `t` and a family of weight variables.
///
/// Keys are `(monomial, power of t)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedGF {
    terms: BTreeMap<(Monomial, u32), BigInt>,
}

impl WeightedGF {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut g = Self::zero();
        g.add_term(Monomial::default(), 0, BigInt::one());
        g
    }

    /// `t + x_1 + ... + x_r`
    pub fn linear<S: AsRef<str>>(vars: &[S]) -> Self {
        let mut g = Self::zero();
        g.add_term(Monomial::default(), 1, BigInt::one());
        for v in vars {
            g.add_term(Monomial::new([v.as_ref()]), 0, BigInt::one());
        }
        g
    }

    pub fn add_term(&mut self, monomial: Monomial, tpow: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (monomial, tpow);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32, &BigInt)> {
        self.terms.iter().map(|((m, k), c)| (m, *k, c))
    }

    pub fn coeff(&self, monomial: &Monomial, tpow: u32) -> BigInt {
        self.terms
            .get(&(monomial.clone(), tpow))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets every weight variable to 1.
    pub fn specialize_ones(&self) -> IntPolynomial {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for ((_, k), c) in &self.terms {
            let k = *k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Add for &WeightedGF {
    type Output = WeightedGF;
    fn add(self, rhs: &WeightedGF) -> WeightedGF {
        let mut out = self.clone();
        for ((m, k), c) in &rhs.terms {
            out.add_term(m.clone(), *k, c.clone());
        }
        out
    }
}

impl Mul for &WeightedGF {
    type Output = WeightedGF;
    fn mul(self, rhs: &WeightedGF) -> WeightedGF {
        let mut out = WeightedGF::zero();
        for ((m1, k1), c1) in &self.terms {
            for ((m2, k2), c2) in &rhs.terms {
                out.add_term(m1.times(m2), k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl std::iter::Product for WeightedGF {
    fn product<I: Iterator<Item = WeightedGF>>(iter: I) -> Self {
        iter.fold(WeightedGF::one(), |acc, g| &acc * &g)
    }
}

impl fmt::Display for WeightedGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest t-power first, then monomials in sorted order
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        for (idx, ((m, k), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let mag = c.abs();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            factors.extend(m.0.iter().cloned());
            match k {
                0 => {}
                1 => factors.push("t".into()),
                _ => factors.push(format!("t^{k}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    monomial: &'a [String],
    tpow: u32,
    coeff: String,
}

impl Serialize for WeightedGF {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|((m, k), c)| TermJson {
            monomial: &m.0,
            tpow: *k,
            coeff: c.to_string(),
        }))
    }
}
