use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// A polynomial in `q` with exact integer coefficients.
///
/// Only nonzero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: u32, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn from_coeffs<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficient list starting at `q^0`; convenient for fixtures.
    pub fn from_dense(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().enumerate().map(|(e, &c)| (e as u32, c)))
    }

    pub fn add_term(&mut self, exp: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if mag.is_one() && e > 0 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

// JSON: {"coeffs":{"<N>":"<decimal string>"}} with keys in increasing numeric order.
struct CoeffMap<'a>(&'a BTreeMap<u32, BigInt>);

impl Serialize for CoeffMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0 {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QPolynomial", 1)?;
        st.serialize_field("coeffs", &CoeffMap(&self.coeffs))?;
        st.end()
    }
}

struct CoeffMapVisitor;

impl<'de> Visitor<'de> for CoeffMapVisitor {
    type Value = QPolynomial;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a map from exponent strings to decimal strings")
    }
    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<QPolynomial, A::Error> {
        let mut p = QPolynomial::zero();
        while let Some((k, v)) = map.next_entry::<String, String>()? {
            let e: u32 = k.parse().map_err(de::Error::custom)?;
            let c: BigInt = v.parse().map_err(de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

struct Coeffs(QPolynomial);

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_map(CoeffMapVisitor).map(Coeffs)
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: Coeffs,
        }
        Raw::deserialize(d).map(|r| r.coeffs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_prunes_zeros() {
        let a = QPolynomial::from_dense(&[1, 1]);
        let b = QPolynomial::from_dense(&[-1, 1]);
        let prod = &a * &b;
        assert_eq!(prod, QPolynomial::from_coeffs([(0u32, -1), (2, 1)]));
        let neg = QPolynomial::from_dense(&[-1, -1]);
        assert!((&a + &neg).is_zero());
        assert_eq!(prod.degree(), Some(2));
        assert_eq!(QPolynomial::zero().degree(), None);
    }

    #[test]
    fn display() {
        let p = QPolynomial::from_coeffs([(4u32, 1), (5, 2), (11, 1)]);
        assert_eq!(p.to_string(), "q^4 + 2q^5 + q^11");
        assert_eq!(QPolynomial::from_dense(&[1, 1]).to_string(), "1 + q");
        assert_eq!(QPolynomial::from_dense(&[0, -3]).to_string(), "-3q");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_numeric_key_order_and_roundtrip() {
        let p = QPolynomial::from_coeffs([(4u32, 1), (10, 2), (11, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":{"4":"1","10":"2","11":"-1"}}"#);
        let back: QPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
