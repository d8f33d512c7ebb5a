use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Laurent polynomial in `v` with big-integer coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c v^e`.
    pub fn monomial(e: i32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// `v^k f`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Highest power and its coefficient.
    pub fn leading_term(&self) -> Result<(i32, BigInt)> {
        self.coeffs
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(Error::LeadingTermOfZero)
    }

    /// Lowest power and its coefficient.
    pub fn lowest_term(&self) -> Result<(i32, BigInt)> {
        self.coeffs
            .iter()
            .next()
            .map(|(e, c)| (*e, c.clone()))
            .ok_or(Error::LeadingTermOfZero)
    }

    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// The involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let unit = a.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("v")?,
                (1, false) => write!(f, "{a}v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a map from exponent (as a string key) to coefficient.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            match c.to_i64() {
                Some(c) => map.serialize_entry(&e.to_string(), &c)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn products() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, lp(&[(2, 1), (-2, -1)]));
        assert_eq!(&a * &a, lp(&[(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(a.to_string(), "v + v^-1");
    }

    #[test]
    fn leading_terms() {
        let f = lp(&[(3, 1), (1, 2)]);
        assert_eq!(f.leading_term().unwrap(), (3, BigInt::from(1)));
        assert_eq!(f.lowest_term().unwrap(), (1, BigInt::from(2)));
        assert_eq!(LaurentPoly::zero().leading_term(), Err(Error::LeadingTermOfZero));
    }

    #[test]
    fn cancellation_leaves_no_zero_coefficients() {
        let f = lp(&[(2, 3), (0, 1)]);
        let g = lp(&[(2, -3)]);
        let s = &f + &g;
        assert_eq!(s, LaurentPoly::one());
        assert_eq!(s.terms().count(), 1);
        assert!((&f - &f).is_zero());
        assert_eq!(f.shift(-2), lp(&[(0, 3), (-2, 1)]));
        assert_eq!(f.bar(), lp(&[(-2, 3), (0, 1)]));
        assert_eq!(f.at_one(), BigInt::from(4));
    }

    #[test]
    fn serializes_as_coefficient_map() {
        let f = lp(&[(-1, 2), (3, -1)]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"-1":2,"3":-1}"#);
    }
}
